//! Extended incomplete gamma functions.
//!
//! The exponential-kernel pair splits int_0^inf t^{alpha-1} e^{-t - p/t} dt at
//! a point x; the Bessel-kernel pair replaces e^{-p/t} by a K_{nu+1/2}(p/t)
//! factor with prefactor sqrt(2p/pi). At nu = 0 the kernel collapses to the
//! exponential form, which is what the reduction tests pin down.

use std::f64::consts::PI;

use crate::bessel::{k_order_auto, ln_k_scaled};
use crate::error::{param_err, Result};
use crate::quad::{integrate_finite, integrate_semi_infinite, require_converged, QuadConfig};

fn check_p(p: f64) -> Result<()> {
    if !(p >= 0.0) || !p.is_finite() {
        return param_err(format!("p must be finite and non-negative, got {p}"));
    }
    Ok(())
}

/// Lower extended incomplete gamma: int_0^x t^(alpha-1) exp(-t - p/t) dt.
///
/// Requires x > 0, and alpha > 0 when p = 0 (the p > 0 kernel makes any real
/// alpha integrable at the origin).
pub fn gamma_lower_p(alpha: f64, x: f64, p: f64, cfg: &QuadConfig) -> Result<f64> {
    check_p(p)?;
    if !(x > 0.0) || !x.is_finite() {
        return param_err(format!("split point x must be positive, got {x}"));
    }
    if p == 0.0 && !(alpha > 0.0) {
        return param_err("p = 0 requires alpha > 0 for the lower function");
    }
    let f = |t: f64| {
        let mut e = (alpha - 1.0) * t.ln() - t;
        if p > 0.0 {
            e -= p / t;
        }
        e.exp()
    };
    Ok(require_converged(integrate_finite(f, 0.0, x, cfg)?)?.value)
}

/// Upper extended incomplete gamma: int_x^inf t^(alpha-1) exp(-t - p/t) dt.
///
/// Requires x >= 0; at x = 0 with p = 0 the integral needs alpha > 0.
pub fn gamma_upper_p(alpha: f64, x: f64, p: f64, cfg: &QuadConfig) -> Result<f64> {
    check_p(p)?;
    if !(x >= 0.0) || !x.is_finite() {
        return param_err(format!("split point x must be non-negative, got {x}"));
    }
    if p == 0.0 && x == 0.0 && !(alpha > 0.0) {
        return param_err("p = 0 with x = 0 requires alpha > 0");
    }
    let f = |t: f64| {
        let mut e = (alpha - 1.0) * t.ln() - t;
        if p > 0.0 {
            e -= p / t;
        }
        e.exp()
    };
    Ok(require_converged(integrate_semi_infinite(f, x, cfg)?)?.value)
}

/// The total function Gamma_p(alpha) = 2 p^(alpha/2) K_alpha(2 sqrt(p)).
pub fn gamma_total_p(alpha: f64, p: f64) -> Result<f64> {
    if !(p > 0.0) || !p.is_finite() {
        return param_err(format!("p must be positive, got {p}"));
    }
    if !alpha.is_finite() {
        return param_err("alpha must be finite");
    }
    let k = k_order_auto(alpha, 2.0 * p.sqrt(), &QuadConfig::default())?;
    Ok(2.0 * p.powf(alpha / 2.0) * k)
}

fn bessel_gamma_integrand(alpha: f64, p: f64, nu: f64) -> impl Fn(f64) -> f64 {
    let order = nu + 0.5;
    move |t: f64| {
        let w = p / t;
        ((alpha - 1.5) * t.ln() - t - w + ln_k_scaled(order, w)).exp()
    }
}

/// Bessel-kernel lower incomplete gamma:
/// sqrt(2p/pi) int_0^x t^(alpha-3/2) e^(-t) K_{nu+1/2}(p/t) dt.
pub fn gamma_lower_nu(alpha: f64, x: f64, p: f64, nu: f64, cfg: &QuadConfig) -> Result<f64> {
    if !(p > 0.0) || !p.is_finite() {
        return param_err(format!("p must be positive, got {p}"));
    }
    if !(x > 0.0) || !x.is_finite() {
        return param_err(format!("split point x must be positive, got {x}"));
    }
    let f = bessel_gamma_integrand(alpha, p, nu);
    let r = require_converged(integrate_finite(f, 0.0, x, cfg)?)?;
    Ok((2.0 * p / PI).sqrt() * r.value)
}

/// Bessel-kernel upper incomplete gamma on (x, inf); x >= 0 is admissible
/// because the kernel's essential decay handles the lower endpoint.
pub fn gamma_upper_nu(alpha: f64, x: f64, p: f64, nu: f64, cfg: &QuadConfig) -> Result<f64> {
    if !(p > 0.0) || !p.is_finite() {
        return param_err(format!("p must be positive, got {p}"));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return param_err(format!("split point x must be non-negative, got {x}"));
    }
    let f = bessel_gamma_integrand(alpha, p, nu);
    let r = require_converged(integrate_semi_infinite(f, x, cfg)?)?;
    Ok((2.0 * p / PI).sqrt() * r.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    fn cfg() -> QuadConfig {
        QuadConfig::default()
    }

    #[test]
    fn lower_classical_values() {
        // alpha=1, x=1, p=0: 1 - e^{-1}
        let v = gamma_lower_p(1.0, 1.0, 0.0, &cfg()).unwrap();
        assert!(rel(v, 1.0 - (-1.0f64).exp()) < 1e-12);
        assert!((v - 0.6321205588285577).abs() < 1e-10);
        // alpha=2, x=2, p=0: 1 - 3 e^{-2} by parts
        let v = gamma_lower_p(2.0, 2.0, 0.0, &cfg()).unwrap();
        assert!(rel(v, 1.0 - 3.0 * (-2.0f64).exp()) < 1e-12);
    }

    #[test]
    fn lower_oracle_value() {
        // alpha=1.5, x=1, p=0.5 against trapezoid refinement; the integrand
        // vanishes to all orders at t=0, so the trapezoid converges fast
        let (alpha, x, p) = (1.5, 1.0, 0.5);
        let g = |t: f64| {
            if t <= 0.0 {
                0.0
            } else {
                ((alpha - 1.0) * t.ln() - t - p / t).exp()
            }
        };
        let mut n = 64usize;
        let mut prev = f64::NAN;
        let mut val = f64::NAN;
        for _ in 0..18 {
            let h = x / n as f64;
            let mut s = 0.5 * (g(0.0) + g(x));
            for i in 1..n {
                s += g(i as f64 * h);
            }
            val = s * h;
            if (val - prev).abs() < 1e-14 * val.abs() {
                break;
            }
            prev = val;
            n *= 2;
        }
        let got = gamma_lower_p(alpha, x, p, &cfg()).unwrap();
        assert!(rel(got, val) < 1e-11, "{got} vs {val}");
    }

    #[test]
    fn upper_classical_values() {
        assert!(rel(gamma_upper_p(1.0, 0.0, 0.0, &cfg()).unwrap(), 1.0) < 1e-11);
        assert!(rel(gamma_upper_p(3.0, 0.0, 0.0, &cfg()).unwrap(), 2.0) < 1e-11);
    }

    #[test]
    fn upper_oracle_value() {
        // alpha=0.5, x=0.3, p=1 against Simpson refinement on a truncated range
        let (alpha, x, p) = (0.5, 0.3, 1.0);
        let g = |t: f64| ((alpha - 1.0) * t.ln() - t - p / t).exp();
        let upper = 80.0;
        let mut n = 128usize;
        let mut prev = f64::NAN;
        let mut val = f64::NAN;
        for _ in 0..16 {
            let h = (upper - x) / n as f64;
            let mut s = g(x) + g(upper);
            for i in 1..n {
                s += g(x + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
            }
            val = s * h / 3.0;
            if (val - prev).abs() < 1e-13 * val.abs() {
                break;
            }
            prev = val;
            n *= 2;
        }
        let got = gamma_upper_p(alpha, x, p, &cfg()).unwrap();
        assert!(rel(got, val) < 1e-10, "{got} vs {val}");
    }

    #[test]
    fn total_closed_forms() {
        // alpha=1/2, p=1: 2 K_{1/2}(2) = 2 sqrt(pi/4) e^{-2} = 0.23987576...
        let v = gamma_total_p(0.5, 1.0).unwrap();
        let expect = 2.0 * (PI / 4.0).sqrt() * (-2.0f64).exp();
        assert!(rel(v, expect) < 1e-13);
        // alpha=1/2, p=4: 2 sqrt(2) K_{1/2}(4)
        let v = gamma_total_p(0.5, 4.0).unwrap();
        let expect = 2.0 * 2.0f64.sqrt() * (PI / 8.0).sqrt() * (-4.0f64).exp();
        assert!(rel(v, expect) < 1e-13);
    }

    #[test]
    fn decomposition_lower_plus_upper() {
        // Gamma_p(alpha) must match lower + upper at any split
        for &alpha in &[0.5, 1.0, 2.5] {
            for &p in &[0.25, 1.0, 4.0] {
                let total = gamma_total_p(alpha, p).unwrap();
                for &x in &[0.5, 1.0, 3.0] {
                    let sum = gamma_lower_p(alpha, x, p, &cfg()).unwrap()
                        + gamma_upper_p(alpha, x, p, &cfg()).unwrap();
                    assert!(
                        rel(sum, total) <= 1e-9,
                        "alpha={alpha} x={x} p={p}: {sum} vs {total}"
                    );
                }
            }
        }
    }

    #[test]
    fn nu_zero_reduces_to_exponential_kernel() {
        for &(alpha, x, p) in &[(1.5, 1.0, 0.5), (0.5, 0.5, 1.0), (2.5, 3.0, 0.25), (1.0, 1.0, 4.0)] {
            let lo_nu = gamma_lower_nu(alpha, x, p, 0.0, &cfg()).unwrap();
            let lo_p = gamma_lower_p(alpha, x, p, &cfg()).unwrap();
            assert!(rel(lo_nu, lo_p) <= 1e-9, "lower alpha={alpha} x={x} p={p}");
            let up_nu = gamma_upper_nu(alpha, x, p, 0.0, &cfg()).unwrap();
            let up_p = gamma_upper_p(alpha, x, p, &cfg()).unwrap();
            assert!(rel(up_nu, up_p) <= 1e-9, "upper alpha={alpha} x={x} p={p}");
        }
    }

    #[test]
    fn integer_nu_finite_sum_reduction() {
        // expanding the kernel with the half-integer closed form turns
        // gamma_nu into a finite sum of exponential-kernel gammas
        let reduce_lower = |n: u32, alpha: f64, x: f64, p: f64| -> f64 {
            let mut coeff = 1.0;
            let mut sum = gamma_lower_p(alpha, x, p, &cfg()).unwrap();
            for m in 0..n {
                let (nf, mf) = (n as f64, m as f64);
                coeff *= (nf + mf + 1.0) * (nf - mf) / (2.0 * p * (mf + 1.0));
                sum += coeff * gamma_lower_p(alpha + mf + 1.0, x, p, &cfg()).unwrap();
            }
            sum
        };
        for &(n, alpha, x, p) in &[(1u32, 2.0, 1.0, 1.0), (1, 1.0, 0.5, 2.0), (2, 1.5, 2.0, 0.5)] {
            let direct = gamma_lower_nu(alpha, x, p, n as f64, &cfg()).unwrap();
            let oracle = reduce_lower(n, alpha, x, p);
            assert!(
                rel(direct, oracle) <= 1e-9,
                "n={n} alpha={alpha} x={x} p={p}: {direct} vs {oracle}"
            );
        }
    }

    #[test]
    fn lower_nu_refinement_oracle() {
        // nu=0.5, alpha=2, x=2, p=1: the kernel order is 1 (non half-integer
        // path); trapezoid oracle over the full Bessel integrand
        let (alpha, x, p, nu) = (2.0, 2.0, 1.0, 0.5);
        let g = |t: f64| {
            if t <= 0.0 {
                0.0
            } else {
                let w = p / t;
                ((alpha - 1.5) * t.ln() - t - w + ln_k_scaled(nu + 0.5, w)).exp()
            }
        };
        let mut n = 128usize;
        let mut prev = f64::NAN;
        let mut val = f64::NAN;
        for _ in 0..14 {
            let h = x / n as f64;
            let mut s = 0.5 * (g(0.0) + g(x));
            for i in 1..n {
                s += g(i as f64 * h);
            }
            val = s * h * (2.0 * p / PI).sqrt();
            if (val - prev).abs() < 1e-13 * val.abs() {
                break;
            }
            prev = val;
            n *= 2;
        }
        let got = gamma_lower_nu(alpha, x, p, nu, &cfg()).unwrap();
        assert!(rel(got, val) < 1e-10, "{got} vs {val}");
    }

    #[test]
    fn split_independence_of_total() {
        // gamma_lower_nu + gamma_upper_nu must not depend on the split point
        for &(alpha, p, nu) in &[(1.5, 1.0, 0.5), (2.0, 0.5, 1.0), (0.8, 2.0, 1.7)] {
            let t1 = gamma_lower_nu(alpha, 0.7, p, nu, &cfg()).unwrap()
                + gamma_upper_nu(alpha, 0.7, p, nu, &cfg()).unwrap();
            let t2 = gamma_lower_nu(alpha, 2.3, p, nu, &cfg()).unwrap()
                + gamma_upper_nu(alpha, 2.3, p, nu, &cfg()).unwrap();
            assert!(rel(t1, t2) <= 1e-9, "alpha={alpha} p={p} nu={nu}: {t1} vs {t2}");
        }
    }

    #[test]
    fn p_to_zero_continuity() {
        // for alpha >= 1 the p -> 0 defect is O(p log(1/p)) and comfortably
        // inside 1e-5 at p = 1e-10; smaller alpha converges at rate p^alpha
        for &alpha in &[1.0, 1.5, 2.5] {
            for &x in &[0.5, 1.0, 3.0] {
                let with_p = gamma_lower_p(alpha, x, 1e-10, &cfg()).unwrap();
                let classical = gamma_lower_p(alpha, x, 0.0, &cfg()).unwrap();
                assert!(
                    rel(with_p, classical) <= 1e-5,
                    "alpha={alpha} x={x}: {with_p} vs {classical}"
                );
            }
        }
    }

    #[test]
    fn domain_validation() {
        assert!(gamma_lower_p(1.0, 0.0, 0.5, &cfg()).is_err());
        assert!(gamma_lower_p(-1.0, 1.0, 0.0, &cfg()).is_err());
        assert!(gamma_upper_p(1.0, -0.5, 0.5, &cfg()).is_err());
        assert!(gamma_total_p(1.0, 0.0).is_err());
        assert!(gamma_lower_nu(1.0, 1.0, 0.0, 1.0, &cfg()).is_err());
        assert!(gamma_upper_nu(1.0, -1.0, 1.0, 1.0, &cfg()).is_err());
    }
}
