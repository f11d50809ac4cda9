//! Extended Gauss and confluent hypergeometric functions.
//!
//! F_{p,nu}(a, b; c; z) = sum_n (a)_n B_nu(b+n, c-b; p)/B(b, c-b) z^n/n! and
//! Phi_{p,nu}(b; c; z) without the (a)_n factor, both with equivalent Euler
//! integral representations carrying the kernel K_{nu+1/2}(p/(t(1-t))).
//!
//! The integral representation is the default evaluation route (it covers
//! z = 1 and large negative z); the series is retained as an independent
//! verification path, each term costing one extended-Beta quadrature.
//! Classical 2F1 / 1F1 and the exponential-kernel extensions F_p / Phi_p are
//! included as building blocks: the integer-order reductions and the Mellin
//! closed forms are written in terms of them.

use std::f64::consts::PI;

use crate::bessel::ln_k_scaled;
use crate::error::{param_err, Result, XsfError};
use crate::ext_beta::{beta_nu, integrate_unit_symmetric, MellinCheckReport};
use crate::ext_gamma::gamma_lower_p;
use crate::gamma::{beta as classical_beta, ln_beta, ln_gamma, pochhammer};
use crate::quad::{
    integrate_finite, integrate_semi_infinite, require_converged, QuadConfig, QuadResult,
};
use crate::SeriesResult;

/// Evaluation route for the extended hypergeometric functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HypMethod {
    /// Euler-type integral with the Bessel kernel (default route).
    Integral,
    /// Defining series; every term is an extended-Beta quadrature.
    Series,
}

/// Comparison record for the generating-function identity: truncated series
/// against the closed form.
#[derive(Debug, Clone, Copy)]
pub struct GeneratingCheckReport {
    pub lhs_partial: f64,
    pub rhs_closed: f64,
    pub abs_diff: f64,
    pub rel_diff: f64,
    pub terms_used: usize,
    pub last_term_abs: f64,
}

const CLASSICAL_MAX_TERMS: usize = 5000;
const EXTENDED_MAX_TERMS: usize = 500;

fn check_bc(b: f64, c: f64) -> Result<()> {
    if !b.is_finite() || !c.is_finite() || !(c > b && b > 0.0) {
        return param_err(format!("requires c > b > 0, got b={b}, c={c}"));
    }
    Ok(())
}

fn check_finite(name: &str, v: f64) -> Result<()> {
    if !v.is_finite() {
        return param_err(format!("{name} must be finite, got {v}"));
    }
    Ok(())
}

/// Sums sum_n coef_n(z) ratio(n) where coef carries (a)_n z^n/n! (or z^n/n!
/// when `a` is None). Stops after three consecutive terms below tol*|sum|.
fn hyp_series<R: FnMut(usize) -> Result<f64>>(
    a: Option<f64>,
    z: f64,
    tol: f64,
    max_terms: usize,
    mut ratio: R,
) -> Result<SeriesResult> {
    let mut coef = 1.0;
    let mut sum = 0.0;
    let mut last = 0.0;
    let mut small_run = 0usize;
    let mut used = 0usize;
    for n in 0..max_terms {
        if n > 0 {
            let k = (n - 1) as f64;
            let rising = a.map_or(1.0, |a| a + k);
            coef *= rising * z / n as f64;
        }
        let term = coef * ratio(n)?;
        sum += term;
        last = term.abs();
        used = n + 1;
        if last <= tol * sum.abs().max(f64::MIN_POSITIVE) {
            small_run += 1;
            if small_run >= 3 {
                return Ok(SeriesResult {
                    value: sum,
                    terms_used: used,
                    last_term_abs: last,
                    converged: true,
                });
            }
        } else {
            small_run = 0;
        }
    }
    Ok(SeriesResult {
        value: sum,
        terms_used: used,
        last_term_abs: last,
        converged: false,
    })
}

/// Classical Gauss hypergeometric series 2F1(a, b; c; z) for |z| < 1.
pub fn gauss_2f1(a: f64, b: f64, c: f64, z: f64, tol: f64) -> Result<SeriesResult> {
    for (n, v) in [("a", a), ("b", b), ("c", c), ("z", z)] {
        check_finite(n, v)?;
    }
    if c <= 0.0 && (c - c.round()).abs() <= 1e-12 {
        return param_err(format!("c must not be a non-positive integer, got {c}"));
    }
    if !(z.abs() < 1.0) {
        return param_err(format!("2F1 series requires |z| < 1, got {z}"));
    }
    let mut ratio = 1.0; // (b)_n / (c)_n
    hyp_series(Some(a), z, tol, CLASSICAL_MAX_TERMS, move |n| {
        if n > 0 {
            let k = (n - 1) as f64;
            ratio *= (b + k) / (c + k);
        }
        Ok(ratio)
    })
}

/// Classical Kummer confluent series 1F1(b; c; z), entire in z.
pub fn kummer_1f1(b: f64, c: f64, z: f64, tol: f64) -> Result<SeriesResult> {
    for (n, v) in [("b", b), ("c", c), ("z", z)] {
        check_finite(n, v)?;
    }
    if c <= 0.0 && (c - c.round()).abs() <= 1e-12 {
        return param_err(format!("c must not be a non-positive integer, got {c}"));
    }
    let mut ratio = 1.0;
    hyp_series(None, z, tol, CLASSICAL_MAX_TERMS, move |n| {
        if n > 0 {
            let k = (n - 1) as f64;
            ratio *= (b + k) / (c + k);
        }
        Ok(ratio)
    })
}

/// 1 - z*t evaluated from whichever of (t, 1-t) is exact, so z near 1 keeps
/// full accuracy at the upper endpoint.
fn one_minus_zt(z: f64, t: f64, omt: f64) -> f64 {
    if t <= 0.5 {
        1.0 - z * t
    } else {
        (1.0 - z) + z * omt
    }
}

fn check_z_integral(z: f64, p: f64) -> Result<()> {
    if z > 1.0 || (z == 1.0 && p == 0.0) {
        return param_err(format!(
            "integral representation requires z < 1 (z = 1 only with p > 0), got z={z}"
        ));
    }
    Ok(())
}

/// Exponential-kernel extended Gauss hypergeometric F_p (quadrature of the
/// Euler integral); at p = 0 the classical function.
pub fn f_p_quad(a: f64, b: f64, c: f64, z: f64, p: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    check_bc(b, c)?;
    check_finite("a", a)?;
    check_finite("z", z)?;
    if !(p >= 0.0) || !p.is_finite() {
        return param_err(format!("p must be finite and non-negative, got {p}"));
    }
    check_z_integral(z, p)?;
    let f = |t: f64, omt: f64| {
        let mut e =
            (b - 1.0) * t.ln() + (c - b - 1.0) * omt.ln() - a * one_minus_zt(z, t, omt).ln();
        if p > 0.0 {
            e -= p / (t * omt);
        }
        e.exp()
    };
    let mut r = require_converged(integrate_unit_symmetric(&f, cfg)?)?;
    let scale = (-ln_beta(b, c - b)?).exp();
    r.value *= scale;
    r.abs_err_estimate *= scale;
    Ok(r)
}

pub fn f_p(a: f64, b: f64, c: f64, z: f64, p: f64, cfg: &QuadConfig) -> Result<f64> {
    Ok(f_p_quad(a, b, c, z, p, cfg)?.value)
}

/// Exponential-kernel extended confluent function Phi_p.
pub fn phi_p_quad(b: f64, c: f64, z: f64, p: f64, cfg: &QuadConfig) -> Result<QuadResult> {
    check_bc(b, c)?;
    check_finite("z", z)?;
    if !(p >= 0.0) || !p.is_finite() {
        return param_err(format!("p must be finite and non-negative, got {p}"));
    }
    let f = |t: f64, omt: f64| {
        let mut e = (b - 1.0) * t.ln() + (c - b - 1.0) * omt.ln() + z * t;
        if p > 0.0 {
            e -= p / (t * omt);
        }
        e.exp()
    };
    let mut r = require_converged(integrate_unit_symmetric(&f, cfg)?)?;
    let scale = (-ln_beta(b, c - b)?).exp();
    r.value *= scale;
    r.abs_err_estimate *= scale;
    Ok(r)
}

pub fn phi_p(b: f64, c: f64, z: f64, p: f64, cfg: &QuadConfig) -> Result<f64> {
    Ok(phi_p_quad(b, c, z, p, cfg)?.value)
}

fn check_p_nu(p: f64, nu: f64) -> Result<()> {
    check_finite("nu", nu)?;
    if !(p > 0.0 || (p == 0.0 && nu == 0.0)) || !p.is_finite() {
        return param_err(format!(
            "requires p > 0, or p = 0 with nu = 0, got p={p}, nu={nu}"
        ));
    }
    Ok(())
}

/// Bessel-kernel extended Gauss hypergeometric, integral representation.
pub fn f_pnu_integral(
    a: f64,
    b: f64,
    c: f64,
    z: f64,
    p: f64,
    nu: f64,
    cfg: &QuadConfig,
) -> Result<QuadResult> {
    check_bc(b, c)?;
    check_finite("a", a)?;
    check_finite("z", z)?;
    check_p_nu(p, nu)?;
    check_z_integral(z, p)?;
    if p == 0.0 {
        return f_p_quad(a, b, c, z, 0.0, cfg);
    }
    let order = nu + 0.5;
    let f = |t: f64, omt: f64| {
        let w = p / (t * omt);
        ((b - 1.5) * t.ln() + (c - b - 1.5) * omt.ln() - a * one_minus_zt(z, t, omt).ln() - w
            + ln_k_scaled(order, w))
        .exp()
    };
    let mut r = require_converged(integrate_unit_symmetric(&f, cfg)?)?;
    let scale = (2.0 * p / PI).sqrt() * (-ln_beta(b, c - b)?).exp();
    r.value *= scale;
    r.abs_err_estimate *= scale;
    Ok(r)
}

/// Bessel-kernel extended Gauss hypergeometric, defining series.
pub fn f_pnu_series(
    a: f64,
    b: f64,
    c: f64,
    z: f64,
    p: f64,
    nu: f64,
    cfg: &QuadConfig,
) -> Result<SeriesResult> {
    check_bc(b, c)?;
    check_finite("a", a)?;
    check_finite("z", z)?;
    check_p_nu(p, nu)?;
    if !(z.abs() < 1.0) {
        return param_err(format!("series requires |z| < 1, got {z}"));
    }
    let tol = cfg.rel_tol.max(1e-14);
    if p == 0.0 {
        return gauss_2f1(a, b, c, z, tol);
    }
    let b_den = classical_beta(b, c - b)?;
    hyp_series(Some(a), z, tol, EXTENDED_MAX_TERMS, move |n| {
        Ok(beta_nu(b + n as f64, c - b, p, nu, cfg)? / b_den)
    })
}

/// F_{p,nu} by the selected method; series non-convergence within the term
/// budget surfaces as an error.
pub fn f_pnu(
    a: f64,
    b: f64,
    c: f64,
    z: f64,
    p: f64,
    nu: f64,
    method: HypMethod,
    cfg: &QuadConfig,
) -> Result<f64> {
    match method {
        HypMethod::Integral => Ok(f_pnu_integral(a, b, c, z, p, nu, cfg)?.value),
        HypMethod::Series => {
            let s = f_pnu_series(a, b, c, z, p, nu, cfg)?;
            if !s.converged {
                return Err(XsfError::SeriesNoConverge {
                    terms: s.terms_used,
                    last_term: s.last_term_abs,
                });
            }
            Ok(s.value)
        }
    }
}

/// Bessel-kernel extended confluent function, integral representation.
pub fn phi_pnu_integral(
    b: f64,
    c: f64,
    z: f64,
    p: f64,
    nu: f64,
    cfg: &QuadConfig,
) -> Result<QuadResult> {
    check_bc(b, c)?;
    check_finite("z", z)?;
    check_p_nu(p, nu)?;
    if p == 0.0 {
        return phi_p_quad(b, c, z, 0.0, cfg);
    }
    let order = nu + 0.5;
    let f = |t: f64, omt: f64| {
        let w = p / (t * omt);
        ((b - 1.5) * t.ln() + (c - b - 1.5) * omt.ln() + z * t - w + ln_k_scaled(order, w)).exp()
    };
    let mut r = require_converged(integrate_unit_symmetric(&f, cfg)?)?;
    let scale = (2.0 * p / PI).sqrt() * (-ln_beta(b, c - b)?).exp();
    r.value *= scale;
    r.abs_err_estimate *= scale;
    Ok(r)
}

/// Bessel-kernel extended confluent function, defining series (entire in z).
pub fn phi_pnu_series(
    b: f64,
    c: f64,
    z: f64,
    p: f64,
    nu: f64,
    cfg: &QuadConfig,
) -> Result<SeriesResult> {
    check_bc(b, c)?;
    check_finite("z", z)?;
    check_p_nu(p, nu)?;
    let tol = cfg.rel_tol.max(1e-14);
    if p == 0.0 {
        return kummer_1f1(b, c, z, tol);
    }
    let b_den = classical_beta(b, c - b)?;
    hyp_series(None, z, tol, EXTENDED_MAX_TERMS, move |n| {
        Ok(beta_nu(b + n as f64, c - b, p, nu, cfg)? / b_den)
    })
}

pub fn phi_pnu(
    b: f64,
    c: f64,
    z: f64,
    p: f64,
    nu: f64,
    method: HypMethod,
    cfg: &QuadConfig,
) -> Result<f64> {
    match method {
        HypMethod::Integral => Ok(phi_pnu_integral(b, c, z, p, nu, cfg)?.value),
        HypMethod::Series => {
            let s = phi_pnu_series(b, c, z, p, nu, cfg)?;
            if !s.converged {
                return Err(XsfError::SeriesNoConverge {
                    terms: s.terms_used,
                    last_term: s.last_term_abs,
                });
            }
            Ok(s.value)
        }
    }
}

/// Integer-order reduction of F_{p,n}: the finite sum over shifted F_p.
pub fn f_pnu_int_reduction(
    a: f64,
    b: f64,
    c: f64,
    z: f64,
    p: f64,
    n: u32,
    cfg: &QuadConfig,
) -> Result<f64> {
    check_bc(b, c)?;
    if !(p > 0.0) || !p.is_finite() {
        return param_err(format!("p must be positive, got {p}"));
    }
    let ln_b0 = ln_beta(b, c - b)?;
    let mut coeff = 1.0;
    let mut sum = f_p(a, b, c, z, p, cfg)?;
    for m in 0..n {
        let (nf, mf) = (n as f64, m as f64);
        coeff *= (nf + mf + 1.0) * (nf - mf) / (2.0 * p * (mf + 1.0));
        let m1 = mf + 1.0;
        let b_ratio = (ln_beta(b + m1, c - b + m1)? - ln_b0).exp();
        sum += coeff * b_ratio * f_p(a, b + m1, c + 2.0 * m1, z, p, cfg)?;
    }
    Ok(sum)
}

/// Integer-order reduction of Phi_{p,n}.
pub fn phi_pnu_int_reduction(
    b: f64,
    c: f64,
    z: f64,
    p: f64,
    n: u32,
    cfg: &QuadConfig,
) -> Result<f64> {
    check_bc(b, c)?;
    if !(p > 0.0) || !p.is_finite() {
        return param_err(format!("p must be positive, got {p}"));
    }
    let ln_b0 = ln_beta(b, c - b)?;
    let mut coeff = 1.0;
    let mut sum = phi_p(b, c, z, p, cfg)?;
    for m in 0..n {
        let (nf, mf) = (n as f64, m as f64);
        coeff *= (nf + mf + 1.0) * (nf - mf) / (2.0 * p * (mf + 1.0));
        let m1 = mf + 1.0;
        let b_ratio = (ln_beta(b + m1, c - b + m1)? - ln_b0).exp();
        sum += coeff * b_ratio * phi_p(b + m1, c + 2.0 * m1, z, p, cfg)?;
    }
    Ok(sum)
}

/// n-th z-derivative of F_{p,nu} through the parameter-shift formula
/// (a)_n (b)_n / (c)_n * F_{p,nu}(a+n, b+n; c+n; z); n = 0 returns the
/// function itself.
pub fn f_pnu_derivative(
    a: f64,
    b: f64,
    c: f64,
    z: f64,
    p: f64,
    nu: f64,
    n: u32,
    cfg: &QuadConfig,
) -> Result<f64> {
    let nf = n as f64;
    let coeff = pochhammer(a, n) * pochhammer(b, n) / pochhammer(c, n);
    Ok(coeff * f_pnu_integral(a + nf, b + nf, c + nf, z, p, nu, cfg)?.value)
}

/// n-th z-derivative of Phi_{p,nu}: (b)_n/(c)_n * Phi_{p,nu}(b+n; c+n; z).
pub fn phi_pnu_derivative(
    b: f64,
    c: f64,
    z: f64,
    p: f64,
    nu: f64,
    n: u32,
    cfg: &QuadConfig,
) -> Result<f64> {
    let nf = n as f64;
    let coeff = pochhammer(b, n) / pochhammer(c, n);
    Ok(coeff * phi_pnu_integral(b + nf, c + nf, z, p, nu, cfg)?.value)
}

/// Gauss summation: F_{p,nu}(a, b; c; 1) = B_nu(b, c-a-b; p) / B(b, c-b);
/// at p = 0 (and nu = 0) the classical closed form, requiring c - a - b > 0.
pub fn f_pnu_gauss_sum(a: f64, b: f64, c: f64, p: f64, nu: f64, cfg: &QuadConfig) -> Result<f64> {
    check_bc(b, c)?;
    check_finite("a", a)?;
    check_p_nu(p, nu)?;
    if p == 0.0 {
        if !(c - a - b > 0.0) {
            return param_err(format!(
                "classical Gauss summation requires c - a - b > 0, got {}",
                c - a - b
            ));
        }
        return Ok((ln_beta(b, c - a - b)? - ln_beta(b, c - b)?).exp());
    }
    let num = beta_nu(b, c - a - b, p, nu, cfg)?;
    Ok(num / classical_beta(b, c - b)?)
}

/// Generating-function identity: the N-term partial sum of
/// sum_n (a)_n F_{p,nu}(a+n, b; c; z) t^n/n! against
/// (1-t)^(-a) F_{p,nu}(a, b; c; z/(1-t)).
pub fn f_pnu_generating_check(
    a: f64,
    b: f64,
    c: f64,
    z: f64,
    t: f64,
    p: f64,
    nu: f64,
    n_terms: usize,
    cfg: &QuadConfig,
) -> Result<GeneratingCheckReport> {
    check_finite("t", t)?;
    if !(t.abs() < 1.0) {
        return param_err(format!("requires |t| < 1, got {t}"));
    }
    if n_terms < 1 {
        return param_err("n_terms must be at least 1");
    }
    let z_shift = z / (1.0 - t);
    // validates the shifted argument as well
    let rhs = (1.0 - t).powf(-a) * f_pnu_integral(a, b, c, z_shift, p, nu, cfg)?.value;
    let mut coef = 1.0; // (a)_n t^n / n!
    let mut sum = 0.0;
    let mut last = 0.0;
    for n in 0..n_terms {
        if n > 0 {
            let k = (n - 1) as f64;
            coef *= (a + k) * t / n as f64;
        }
        let term = coef * f_pnu_integral(a + n as f64, b, c, z, p, nu, cfg)?.value;
        sum += term;
        last = term.abs();
    }
    let abs_diff = (sum - rhs).abs();
    Ok(GeneratingCheckReport {
        lhs_partial: sum,
        rhs_closed: rhs,
        abs_diff,
        rel_diff: abs_diff / rhs.abs().max(f64::MIN_POSITIVE),
        terms_used: n_terms,
        last_term_abs: last,
    })
}

/// Leading-order large-z behaviour of Phi_{p,nu}(b; c; z) for z -> +inf:
/// z^(b-c) e^(z-p) gamma(c-b, z; p z) / B(b, c-b). The leading term does not
/// depend on nu.
pub fn phi_pnu_asymptotic(
    b: f64,
    c: f64,
    z: f64,
    p: f64,
    nu: f64,
    cfg: &QuadConfig,
) -> Result<f64> {
    check_bc(b, c)?;
    check_finite("nu", nu)?;
    if !(z > 0.0) || !z.is_finite() {
        return param_err(format!("requires z > 0, got {z}"));
    }
    if !(p > 0.0) || !p.is_finite() {
        return param_err(format!("requires p > 0, got {p}"));
    }
    let g = gamma_lower_p(c - b, z, p * z, cfg)?;
    let ln_val = (b - c) * z.ln() + z - p + g.ln() - ln_beta(b, c - b)?;
    Ok(ln_val.exp())
}

/// Truncated large-|z| expansion of F_{p,nu} on the negative real axis:
/// (-z)^(-a)/B(b, c-b) sum_{k<n} (a)_k/k! z^(-k) B_nu(b-a-k, c-b; p).
pub fn f_pnu_asymptotic(
    a: f64,
    b: f64,
    c: f64,
    z: f64,
    p: f64,
    nu: f64,
    n: u32,
    cfg: &QuadConfig,
) -> Result<f64> {
    check_bc(b, c)?;
    check_finite("a", a)?;
    if !(z < -1.0) || !z.is_finite() {
        return param_err(format!("requires z < -1, got {z}"));
    }
    if !(p > 0.0) || !p.is_finite() {
        return param_err(format!("requires p > 0, got {p}"));
    }
    if n < 1 {
        return param_err("expansion order n must be at least 1");
    }
    let mut coef = 1.0; // (a)_k / k! * z^(-k)
    let mut sum = 0.0;
    for k in 0..n {
        if k > 0 {
            coef *= (a + (k - 1) as f64) / (k as f64 * z);
        }
        sum += coef * beta_nu(b - a - k as f64, c - b, p, nu, cfg)?;
    }
    Ok((-z).powf(-a) / classical_beta(b, c - b)? * sum)
}

fn mellin_gamma_prefactor(s: f64, nu: f64) -> Result<f64> {
    if !(s - nu > 0.0) {
        return param_err(format!("requires s - nu > 0, got s={s}, nu={nu}"));
    }
    if !(s + nu > -1.0) {
        return param_err(format!("requires s + nu > -1, got s={s}, nu={nu}"));
    }
    Ok(((s - 1.0) * std::f64::consts::LN_2 - 0.5 * PI.ln()
        + ln_gamma(0.5 * (s - nu))
        + ln_gamma(0.5 * (s + nu + 1.0)))
    .exp())
}

fn mellin_outer_cfg(cfg: &QuadConfig) -> QuadConfig {
    QuadConfig {
        abs_tol: cfg.abs_tol.max(1e-14),
        rel_tol: cfg.rel_tol.max(1e-8),
        ..*cfg
    }
}

/// Mellin transform of F_{p,nu} in p: numeric int_0^inf p^(s-1) F dp against
/// the closed form with the classical 2F1 factor.
pub fn f_pnu_mellin_check(
    a: f64,
    b: f64,
    c: f64,
    z: f64,
    s: f64,
    nu: f64,
    cfg: &QuadConfig,
) -> Result<MellinCheckReport> {
    check_bc(b, c)?;
    check_finite("s", s)?;
    if !(z.abs() < 1.0) {
        return param_err(format!("Mellin closed form requires |z| < 1, got {z}"));
    }
    let pref = mellin_gamma_prefactor(s, nu)?;
    let f_factor = gauss_2f1(a, b + s, c + 2.0 * s, z, 1e-14)?;
    if !f_factor.converged {
        return Err(XsfError::SeriesNoConverge {
            terms: f_factor.terms_used,
            last_term: f_factor.last_term_abs,
        });
    }
    let rhs = pref * (ln_beta(b + s, c + s - b)? - ln_beta(b, c - b)?).exp() * f_factor.value;

    let inner = *cfg;
    let outer = mellin_outer_cfg(cfg);
    let g = |p: f64| match f_pnu_integral(a, b, c, z, p, nu, &inner) {
        Ok(r) => p.powf(s - 1.0) * r.value,
        Err(_) => f64::NAN,
    };
    let head = require_converged(integrate_finite(&g, 0.0, 1.0, &outer)?)?;
    let tail = require_converged(integrate_semi_infinite(&g, 1.0, &outer)?)?;
    Ok(MellinCheckReport::new(
        s,
        nu,
        b,
        c - b,
        head.value + tail.value,
        rhs,
    ))
}

/// Mellin transform of Phi_{p,nu} in p against the closed form with the
/// classical 1F1 factor.
pub fn phi_pnu_mellin_check(
    b: f64,
    c: f64,
    z: f64,
    s: f64,
    nu: f64,
    cfg: &QuadConfig,
) -> Result<MellinCheckReport> {
    check_bc(b, c)?;
    check_finite("s", s)?;
    check_finite("z", z)?;
    let pref = mellin_gamma_prefactor(s, nu)?;
    let phi_factor = kummer_1f1(b + s, c + 2.0 * s, z, 1e-14)?;
    if !phi_factor.converged {
        return Err(XsfError::SeriesNoConverge {
            terms: phi_factor.terms_used,
            last_term: phi_factor.last_term_abs,
        });
    }
    let rhs = pref * (ln_beta(b + s, c + s - b)? - ln_beta(b, c - b)?).exp() * phi_factor.value;

    let inner = *cfg;
    let outer = mellin_outer_cfg(cfg);
    let g = |p: f64| match phi_pnu_integral(b, c, z, p, nu, &inner) {
        Ok(r) => p.powf(s - 1.0) * r.value,
        Err(_) => f64::NAN,
    };
    let head = require_converged(integrate_finite(&g, 0.0, 1.0, &outer)?)?;
    let tail = require_converged(integrate_semi_infinite(&g, 1.0, &outer)?)?;
    Ok(MellinCheckReport::new(
        s,
        nu,
        b,
        c - b,
        head.value + tail.value,
        rhs,
    ))
}
