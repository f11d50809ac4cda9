//! Classical gamma-family helpers: log-gamma, Beta function, Pochhammer symbol.
//!
//! Everything downstream (Mellin closed forms, series coefficients, Beta
//! prefactors) goes through these, so the whole verification chain shares a
//! single log-gamma.

use std::f64::consts::PI;

use crate::error::{param_err, Result};

// Lanczos approximation, g = 7, n = 9 (Godfrey coefficients).
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_74;

fn lanczos_sum(z: f64) -> f64 {
    let mut sum = LANCZOS_COEFFS[0];
    for (i, &c) in LANCZOS_COEFFS[1..].iter().enumerate() {
        sum += c / (z + (i + 1) as f64);
    }
    sum
}

/// sin(pi x) with argument reduction, accurate near integer x.
pub(crate) fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (0.5 * x).round(); // r in [-1, 1], x = 2k + r
    (PI * r).sin()
}

/// ln Gamma(x) for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma requires x > 0, got {x}");
    if x < 0.5 {
        // reflection keeps the Lanczos series in its accurate range
        return PI.ln() - sin_pi(x).ln() - ln_gamma(1.0 - x);
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    HALF_LN_TWO_PI + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln()
}

/// ln |Gamma(x)| together with the sign of Gamma(x), for any non-pole real x.
pub fn ln_abs_gamma(x: f64) -> (f64, f64) {
    if x > 0.0 {
        return (ln_gamma(x), 1.0);
    }
    // Gamma(x) = pi / (sin(pi x) Gamma(1 - x))
    let s = sin_pi(x);
    assert!(s != 0.0, "gamma pole at x = {x}");
    let ln_abs = PI.ln() - s.abs().ln() - ln_gamma(1.0 - x);
    (ln_abs, s.signum())
}

/// Gamma(x) for any non-pole real x.
pub fn gamma(x: f64) -> f64 {
    let (ln_abs, sign) = ln_abs_gamma(x);
    sign * ln_abs.exp()
}

/// ln B(a, b) for a, b > 0.
pub fn ln_beta(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) || !a.is_finite() || !b.is_finite() {
        return param_err(format!("ln_beta requires a > 0 and b > 0, got a={a}, b={b}"));
    }
    Ok(ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b))
}

/// The classical Beta function B(a, b) = Gamma(a)Gamma(b)/Gamma(a+b).
pub fn beta(a: f64, b: f64) -> Result<f64> {
    Ok(ln_beta(a, b)?.exp())
}

/// Pochhammer symbol (rising factorial) (a)_n.
pub fn pochhammer(a: f64, n: u32) -> f64 {
    let mut prod = 1.0;
    for k in 0..n {
        prod *= a + k as f64;
    }
    prod
}

/// Gamma(n + m + 1) / Gamma(n - m + 1) for integers 0 <= m <= n, as an exact
/// falling product (n+m)(n+m-1)...(n-m+1).
pub fn gamma_integer_ratio(n: u32, m: u32) -> f64 {
    debug_assert!(m <= n);
    let mut prod = 1.0;
    for k in (n - m + 1)..=(n + m) {
        prod *= k as f64;
    }
    prod
}
