//! Shared oracle helpers for the integration suites. Everything here is
//! deliberately independent of the adaptive engine under test.

#![allow(dead_code)]

/// Relative difference against a reference value.
pub fn rel(got: f64, reference: f64) -> f64 {
    (got - reference).abs() / reference.abs().max(f64::MIN_POSITIVE)
}

/// Interval-halving trapezoid refinement. Converges geometrically for
/// integrands whose derivatives vanish at both endpoints (every kernel
/// integrand here) and is the brute-force reference for the engine.
pub fn trapezoid_refine<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    let mut n = 64usize;
    let mut prev = f64::NAN;
    let mut val = f64::NAN;
    for _ in 0..18 {
        let h = (b - a) / n as f64;
        let mut s = 0.5 * (f(a) + f(b));
        for i in 1..n {
            s += f(a + i as f64 * h);
        }
        val = s * h;
        if (val - prev).abs() <= tol * val.abs().max(1e-300) {
            break;
        }
        prev = val;
        n *= 2;
    }
    val
}

/// Interval-halving Simpson refinement for integrands that are not
/// endpoint-flat (classical p = 0 tails).
pub fn simpson_refine<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    let mut n = 128usize;
    let mut prev = f64::NAN;
    let mut val = f64::NAN;
    for _ in 0..16 {
        let h = (b - a) / n as f64;
        let mut s = f(a) + f(b);
        for i in 1..n {
            s += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        val = s * h / 3.0;
        if (val - prev).abs() <= tol * val.abs().max(1e-300) {
            break;
        }
        prev = val;
        n *= 2;
    }
    val
}
