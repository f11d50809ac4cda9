//! Bessel-kernel extensions of classical special functions.
//!
//! The crate evaluates the extended Beta function with modified Bessel
//! kernel, the matching extensions of the incomplete gamma, Gauss
//! hypergeometric and confluent hypergeometric functions, and the probability
//! distribution induced by the extended Beta integrand. Alongside the
//! evaluators it ships the identities the family satisfies (functional
//! relations, summation formulas, transformations, Mellin transforms,
//! asymptotic expansions) as checkable operations, so every value can be
//! cross-validated through an independent route.
//!
//! Layout:
//! - [`quad`]: adaptive Gauss-Kronrod engine for finite and semi-infinite
//!   intervals; open rules only, so endpoint-decaying integrands are safe.
//! - [`gamma`]: classical log-gamma, Beta and Pochhammer plumbing.
//! - [`bessel`]: the modified Bessel function K of real order, exact for
//!   half-integer orders and numeric elsewhere, plus scaled variants that
//!   avoid underflow inside product integrands.
//! - [`ext_gamma`]: extended incomplete gamma functions.
//! - [`ext_beta`]: the extended Beta function, its alternative integral
//!   representations, reductions, summation formulas and Mellin transform.
//! - [`hyp`]: extended Gauss and confluent hypergeometric functions.
//! - [`dist`]: the extended Beta probability distribution.

pub mod bessel;
pub mod dist;
pub mod error;
pub mod ext_beta;
pub mod ext_gamma;
pub mod gamma;
pub mod hyp;
pub mod quad;

pub use error::{Result, XsfError};
pub use quad::{QuadConfig, QuadResult};

/// Partial-sum outcome of a truncated series evaluation.
///
/// `converged` means the tail criterion (last term below the caller-supplied
/// tolerance) was met within the term budget.
#[derive(Debug, Clone, Copy)]
pub struct SeriesResult {
    pub value: f64,
    pub terms_used: usize,
    pub last_term_abs: f64,
    pub converged: bool,
}
