//! Error type shared by every evaluator in the crate.

use thiserror::Error;

/// Failure modes of the numerical evaluators.
#[derive(Debug, Clone, Error)]
pub enum XsfError {
    /// A precondition on the parameters was violated.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// The integrand produced a non-finite value at an interior node.
    #[error("integrand not finite at t = {at}")]
    NonFiniteIntegrand { at: f64 },

    /// A semi-infinite integrand whose dyadic tail blocks do not shrink.
    #[error("tail does not converge")]
    TailDivergence,

    /// The adaptive engine exhausted its budget above the requested tolerance.
    #[error("quadrature did not converge: error estimate {err_estimate:e} after {evals} evaluations")]
    QuadratureNoConverge { err_estimate: f64, evals: usize },

    /// A truncated series failed its tail criterion within the term budget.
    #[error("series did not converge within {terms} terms (last term {last_term:e})")]
    SeriesNoConverge { terms: usize, last_term: f64 },
}

pub type Result<T> = std::result::Result<T, XsfError>;

pub(crate) fn param_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(XsfError::Parameter(msg.into()))
}
