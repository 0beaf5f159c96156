use alloc::string::String;

use crate::exactreal::ExactError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("argument out of domain: {0}")]
    Domain(String),
    #[error("quadrature error estimate {estimate:e} exceeds tolerance {tolerance:e}")]
    PrecisionNotMet { estimate: f64, tolerance: f64 },
    #[error("zero refinement for degree {n} did not converge")]
    ConvergenceFailure { n: usize },
    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),
    #[error("invalid quadrature configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("value has no exact representation: {0}")]
    NotRepresentable(&'static str),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

pub type Result<T> = core::result::Result<T, Error>;
