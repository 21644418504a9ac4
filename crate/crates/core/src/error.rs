use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("Laguerre parameter a = {0} must exceed -1")]
    LaguerreParameter(f64),

    #[error("0F1 parameter c = {0} is a nonpositive integer")]
    Hyp0f1Pole(f64),

    #[error("series did not converge after {terms} terms")]
    NonConvergence { terms: usize },

    #[error("quadrature did not converge (last two estimates differ by {delta:e})")]
    QuadratureNonConvergence { delta: f64 },

    #[error("cancellation: summed magnitude exceeds result by a factor {ratio:e}")]
    Cancellation { ratio: f64 },

    #[error("polynomial degree {degree} exceeds the recurrence limit {limit}")]
    DegreeLimit { degree: usize, limit: usize },

    #[error("imaginary residue {residue:e} exceeds tolerance {tolerance:e}")]
    ImaginaryResidue { residue: f64, tolerance: f64 },

    #[error("generalized Pochhammer symbol hits a pole at row {row}")]
    PochhammerPole { row: usize },

    #[error("secular equation: no sign change bracketing root {index}")]
    BracketFailure { index: usize },

    #[error("interlacing violated at recursion step {step}")]
    InterlacingViolation { step: usize },

    #[error("trace identity violated at recursion step {step}: residual {residual:e}")]
    TraceViolation { step: usize, residual: f64 },

    #[error("eigen-decomposition residual {residual:e} exceeds 1e-10 of the matrix norm")]
    EigenResidual { residual: f64 },

    #[error("numerical check failed: {0}")]
    CheckFailed(String),

    #[error("product leaves double range (mean log-modulus {log_abs_mean})")]
    ProductOverflow { log_abs_mean: f64 },

    #[error("normalised value e^{log_abs} leaves double range")]
    DecodeOverflow { log_abs: f64 },

    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
