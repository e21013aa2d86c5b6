use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("spline order must be in 1..={max}, got {n}")]
    InvalidOrder { n: usize, max: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("root iteration did not converge after {iterations} iterations (last correction {correction:e})")]
    ConvergenceFailure { iterations: usize, correction: f64 },

    #[error("could not pair root {root} with a reciprocal partner")]
    PairingFailure { root: String },

    #[error("invalid branch: {0}")]
    BranchInvalid(String),

    #[error("mask is not orthonormal: residual {residual:e} exceeds {tolerance:e}")]
    NotOrthonormal { residual: f64, tolerance: f64 },

    #[error(
        "signal length {length} is not usable with {levels} levels (filter length {filter_len})"
    )]
    LengthError {
        length: usize,
        levels: usize,
        filter_len: usize,
    },

    #[error("inconsistent coefficient pyramid: {0}")]
    ShapeError(String),
}

pub type Result<T> = std::result::Result<T, Error>;
