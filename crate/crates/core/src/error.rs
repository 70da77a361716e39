use thiserror::Error;

/// Errors raised by projection routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProjectionError {
    #[error("input vector is empty")]
    Empty,
    #[error("scale must be positive and finite, got {0}")]
    InvalidScale(f64),
    #[error("entry {index} is not finite ({value})")]
    NonFinite { index: usize, value: f64 },
    #[error("weight {index} must be positive and finite, got {value}")]
    InvalidWeight { index: usize, value: f64 },
    #[error("length mismatch: {values} values but {weights} weights")]
    LengthMismatch { values: usize, weights: usize },
    #[error("pivot {tau} reconstructs a sum of {sum}, expected {b}")]
    BadPivot { tau: f64, sum: f64, b: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

pub type Result<T> = std::result::Result<T, ProjectionError>;
