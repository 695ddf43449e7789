use alloc::string::String;

use thiserror::Error;

/// Errors raised by the exact algebra layer and the constructions built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mismatched rings: {0}")]
    RingMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("{value} is not a square in {field}; choose a different prime")]
    NotASquare { value: String, field: String },
    #[error("field too small: {0}")]
    FieldTooSmall(String),
    #[error("binary form does not split over {0}")]
    NotSplit(String),
    #[error("binary form is not squarefree: {0}")]
    NotSquarefree(String),
    #[error("degree cap {cap} reached before {what}")]
    DegreeCapExceeded { cap: i64, what: String },
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

pub type Result<T> = core::result::Result<T, AlgebraError>;
