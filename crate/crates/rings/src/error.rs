use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("nilpotent order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("element is not a unit: constant term is zero")]
    NonUnit,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("limit at q = 1 is undefined: reduced denominator vanishes at 1")]
    LimitUndefined,
    #[error("truncation mismatch: {left} vs {right}")]
    TruncationMismatch { left: usize, right: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type RingResult<T> = Result<T, RingError>;
