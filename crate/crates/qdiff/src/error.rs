use qonf_qspecial::SpecialError;
use qonf_rings::RingError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QDiffError {
    #[error("degenerate operator: leading coefficient is identically zero")]
    DegenerateOperator,
    #[error("resonance at degree {degree}: the per-degree linear system is singular")]
    Resonance { degree: usize },
    #[error("unsupported Jordan structure: {0}")]
    UnsupportedJordan(String),
    #[error("operator is not maximally unipotent at 0: {0}")]
    NotMaximalUnipotent(String),
    #[error("singular matrix")]
    Singular,
    #[error("not analytic at Q = 0: {0}")]
    NotAnalytic(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Special(#[from] SpecialError),
}

pub type QDiffResult<T> = Result<T, QDiffError>;
