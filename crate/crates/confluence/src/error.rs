use qonf_qdiff::QDiffError;
use qonf_qspecial::SpecialError;
use qonf_rings::RingError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfluenceError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("root is not simple at q = 1")]
    MultipleRoot,
    #[error("resonance at degree {degree}: eigenvalues of B(0) differ by a positive integer")]
    Resonance { degree: usize },
    #[error("unsupported Jordan structure: {0}")]
    UnsupportedJordan(String),
    #[error("not analytic at Q = 0: {0}")]
    NotAnalytic(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    QDiff(#[from] QDiffError),
    #[error(transparent)]
    Special(#[from] SpecialError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

pub type ConfluenceResult<T> = Result<T, ConfluenceError>;
