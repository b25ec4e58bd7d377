use qonf_confluence::ConfluenceError;
use qonf_qdiff::QDiffError;
use qonf_qspecial::SpecialError;
use qonf_rings::RingError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GwError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("N_{d} is not an integer: {value}")]
    NonInteger { d: usize, value: String },
    #[error("limit q → 1 undefined at Q^{d} ε^{i} L^{m}")]
    LimitUndefined { d: usize, i: usize, m: usize },
    #[error("resonant equivariant parameters: λ_{i} − λ_{j} = {ratio}·z")]
    Resonance { i: usize, j: usize, ratio: String },
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Special(#[from] SpecialError),
    #[error(transparent)]
    QDiff(#[from] QDiffError),
    #[error(transparent)]
    Confluence(#[from] ConfluenceError),
}

pub type GwResult<T> = Result<T, GwError>;
