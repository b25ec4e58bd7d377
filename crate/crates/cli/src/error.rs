use qonf_confluence::ConfluenceError;
use qonf_gw::GwError;
use qonf_qdiff::QDiffError;
use qonf_qspecial::SpecialError;
use qonf_rings::RingError;
use thiserror::Error;

/// Exit status 0 is success; every error maps to 1 or 2 via [`CliError::exit_code`].
#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("{0}")]
    Resonance(String),
    /// A library error, already carrying its own category prefix.
    #[error("{0}")]
    Library(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) | CliError::Resonance(_) => 1,
            CliError::Usage(_) | CliError::Input(_) | CliError::Library(_) | CliError::Io(_) => 2,
        }
    }
}

impl From<GwError> for CliError {
    fn from(e: GwError) -> Self {
        match e {
            GwError::Resonance { .. } => CliError::Resonance(e.to_string()),
            GwError::Confluence(c) => c.into(),
            other => CliError::Library(other.to_string()),
        }
    }
}

impl From<ConfluenceError> for CliError {
    fn from(e: ConfluenceError) -> Self {
        match e {
            ConfluenceError::Resonance { .. } => CliError::Resonance(e.to_string()),
            other => CliError::Library(other.to_string()),
        }
    }
}

impl From<QDiffError> for CliError {
    fn from(e: QDiffError) -> Self {
        match e {
            QDiffError::Resonance { .. } => CliError::Resonance(e.to_string()),
            other => CliError::Library(other.to_string()),
        }
    }
}

impl From<SpecialError> for CliError {
    fn from(e: SpecialError) -> Self {
        CliError::Library(e.to_string())
    }
}

impl From<RingError> for CliError {
    fn from(e: RingError) -> Self {
        CliError::Library(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
