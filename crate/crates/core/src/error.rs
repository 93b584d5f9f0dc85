use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("size overflow: {0}")]
    Size(String),

    #[error("capability error: {0}")]
    Capability(String),

    #[error("degenerate sampling: achieved rank {rank}, needed {needed}; retry with more candidates")]
    DegenerateSampling { rank: usize, needed: usize },

    #[error("indeterminate: {0}")]
    Indeterminate(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("distribution mismatch: {0}")]
    DistributionMismatch(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// True for errors caused by bad arguments rather than numerical trouble.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::InvalidInput(_) | Error::DimensionMismatch { .. } | Error::Size(_) | Error::Capability(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
