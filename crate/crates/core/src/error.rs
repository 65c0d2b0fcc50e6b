use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Cartan type {label}{rank}")]
    InvalidType { label: String, rank: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("level context mismatch: {0} vs {1}")]
    LevelMismatch(i64, i64),
    #[error("anchor mismatch: {0}")]
    AnchorMismatch(String),
    #[error("truncation: {0}")]
    Truncation(String),
    #[error("internal: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}
