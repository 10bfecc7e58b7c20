use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
    #[error("invalid move: {0}")]
    InvalidMove(String),
    #[error("not realizable ({stage}): {reason}")]
    NotRealizable { stage: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn arg<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}

pub(crate) fn fail<T>(stage: &str, reason: impl Into<String>) -> Result<T> {
    Err(Error::NotRealizable { stage: stage.to_string(), reason: reason.into() })
}
