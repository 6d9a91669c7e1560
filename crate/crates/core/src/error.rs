use thiserror::Error;

/// Errors surfaced by the library. The CLI maps these onto exit codes:
/// parse errors exit 1, caps/unsupported inputs exit 2, internal invariant
/// violations exit 3.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    Cap(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub fn cap(msg: impl Into<String>) -> Self {
        Error::Cap(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
