use thiserror::Error;

/// Errors raised across the toolkit.
///
/// Input problems (`Parse`, `InvalidInput`) are kept apart from resource
/// limits (`Budget`) so the CLI can map them to distinct exit codes.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("insufficient ball radius: {0}")]
    Radius(String),

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }

    pub(crate) fn invalid(message: impl Into<String>) -> Self {
        Error::InvalidInput(message.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
