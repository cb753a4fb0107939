use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument violated a documented precondition (dimension, range, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An operation that requires two neighbouring simplices was given a
    /// non-neighbouring pair (or a similar relational precondition failed).
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A request would enumerate more objects than the configured guard allows.
    #[error("refused: {0}")]
    Refused(String),

    /// An input file or collection is malformed.
    #[error("validation failed at {path}: {message}")]
    Validation { path: String, message: String },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn validation(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            path: path.into(),
            message: message.into(),
        }
    }
}
