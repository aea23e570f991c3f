use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid character {found:?} at index {index}")]
    Parse { index: usize, found: char },

    #[error("malformed input: {0}")]
    Malformed(String),

    /// A search that a theorem guarantees to succeed came back empty. This
    /// is a bug, never a property of the input.
    #[error("internal contradiction: {0}")]
    Contradiction(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn contradiction(msg: impl Into<String>) -> Self {
        Error::Contradiction(msg.into())
    }
}
