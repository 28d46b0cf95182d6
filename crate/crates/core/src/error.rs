//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the embedding workbench.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument violated a precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A closed-form expression is undefined for the given input and the
    /// caller should use a numeric fallback instead.
    #[error("domain error: {0}")]
    Domain(String),

    /// A numeric routine failed to reach the requested quality.
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
