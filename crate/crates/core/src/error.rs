use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An operation was called outside its precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// A chain space would exceed the configured ceiling.
    #[error("resource ceiling exceeded: {what} needs {needed}, ceiling is {ceiling}")]
    Resource {
        what: String,
        needed: u128,
        ceiling: u128,
    },

    /// Malformed serialized input.
    #[error("schema error: {0}")]
    Schema(String),

    /// An internal invariant failed; always a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
