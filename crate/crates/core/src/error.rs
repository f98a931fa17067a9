use thiserror::Error;

/// Errors produced by the engines in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A caller-supplied argument violates an operation's precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A table lookup for a value that was never computed.
    #[error("missing entry: moment of order {s} at size {n}")]
    MissingEntry { n: usize, s: usize },

    /// An internal invariant did not hold. This always indicates a bug.
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
