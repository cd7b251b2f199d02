//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by exact computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two scalars built over different prime powers were combined.
    #[error("mismatched field sizes: q = {left} and q = {right}")]
    MismatchedQ { left: u64, right: u64 },
    /// Division by an element that is not invertible in Q[u]/(u^4 - q).
    #[error("division by a non-unit scalar")]
    NonUnit,
    /// The requested field size is not a prime power.
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    /// A brute-force enumeration would exceed its configured bound.
    #[error("enumeration bound exceeded: {what} needs {needed}, bound is {bound}")]
    BoundExceeded {
        what: String,
        needed: u64,
        bound: u64,
    },
    /// A quiver representation is not nilpotent.
    #[error("representation is not nilpotent")]
    NotNilpotent,
    /// A denominator is not compatible with the requested operation.
    #[error("denominator mismatch: {0}")]
    Denominator(String),
    /// A precondition of an operation is violated.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// Textual or JSON input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
