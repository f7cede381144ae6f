use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Inconsistent or out-of-range parameters.
    #[error("parameter error: {0}")]
    Parameter(String),
    /// An operation's precondition on its inputs does not hold.
    #[error("contract violation: {0}")]
    Contract(String),
    /// A brute-force oracle was asked for an input above its documented limit.
    #[error("oracle limit exceeded: {0}")]
    OracleLimit(String),
    /// Malformed text input.
    #[error("parse error: {0}")]
    Parse(String),
    /// A construction name, theorem id or family that does not exist.
    #[error("unknown name: {0}")]
    UnknownName(String),
    /// Something that must not happen did.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}
