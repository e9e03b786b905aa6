use thiserror::Error;

/// Errors raised by the library. The CLI maps `Usage` and `Spec` to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Caller passed arguments outside an operation's contract.
    #[error("usage error: {0}")]
    Usage(String),
    /// An arithmetic precondition failed (e.g. inverting a non-unit).
    #[error("arithmetic error: {0}")]
    Arithmetic(String),
    /// A relation/ground specification describes an infinite or ill-formed family.
    #[error("specification error: {0}")]
    Spec(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}
