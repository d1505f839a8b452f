use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An orientation word contained a symbol other than `R`, `L`, `>` or `<`.
    #[error("invalid orientation symbol {found:?} at position {position}")]
    Parse { position: usize, found: char },

    /// An argument violated an operation's precondition.
    #[error("{0}")]
    Domain(String),

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    /// An exhaustive or elimination procedure would exceed its configured budget.
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    /// A bounded search finished without a solution. This is not a proof of nonexistence.
    #[error("not found within bound: {0}")]
    NotFoundWithinBound(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, found })
    }
}
