use thiserror::Error;

/// Errors raised by evaluators, table builders and the verification harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error in {op}: {msg}")]
    Domain { op: &'static str, msg: String },

    /// A precondition of a composite check (bound chain, grid) is not met.
    /// This is a rejection of the request, not a failed verdict.
    #[error("precondition violated for {op}: {msg}")]
    Precondition { op: &'static str, msg: String },

    /// Two independent computation routes disagreed.
    #[error("internal consistency error: {0}")]
    Inconsistent(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(op: &'static str, msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain {
        op,
        msg: msg.into(),
    })
}

pub(crate) fn precondition<T>(op: &'static str, msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition {
        op,
        msg: msg.into(),
    })
}
