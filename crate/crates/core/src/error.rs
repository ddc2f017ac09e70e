use thiserror::Error;

/// Errors raised by the algebra routines.
///
/// The variants split into caller mistakes (`Parameter`, `Parse`), resource
/// guards (`Resource`), and conditions that indicate a bug in the library
/// (`Invariant`, `BasisFailure`, `Termination`).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("resource cap exceeded: {what} needs {needed}, cap is {cap}")]
    Resource {
        what: String,
        needed: usize,
        cap: usize,
    },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("standard-monomial basis failure: {0}")]
    BasisFailure(String),
    #[error("rewriting did not terminate: {0}")]
    Termination(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub(crate) fn resource(what: impl Into<String>, needed: usize, cap: usize) -> Self {
        Error::Resource {
            what: what.into(),
            needed,
            cap,
        }
    }
}
