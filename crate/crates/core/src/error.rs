use thiserror::Error;

/// Failures reported by the toolkit.
///
/// `Usage` covers malformed input (bad encodings, out-of-range arguments).
/// `Domain` covers well-formed input that violates a mathematical
/// precondition, such as asking for the Frobenius number of a non-coprime
/// set or testing quasi-smoothness of a linear cone.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("enumeration refused: estimated {estimated} evaluations exceeds ceiling {ceiling}")]
    CeilingExceeded { estimated: u128, ceiling: u128 },
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
