use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("enumeration of {order} elements exceeds the cap of {cap}")]
    CapExceeded { order: u128, cap: u64 },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("dimension or degree mismatch: {0}")]
    Mismatch(String),
    #[error("validation failed: {}", .0.join("; "))]
    Validation(Vec<String>),
    #[error("unknown library manifold `{0}`")]
    UnknownManifold(String),
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invalid(msg.into()))
}
