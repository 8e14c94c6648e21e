use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Matrix shapes do not fit together.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: String, got: String },
    /// A documented precondition was violated by the caller.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A numerical procedure failed (singular system, no convergence).
    #[error("numerical failure: {0}")]
    Numerical(String),
    /// The input is valid but lies outside what the library handles.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
