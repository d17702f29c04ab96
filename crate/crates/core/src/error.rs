//! Error taxonomy shared by all modules.
//!
//! The variants mirror the failure classes the CLI distinguishes by exit
//! code: bad inputs, exact-arithmetic capacity, memory/size budgets, and
//! numerical non-convergence.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// An exact result would not fit the fixed-width integer range.
    #[error("capacity error: {0}")]
    Capacity(String),

    /// A table, block or expansion would exceed the configured budget.
    #[error("resource error: {0}")]
    Resource(String),

    /// An iterative numeric routine failed to converge.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// Internal invariant violation; indicates a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn capacity(msg: impl Into<String>) -> Self {
        Error::Capacity(msg.into())
    }
    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }
    pub fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }
    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
