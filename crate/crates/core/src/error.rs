//! Crate-wide error type.
//!
//! Every fallible public operation returns [`Error`]. Checkers distinguish a
//! claim that *fails* (a verdict) from a claim that cannot be evaluated (an
//! error); only the latter surfaces through this type.

use thiserror::Error;

/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on an argument was violated.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The request is well formed but outside the supported families,
    /// ranks, or table rows.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A factorization did not complete within its budget. The partial
    /// result, when meaningful, travels with the variant that raised it.
    #[error("factorization budget exhausted on a {digits}-digit composite")]
    FactorBudget { digits: usize },

    /// Graph construction ran out of budget; the completed portion is kept.
    #[error("graph construction incomplete: {reason}")]
    PartialGraph {
        reason: String,
        graph: Box<crate::graph::PrimeGraph>,
    },

    /// Claim data could not be parsed or is internally inconsistent.
    #[error("malformed claim {id}: {reason}")]
    MalformedClaim { id: String, reason: String },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
}
