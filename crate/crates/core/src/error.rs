use thiserror::Error;

use crate::enumeration::IndexSubset;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The subset budget ran out before the search finished. `partial` holds
    /// the members found so far; it is not a valid catalog.
    #[error("enumeration budget exceeded after examining {examined} subsets (limit {limit})")]
    BudgetExceeded {
        examined: u64,
        limit: u64,
        partial: Vec<IndexSubset>,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("malformed document: {0}")]
    Document(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
