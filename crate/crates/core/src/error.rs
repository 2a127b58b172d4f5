use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// Violated precondition on caller-supplied data (size mismatch, bad shape, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A quantity that must be integral (or a residual that must vanish) was not.
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),

    /// The highest-weight-vector construction would exceed its term budget.
    #[error("resource limit: h_T would have {terms} terms, budget is {budget}")]
    Resource { terms: u128, budget: u128 },

    #[error("fit failed: {0}")]
    Fit(#[from] crate::quasipoly::FitError),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
