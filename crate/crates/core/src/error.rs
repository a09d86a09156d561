use thiserror::Error;

/// Errors raised by the exact arithmetic, analysis, and dynamics layers.
#[derive(Debug, Error)]
pub enum Error {
    /// The input lies outside the domain of the operation (e.g. valuation of zero).
    #[error("domain error: {0}")]
    Domain(String),
    /// A caller-supplied argument violates a precondition.
    #[error("invalid argument: {0}")]
    Argument(String),
    /// An internal consistency check failed. This always indicates a bug.
    #[error("internal consistency error: {0}")]
    Internal(String),
    /// A mathematical contract the engine verifies was violated.
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("numerical divergence: {0}")]
    Diverged(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! arg_err {
    ($($t:tt)*) => { $crate::error::Error::Argument(format!($($t)*)) };
}
macro_rules! internal_err {
    ($($t:tt)*) => { $crate::error::Error::Internal(format!($($t)*)) };
}
pub(crate) use {arg_err, internal_err};
