use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on user-supplied data was violated.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// The request exceeds a configured budget (see [`crate::Limits`]).
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    /// No rational generating function exists within the degree bound.
    #[error("generating function fit failed: {0}")]
    FitFailure(String),
    /// Two independent computations of the same quantity disagreed. This is
    /// always a bug and is reported as a hard failure.
    #[error("internal consistency check failed: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
