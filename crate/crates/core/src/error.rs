use thiserror::Error;

/// Errors produced by constructors, verifiers and the bounds evaluator.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The operation needs a different alphabet (usually binary).
    #[error("alphabet error: {0}")]
    Alphabet(String),
    /// A parameter lies outside the accepted range.
    #[error("parameter error: {0}")]
    Parameter(String),
    /// The request would exceed a memory or work cap.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    /// A numeric argument is outside the function's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// The randomized constructor hit its batch cap without covering everything.
    #[error("no convergence after {batches} batches ({uncovered} constraints still uncovered)")]
    NonConvergence { batches: usize, uncovered: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
