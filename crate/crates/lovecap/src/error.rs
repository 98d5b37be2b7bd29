use thiserror::Error;

/// Errors produced by the solvers, series evaluators, and the matching engine.
#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative computation stopped before reaching the requested tolerance.
    #[error("convergence failure: {message} (best estimate {best:e}, achieved error {achieved:e})")]
    Convergence {
        message: String,
        best: f64,
        achieved: f64,
    },

    /// The requested evaluation point violates an accuracy guard.
    #[error("accuracy guard: {0}")]
    Accuracy(String),

    /// Evaluation point outside an expansion's validity window.
    #[error("outside validity window: {0}")]
    Validity(String),

    /// A matching equation referenced more than one absent coefficient.
    #[error("unresolved coefficients: {0:?}")]
    MissingCoefficients(Vec<String>),

    /// The recursion ordering produced an equation with zero or multiple unknowns.
    #[error("equation ordering violation at {id}: {detail}")]
    OrderingViolation { id: String, detail: String },

    /// A series assembly required table entries beyond the computed order.
    #[error("incomplete coefficient table: {0}")]
    IncompleteTable(String),

    /// Invalid argument combination (flag validation and similar).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("linear solve failed: {0}")]
    LinearSolve(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
