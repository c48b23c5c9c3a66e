use thiserror::Error;

/// Crate-wide error type.
///
/// The variants map onto the process exit codes used by the CLI:
/// invalid input -> 2, bound/budget violations -> 3, self-check failures -> 4.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A argument violates a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A value exceeds the safe exact-arithmetic bound.
    #[error("{what} = {value} exceeds the safe bound {bound}")]
    BoundExceeded {
        what: &'static str,
        value: u128,
        bound: u128,
    },

    /// An enumeration or memory budget would be exceeded.
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    /// Two independent evaluation paths disagreed; this signals a bug.
    #[error("self-check failed: {0}")]
    SelfCheck(String),
}

impl Error {
    /// Process exit code the CLI maps this error to.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_) => 2,
            Error::BoundExceeded { .. } | Error::BudgetExceeded(_) => 3,
            Error::SelfCheck(_) => 4,
        }
    }
}
