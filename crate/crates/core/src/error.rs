use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("incompatible groups: {0}")]
    IncompatibleGroups(String),
    #[error("ball budget exceeded: {0}")]
    BallBudgetExceeded(String),
    #[error("reduction budget exceeded after {0} steps")]
    ReductionBudgetExceeded(u64),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("perturbation failed: {0}")]
    PerturbationFailed(String),
    #[error("uncertified convex subgroup: {0}")]
    UncertifiedConvex(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl Error {
    /// Budget-type failures, as opposed to usage or logic errors.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::BallBudgetExceeded(_) | Error::ReductionBudgetExceeded(_) | Error::BudgetExceeded(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
