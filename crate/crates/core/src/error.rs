use alloc::string::String;

/// Errors raised by the planning and solving routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch in {what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("store {store} has {count} trailers but at most {max} are allowed")]
    TrailerBound { store: usize, count: u64, max: u64 },
    #[error("trailer assignment is empty")]
    EmptyAssignment,
    #[error("transport network cannot route the required mass")]
    Infeasible,
    #[error("flow is unbalanced: {0}")]
    Unbalanced(String),
    #[error("enumeration size {size} exceeds budget {budget}")]
    BudgetExceeded { size: u128, budget: u128 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("integer overflow while scaling costs")]
    CostOverflow,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("found only {found} of {requested} feasible audit triplets")]
    SamplingExhausted { found: usize, requested: usize },
}

pub type Result<T> = core::result::Result<T, Error>;
