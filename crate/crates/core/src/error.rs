use thiserror::Error;

pub type Result<T, E = PkpError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PkpError {
    #[error("item {0} has a negative weight")]
    NegativeWeight(usize),
    #[error("knapsack capacity must be at least 1")]
    NonPositiveCapacity,
    #[error("item index {index} out of range for {len} items")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("instance has not been preprocessed")]
    NotPreprocessed,
    #[error("instance has no items")]
    EmptyInstance,
    #[error("{n} items exceed the enumeration limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("epsilon must lie strictly between 0 and 1, got {0}")]
    EpsOutOfRange(String),
    #[error("input must be positive")]
    NonPositiveInput,
    #[error("intermediate value needs {needed} bits, budget is {budget}")]
    BitBudgetExceeded { needed: u64, budget: u64 },
    #[error("arithmetic overflow: {0}")]
    Overflow(&'static str),
    #[error("M must be at least 3, got {0}")]
    MTooSmall(u64),
    #[error("invalid range: {0}")]
    InvalidRange(String),
    #[error("product {0} is not a perfect square")]
    NotPerfectSquare(String),
    #[error("no entries other than 1 remain")]
    EmptyAfterNormalization,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    InvalidParams(String),
}
