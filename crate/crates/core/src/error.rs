use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cell ({row}, {col}) is not in the diagram of {partition}")]
    InvalidCell {
        row: usize,
        col: usize,
        partition: String,
    },

    #[error("invalid partition {0:?}: parts must be positive and weakly decreasing")]
    InvalidPartition(Vec<usize>),

    #[error("invalid permutation {0:?}: images must be a bijection of 1..=n")]
    InvalidPermutation(Vec<usize>),

    #[error("weight mismatch: expected {expected}, got {found}")]
    WeightMismatch { expected: usize, found: usize },

    #[error("length mismatch: expected {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("index entry {value} at position {position} is outside 1..={d}")]
    IndexOutOfRange {
        value: usize,
        position: usize,
        d: usize,
    },

    #[error("dimension d must be at least 1")]
    ZeroDimension,

    #[error("{what} = {requested} exceeds the cap of {cap} ({reason})")]
    CapExceeded {
        what: &'static str,
        requested: usize,
        cap: usize,
        reason: &'static str,
    },

    #[error("{what} needs {requested} terms, over the budget of {budget}")]
    BudgetExceeded {
        what: String,
        requested: u128,
        budget: u128,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
