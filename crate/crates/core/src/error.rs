use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("invalid monomial order: {0}")]
    InvalidOrder(String),

    #[error("invalid block specification: {0}")]
    InvalidBlocks(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("coordinate sum {found} does not match the sum of levels {expected}")]
    LevelMismatch { expected: String, found: String },

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("extremality violated: {0}")]
    ExtremalityViolated(String),

    #[error("chain validation failed: {0}")]
    InvalidChain(String),

    #[error("oracle budget of {budget} queries exceeded")]
    BudgetExceeded { budget: usize },

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
