//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("characteristic {0} exceeds the supported bound 2^31")]
    ModulusTooLarge(u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("ring construction: {0}")]
    RingConstruction(String),

    #[error("matrix shape: {0}")]
    Shape(String),

    #[error("entry at row {row}, column {col} is not zero or a homogeneous linear form in the declared block")]
    NonlinearEntry { row: usize, col: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("budget exhausted during {stage}: {detail}")]
    BudgetExceeded { stage: String, detail: String },

    #[error("the zero ideal has no initial degree")]
    ZeroIdeal,

    #[error("operation requires a prime coefficient field")]
    RequiresPrimeField,

    #[error("hypothesis failure: {0}")]
    Hypothesis(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn budget(stage: &str, detail: impl Into<String>) -> Self {
        Error::BudgetExceeded {
            stage: stage.to_string(),
            detail: detail.into(),
        }
    }
}
