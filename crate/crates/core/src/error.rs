use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid flag shape: {0}")]
    Shape(String),

    #[error("invalid partition: {0}")]
    Partition(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("value out of range: {0}")]
    Range(String),

    #[error("partition {0} is not compatible with a q-hook")]
    Incompatible(String),

    #[error("permutation {0} does not lie in S(n;r)")]
    NotInS(String),

    #[error("degree slice needs {needed} monomials, budget is {budget}")]
    Budget { needed: usize, budget: usize },

    #[error("engine inconsistency: {0}")]
    Engine(String),
}

pub type Result<T> = std::result::Result<T, Error>;
