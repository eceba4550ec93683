use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("character is not constant on conjugacy classes")]
    NotClassFunction,
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("epsilon is not a unit-modulus homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("not a minimal-ideal generator")]
    NotMinimalGenerator,
    #[error("singular matrix")]
    SingularMatrix,
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("element does not satisfy the self-adjointness condition")]
    NotSelfAdjoint,
    #[error("ideal lies inside the annihilator or the generator is not primitive")]
    AnnihilatorIdeal,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
