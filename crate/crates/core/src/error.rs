use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid Hessenberg function: {0}")]
    InvalidHessenberg(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("size mismatch: expected n = {expected}, found n = {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("permutation {0} is not smooth")]
    NotSmooth(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("internal contradiction: {0}")]
    InternalContradiction(String),

    #[error("interpolation failure: {0}")]
    Interpolation(String),

    #[error("input too large: {0}")]
    TooLarge(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("cache error: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
