use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid isometry: {0}")]
    InvalidIsometry(String),
    #[error("duplicate node name {0:?}")]
    DuplicateName(String),
    #[error("unknown node {0:?}")]
    UnknownNode(String),
    #[error("derived rule {0} used without a verified proof")]
    UnprovedRule(String),
    #[error("unknown rule {0:?}")]
    UnknownRule(String),
    #[error("too many free variables for exhaustive search: {0} > {1}")]
    TooManyVariables(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown lemma {0:?}")]
    UnknownLemma(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
