use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid datum: {0}")]
    Invalid(String),
    #[error("degree error: {0}")]
    Degree(String),
    #[error("unresolved reference: {0}")]
    Unresolved(String),
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("not a complex at degree {0}")]
    NotAComplex(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("refused: {0}")]
    Refused(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
