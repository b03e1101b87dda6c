use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("ill-defined homomorphism: {0}")]
    IllDefined(String),

    #[error("groups do not match: {0}")]
    GroupMismatch(String),

    #[error("sequence is not exact: {0}")]
    NotExact(String),

    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
