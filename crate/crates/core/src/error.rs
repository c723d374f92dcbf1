use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SpbwError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("map does not respect the defining relations: {0}")]
    NotAnEndomorphism(String),
    #[error("calculus specification rejected: {0}")]
    Calculus(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("index out of range: {0}")]
    Index(String),
}

pub type Result<T> = std::result::Result<T, SpbwError>;
