use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("exponent out of range")]
    Range,
    #[error("division by zero")]
    DivisionByZero,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("no convergence: {0}")]
    Convergence(String),
    #[error("derivative estimate below noise floor")]
    Derivative,
    #[error("degenerate interpolation: {0}")]
    Degenerate(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("cross-check mismatch: {0}")]
    CrossCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
