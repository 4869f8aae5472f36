use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient mismatch: ({0}, {1}) vs ({2}, {3})")]
    AmbientMismatch(usize, usize, usize, usize),

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("configuration error: {0}")]
    Config(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("closed form inapplicable: {0}")]
    Inapplicable(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
