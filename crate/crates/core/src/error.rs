use thiserror::Error;

/// Errors surfaced by the library. `Usage` covers precondition violations,
/// `Precision` covers results that could not be separated from zero at the
/// working precision, and `Resource` covers exhausted enumeration budgets.
#[derive(Debug, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("undetermined at precision {precision}: {reason}")]
    Precision { precision: u32, reason: String },
    #[error("resource budget exceeded: {0}")]
    Resource(String),
    #[error("indeterminate: all coefficients vanish at working precision")]
    Indeterminate,
    #[error("truncation too short: {0}")]
    TruncationTooShort(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
