//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// An operation needed more known digits than its inputs carry.
    #[error("precision exhausted: needed {needed} digits, only {available} available")]
    PrecisionExhausted { needed: u32, available: u32 },

    #[error("division by zero in the p-adic field")]
    DivisionByZero,

    #[error("valuation out of range: required v >= {required}, got {actual}")]
    ValuationOutOfRange { required: i64, actual: i64 },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("resolution error: {0}")]
    Resolution(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
