use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The digit table cannot represent the requested index.
    #[error("index {index} exceeds the digit capacity of 2^{bits}")]
    DigitOverflow { index: u64, bits: u32 },

    #[error("malformed direction-number table at line {line}: {reason}")]
    TableFormat { line: usize, reason: String },

    /// The objective returned a non-finite value or was queried off its domain.
    #[error("objective contract violated: {0}")]
    Objective(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
