use thiserror::Error;

/// Errors raised by algebra, module, frame and document operations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: String, found: String },

    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("block {block} is not Hermitian (asymmetry {asymmetry:.3e})")]
    NotHermitian { block: usize, asymmetry: f64 },

    #[error("block {block} is not positive (min eigenvalue {min_eigenvalue:.3e})")]
    NotPositive { block: usize, min_eigenvalue: f64 },

    #[error("singular input: smallest spectral value {min_value:.3e} at block {block} is below threshold {threshold:.3e}")]
    Singular {
        block: usize,
        min_value: f64,
        threshold: f64,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("structural check failed: {0}")]
    Structural(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn mismatch(expected: impl std::fmt::Display, found: impl std::fmt::Display) -> Self {
        Error::ShapeMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }

    pub(crate) fn shape(expected: impl std::fmt::Debug, found: impl std::fmt::Debug) -> Self {
        Error::ShapeMismatch {
            expected: format!("{expected:?}"),
            found: format!("{found:?}"),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
