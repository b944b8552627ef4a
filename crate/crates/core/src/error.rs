use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension n={n} outside the supported range 1..={max}")]
    Dimension { n: usize, max: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("expected {expected} values for n={n}, got {got}")]
    Length {
        n: usize,
        expected: usize,
        got: usize,
    },

    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    #[error("function is identically zero")]
    ZeroFunction,

    #[error("point {point:#x} does not fit in {n} bits")]
    PointOutOfRange { point: usize, n: usize },

    #[error("code is empty")]
    EmptyCode,

    #[error("generator rows are linearly dependent or zero")]
    DependentGenerators,

    #[error("parameter out of range: {0}")]
    Domain(String),

    #[error("subset is empty")]
    EmptySubset,

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("I/O error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
