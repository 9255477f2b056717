use thiserror::Error;

/// Errors shared by the matrix, engine and graph layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(
        "dimension mismatch: left is {left_rows}x{left_cols}, right is {right_rows}x{right_cols}"
    )]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error(
        "entry bound violated: entry {value} at ({row}, {col}) exceeds declared bound {bound}"
    )]
    BoundViolation {
        row: usize,
        col: usize,
        value: u64,
        bound: u64,
    },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("negative cycle through vertices {0:?}")]
    NegativeCycle(Vec<usize>),

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("sampling failed after {retries} retries: {msg}")]
    SamplingFailure { retries: usize, msg: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}
