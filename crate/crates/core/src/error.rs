use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension must be at least 1, got {0}")]
    BadDimension(usize),

    #[error("order must be at least 1, got {0}")]
    BadOrder(usize),

    #[error("index {index} is out of range for a {d}-dimensional tensor of order {n}")]
    IndexOutOfRange { index: String, d: usize, n: usize },

    #[error("hyperplane direction {direction} or position {position} is out of range (d={d}, n={n})")]
    HyperplaneOutOfRange {
        direction: usize,
        position: usize,
        d: usize,
        n: usize,
    },

    #[error("operation requires order >= 2, tensor has order 1")]
    OrderOne,

    #[error("operation requires order 2, tensor has order {0}")]
    NotOrderTwo(usize),

    #[error("operation requires dimension >= 2, tensor has dimension 1")]
    DimensionOne,

    #[error("shape mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: String, got: String },

    #[error("size guard exceeded: estimated work {estimate} > limit {limit}")]
    GuardExceeded { estimate: u128, limit: u128 },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("linear program error: {0}")]
    Lp(#[from] crate::lp::LpError),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("fixture {name}: checksum mismatch for {file}")]
    ChecksumMismatch { name: String, file: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn precondition(message: impl Into<String>) -> Self {
        Error::Precondition(message.into())
    }
}
