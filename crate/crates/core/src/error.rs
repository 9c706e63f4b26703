use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    /// Negative, NaN or infinite tensor entry. `position` is the flat offset.
    #[error(
        "entry at flat position {position} is {value}; entries must be finite and nonnegative"
    )]
    InvalidEntry { position: usize, value: f64 },

    /// Scaling entries must be finite and strictly positive. `index` is 1-based.
    #[error("scaling entry {index} is {value}; scaling entries must be finite and positive")]
    NonPositiveScaling { index: usize, value: f64 },

    #[error("tensor of order {order} and dimension {dim} exceeds the limit of {cap} entries")]
    ResourceLimit {
        order: usize,
        dim: usize,
        cap: usize,
    },

    #[error("exhaustive subset scan supports dimension <= {cap}, got {dim}; use support propagation instead")]
    SubsetScanTooLarge { dim: usize, cap: usize },

    /// Row sum equal to zero. `row` is 1-based.
    #[error("row {row} has zero sum; every row sum must be positive (shift with alpha > 0)")]
    ZeroRowSum { row: usize },

    #[error("row sums are constant; the contraction factor needs distinct extreme rows")]
    ConstantRowSums,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
