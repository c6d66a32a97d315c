use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vector dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),

    #[error("matrix must have at least one row and one column, got {rows}x{cols}")]
    EmptyMatrix { rows: usize, cols: usize },

    #[error("non-finite entry at position {0}")]
    NonFinite(usize),

    #[error("entry at position {index} is {value}, expected 0 or 1")]
    NotBinary { index: usize, value: f64 },

    #[error("vector norm {norm} is not 1 (tolerance {tolerance})")]
    NotUnitNorm { norm: f64, tolerance: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no unit vector with |sum| >= {min_abs_c} after {attempts} draws (max possible |sum| is {max_abs_c})")]
    RejectionLimit {
        min_abs_c: f64,
        attempts: usize,
        max_abs_c: f64,
    },

    #[error("degenerate input: all-zero data gives a zero theta estimate")]
    DegenerateInput,

    #[error("unrecoverable: every row statistic is zero, so the generator entries sum to 0")]
    Unrecoverable,

    #[error("n = {n} exceeds the enumeration limit {n_max}; exact recovery costs 2^n guesses per column")]
    TooLarge { n: usize, n_max: usize },

    #[error("exact recovery needs at least two distinct nonzero columns")]
    NeedsDistinctColumns,

    #[error("{count} distinct generators reproduce every column")]
    Ambiguous { count: usize },
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
