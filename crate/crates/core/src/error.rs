use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    ShapeMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("expected {expected} entries, got {got}")]
    EntryCount { expected: usize, got: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not normal: {0}")]
    NotNormal(String),
    #[error("matrix is not strictly normal")]
    NotStrictlyNormal,
    #[error("matrix has a -inf entry at ({row}, {col})")]
    NotReal { row: usize, col: usize },
    #[error("entry {0} must be <= 0")]
    PositiveEntry(String),
    #[error("diagonal position ({0}, {0}) is not allowed here")]
    DiagonalPosition(usize),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("constraint system is infeasible")]
    Infeasible,
    #[error("invalid winner: {0}")]
    InvalidWinner(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("expansion exceeds cap of {cap}")]
    CapExceeded { cap: usize },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("json error: {0}")]
    Json(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
