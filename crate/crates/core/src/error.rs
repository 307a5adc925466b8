use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: left is {left_rows}x{left_cols}, right is {right_rows}x{right_cols}")]
    DimensionMismatch {
        op: &'static str,
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix and vector dimensions must be at least 1")]
    Empty,

    #[error("data length {len} does not match shape {rows}x{cols}")]
    DataLength {
        rows: usize,
        cols: usize,
        len: usize,
    },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("invalid parameter shape: {0}")]
    Shape(String),

    #[error("matrix is not anti-Hermitian: defect {defect:e} exceeds {tol:e}")]
    NotAntiHermitian { defect: f64, tol: f64 },

    #[error("matrix is not unitary: defect {defect:e} exceeds {tol:e}")]
    NotUnitary { defect: f64, tol: f64 },

    #[error("peel of column {j} left residual {residual:e} (limit {tol:e})")]
    PeelInconsistent { j: usize, residual: f64, tol: f64 },

    #[error("vector has zero norm")]
    ZeroVector,

    #[error("tolerance {name} = {value} must lie in (0, 1)")]
    Tolerance { name: &'static str, value: f64 },
}
