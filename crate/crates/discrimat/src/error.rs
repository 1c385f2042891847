//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("variable table mismatch: {0}")]
    VarMismatch(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid variable name `{0}`")]
    BadVariable(String),
    #[error("division by the zero polynomial")]
    ZeroDivision,
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix violates the skew-symmetry invariant at ({row},{col})")]
    SkewViolation { row: usize, col: usize },
    #[error("term budget exceeded: would produce up to {estimate} terms (budget {budget})")]
    BudgetExceeded { estimate: usize, budget: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("missing assignment for variable `{0}`")]
    MissingAssignment(String),
    #[error("missing weight for variable `{0}`")]
    MissingWeight(String),
    #[error("{0}")]
    Domain(String),
    #[error("point is not on the divisor (residual {residual:.3e} >= {tol:.3e})")]
    NotOnDivisor { residual: f64, tol: f64 },
    #[error("ill-conditioned solve: {0}")]
    IllConditioned(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
