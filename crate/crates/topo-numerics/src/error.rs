use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("matrix is singular to working precision (condition estimate {condition:.3e})")]
    SingularMatrix { condition: f64 },
    #[error("eigensolver did not converge (relative residual {residual:.3e})")]
    NotConverged { residual: f64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix has non-finite entries")]
    NonFinite,
}
