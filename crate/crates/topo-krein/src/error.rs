use thiserror::Error;
use topo_numerics::{NumericsError, C64};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KreinError {
    #[error("signature of eigenvalue {eigenvalue} is numerically ambiguous (|v*Gv| = {value:.3e})")]
    AmbiguousSignature { eigenvalue: C64, value: f64 },
    #[error("transfer matrix is not elliptic and definite; offending eigenvalues {eigenvalues:?}")]
    NotPerfectlyConducting { eigenvalues: Vec<C64> },
    #[error("Möbius action undefined: cZ + d is singular")]
    MoebiusUndefined,
    #[error("stereographic projection undefined: a + ib is singular")]
    StereoUndefined,
    #[error("frame is not G-Lagrangian (residual {residual:.3e})")]
    NotLagrangian { residual: f64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}
