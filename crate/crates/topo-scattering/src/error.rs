use thiserror::Error;
use topo_greens::GreensError;
use topo_invariants::InvariantError;
use topo_krein::KreinError;
use topo_model::ModelError;
use topo_numerics::{NumericsError, C64};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScatteringError {
    #[error("wire is not perfectly conducting at E = {energy}; offending eigenvalues {eigenvalues:?}")]
    NotPerfectlyConducting { energy: f64, eigenvalues: Vec<C64> },
    #[error("channel fails the Bloch equation (residual {residual:.3e})")]
    BlochInconsistent { residual: f64 },
    #[error("channel continuation to z = {z} failed: {reason}")]
    ContinuationFailed { z: C64, reason: String },
    #[error("reflection matrix undefined: matching system is singular")]
    ReflectionUndefined,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Krein(KreinError),
    #[error(transparent)]
    Greens(#[from] GreensError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

impl From<KreinError> for ScatteringError {
    fn from(e: KreinError) -> Self {
        match e {
            KreinError::NotPerfectlyConducting { eigenvalues } => {
                ScatteringError::NotPerfectlyConducting { energy: f64::NAN, eigenvalues }
            }
            other => ScatteringError::Krein(other),
        }
    }
}
