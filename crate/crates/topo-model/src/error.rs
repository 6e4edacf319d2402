use thiserror::Error;
use topo_numerics::NumericsError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("spectrum reaches {energy} at momentum {momentum:?}")]
    Gapless { energy: f64, momentum: Vec<f64> },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}
