use thiserror::Error;
use topo_krein::KreinError;
use topo_model::ModelError;
use topo_numerics::{NumericsError, C64};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GreensError {
    #[error("z = {z} lies within {distance:.3e} of the spectrum of the truncated fiber")]
    ResolventSingular { z: C64, distance: f64 },
    #[error("transfer product has {inside} eigenvalues inside the unit disc and {on_circle} on the circle, expected {expected} and 0")]
    NoSpectralSplit { inside: usize, on_circle: usize, expected: usize },
    #[error("Cayley transform undefined: G + i is singular")]
    CayleyUndefined,
    #[error("boundary unitary not invertible (smallest singular value {smallest:.3e})")]
    NotInvertible { smallest: f64 },
    #[error("imaginary part of the Green matrix not positive (smallest eigenvalue {min:.3e})")]
    NotPositive { min: f64 },
    #[error("bulk spectrum at {energy} inside the declared gap (momentum {momentum:?})")]
    InvalidGap { energy: f64, momentum: Vec<f64> },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Krein(#[from] KreinError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}
