use thiserror::Error;
use topo_greens::GreensError;
use topo_model::ModelError;
use topo_numerics::NumericsError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InvariantError {
    #[error("eigenvalue {energy} within tolerance of the Fermi level at node {node} (momentum {momentum:?})")]
    GapViolated { node: usize, momentum: Vec<f64>, energy: f64 },
    #[error("occupied rank {rank} at node {node} differs from {expected}")]
    RankChanged { node: usize, rank: usize, expected: usize },
    #[error("grid too coarse: phase {phase:.3} at node {node}; refine the grid")]
    RefineGrid { node: usize, phase: f64 },
    #[error("field not invertible at node {node}")]
    NotInvertible { node: usize },
    #[error("value {value} is {distance:.3e} away from an integer (tolerance {tolerance:.1e})")]
    Unconverged { value: f64, distance: f64, tolerance: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Greens(#[from] GreensError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}
