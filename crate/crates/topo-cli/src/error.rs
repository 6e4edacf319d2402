use thiserror::Error;
use topo_greens::GreensError;
use topo_invariants::InvariantError;
use topo_krein::KreinError;
use topo_model::ModelError;
use topo_numerics::NumericsError;
use topo_scattering::ScatteringError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MODEL: i32 = 2;
pub const EXIT_CONVERGENCE: i32 = 3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CliError {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("model error: {0}")]
    Model(String),
    #[error("convergence error: {0}")]
    Convergence(String),
    #[error("output error: {0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Output(_) => EXIT_USAGE,
            CliError::Model(_) => EXIT_MODEL,
            CliError::Convergence(_) => EXIT_CONVERGENCE,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

impl From<NumericsError> for CliError {
    fn from(e: NumericsError) -> Self {
        CliError::Convergence(e.to_string())
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::InvalidArgument(_) => CliError::Usage(e.to_string()),
            ModelError::Numerics(_) => CliError::Convergence(e.to_string()),
            _ => CliError::Model(e.to_string()),
        }
    }
}

impl From<KreinError> for CliError {
    fn from(e: KreinError) -> Self {
        match e {
            KreinError::NotPerfectlyConducting { .. } => CliError::Model(e.to_string()),
            KreinError::DimensionMismatch(_) => CliError::Usage(e.to_string()),
            _ => CliError::Convergence(e.to_string()),
        }
    }
}

impl From<GreensError> for CliError {
    fn from(e: GreensError) -> Self {
        match e {
            GreensError::InvalidGap { .. } | GreensError::NoSpectralSplit { .. } | GreensError::ResolventSingular { .. } => {
                CliError::Model(e.to_string())
            }
            GreensError::InvalidArgument(_) => CliError::Usage(e.to_string()),
            GreensError::Model(inner) => inner.into(),
            GreensError::Krein(inner) => inner.into(),
            _ => CliError::Convergence(e.to_string()),
        }
    }
}

impl From<InvariantError> for CliError {
    fn from(e: InvariantError) -> Self {
        match e {
            InvariantError::GapViolated { .. } | InvariantError::RankChanged { .. } => CliError::Model(e.to_string()),
            InvariantError::InvalidArgument(_) => CliError::Usage(e.to_string()),
            InvariantError::Greens(inner) => inner.into(),
            InvariantError::Model(inner) => inner.into(),
            _ => CliError::Convergence(e.to_string()),
        }
    }
}

impl From<ScatteringError> for CliError {
    fn from(e: ScatteringError) -> Self {
        match e {
            ScatteringError::NotPerfectlyConducting { .. } => CliError::Model(e.to_string()),
            ScatteringError::InvalidArgument(_) => CliError::Usage(e.to_string()),
            ScatteringError::Krein(inner) => inner.into(),
            ScatteringError::Greens(inner) => inner.into(),
            ScatteringError::Invariant(inner) => inner.into(),
            ScatteringError::Model(inner) => inner.into(),
            _ => CliError::Convergence(e.to_string()),
        }
    }
}
