use topo_greens::{boundary_unitary_field, BoundaryOptions, BoundaryUnitaryField};
use topo_model::{BlockJacobiModel, MomentumGrid};
use topo_numerics::C64;

use crate::chern::{chern_2d, chern_4d};
use crate::error::InvariantError;
use crate::projection::{fermi_projection_field, ProjectionField};
use crate::result::InvariantResult;
use crate::winding::{winding_1d, winding_3d_with_order, DEFAULT_DERIVATIVE_ORDER};

/// `Ch_d(P)` for `d ∈ {2, 4}`.
pub fn bulk_invariant(p: &ProjectionField) -> Result<InvariantResult, InvariantError> {
    match p.grid.ndim() {
        2 => chern_2d(p),
        4 => chern_4d(p),
        d => Err(InvariantError::InvalidArgument(format!("bulk invariants exist for d = 2, 4, not {d}"))),
    }
}

/// `Ch_{d−1}(V)` for boundary dimension 1 or 3.
pub fn boundary_invariant(v: &BoundaryUnitaryField, order: usize) -> Result<InvariantResult, InvariantError> {
    match v.grid.ndim() {
        1 => winding_1d(v),
        3 => winding_3d_with_order(v, order),
        d => Err(InvariantError::InvalidArgument(format!("boundary invariants exist on 1D or 3D grids, not {d}D"))),
    }
}

#[derive(Clone, Debug)]
pub struct Theorem1Config {
    pub mu: f64,
    pub delta: f64,
    pub bulk_grid: MomentumGrid,
    pub boundary_grid: MomentumGrid,
    pub boundary: BoundaryOptions,
    pub derivative_order: usize,
}

impl Theorem1Config {
    /// Boundary nodes sit half a spacing off the symmetric momenta.
    pub fn new(mu: f64, delta: f64, bulk_points: &[usize], boundary_points: &[usize]) -> Result<Self, InvariantError> {
        Ok(Self {
            mu,
            delta,
            bulk_grid: MomentumGrid::new(bulk_points.to_vec())?,
            boundary_grid: MomentumGrid::new(boundary_points.to_vec())?.with_offset(0.5),
            boundary: BoundaryOptions::default(),
            derivative_order: DEFAULT_DERIVATIVE_ORDER,
        })
    }
}

#[derive(Clone, Debug)]
pub struct Theorem1Report {
    pub bulk: InvariantResult,
    pub boundary: InvariantResult,
    /// Both values converged and `Ch_d(P) = −Ch_{d−1}(V̂^{μ+iδ})`.
    pub pass: bool,
}

/// Computes `Ch_d(P)` for the Fermi projection at `μ` and the boundary
/// invariant of `V̂^{μ+iδ}`, and compares them.
pub fn verify_theorem1(model: &BlockJacobiModel, cfg: &Theorem1Config) -> Result<Theorem1Report, InvariantError> {
    if !(cfg.delta > 0.0) {
        return Err(InvariantError::InvalidArgument(format!("delta must be positive, got {}", cfg.delta)));
    }
    let p = fermi_projection_field(model, cfg.mu, &cfg.bulk_grid)?;
    let bulk = bulk_invariant(&p)?.require_converged()?;
    let v = boundary_unitary_field(model, &cfg.boundary_grid, C64::new(cfg.mu, cfg.delta), &cfg.boundary)?;
    let boundary = boundary_invariant(&v, cfg.derivative_order)?.require_converged()?;
    let pass = bulk.rounded == -boundary.rounded;
    Ok(Theorem1Report { bulk, boundary, pass })
}
