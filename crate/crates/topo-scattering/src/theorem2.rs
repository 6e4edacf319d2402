use topo_greens::boundary_unitary_field;
use topo_invariants::{
    boundary_invariant, bulk_invariant, fermi_projection_field, InvariantResult, Theorem1Config,
};
use topo_model::ScatteringSystem;
use topo_numerics::C64;

use crate::error::ScatteringError;
use crate::reflection::{ReflectionRoute, ReflectionSolver};

#[derive(Clone, Debug)]
pub struct Theorem2Report {
    /// `Ch_{d−1}(R^{μ+iδ})`.
    pub reflection: InvariantResult,
    /// `Ch_{d−1}(V̂^{μ+iδ})`.
    pub boundary: InvariantResult,
    /// `Ch_d(P)`.
    pub bulk: InvariantResult,
    /// All converged, `Ch_{d−1}(R) = Ch_{d−1}(V̂)` and `Ch_d(P) = −Ch_{d−1}(R)`.
    pub pass: bool,
}

/// Bulk invariant of the insulator against the boundary invariants of the
/// reflection matrix (by channel matching) and of `V̂` on the same grid.
pub fn verify_theorem2(sys: &ScatteringSystem, cfg: &Theorem1Config) -> Result<Theorem2Report, ScatteringError> {
    if !(cfg.delta > 0.0) {
        return Err(ScatteringError::InvalidArgument(format!("delta must be positive, got {}", cfg.delta)));
    }
    let model = sys.insulator();
    let z = C64::new(cfg.mu, cfg.delta);
    let p = fermi_projection_field(model, cfg.mu, &cfg.bulk_grid)?;
    let bulk = bulk_invariant(&p)?.require_converged()?;
    let v = boundary_unitary_field(model, &cfg.boundary_grid, z, &cfg.boundary)?;
    let boundary = boundary_invariant(&v, cfg.derivative_order)?.require_converged()?;
    let solver = ReflectionSolver::new(sys, z, cfg.boundary.route)?;
    let r = solver.field(&cfg.boundary_grid, ReflectionRoute::Matching)?;
    let reflection = boundary_invariant(&r, cfg.derivative_order)?.require_converged()?;
    let pass = reflection.rounded == boundary.rounded && bulk.rounded == -reflection.rounded;
    Ok(Theorem2Report { reflection, boundary, bulk, pass })
}
