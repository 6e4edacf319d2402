//! Integer invariants of bulk projections and boundary unitaries.
//!
//! Bulk side: first and second Chern numbers of the Fermi projection
//! sampled on a grid of the Brillouin torus, from lattice gauge links
//! between neighbouring occupied frames. Boundary side: winding numbers of
//! invertible matrix fields on the boundary torus, `det`-phase counting in
//! one dimension and a differentiated winding density in three.
//!
//! Conventions: momenta are ordered `(k_1, …, k_{d−1}, q)` with `q`
//! perpendicular to the boundary; plaquettes and clovers are oriented by
//! increasing axis index; `winding_1d(e^{ik}) = 1`; `winding_3d` carries the
//! prefactor `−1/(24π²)`, so that a map `𝕋³ → SU(2)` scores its degree with
//! respect to the orientation in which charts `θ ↦ V₀ exp(−iθ·σ)` are
//! positive. With these choices `chern_2d` of the QWZ model at `u = −1` is
//! `+1` and `Ch_d(P) = −Ch_{d−1}(V̂)`.

mod chern;
mod error;
mod projection;
mod result;
mod theorem1;
mod winding;

pub use chern::{chern_2d, chern_4d, CLOVER_TOL, CLOVER_WEIGHTS, EXACT_TOL, LINK_TOL, PHASE_LIMIT};
pub use error::InvariantError;
pub use projection::{fermi_projection_field, ProjectionField, GAP_TOL};
pub use result::{InvariantResult, Method};
pub use theorem1::{boundary_invariant, bulk_invariant, verify_theorem1, Theorem1Config, Theorem1Report};
pub use winding::{
    stencil, winding_1d, winding_3d, winding_3d_with_order, winding_density_3d, DEFAULT_DERIVATIVE_ORDER, UNCONVERGED_LIMIT,
    WINDING_3D_TOL,
};
