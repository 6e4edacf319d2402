//! Boundary Green matrices of half-space block Jacobi operators.
//!
//! `Ĝ^z(k)` is the first-layer block of `(Ĥ(k) − z)⁻¹` for the half-space
//! fiber. It is computed either from a deep Dirichlet truncation
//! ([`green_truncated`], which also yields the `N`-layer blocks `Ĝ^z_N`) or
//! from the decaying solutions of the transfer recursion
//! ([`green_transfer`]). Cayley transforms turn these into the boundary
//! unitaries `V̂^z_{N,ε}`, and [`exp_map_unitary`] gives the exponential-map
//! representative `Û`. Grid-valued versions live in
//! [`BoundaryUnitaryField`].

mod cayley;
mod error;
mod expmap;
mod field;
mod green;

pub use cayley::{boundary_unitary, cayley, cayley_inverse, scaled_cayley, INVERTIBILITY_TOL};
pub use error::GreensError;
pub use expmap::{check_bulk_gap, exp_map_depth, exp_map_unitary, smoothstep, GAP_SCAN_POINTS};
pub use field::{
    boundary_unitary_field, default_delta, default_depth, exp_map_field, BoundaryOptions,
    BoundaryUnitaryField, FieldLabel, DEFAULT_EPSILON,
};
pub use green::{boundary_green, green_transfer, green_truncated, BoundaryGreen, GreenRoute, RESOLVENT_TOL};
