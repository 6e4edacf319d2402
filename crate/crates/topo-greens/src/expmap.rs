use std::f64::consts::TAU;

use topo_model::{bloch_fiber, BlockJacobiModel, Boundary};
use topo_numerics::{hermitian_eigenvalues, hermitian_function, C64};

use crate::error::GreensError;

/// Perpendicular momenta sampled when validating a declared gap.
pub const GAP_SCAN_POINTS: usize = 64;

/// Quintic smoothstep: 0 below `lo`, 1 above `hi`, `C²` in between.
pub fn smoothstep(x: f64, lo: f64, hi: f64) -> f64 {
    let t = ((x - lo) / (hi - lo)).clamp(0.0, 1.0);
    t * t * t * (t * (6.0 * t - 15.0) + 10.0)
}

/// Depth of the slab whose top block is returned by [`exp_map_unitary`].
pub fn exp_map_depth(m: usize) -> usize {
    m + m.max(30)
}

/// Fails with [`GreensError::InvalidGap`] if a bulk eigenvalue at boundary
/// momentum `k` lies strictly inside `gap`.
pub fn check_bulk_gap(model: &BlockJacobiModel, k: &[f64], gap: (f64, f64)) -> Result<(), GreensError> {
    for j in 0..GAP_SCAN_POINTS {
        let q = TAU * j as f64 / GAP_SCAN_POINTS as f64;
        for e in hermitian_eigenvalues(&model.bulk_fiber(k, q))? {
            if e > gap.0 && e < gap.1 {
                let mut momentum = k.to_vec();
                momentum.push(q);
                return Err(GreensError::InvalidGap { energy: e, momentum });
            }
        }
    }
    Ok(())
}

/// `Û(k)`: the top `M·L` block of `exp(2πi f(Ĥ(k)))` with `f` the
/// smoothstep across `gap`.
///
/// The operator is evaluated on a slab of depth [`exp_map_depth`]`(M)` so
/// that states bound to the artificial far wall drop out of the block.
pub fn exp_map_unitary(
    model: &BlockJacobiModel,
    k: &[f64],
    m: usize,
    gap: (f64, f64),
    mu: f64,
) -> Result<topo_numerics::ComplexMatrix, GreensError> {
    if !(gap.0 < mu && mu < gap.1) {
        return Err(GreensError::InvalidArgument(format!(
            "mu = {mu} must lie inside the gap ({}, {})",
            gap.0, gap.1
        )));
    }
    if m == 0 {
        return Err(GreensError::InvalidArgument("strip depth must be positive".into()));
    }
    check_bulk_gap(model, k, gap)?;
    let l = model.fiber_dim();
    let h = bloch_fiber(model, k, exp_map_depth(m), Boundary::HalfSpace)?;
    let u = hermitian_function(&h, |e| C64::from_polar(1.0, TAU * smoothstep(e, gap.0, gap.1)))?;
    Ok(u.block(0, 0, m * l, m * l))
}
