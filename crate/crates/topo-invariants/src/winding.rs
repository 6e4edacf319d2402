use std::f64::consts::PI;

use rayon::prelude::*;
use topo_greens::BoundaryUnitaryField;
use topo_numerics::{det, inverse, ComplexMatrix, C64};

use crate::chern::{EXACT_TOL, PHASE_LIMIT};
use crate::error::InvariantError;
use crate::result::{InvariantResult, Method};

/// Acceptance tolerance of the winding density method.
pub const WINDING_3D_TOL: f64 = 0.05;
/// Values farther than this from an integer are reported as unconverged.
pub const UNCONVERGED_LIMIT: f64 = 0.1;
pub const DEFAULT_DERIVATIVE_ORDER: usize = 6;

/// Winding number of `det V` along a 1D grid: the sum of phase increments
/// over all links divided by `2π`.
pub fn winding_1d(v: &BoundaryUnitaryField) -> Result<InvariantResult, InvariantError> {
    if v.grid.ndim() != 1 {
        return Err(InvariantError::InvalidArgument(format!("winding_1d needs a 1D grid, got {}", v.grid.ndim())));
    }
    let dets = v.values.iter().map(det).collect::<Result<Vec<C64>, _>>()?;
    if let Some(node) = dets.iter().position(|d| d.norm() == 0.0 || !d.is_finite()) {
        return Err(InvariantError::NotInvertible { node });
    }
    let n = dets.len();
    let mut total = 0.0;
    for node in 0..n {
        let inc = (dets[(node + 1) % n] / dets[node]).arg();
        if inc.abs() > PHASE_LIMIT {
            return Err(InvariantError::RefineGrid { node, phase: inc });
        }
        total += inc;
    }
    Ok(InvariantResult::new(total / (2.0 * PI), EXACT_TOL, v.grid.dims().to_vec(), Method::DetWinding))
}

/// Central-difference weights `c_j` of `f'(x) ≈ Σ_j c_j (f(x+jh) − f(x−jh))/h`.
pub fn stencil(order: usize) -> Result<&'static [f64], InvariantError> {
    match order {
        2 => Ok(&[0.5]),
        4 => Ok(&[2.0 / 3.0, -1.0 / 12.0]),
        6 => Ok(&[0.75, -0.15, 1.0 / 60.0]),
        _ => Err(InvariantError::InvalidArgument(format!("derivative order {order} not in {{2, 4, 6}}"))),
    }
}

/// Discretized `−(1/24π²) ∫ ε^{ijk} tr[(V⁻¹∂_iV)(V⁻¹∂_jV)(V⁻¹∂_kV)] d³k` with
/// central differences of the given order. Never fails on the distance to
/// an integer; see [`winding_3d`].
pub fn winding_density_3d(v: &BoundaryUnitaryField, order: usize) -> Result<InvariantResult, InvariantError> {
    let grid = &v.grid;
    if grid.ndim() != 3 {
        return Err(InvariantError::InvalidArgument(format!("winding_3d needs a 3D grid, got {}", grid.ndim())));
    }
    let weights = stencil(order)?;
    if let Some(n) = grid.dims().iter().find(|&&n| n < 2 * weights.len() + 1) {
        return Err(InvariantError::InvalidArgument(format!(
            "order-{order} differences need at least {} points per axis, got {n}",
            2 * weights.len() + 1
        )));
    }
    let inverses = (0..grid.len())
        .into_par_iter()
        .map(|node| inverse(&v.values[node]).map_err(|_| InvariantError::NotInvertible { node }))
        .collect::<Result<Vec<_>, _>>()?;
    let density: Vec<f64> = (0..grid.len())
        .into_par_iter()
        .map(|node| {
            let d: Vec<ComplexMatrix> = (0..3)
                .map(|axis| {
                    let mut diff = ComplexMatrix::zeros(v.values[node].rows(), v.values[node].cols());
                    for (j, w) in weights.iter().enumerate() {
                        let step = j as isize + 1;
                        let fwd = &v.values[grid.shift(node, axis, step)];
                        let bwd = &v.values[grid.shift(node, axis, -step)];
                        diff += &(fwd - bwd).scale_re(*w / grid.spacing(axis));
                    }
                    inverses[node].matmul(&diff)
                })
                .collect();
            let abc = d[0].matmul(&d[1]).matmul(&d[2]).trace();
            let acb = d[0].matmul(&d[2]).matmul(&d[1]).trace();
            (3.0 * (abc - acb)).re
        })
        .collect();
    let volume: f64 = (0..3).map(|a| grid.spacing(a)).product();
    let value = -density.iter().sum::<f64>() * volume / (24.0 * PI * PI);
    Ok(InvariantResult::new(value, WINDING_3D_TOL, grid.dims().to_vec(), Method::WindingDensity { order }))
}

/// [`winding_density_3d`] with the default order, failing with
/// [`InvariantError::Unconverged`] beyond [`UNCONVERGED_LIMIT`].
pub fn winding_3d(v: &BoundaryUnitaryField) -> Result<InvariantResult, InvariantError> {
    winding_3d_with_order(v, DEFAULT_DERIVATIVE_ORDER)
}

pub fn winding_3d_with_order(v: &BoundaryUnitaryField, order: usize) -> Result<InvariantResult, InvariantError> {
    let r = winding_density_3d(v, order)?;
    if r.distance_to_integer > UNCONVERGED_LIMIT {
        return Err(InvariantError::Unconverged {
            value: r.value,
            distance: r.distance_to_integer,
            tolerance: UNCONVERGED_LIMIT,
        });
    }
    Ok(r)
}
