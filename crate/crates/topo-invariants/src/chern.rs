use std::f64::consts::PI;

use rayon::prelude::*;
use topo_numerics::{det, polar_unitary, singular_values, unitary_log_phases, ComplexMatrix, C64};

use crate::error::InvariantError;
use crate::projection::ProjectionField;
use crate::result::{InvariantResult, Method};

/// Loop phases beyond this modulus mean the grid does not resolve the
/// curvature.
pub const PHASE_LIMIT: f64 = 0.9 * PI;
/// Overlaps of neighbouring frames with a singular value below this cannot
/// define a link.
pub const LINK_TOL: f64 = 1e-6;
/// Distance-to-integer tolerance of the plaquette method, exact up to rounding.
pub const EXACT_TOL: f64 = 1e-9;
/// Distance-to-integer tolerance of the clover method.
pub const CLOVER_TOL: f64 = 0.05;
/// Weights of the clovers of size 1, 2, 3 in the improved field strength.
pub const CLOVER_WEIGHTS: [f64; 3] = [1.5, -0.6, 0.1];

/// Unitary link `polar(F(k)* F(k + e_axis))` for every node.
fn links(p: &ProjectionField, axis: usize) -> Result<Vec<ComplexMatrix>, InvariantError> {
    (0..p.grid.len())
        .into_par_iter()
        .map(|node| {
            let next = p.grid.shift(node, axis, 1);
            let overlap = p.frames[node].adjoint().matmul(&p.frames[next]);
            let smallest = *singular_values(&overlap)?.last().unwrap_or(&1.0);
            if smallest < LINK_TOL {
                return Err(InvariantError::RefineGrid { node, phase: PI });
            }
            Ok(polar_unitary(&overlap)?)
        })
        .collect()
}

fn det_phase(u: &ComplexMatrix) -> Result<C64, InvariantError> {
    let d = det(u)?;
    Ok(d / d.norm())
}

/// First Chern number of a projection field on a 2D grid from plaquette
/// phases of determinant links:
/// `(1/2π) Σ arg U₁(k) U₂(k+e₁) U₁(k+e₂)⁻¹ U₂(k)⁻¹`.
pub fn chern_2d(p: &ProjectionField) -> Result<InvariantResult, InvariantError> {
    if p.grid.ndim() != 2 {
        return Err(InvariantError::InvalidArgument(format!("chern_2d needs a 2D grid, got {}", p.grid.ndim())));
    }
    let dims = p.grid.dims().to_vec();
    if p.rank == 0 {
        return Ok(InvariantResult::new(0.0, EXACT_TOL, dims, Method::Plaquette));
    }
    let u: Vec<Vec<C64>> = (0..2)
        .map(|axis| links(p, axis)?.iter().map(det_phase).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()?;
    let mut total = 0.0;
    for node in 0..p.grid.len() {
        let right = p.grid.shift(node, 0, 1);
        let up = p.grid.shift(node, 1, 1);
        let phase = (u[0][node] * u[1][right] * u[0][up].conj() * u[1][node].conj()).arg();
        if phase.abs() > PHASE_LIMIT {
            return Err(InvariantError::RefineGrid { node, phase });
        }
        total += phase;
    }
    Ok(InvariantResult::new(total / (2.0 * PI), EXACT_TOL, dims, Method::Plaquette))
}

struct LinkField<'a> {
    p: &'a ProjectionField,
    links: Vec<Vec<ComplexMatrix>>,
}

impl LinkField<'_> {
    /// Ordered product of links along `steps` (axis, ±1) starting at `node`.
    fn path(&self, mut node: usize, steps: &[(usize, isize)]) -> ComplexMatrix {
        let mut prod = ComplexMatrix::identity(self.p.rank);
        for &(axis, sign) in steps {
            if sign > 0 {
                prod = prod.matmul(&self.links[axis][node]);
                node = self.p.grid.shift(node, axis, 1);
            } else {
                node = self.p.grid.shift(node, axis, -1);
                prod = prod.matmul(&self.links[axis][node].adjoint());
            }
        }
        prod
    }

    /// Clover average of the logarithms of the four `a × a` loops in the
    /// `(mu, nu)` plane at `node`, divided by `a²`.
    fn clover(&self, node: usize, mu: usize, nu: usize, a: usize) -> Result<ComplexMatrix, InvariantError> {
        let mut sum = ComplexMatrix::zeros(self.p.rank, self.p.rank);
        for (s, t) in [(1isize, 1isize), (-1, 1), (-1, -1), (1, -1)] {
            let (first, second) = if s * t > 0 { ((mu, s), (nu, t)) } else { ((nu, t), (mu, s)) };
            let mut steps = Vec::with_capacity(4 * a);
            for (axis, sign) in [first, second, (first.0, -first.1), (second.0, -second.1)] {
                steps.extend(std::iter::repeat((axis, sign)).take(a));
            }
            let (log, phases) = unitary_log_phases(&self.path(node, &steps))?;
            let max_phase = phases.iter().map(|p| p.abs()).fold(0.0, f64::max);
            if max_phase > PHASE_LIMIT {
                return Err(InvariantError::RefineGrid { node, phase: max_phase });
            }
            sum += &log;
        }
        Ok(sum.scale_re(1.0 / (4 * a * a) as f64))
    }

    fn field_strength(&self, node: usize, mu: usize, nu: usize) -> Result<ComplexMatrix, InvariantError> {
        let mut f = ComplexMatrix::zeros(self.p.rank, self.p.rank);
        for (i, w) in CLOVER_WEIGHTS.iter().enumerate() {
            f += &self.clover(node, mu, nu, i + 1)?.scale_re(*w);
        }
        Ok(f)
    }
}

/// Second Chern number of a projection field on a 4D grid:
/// `(1/4π²) Σ_k tr(F₀₁F₂₃ − F₀₂F₁₃ + F₀₃F₁₂)` with the improved clover
/// field strength `F = (3/2)F⁽¹⁾ − (3/5)F⁽²⁾ + (1/10)F⁽³⁾`.
pub fn chern_4d(p: &ProjectionField) -> Result<InvariantResult, InvariantError> {
    if p.grid.ndim() != 4 {
        return Err(InvariantError::InvalidArgument(format!("chern_4d needs a 4D grid, got {}", p.grid.ndim())));
    }
    let dims = p.grid.dims().to_vec();
    if let Some(n) = dims.iter().find(|&&n| n < 2 * CLOVER_WEIGHTS.len() + 1) {
        return Err(InvariantError::InvalidArgument(format!(
            "chern_4d needs at least {} points per axis, got {n}",
            2 * CLOVER_WEIGHTS.len() + 1
        )));
    }
    if p.rank == 0 {
        return Ok(InvariantResult::new(0.0, CLOVER_TOL, dims, Method::Clover));
    }
    let lf = LinkField { p, links: (0..4).map(|axis| links(p, axis)).collect::<Result<_, _>>()? };
    let density = (0..p.grid.len())
        .into_par_iter()
        .map(|node| {
            let f = |mu, nu| lf.field_strength(node, mu, nu);
            let t = f(0, 1)?.matmul(&f(2, 3)?).trace() - f(0, 2)?.matmul(&f(1, 3)?).trace()
                + f(0, 3)?.matmul(&f(1, 2)?).trace();
            Ok(t.re)
        })
        .collect::<Result<Vec<f64>, InvariantError>>()?;
    let value = density.iter().sum::<f64>() / (4.0 * PI * PI);
    Ok(InvariantResult::new(value, CLOVER_TOL, dims, Method::Clover))
}
