use rayon::prelude::*;
use topo_model::{BlockJacobiModel, MomentumGrid};
use topo_numerics::{singular_values, ComplexMatrix, C64};

use crate::cayley::boundary_unitary;
use crate::error::GreensError;
use crate::expmap::exp_map_unitary;
use crate::green::GreenRoute;

/// Which family of boundary unitaries a field holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldLabel {
    /// Cayley transform of the boundary Green matrix.
    V,
    /// Reflection matrix.
    R,
    /// Exponential-map unitary.
    UExp,
}

/// Invertible matrices on the nodes of a boundary momentum grid.
#[derive(Clone, Debug)]
pub struct BoundaryUnitaryField {
    pub grid: MomentumGrid,
    pub values: Vec<ComplexMatrix>,
    pub z: C64,
    pub epsilon: f64,
    pub label: FieldLabel,
}

impl BoundaryUnitaryField {
    /// Evaluates `f` on every node in parallel; values keep node order.
    pub fn build<F, E>(grid: &MomentumGrid, z: C64, epsilon: f64, label: FieldLabel, f: F) -> Result<Self, E>
    where
        F: Fn(&[f64]) -> Result<ComplexMatrix, E> + Sync,
        E: Send,
    {
        let values = (0..grid.len())
            .into_par_iter()
            .map(|i| f(&grid.point(i)))
            .collect::<Result<Vec<_>, E>>()?;
        Ok(Self { grid: grid.clone(), values, z, epsilon, label })
    }

    pub fn max_unitarity_residual(&self) -> f64 {
        self.values.iter().map(ComplexMatrix::unitarity_residual).fold(0.0, f64::max)
    }

    pub fn max_norm(&self) -> Result<f64, GreensError> {
        let mut m: f64 = 0.0;
        for v in &self.values {
            m = m.max(singular_values(v)?[0]);
        }
        Ok(m)
    }

    pub fn min_singular_value(&self) -> Result<f64, GreensError> {
        let mut m = f64::INFINITY;
        for v in &self.values {
            m = m.min(*singular_values(v)?.last().unwrap_or(&0.0));
        }
        Ok(m)
    }
}

/// How `V̂^z_{N,ε}` is evaluated at each node.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryOptions {
    pub route: GreenRoute,
    pub strip: usize,
    pub epsilon: f64,
}

impl Default for BoundaryOptions {
    fn default() -> Self {
        Self { route: GreenRoute::TransferSubspace, strip: 1, epsilon: DEFAULT_EPSILON }
    }
}

pub const DEFAULT_EPSILON: f64 = 0.5;

/// `δ = 10⁻²·(gap width)`.
pub fn default_delta(gap_width: f64) -> f64 {
    1e-2 * gap_width
}

/// `M = max(50, ⌈40/gap width⌉)`.
pub fn default_depth(gap_width: f64) -> usize {
    50usize.max((40.0 / gap_width).ceil() as usize)
}

fn check_grid(model: &BlockJacobiModel, grid: &MomentumGrid) -> Result<(), GreensError> {
    if grid.ndim() != model.boundary_dim() {
        return Err(GreensError::InvalidArgument(format!(
            "boundary grid has {} axes, model needs {}",
            grid.ndim(),
            model.boundary_dim()
        )));
    }
    Ok(())
}

/// `k ↦ V̂^z_{N,ε}(k)` on a boundary grid.
pub fn boundary_unitary_field(
    model: &BlockJacobiModel,
    grid: &MomentumGrid,
    z: C64,
    opts: &BoundaryOptions,
) -> Result<BoundaryUnitaryField, GreensError> {
    check_grid(model, grid)?;
    BoundaryUnitaryField::build(grid, z, opts.epsilon, FieldLabel::V, |k| {
        boundary_unitary(model, z, k, opts.strip, opts.epsilon, opts.route)
    })
}

/// `k ↦ Û(k)` on a boundary grid.
pub fn exp_map_field(
    model: &BlockJacobiModel,
    grid: &MomentumGrid,
    m: usize,
    gap: (f64, f64),
    mu: f64,
) -> Result<BoundaryUnitaryField, GreensError> {
    check_grid(model, grid)?;
    BoundaryUnitaryField::build(grid, C64::new(mu, 0.0), 0.0, FieldLabel::UExp, |k| {
        exp_map_unitary(model, k, m, gap, mu)
    })
}
