use rayon::prelude::*;
use topo_model::{BlockJacobiModel, MomentumGrid};
use topo_numerics::{hermitian_eigen, ComplexMatrix};

use crate::error::InvariantError;

/// Eigenvalues closer than this to the Fermi level violate the gap.
pub const GAP_TOL: f64 = 1e-8;
const FRAME_TOL: f64 = 1e-10;

/// Fermi projections `P(k) = F(k)F(k)*` on a grid of the full torus, stored
/// through orthonormal frames `F(k)` of the occupied subspace.
#[derive(Clone, Debug)]
pub struct ProjectionField {
    pub grid: MomentumGrid,
    pub frames: Vec<ComplexMatrix>,
    pub rank: usize,
}

impl ProjectionField {
    /// Checks that every frame has orthonormal columns and that the rank is
    /// constant.
    pub fn from_frames(grid: MomentumGrid, frames: Vec<ComplexMatrix>) -> Result<Self, InvariantError> {
        if frames.len() != grid.len() {
            return Err(InvariantError::InvalidArgument(format!(
                "{} frames for {} grid nodes",
                frames.len(),
                grid.len()
            )));
        }
        let rank = frames.first().map_or(0, ComplexMatrix::cols);
        let dim = frames.first().map_or(0, ComplexMatrix::rows);
        for (node, f) in frames.iter().enumerate() {
            if f.cols() != rank {
                return Err(InvariantError::RankChanged { node, rank: f.cols(), expected: rank });
            }
            if f.rows() != dim {
                return Err(InvariantError::InvalidArgument(format!("frame {node} has {} rows, expected {dim}", f.rows())));
            }
            let gram = &f.adjoint().matmul(f) - &ComplexMatrix::identity(rank);
            if gram.norm_fro() > FRAME_TOL {
                return Err(InvariantError::InvalidArgument(format!("frame {node} is not orthonormal")));
            }
        }
        Ok(Self { grid, frames, rank })
    }

    pub fn projection(&self, node: usize) -> ComplexMatrix {
        let f = &self.frames[node];
        f.matmul(&f.adjoint())
    }

    /// Largest `‖P² − P‖` and `‖P − P*‖` over the grid.
    pub fn residuals(&self) -> (f64, f64) {
        (0..self.grid.len()).fold((0.0, 0.0), |(idem, herm), i| {
            let p = self.projection(i);
            (idem.max((&p.matmul(&p) - &p).norm_fro()), herm.max(p.hermitian_residual()))
        })
    }
}

/// Spectral projections below `mu` of the bulk fibers on `grid`.
pub fn fermi_projection_field(
    model: &BlockJacobiModel,
    mu: f64,
    grid: &MomentumGrid,
) -> Result<ProjectionField, InvariantError> {
    if grid.ndim() != model.dimension() {
        return Err(InvariantError::InvalidArgument(format!(
            "bulk grid has {} axes, model dimension is {}",
            grid.ndim(),
            model.dimension()
        )));
    }
    let frames = (0..grid.len())
        .into_par_iter()
        .map(|node| {
            let k = grid.point(node);
            let e = hermitian_eigen(&model.bulk_fiber_at(&k))?;
            if let Some(&energy) = e.values.iter().find(|v| (**v - mu).abs() < GAP_TOL) {
                return Err(InvariantError::GapViolated { node, momentum: k, energy });
            }
            let occupied: Vec<usize> = (0..e.values.len()).filter(|&i| e.values[i] < mu).collect();
            Ok(e.vectors.select_columns(&occupied))
        })
        .collect::<Result<Vec<_>, _>>()?;
    ProjectionField::from_frames(grid.clone(), frames)
}
