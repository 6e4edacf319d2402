use std::f64::consts::TAU;

use crate::error::ModelError;

/// Uniform periodic grid on [0, 2π)^n.
///
/// Node `j` on an axis with `N` points sits at `2π (j + offset)/N`; the
/// offset (a fraction of the spacing, default 0) lets callers move nodes
/// away from special momenta.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentumGrid {
    dims: Vec<usize>,
    offset: f64,
}

impl MomentumGrid {
    pub fn new(dims: Vec<usize>) -> Result<Self, ModelError> {
        if let Some(&n) = dims.iter().find(|&&n| n < 2) {
            return Err(ModelError::InvalidArgument(format!(
                "grid needs at least 2 points per axis, got {n}"
            )));
        }
        Ok(Self { dims, offset: 0.0 })
    }

    pub fn uniform(ndim: usize, points: usize) -> Result<Self, ModelError> {
        Self::new(vec![points; ndim])
    }

    pub fn with_offset(mut self, offset: f64) -> Self {
        self.offset = offset;
        self
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn ndim(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn points_per_axis(&self, axis: usize) -> usize {
        self.dims[axis]
    }

    pub fn spacing(&self, axis: usize) -> f64 {
        TAU / self.dims[axis] as f64
    }

    /// Number of nodes (1 for the zero-dimensional grid).
    pub fn len(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Multi-index of a linear node index; the last axis varies fastest.
    pub fn multi_index(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for a in (0..self.dims.len()).rev() {
            out[a] = idx % self.dims[a];
            idx /= self.dims[a];
        }
        out
    }

    pub fn linear_index(&self, multi: &[usize]) -> usize {
        multi.iter().zip(&self.dims).fold(0, |acc, (&m, &n)| acc * n + m % n)
    }

    pub fn point(&self, idx: usize) -> Vec<f64> {
        self.multi_index(idx)
            .iter()
            .zip(&self.dims)
            .map(|(&j, &n)| TAU * (j as f64 + self.offset) / n as f64)
            .collect()
    }

    pub fn points(&self) -> Vec<Vec<f64>> {
        (0..self.len()).map(|i| self.point(i)).collect()
    }

    /// Linear index of the node displaced by `step` along `axis`, periodically.
    pub fn shift(&self, idx: usize, axis: usize, step: isize) -> usize {
        let mut m = self.multi_index(idx);
        let n = self.dims[axis] as isize;
        m[axis] = (m[axis] as isize + step).rem_euclid(n) as usize;
        self.linear_index(&m)
    }

    /// Grid with `axis` removed, used to split bulk momenta into
    /// boundary-parallel and perpendicular parts.
    pub fn drop_axis(&self, axis: usize) -> Self {
        let mut dims = self.dims.clone();
        dims.remove(axis);
        Self { dims, offset: self.offset }
    }
}
