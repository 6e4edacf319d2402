use topo_numerics::{ComplexMatrix, C64};

use crate::error::ModelError;

/// One term `M·exp(i n·k)` of a matrix-valued trigonometric polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct Harmonic {
    pub exponent: Vec<i32>,
    pub matrix: ComplexMatrix,
}

/// Finite Fourier series `k ↦ Σ_n M_n exp(i n·k)` on the torus of
/// dimension `vars`, with `dim × dim` coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierMatrix {
    dim: usize,
    vars: usize,
    harmonics: Vec<Harmonic>,
}

impl FourierMatrix {
    pub fn new(dim: usize, vars: usize, harmonics: Vec<Harmonic>) -> Result<Self, ModelError> {
        for (i, h) in harmonics.iter().enumerate() {
            if h.exponent.len() != vars {
                return Err(ModelError::InvalidModel(format!(
                    "harmonic {i}: exponent has {} components, expected {vars}",
                    h.exponent.len()
                )));
            }
            if h.matrix.shape() != (dim, dim) {
                return Err(ModelError::InvalidModel(format!(
                    "harmonic {i}: matrix is {}x{}, expected {dim}x{dim}",
                    h.matrix.rows(),
                    h.matrix.cols()
                )));
            }
        }
        Ok(Self { dim, vars, harmonics })
    }

    pub fn constant(matrix: ComplexMatrix, vars: usize) -> Self {
        let dim = matrix.rows();
        Self { dim, vars, harmonics: vec![Harmonic { exponent: vec![0; vars], matrix }] }
    }

    pub fn zero(dim: usize, vars: usize) -> Self {
        Self { dim, vars, harmonics: vec![] }
    }

    /// Adds `matrix·exp(i exponent·k)` to the series.
    pub fn with_term(mut self, exponent: &[i32], matrix: ComplexMatrix) -> Self {
        assert_eq!(exponent.len(), self.vars);
        assert_eq!(matrix.shape(), (self.dim, self.dim));
        self.harmonics.push(Harmonic { exponent: exponent.to_vec(), matrix });
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn harmonics(&self) -> &[Harmonic] {
        &self.harmonics
    }

    pub fn eval(&self, k: &[f64]) -> ComplexMatrix {
        assert_eq!(k.len(), self.vars, "momentum has wrong dimension");
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        for h in &self.harmonics {
            let phase: f64 = h.exponent.iter().zip(k).map(|(&n, &x)| n as f64 * x).sum();
            out += &h.matrix.scale(C64::from_polar(1.0, phase));
        }
        out
    }

    /// Coefficients with equal exponents merged.
    fn collected(&self) -> Vec<(Vec<i32>, ComplexMatrix)> {
        let mut out: Vec<(Vec<i32>, ComplexMatrix)> = Vec::new();
        for h in &self.harmonics {
            match out.iter_mut().find(|(e, _)| *e == h.exponent) {
                Some((_, m)) => *m += &h.matrix,
                None => out.push((h.exponent.clone(), h.matrix.clone())),
            }
        }
        out
    }

    /// Largest violation of `M_{−n} = M_n*`, which is equivalent to the
    /// series being Hermitian at every real momentum.
    pub fn hermiticity_defect(&self) -> f64 {
        let terms = self.collected();
        let zero = ComplexMatrix::zeros(self.dim, self.dim);
        let mut worst: f64 = 0.0;
        for (e, m) in &terms {
            let neg: Vec<i32> = e.iter().map(|x| -x).collect();
            let partner = terms.iter().find(|(f, _)| *f == neg).map_or(&zero, |(_, p)| p);
            worst = worst.max((m - &partner.adjoint()).norm_fro());
        }
        worst
    }

    /// Largest absolute exponent, the interaction range of the series.
    pub fn range(&self) -> i32 {
        self.harmonics
            .iter()
            .flat_map(|h| h.exponent.iter().map(|x| x.abs()))
            .max()
            .unwrap_or(0)
    }
}
