use topo_numerics::{eigen, hermitian_eigenvalues, svd, ComplexMatrix, C64};

use crate::error::KreinError;
use crate::forms::g_form;
use crate::transfer::TransferMatrix;

/// Default relative distance to the unit circle below which an eigenvalue
/// counts as lying on it.
pub const CIRCLE_TOL: f64 = 1e-8;
/// `|v*𝒢v|` below this (relative to ‖v‖²) makes a signature ambiguous.
pub const SIGNATURE_TOL: f64 = 1e-8;
const EIGEN_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CircleClass {
    Inside,
    OnCircle,
    Outside,
}

/// A cluster of coincident eigenvalues of a 𝒢-unitary matrix.
#[derive(Clone, Debug)]
pub struct SpectralCluster {
    /// Mean of the clustered eigenvalues.
    pub eigenvalue: C64,
    pub multiplicity: usize,
    pub class: CircleClass,
    /// Inertia `(ν₊, ν₋)` of `𝒢` on the (generalized) eigenspace; only for
    /// eigenvalues on the circle.
    pub signature: Option<(usize, usize)>,
    /// The eigenvectors fail to span the algebraic multiplicity.
    pub defective: bool,
    /// Columns spanning the eigenspace (generalized if defective).
    pub eigenvectors: ComplexMatrix,
}

impl SpectralCluster {
    /// On the circle with a one-signed signature and trivial Jordan structure.
    pub fn is_definite(&self) -> bool {
        self.class == CircleClass::OnCircle
            && !self.defective
            && matches!(self.signature, Some((p, 0)) | Some((0, p)) if p > 0)
    }
}

#[derive(Clone, Debug)]
pub struct GUnitarySpectrum {
    pub clusters: Vec<SpectralCluster>,
}

impl GUnitarySpectrum {
    fn count(&self, class: CircleClass) -> usize {
        self.clusters.iter().filter(|c| c.class == class).map(|c| c.multiplicity).sum()
    }

    pub fn count_inside(&self) -> usize {
        self.count(CircleClass::Inside)
    }

    pub fn count_outside(&self) -> usize {
        self.count(CircleClass::Outside)
    }

    pub fn count_on_circle(&self) -> usize {
        self.count(CircleClass::OnCircle)
    }

    pub fn eigenvalues(&self) -> Vec<C64> {
        self.clusters.iter().flat_map(|c| std::iter::repeat(c.eigenvalue).take(c.multiplicity)).collect()
    }

    /// Every eigenvalue on the circle, definite and semisimple.
    pub fn is_elliptic_definite(&self) -> bool {
        self.clusters.iter().all(SpectralCluster::is_definite)
    }
}

fn classify_modulus(lambda: C64, circle_tol: f64) -> CircleClass {
    let d = lambda.norm() - 1.0;
    if d.abs() <= circle_tol {
        CircleClass::OnCircle
    } else if d < 0.0 {
        CircleClass::Inside
    } else {
        CircleClass::Outside
    }
}

/// Null space of `(M − λ)^m` from an SVD, used for generalized eigenspaces.
fn generalized_eigenspace(m: &ComplexMatrix, lambda: C64, mult: usize) -> Result<ComplexMatrix, KreinError> {
    let n = m.rows();
    let shifted = m - &ComplexMatrix::scalar(n, lambda);
    let mut p = shifted.clone();
    for _ in 1..mult {
        p = p.matmul(&shifted);
    }
    let d = svd(&p)?;
    // The smallest `mult` right singular vectors span the space.
    Ok(d.v.block(0, n - mult, n, mult))
}

/// Inertia of a Hermitian Gram matrix, or the offending value if some
/// eigenvalue is too close to zero.
fn inertia(gram: &ComplexMatrix, scale: f64) -> Result<(usize, usize), f64> {
    let ev = hermitian_eigenvalues(gram).map_err(|_| f64::NAN)?;
    let mut pos = 0;
    let mut neg = 0;
    for e in ev {
        if e.abs() < SIGNATURE_TOL * scale {
            return Err(e.abs());
        } else if e > 0.0 {
            pos += 1;
        } else {
            neg += 1;
        }
    }
    Ok((pos, neg))
}

/// Spectrum of a 𝒢-unitary matrix of size `2L` with Krein signatures of
/// its unit-circle eigenvalues.
pub fn classify_matrix(m: &ComplexMatrix, circle_tol: f64) -> Result<GUnitarySpectrum, KreinError> {
    if !m.is_square() || m.rows() % 2 != 0 {
        return Err(KreinError::DimensionMismatch("expected a square matrix of even size".into()));
    }
    let g = g_form(m.rows() / 2);
    let e = eigen(m, EIGEN_TOL)?;
    let mut clusters = Vec::with_capacity(e.clusters.len());
    for c in &e.clusters {
        let mult = c.members.len();
        let eigenvalue = c.members.iter().map(|&i| e.eigenvalues[i]).sum::<C64>() / mult as f64;
        let class = classify_modulus(eigenvalue, circle_tol);
        let eigenvectors = if c.defective {
            generalized_eigenspace(m, eigenvalue, mult)?
        } else {
            e.vectors.select_columns(&c.members)
        };
        let signature = if class == CircleClass::OnCircle {
            let gram = eigenvectors.adjoint().matmul(&g).matmul(&eigenvectors).hermitian_part();
            match inertia(&gram, 1.0) {
                Ok(s) => Some(s),
                Err(value) if !c.defective => {
                    return Err(KreinError::AmbiguousSignature { eigenvalue, value })
                }
                // A degenerate form on a Jordan block is expected; record
                // it as indefinite.
                Err(_) => Some((mult / 2, mult - mult / 2)),
            }
        } else {
            None
        };
        clusters.push(SpectralCluster {
            eigenvalue,
            multiplicity: mult,
            class,
            signature,
            defective: c.defective,
            eigenvectors,
        });
    }
    Ok(GUnitarySpectrum { clusters })
}

/// [`classify_matrix`] applied to a transfer matrix.
pub fn classify_spectrum(t: &TransferMatrix, circle_tol: f64) -> Result<GUnitarySpectrum, KreinError> {
    classify_matrix(&t.matrix, circle_tol)
}
