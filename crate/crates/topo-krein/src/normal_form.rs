use topo_numerics::{hermitian_eigen, ComplexMatrix, C64};

use crate::error::KreinError;
use crate::forms::{cayley_matrix, g_form, j_form};
use crate::spectrum::{classify_matrix, CircleClass, SpectralCluster, CIRCLE_TOL};
use crate::transfer::TransferMatrix;

/// 𝒢-unitary diagonalization of an elliptic, definite transfer matrix.
///
/// `Ψ₊`/`Ψ₋` collect eigenvectors of positive/negative Krein signature,
/// normalized so that `(Ψ₊, Ψ₋)*𝒢(Ψ₊, Ψ₋) = 𝒥`, and
/// `𝒩 = (Ψ₊, Ψ₋)𝒞` is 𝒢-unitary with
/// `𝒩⁻¹𝒯𝒩 = 𝒞* diag(Λ₊, Λ₋) 𝒞`.
#[derive(Clone, Debug)]
pub struct EllipticNormalForm {
    pub n: ComplexMatrix,
    pub psi_plus: ComplexMatrix,
    pub psi_minus: ComplexMatrix,
    pub lambda_plus: Vec<C64>,
    pub lambda_minus: Vec<C64>,
}

impl EllipticNormalForm {
    pub fn l(&self) -> usize {
        self.psi_plus.cols()
    }

    /// First `L` columns of `𝒩`.
    pub fn psi_vee(&self) -> ComplexMatrix {
        self.n.block(0, 0, 2 * self.l(), self.l())
    }

    /// Last `L` columns of `𝒩`.
    pub fn psi_wedge(&self) -> ComplexMatrix {
        self.n.block(0, self.l(), 2 * self.l(), self.l())
    }

    /// `(Ψ₊, Ψ₋)`.
    pub fn psi(&self) -> ComplexMatrix {
        ComplexMatrix::hstack(&[&self.psi_plus, &self.psi_minus])
    }

    /// `‖(Ψ₊, Ψ₋)*𝒢(Ψ₊, Ψ₋) − 𝒥‖`.
    pub fn j_normalization_residual(&self) -> f64 {
        let psi = self.psi();
        (&psi.adjoint().matmul(&g_form(self.l())).matmul(&psi) - &j_form(self.l())).norm_fro()
    }

    /// `‖𝒩*𝒢𝒩 − 𝒢‖`.
    pub fn g_unitarity_residual(&self) -> f64 {
        let g = g_form(self.l());
        (&self.n.adjoint().matmul(&g).matmul(&self.n) - &g).norm_fro()
    }

    /// `𝒩⁻¹ = 𝒢𝒩*𝒢`.
    pub fn n_inverse(&self) -> ComplexMatrix {
        let g = g_form(self.l());
        g.matmul(&self.n.adjoint()).matmul(&g)
    }

    /// `‖𝒩⁻¹𝒯𝒩 − 𝒞* diag(Λ₊, Λ₋) 𝒞‖`.
    pub fn block_form_residual(&self, t: &ComplexMatrix) -> f64 {
        let c = cayley_matrix(self.l());
        let lam: Vec<C64> = self.lambda_plus.iter().chain(&self.lambda_minus).copied().collect();
        let target = c.adjoint().matmul(&ComplexMatrix::diag(&lam)).matmul(&c);
        (&self.n_inverse().matmul(t).matmul(&self.n) - &target).norm_fro()
    }
}

/// Rescales the columns of `v` so that `v*𝒢v = s𝟙` where `s = ±1` is the
/// sign of the (definite) Gram matrix.
fn g_orthonormalize(v: &ComplexMatrix, g: &ComplexMatrix, sign: f64) -> Result<ComplexMatrix, KreinError> {
    let gram = v.adjoint().matmul(g).matmul(v).hermitian_part().scale_re(sign);
    let e = hermitian_eigen(&gram)?;
    let k = e.values.len();
    let mut u = e.vectors.clone();
    for j in 0..k {
        let f = 1.0 / e.values[j].sqrt();
        for i in 0..k {
            u[(i, j)] *= f;
        }
    }
    Ok(v.matmul(&u).matmul(&e.vectors.adjoint()))
}

/// Multiplies every column by a phase making the largest-modulus entry of
/// its lower half real and positive.
pub fn fix_phases(v: &mut ComplexMatrix) {
    let (rows, cols) = v.shape();
    let half = rows / 2;
    for j in 0..cols {
        let mut best = C64::new(0.0, 0.0);
        for i in half..rows {
            if v[(i, j)].norm() > best.norm() * (1.0 + 1e-9) {
                best = v[(i, j)];
            }
        }
        if best.norm() > 0.0 {
            let ph = best.conj() / best.norm();
            for i in 0..rows {
                v[(i, j)] *= ph;
            }
        }
    }
}

/// Builds `Ψ₊`, `Ψ₋` and `𝒩` for an elliptic transfer matrix whose unit
/// circle eigenvalues are all definite.
pub fn elliptic_normal_form(t: &TransferMatrix) -> Result<EllipticNormalForm, KreinError> {
    normal_form_of_matrix(&t.matrix)
}

pub fn normal_form_of_matrix(m: &ComplexMatrix) -> Result<EllipticNormalForm, KreinError> {
    let spec = classify_matrix(m, CIRCLE_TOL)?;
    let offending: Vec<C64> = spec
        .clusters
        .iter()
        .filter(|c| !c.is_definite())
        .map(|c| c.eigenvalue)
        .collect();
    if !offending.is_empty() {
        return Err(KreinError::NotPerfectlyConducting { eigenvalues: offending });
    }
    let l = m.rows() / 2;
    let g = g_form(l);
    let mut plus: Vec<(f64, ComplexMatrix, C64)> = Vec::new();
    let mut minus: Vec<(f64, ComplexMatrix, C64)> = Vec::new();
    for c in &spec.clusters {
        debug_assert_eq!(c.class, CircleClass::OnCircle);
        let positive = is_positive(c);
        let sign = if positive { 1.0 } else { -1.0 };
        let w = g_orthonormalize(&c.eigenvectors, &g, sign)?;
        let lam = c.eigenvalue / c.eigenvalue.norm();
        let entry = (lam.arg(), w, lam);
        if positive {
            plus.push(entry);
        } else {
            minus.push(entry);
        }
    }
    plus.sort_by(|a, b| a.0.total_cmp(&b.0));
    minus.sort_by(|a, b| b.0.total_cmp(&a.0));
    let collect = |list: &[(f64, ComplexMatrix, C64)]| -> (ComplexMatrix, Vec<C64>) {
        let cols: Vec<&ComplexMatrix> = list.iter().map(|e| &e.1).collect();
        let mut psi = if cols.is_empty() { ComplexMatrix::zeros(2 * l, 0) } else { ComplexMatrix::hstack(&cols) };
        fix_phases(&mut psi);
        let lam = list.iter().flat_map(|e| std::iter::repeat(e.2).take(e.1.cols())).collect();
        (psi, lam)
    };
    let (psi_plus, lambda_plus) = collect(&plus);
    let (psi_minus, lambda_minus) = collect(&minus);
    if psi_plus.cols() != l || psi_minus.cols() != l {
        return Err(KreinError::NotPerfectlyConducting { eigenvalues: spec.eigenvalues() });
    }
    let n = ComplexMatrix::hstack(&[&psi_plus, &psi_minus]).matmul(&cayley_matrix(l));
    Ok(EllipticNormalForm { n, psi_plus, psi_minus, lambda_plus, lambda_minus })
}

fn is_positive(c: &SpectralCluster) -> bool {
    matches!(c.signature, Some((_, 0)))
}
