use topo_numerics::{inverse, ComplexMatrix, C64};

use crate::error::KreinError;
use crate::forms::g_form;

/// One-step transfer matrix of the recursion
/// `A_{n+1}φ_{n+1} + B_nφ_n + A_n*φ_{n−1} = zφ_n`, acting on frames
/// `Φ_n = (A_{n+1}φ_{n+1}; φ_n)`.
#[derive(Clone, Debug)]
pub struct TransferMatrix {
    pub matrix: ComplexMatrix,
    pub z: C64,
    pub a: ComplexMatrix,
    pub b: ComplexMatrix,
}

impl TransferMatrix {
    /// Half dimension `L`.
    pub fn l(&self) -> usize {
        self.a.rows()
    }

    /// `‖𝒯*𝒢𝒯 − 𝒢‖`, zero at real energy.
    pub fn g_unitarity_residual(&self) -> f64 {
        let g = g_form(self.l());
        (&self.matrix.adjoint().matmul(&g).matmul(&self.matrix) - &g).norm_fro()
    }
}

/// `𝒯^z = [[(z − B)A⁻¹, −A*], [A⁻¹, 0]]`.
pub fn transfer_matrix(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    z: C64,
) -> Result<TransferMatrix, KreinError> {
    if !a.is_square() || a.shape() != b.shape() {
        return Err(KreinError::DimensionMismatch("A and B must be square of equal size".into()));
    }
    let l = a.rows();
    let a_inv = inverse(a)?;
    let zb = &ComplexMatrix::scalar(l, z) - b;
    let top_left = zb.matmul(&a_inv);
    let matrix = ComplexMatrix::from_blocks(&top_left, &(-&a.adjoint()), &a_inv, &ComplexMatrix::zeros(l, l));
    Ok(TransferMatrix { matrix, z, a: a.clone(), b: b.clone() })
}

/// `∂_z 𝒯^z = [[A⁻¹, 0], [0, 0]]`.
pub fn transfer_derivative(a: &ComplexMatrix) -> Result<ComplexMatrix, KreinError> {
    let l = a.rows();
    let z = ComplexMatrix::zeros(l, l);
    Ok(ComplexMatrix::from_blocks(&inverse(a)?, &z, &z, &z))
}

/// Ordered product `𝒯_k ⋯ 𝒯_1` of the list `[𝒯_1, …, 𝒯_k]`.
pub fn monodromy(ts: &[TransferMatrix]) -> Option<ComplexMatrix> {
    let mut it = ts.iter();
    let first = it.next()?.matrix.clone();
    Some(it.fold(first, |acc, t| t.matrix.matmul(&acc)))
}

/// Applies `𝒯_1`, then `𝒯_2`, … to the frame `Φ₀`.
pub fn propagate(ts: &[TransferMatrix], phi0: &ComplexMatrix) -> Result<ComplexMatrix, KreinError> {
    let mut phi = phi0.clone();
    for (i, t) in ts.iter().enumerate() {
        if t.matrix.cols() != phi.rows() {
            return Err(KreinError::DimensionMismatch(format!(
                "transfer matrix {i} is {}x{}, frame has {} rows",
                t.matrix.rows(),
                t.matrix.cols(),
                phi.rows()
            )));
        }
        phi = t.matrix.matmul(&phi);
    }
    Ok(phi)
}
