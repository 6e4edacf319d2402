use topo_numerics::{solve_right, ComplexMatrix, NumericsError, I};

use crate::error::KreinError;
use crate::forms::g_form;
use crate::normal_form::EllipticNormalForm;

/// Relative tolerance for `Φ*𝒢Φ = 0`.
pub const LAGRANGIAN_TOL: f64 = 1e-8;

fn undefined(e: NumericsError, err: KreinError) -> KreinError {
    match e {
        NumericsError::SingularMatrix { .. } => err,
        other => KreinError::Numerics(other),
    }
}

/// `[[a, b], [c, d]]·Z = (aZ + b)(cZ + d)⁻¹`.
pub fn mobius(m: &ComplexMatrix, z: &ComplexMatrix) -> Result<ComplexMatrix, KreinError> {
    let l = z.rows();
    if !z.is_square() || m.shape() != (2 * l, 2 * l) {
        return Err(KreinError::DimensionMismatch(format!(
            "Möbius action of a {}x{} matrix on a {}x{} point",
            m.rows(),
            m.cols(),
            z.rows(),
            z.cols()
        )));
    }
    let (a, b) = (m.block(0, 0, l, l), m.block(0, l, l, l));
    let (c, d) = (m.block(l, 0, l, l), m.block(l, l, l, l));
    let num = &a.matmul(z) + &b;
    let den = &c.matmul(z) + &d;
    solve_right(&num, &den).map_err(|e| undefined(e, KreinError::MoebiusUndefined))
}

/// `Π(a; b) = (a − ib)(a + ib)⁻¹`.
pub fn stereographic(phi: &ComplexMatrix) -> Result<ComplexMatrix, KreinError> {
    let l = phi.cols();
    if phi.rows() != 2 * l {
        return Err(KreinError::DimensionMismatch(format!(
            "frame must be 2L x L, got {}x{}",
            phi.rows(),
            phi.cols()
        )));
    }
    let a = phi.block(0, 0, l, l);
    let ib = phi.block(l, 0, l, l).scale(I);
    solve_right(&(&a - &ib), &(&a + &ib)).map_err(|e| undefined(e, KreinError::StereoUndefined))
}

/// `‖Φ*𝒢Φ‖ / ‖Φ‖²`.
pub fn lagrangian_residual(phi: &ComplexMatrix) -> f64 {
    let g = g_form(phi.rows() / 2);
    let n2 = phi.norm_fro().powi(2).max(f64::MIN_POSITIVE);
    phi.adjoint().matmul(&g).matmul(phi).norm_fro() / n2
}

/// Unitary `(N − iM)(N + iM)⁻¹` where `Φ = Ψ_∨N + Ψ_∧M`, i.e.
/// `(N; M) = 𝒩⁻¹Φ`. It equals `𝟙` exactly on `Ψ_∨` and `−𝟙` on `Ψ_∧`.
pub fn frame_angles(phi: &ComplexMatrix, nf: &EllipticNormalForm) -> Result<ComplexMatrix, KreinError> {
    let l = nf.l();
    if phi.shape() != (2 * l, l) {
        return Err(KreinError::DimensionMismatch(format!(
            "frame must be {}x{l}, got {}x{}",
            2 * l,
            phi.rows(),
            phi.cols()
        )));
    }
    let residual = lagrangian_residual(phi);
    if !(residual <= LAGRANGIAN_TOL) {
        return Err(KreinError::NotLagrangian { residual });
    }
    let nm = nf.n_inverse().matmul(phi);
    stereographic(&nm)
}
