//! Built-in models used by tests, examples and the acceptance suite.
//!
//! The boundary-perpendicular hopping of the textbook QWZ and 4D Dirac
//! models, `(Γ − iΓ')/2` with anticommuting `Γ, Γ'`, is nilpotent and hence
//! not invertible. The corpus versions add `η·𝟙` to it. Because the added
//! bulk term `2η cos q·𝟙` commutes with everything, Bloch eigenvectors and
//! therefore all bulk projections are unchanged; only the band energies
//! shift by at most `2η`.

use topo_numerics::{pauli, ComplexMatrix, C64, I};

use crate::fourier::FourierMatrix;
use crate::jacobi::BlockJacobiModel;
use crate::wire::WireModel;

/// Default `η` of the regularized perpendicular hopping.
pub const HOPPING_SHIFT: f64 = 0.25;

fn single_layer(
    dimension: usize,
    hopping: FourierMatrix,
    onsite: FourierMatrix,
) -> BlockJacobiModel {
    let l = hopping.dim();
    BlockJacobiModel::new(dimension, l, 1, vec![hopping], vec![onsite], None)
        .expect("corpus model is valid")
}

/// Nearest-neighbour chain on the half-line: `L = 1`, `A = 1`, `B = 0`.
pub fn chain() -> BlockJacobiModel {
    single_layer(
        1,
        FourierMatrix::constant(ComplexMatrix::identity(1), 0),
        FourierMatrix::constant(ComplexMatrix::zeros(1, 1), 0),
    )
}

/// QWZ model with mass `u` and the default hopping shift.
pub fn qwz(u: f64) -> BlockJacobiModel {
    qwz_shifted(u, HOPPING_SHIFT)
}

/// `B(k) = (u + cos k)σ₃ + sin k σ₂`, `A = (σ₃ − iσ₁)/2 + η𝟙`.
///
/// Bulk fiber: `sin q σ₁ + sin k σ₂ + (u + cos k + cos q)σ₃ + 2η cos q`.
pub fn qwz_shifted(u: f64, eta: f64) -> BlockJacobiModel {
    let [s1, s2, s3] = pauli();
    let one = ComplexMatrix::identity(2);
    let a = &(&s3 - &s1.scale(I)).scale_re(0.5) + &one.scale_re(eta);
    let half_cos = s3.scale_re(0.5);
    let half_sin = s2.scale(C64::new(0.0, -0.5));
    let onsite = FourierMatrix::zero(2, 1)
        .with_term(&[0], s3.scale_re(u))
        .with_term(&[1], &half_cos + &half_sin)
        .with_term(&[-1], &half_cos - &half_sin);
    single_layer(2, FourierMatrix::constant(a, 1), onsite)
}

/// Γ₁..Γ₅: `Γ_j = σ₁⊗σ_j` (j ≤ 3), `Γ₄ = σ₂⊗𝟙`, `Γ₅ = σ₃⊗𝟙`.
pub fn gamma_matrices() -> [ComplexMatrix; 5] {
    let [s1, s2, s3] = pauli();
    let one = ComplexMatrix::identity(2);
    [
        ComplexMatrix::kron(&s1, &s1),
        ComplexMatrix::kron(&s1, &s2),
        ComplexMatrix::kron(&s1, &s3),
        ComplexMatrix::kron(&s2, &one),
        ComplexMatrix::kron(&s3, &one),
    ]
}

/// 4D Dirac-type model with mass `m` and the default hopping shift.
pub fn dirac4d(m: f64) -> BlockJacobiModel {
    dirac4d_shifted(m, HOPPING_SHIFT)
}

/// `B(k) = Σ_j sin k_j Γ_j + (m + Σ_j cos k_j)Γ₅` over the three boundary
/// momenta, `A = (Γ₅ − iΓ₄)/2 + η𝟙`.
pub fn dirac4d_shifted(m: f64, eta: f64) -> BlockJacobiModel {
    let g = gamma_matrices();
    let one = ComplexMatrix::identity(4);
    let a = &(&g[4] - &g[3].scale(I)).scale_re(0.5) + &one.scale_re(eta);
    let mut onsite = FourierMatrix::zero(4, 3).with_term(&[0, 0, 0], g[4].scale_re(m));
    for j in 0..3 {
        let mut e = [0; 3];
        e[j] = 1;
        let half_cos = g[4].scale_re(0.5);
        let half_sin = g[j].scale(C64::new(0.0, -0.5));
        onsite = onsite.with_term(&e, &half_cos + &half_sin);
        e[j] = -1;
        onsite = onsite.with_term(&e, &half_cos - &half_sin);
    }
    single_layer(4, FourierMatrix::constant(a, 3), onsite)
}

/// Atomic insulator in dimension `d`: `L = 2`, `B = 2σ₃`, `A = 𝟙/4`.
pub fn trivial(dimension: usize) -> BlockJacobiModel {
    let [_, _, s3] = pauli();
    single_layer(
        dimension,
        FourierMatrix::constant(ComplexMatrix::identity(2).scale_re(0.25), dimension - 1),
        FourierMatrix::constant(s3.scale_re(2.0), dimension - 1),
    )
}

/// Single-channel lead `A = 1`, `B = 0`; its band is `[−2, 2]`.
pub fn chain_wire() -> WireModel {
    WireModel::new(ComplexMatrix::identity(1), ComplexMatrix::zeros(1, 1))
        .expect("corpus wire is valid")
}

/// Decoupled chains `A = 𝟙`, `B = diag(onsite)`; channel `i` conducts on
/// `[b_i − 2, b_i + 2]`.
pub fn chain_bundle_wire(onsite: &[f64]) -> WireModel {
    let b: Vec<C64> = onsite.iter().map(|&x| C64::new(x, 0.0)).collect();
    WireModel::new(ComplexMatrix::identity(onsite.len()), ComplexMatrix::diag(&b))
        .expect("corpus wire is valid")
}

/// The lead used with `L`-band insulators in tests: distinct onsite
/// energies keep every channel open at energy 0 and lift degeneracies.
pub fn default_wire(l: usize) -> WireModel {
    const ONSITE: [f64; 4] = [0.0, 0.5, -0.5, 0.25];
    let b: Vec<f64> = (0..l).map(|i| ONSITE[i % 4] + 0.1 * (i / 4) as f64).collect();
    chain_bundle_wire(&b)
}
