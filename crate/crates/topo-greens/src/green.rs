use topo_krein::{classify_matrix, transfer_matrix, CircleClass, KreinError, CIRCLE_TOL};
use topo_model::{bloch_fiber, BlockJacobiModel, Boundary};
use topo_numerics::{hermitian_eigen, hermitian_eigenvalues, inverse, solve, ComplexMatrix, NumericsError, C64};

use crate::error::GreensError;

/// Below this distance of a real `z` to the truncated spectrum the
/// resolvent is treated as singular.
pub const RESOLVENT_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GreenRoute {
    /// Boundary block of the resolvent of the depth-`M` truncation.
    TruncatedResolvent { depth: usize },
    /// Decaying solutions of the transfer recursion (strip width 1 only).
    TransferSubspace,
}

/// Boundary block `Ĝ^z_N(k)` of the half-space resolvent.
#[derive(Clone, Debug)]
pub struct BoundaryGreen {
    pub matrix: ComplexMatrix,
    pub z: C64,
    pub k: Vec<f64>,
    pub n: usize,
    pub route: GreenRoute,
}

impl BoundaryGreen {
    /// Smallest eigenvalue of `Im Ĝ = (Ĝ − Ĝ*)/(2i)`.
    pub fn imaginary_part_min(&self) -> Result<f64, GreensError> {
        Ok(hermitian_eigenvalues(&self.matrix.imaginary_part())?[0])
    }

    fn check_positive(self) -> Result<Self, GreensError> {
        if self.z.im > 0.0 {
            let min = self.imaginary_part_min()?;
            if min < -1e-10 * self.matrix.norm_fro().max(1.0) {
                return Err(GreensError::NotPositive { min });
            }
        }
        Ok(self)
    }
}

fn singular_to_resolvent(z: C64) -> impl Fn(NumericsError) -> GreensError {
    move |e| match e {
        NumericsError::SingularMatrix { .. } => GreensError::ResolventSingular { z, distance: 0.0 },
        other => other.into(),
    }
}

/// Top-left `N·L` block of `(Ĥ_M(k) − z)⁻¹` for the depth-`M` Dirichlet
/// truncation of the half-space fiber.
pub fn green_truncated(
    model: &BlockJacobiModel,
    z: C64,
    k: &[f64],
    n: usize,
    depth: usize,
) -> Result<BoundaryGreen, GreensError> {
    if n == 0 || depth < n {
        return Err(GreensError::InvalidArgument(format!(
            "need 1 <= N <= M, got N = {n}, M = {depth}"
        )));
    }
    let l = model.fiber_dim();
    let matrix = if z.im.abs() < RESOLVENT_TOL {
        let h = bloch_fiber(model, k, depth, Boundary::HalfSpace)?;
        let e = hermitian_eigen(&h)?;
        let distance = e.values.iter().map(|v| (C64::new(*v, 0.0) - z).norm()).fold(f64::INFINITY, f64::min);
        if distance < RESOLVENT_TOL {
            return Err(GreensError::ResolventSingular { z, distance });
        }
        // Spectral sum over the top N·L rows.
        let top = e.vectors.block(0, 0, n * l, depth * l);
        let scaled = ComplexMatrix::from_fn(n * l, depth * l, |i, j| top[(i, j)] / (e.values[j] - z));
        scaled.matmul(&top.adjoint())
    } else {
        // Schur complements from the bottom: S_n = (B_n − z − A_{n+1} S_{n+1} A_{n+1}*)⁻¹.
        let zl = ComplexMatrix::scalar(l, z);
        let mut self_energy = ComplexMatrix::zeros(l, l);
        for m in ((n + 1)..=depth).rev() {
            let s = inverse(&(&(&model.onsite(m, k) - &zl) - &self_energy)).map_err(singular_to_resolvent(z))?;
            let a = model.hopping(m, k);
            self_energy = a.matmul(&s).matmul(&a.adjoint());
        }
        let mut strip = bloch_fiber(model, k, n, Boundary::HalfSpace)?;
        strip -= &ComplexMatrix::scalar(n * l, z);
        strip.add_block((n - 1) * l, (n - 1) * l, &(-&self_energy));
        inverse(&strip).map_err(singular_to_resolvent(z))?
    };
    BoundaryGreen { matrix, z, k: k.to_vec(), n, route: GreenRoute::TruncatedResolvent { depth } }
        .check_positive()
}

/// `Ĝ^z(k)` from the contracting subspace of the one-period transfer
/// product `𝒯_{p+1} ⋯ 𝒯_2`.
///
/// With `(f; g)` spanning that subspace the decaying solution has
/// `φ_1 = g C`, `A_2 φ_2 = f C` and the first-layer equation fixes
/// `C = (f + (B_1 − z) g)⁻¹`, so `Ĝ = g (f + (B_1 − z) g)⁻¹`.
pub fn green_transfer(model: &BlockJacobiModel, z: C64, k: &[f64]) -> Result<BoundaryGreen, GreensError> {
    let l = model.fiber_dim();
    let p = model.period_perp();
    let mut mono = ComplexMatrix::identity(2 * l);
    for layer in 2..=p + 1 {
        let t = transfer_matrix(&model.hopping(layer, k), &model.onsite(layer, k), z)?;
        mono = t.matrix.matmul(&mono);
    }
    let spec = match classify_matrix(&mono, CIRCLE_TOL) {
        Err(KreinError::AmbiguousSignature { .. }) => {
            return Err(GreensError::NoSpectralSplit { inside: 0, on_circle: 2 * l, expected: l })
        }
        other => other?,
    };
    let (inside, on_circle) = (spec.count_inside(), spec.count_on_circle());
    if inside != l || on_circle != 0 {
        return Err(GreensError::NoSpectralSplit { inside, on_circle, expected: l });
    }
    let cols: Vec<&ComplexMatrix> = spec
        .clusters
        .iter()
        .filter(|c| c.class == CircleClass::Inside)
        .map(|c| &c.eigenvectors)
        .collect();
    let frame = ComplexMatrix::hstack(&cols);
    let (f, g) = (frame.block(0, 0, l, l), frame.block(l, 0, l, l));
    let b1 = &model.onsite(1, k) - &ComplexMatrix::scalar(l, z);
    let c = &f + &b1.matmul(&g);
    // Ĝ = g c⁻¹ = (c⁻* g*)*.
    let matrix = solve(&c.adjoint(), &g.adjoint()).map_err(singular_to_resolvent(z))?.adjoint();
    BoundaryGreen { matrix, z, k: k.to_vec(), n: 1, route: GreenRoute::TransferSubspace }.check_positive()
}

/// Dispatches on the route; the transfer route requires `n = 1`.
pub fn boundary_green(
    model: &BlockJacobiModel,
    z: C64,
    k: &[f64],
    n: usize,
    route: GreenRoute,
) -> Result<BoundaryGreen, GreensError> {
    match route {
        GreenRoute::TruncatedResolvent { depth } => green_truncated(model, z, k, n, depth),
        GreenRoute::TransferSubspace if n == 1 => green_transfer(model, z, k),
        GreenRoute::TransferSubspace => Err(GreensError::InvalidArgument(format!(
            "the transfer route yields the first layer only, strip width {n} requested"
        ))),
    }
}
