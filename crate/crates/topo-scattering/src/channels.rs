use topo_krein::{cayley_matrix, elliptic_normal_form, transfer_matrix, EllipticNormalForm, KreinError, CIRCLE_TOL};
use topo_model::WireModel;
use topo_numerics::{eigen, inverse, singular_values, ComplexMatrix, C64};

use crate::error::ScatteringError;

/// Relative residual of the Bloch equation accepted for a channel.
pub const BLOCH_TOL: f64 = 1e-8;
/// Energy step of the central difference for `dθ/dE`.
pub const PHASE_STEP: f64 = 1e-5;
/// Continued channel frames whose smallest singular value drops by more
/// than this factor are rejected.
pub const CONTINUATION_RANK_TOL: f64 = 1e-6;
const EIGEN_TOL: f64 = 1e-8;

/// Open channels of a perfectly conducting wire at a real energy.
///
/// Channel `j < L` is the `j`-th column of `Ψ₊` (incoming), channel
/// `L + j` the `j`-th column of `Ψ₋` (outgoing).
#[derive(Clone, Debug)]
pub struct WireChannels {
    pub energy: f64,
    pub normal_form: EllipticNormalForm,
    /// `θ = arg λ`, i.e. the Bloch momentum `p` with `λ = e^{ip}`.
    pub phases: Vec<f64>,
    /// Central-difference `dθ/dE`.
    pub phase_derivatives: Vec<f64>,
    /// Sign of `dθ/dE`.
    pub velocities: Vec<i8>,
    /// Krein signature, `+1` for `Ψ₊` and `−1` for `Ψ₋`.
    pub signatures: Vec<i8>,
    /// Largest relative residual of `H_Wire(e^{ip})φ = Eφ` over channels.
    pub bloch_residual: f64,
}

impl WireChannels {
    pub fn l(&self) -> usize {
        self.normal_form.l()
    }

    pub fn eigenvalues(&self) -> Vec<C64> {
        self.normal_form.lambda_plus.iter().chain(&self.normal_form.lambda_minus).copied().collect()
    }

    /// The channel frames at `z = E`.
    pub fn basis(&self) -> ChannelBasis {
        let nf = &self.normal_form;
        ChannelBasis {
            z: C64::new(self.energy, 0.0),
            psi_plus: nf.psi_plus.clone(),
            psi_minus: nf.psi_minus.clone(),
            n: nf.n.clone(),
            n_inverse: nf.n_inverse(),
        }
    }

    /// Analytic continuation of the channel frames to `z`.
    ///
    /// For `Im z > 0` no transfer eigenvalue lies on the unit circle and the
    /// incoming eigenvalues are exactly those inside it (outside for
    /// `Im z < 0`). With `P^z` the Riesz projector onto that group and `Q^z`
    /// onto its complement, `Ψ₊^z = P^zΨ₊^E` and `Ψ₋^z = Q^zΨ₋^E`; both are
    /// analytic in `z` and reduce to the real-axis frames at `z = E`.
    pub fn continue_to(&self, wire: &WireModel, z: C64) -> Result<ChannelBasis, ScatteringError> {
        if z.im == 0.0 {
            if z.re == self.energy {
                return Ok(self.basis());
            }
            return Err(ScatteringError::InvalidArgument(format!(
                "real z = {} differs from the channel energy {}; recompute the channels there",
                z.re, self.energy
            )));
        }
        let fail = |reason: String| ScatteringError::ContinuationFailed { z, reason };
        let l = self.l();
        let t = transfer_matrix(wire.a(), wire.b(), z)?;
        let e = eigen(&t.matrix, EIGEN_TOL)?;
        if let Some(lam) = e.eigenvalues.iter().find(|lam| (lam.norm() - 1.0).abs() <= CIRCLE_TOL) {
            return Err(fail(format!("eigenvalue {lam} on the unit circle; increase |Im z|")));
        }
        let incoming_inside = z.im > 0.0;
        let (inc, out): (Vec<usize>, Vec<usize>) =
            (0..2 * l).partition(|&i| (e.eigenvalues[i].norm() < 1.0) == incoming_inside);
        if inc.len() != l {
            return Err(fail(format!("{} incoming eigenvalues, expected {l}", inc.len())));
        }
        let v_inv = inverse(&e.vectors)?;
        let projector = |idx: &[usize]| {
            let left = ComplexMatrix::from_fn(idx.len(), 2 * l, |r, c| v_inv[(idx[r], c)]);
            e.vectors.select_columns(idx).matmul(&left)
        };
        let nf = &self.normal_form;
        let psi_plus = projector(&inc).matmul(&nf.psi_plus);
        let psi_minus = projector(&out).matmul(&nf.psi_minus);
        for (name, before, after) in [("incoming", &nf.psi_plus, &psi_plus), ("outgoing", &nf.psi_minus, &psi_minus)] {
            let s0 = *singular_values(before)?.last().unwrap_or(&0.0);
            let s1 = *singular_values(after)?.last().unwrap_or(&0.0);
            if !(s1 >= CONTINUATION_RANK_TOL * s0) {
                return Err(fail(format!("{name} frame lost rank (smallest singular value {s1:.3e})")));
            }
        }
        let n = ComplexMatrix::hstack(&[&psi_plus, &psi_minus]).matmul(&cayley_matrix(l));
        let n_inverse = inverse(&n)?;
        Ok(ChannelBasis { z, psi_plus, psi_minus, n, n_inverse })
    }
}

/// Incoming and outgoing channel frames at a possibly complex energy.
#[derive(Clone, Debug)]
pub struct ChannelBasis {
    pub z: C64,
    pub psi_plus: ComplexMatrix,
    pub psi_minus: ComplexMatrix,
    /// `𝒩^z = (Ψ₊^z, Ψ₋^z)𝒞`.
    pub n: ComplexMatrix,
    pub n_inverse: ComplexMatrix,
}

impl ChannelBasis {
    pub fn l(&self) -> usize {
        self.psi_plus.cols()
    }

    /// `(Ψ₊, Ψ₋)`.
    pub fn psi(&self) -> ComplexMatrix {
        ComplexMatrix::hstack(&[&self.psi_plus, &self.psi_minus])
    }
}

fn nearest(values: &[C64], target: C64) -> C64 {
    *values
        .iter()
        .min_by(|a, b| (**a - target).norm().total_cmp(&(**b - target).norm()))
        .expect("non-empty spectrum")
}

fn bloch_residual(wire: &WireModel, energy: f64, lambda: C64, y: &ComplexMatrix) -> f64 {
    let l = wire.fiber_dim();
    let h = &(&wire.a().scale(lambda) + wire.b()) + &wire.a().adjoint().scale(lambda.inv());
    let r = (&h - &ComplexMatrix::scalar(l, C64::new(energy, 0.0))).matmul(y);
    r.norm_fro() / y.norm_fro().max(f64::MIN_POSITIVE)
}

/// Channel analysis of `wire` at the real energy `energy`.
pub fn wire_channels(wire: &WireModel, energy: f64) -> Result<WireChannels, ScatteringError> {
    if !energy.is_finite() {
        return Err(ScatteringError::InvalidArgument(format!("energy must be finite, got {energy}")));
    }
    let z = C64::new(energy, 0.0);
    let t = transfer_matrix(wire.a(), wire.b(), z)?;
    let normal_form = elliptic_normal_form(&t).map_err(|e| match e {
        KreinError::NotPerfectlyConducting { eigenvalues } => {
            ScatteringError::NotPerfectlyConducting { energy, eigenvalues }
        }
        other => other.into(),
    })?;
    let l = normal_form.l();
    let lambdas: Vec<C64> =
        normal_form.lambda_plus.iter().chain(&normal_form.lambda_minus).copied().collect();
    let psi = normal_form.psi();
    let mut residual: f64 = 0.0;
    for (j, &lam) in lambdas.iter().enumerate() {
        let y = psi.block(l, j, l, 1);
        residual = residual.max(bloch_residual(wire, energy, lam, &y));
    }
    if !(residual <= BLOCH_TOL) {
        return Err(ScatteringError::BlochInconsistent { residual });
    }
    let spectrum_at = |e: f64| -> Result<Vec<C64>, ScatteringError> {
        let t = transfer_matrix(wire.a(), wire.b(), C64::new(e, 0.0))?;
        Ok(eigen(&t.matrix, EIGEN_TOL)?.eigenvalues)
    };
    let up = spectrum_at(energy + PHASE_STEP)?;
    let down = spectrum_at(energy - PHASE_STEP)?;
    let phase_derivatives: Vec<f64> = lambdas
        .iter()
        .map(|&lam| (nearest(&up, lam) / nearest(&down, lam)).arg() / (2.0 * PHASE_STEP))
        .collect();
    let velocities = phase_derivatives.iter().map(|d| if *d > 0.0 { 1 } else { -1 }).collect();
    let signatures = (0..2 * l).map(|j| if j < l { 1 } else { -1 }).collect();
    Ok(WireChannels {
        energy,
        phases: lambdas.iter().map(|lam| lam.arg()).collect(),
        normal_form,
        phase_derivatives,
        velocities,
        signatures,
        bloch_residual: residual,
    })
}
