use topo_greens::{boundary_green, cayley, BoundaryUnitaryField, FieldLabel, GreenRoute, DEFAULT_EPSILON};
use topo_krein::{cayley_matrix, frame_angles, mobius, KreinError};
use topo_model::{MomentumGrid, ScatteringSystem};
use topo_numerics::{inverse, solve, solve_right, ComplexMatrix, NumericsError, C64};

use crate::channels::{wire_channels, ChannelBasis, WireChannels};
use crate::error::ScatteringError;

/// How `R^z(k)` is obtained from the insulator's boundary Green matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReflectionRoute {
    /// Solve `(Ψ₊, Ψ₋)(W₊; W₋) = Φ` and set `R = W₋W₊⁻¹`.
    Matching,
    /// Möbius action of `𝒞̄(𝒩^z)⁻¹D𝒞ᵀ` on `V̂^z`.
    Moebius,
    /// Inverse of the frame angles of `Φ`; real energies only.
    FrameAngles,
}

fn undefined(e: NumericsError) -> ScatteringError {
    match e {
        NumericsError::SingularMatrix { .. } => ScatteringError::ReflectionUndefined,
        other => other.into(),
    }
}

/// `D = diag(A, (A*)⁻¹)`.
fn coupling_factor(a: &ComplexMatrix) -> Result<ComplexMatrix, ScatteringError> {
    let l = a.rows();
    let z = ComplexMatrix::zeros(l, l);
    Ok(ComplexMatrix::from_blocks(a, &z, &z, &inverse(&a.adjoint())?))
}

/// `Φ = D(Ĝ; −𝟙)`: the wire frame `(Aφ₁; φ₀)` at the interface generated by
/// the insulator solutions `φ₁ = ĜC`, `A*φ₀ = −C`.
pub fn interface_frame(a: &ComplexMatrix, g: &ComplexMatrix) -> Result<ComplexMatrix, ScatteringError> {
    let minus_one = ComplexMatrix::identity(g.rows()).scale_re(-1.0);
    Ok(coupling_factor(a)?.matmul(&ComplexMatrix::vstack(&[g, &minus_one])))
}

/// Amplitudes of one scattering problem at a fixed `(z, k)`.
#[derive(Clone, Debug)]
pub struct ScatteringMatch {
    /// `Φ = D(Ĝ; −𝟙)`.
    pub frame: ComplexMatrix,
    pub w_plus: ComplexMatrix,
    pub w_minus: ComplexMatrix,
    pub reflection: ComplexMatrix,
}

impl ScatteringMatch {
    /// `w_Ins = W₊⁻¹`, the insulator amplitudes of the states with unit
    /// incoming amplitudes.
    pub fn insulator_amplitudes(&self) -> Result<ComplexMatrix, ScatteringError> {
        inverse(&self.w_plus).map_err(undefined)
    }

    /// `‖Ψ₊ + Ψ₋R − Φw_Ins‖ / ‖Φw_Ins‖`.
    pub fn matching_residual(&self, basis: &ChannelBasis) -> Result<f64, ScatteringError> {
        let rhs = self.frame.matmul(&self.insulator_amplitudes()?);
        let lhs = &basis.psi_plus + &basis.psi_minus.matmul(&self.reflection);
        Ok((&lhs - &rhs).norm_fro() / rhs.norm_fro().max(f64::MIN_POSITIVE))
    }
}

/// Decomposes the interface frame into incoming and outgoing channels.
pub fn match_channels(
    basis: &ChannelBasis,
    a: &ComplexMatrix,
    g: &ComplexMatrix,
) -> Result<ScatteringMatch, ScatteringError> {
    let l = basis.l();
    let frame = interface_frame(a, g)?;
    let w = solve(&basis.psi(), &frame).map_err(undefined)?;
    let w_plus = w.block(0, 0, l, l);
    let w_minus = w.block(l, 0, l, l);
    let reflection = solve_right(&w_minus, &w_plus).map_err(undefined)?;
    Ok(ScatteringMatch { frame, w_plus, w_minus, reflection })
}

/// `R = (𝒞̄(𝒩^z)⁻¹D𝒞ᵀ)·V̂`.
pub fn reflection_moebius(
    basis: &ChannelBasis,
    a: &ComplexMatrix,
    v_hat: &ComplexMatrix,
) -> Result<ComplexMatrix, ScatteringError> {
    let c = cayley_matrix(basis.l());
    let m = c.conj().matmul(&basis.n_inverse).matmul(&coupling_factor(a)?).matmul(&c.transpose());
    mobius(&m, v_hat).map_err(|e| match e {
        KreinError::MoebiusUndefined => ScatteringError::ReflectionUndefined,
        other => other.into(),
    })
}

/// `R^E = [Π_𝒩(Φ^E)]⁻¹` from the frame angles of the interface frame.
pub fn reflection_frame_angles(
    channels: &WireChannels,
    a: &ComplexMatrix,
    g: &ComplexMatrix,
) -> Result<ComplexMatrix, ScatteringError> {
    let frame = interface_frame(a, g)?;
    let angles = frame_angles(&frame, &channels.normal_form)?;
    inverse(&angles).map_err(undefined)
}

/// `(Ĝ_Wire − Ĝ_Ins)(Ĝ_Wire + Ĝ_Ins)⁻¹`.
pub fn reflection_simple(g_wire: &ComplexMatrix, g_ins: &ComplexMatrix) -> Result<ComplexMatrix, ScatteringError> {
    if g_wire.shape() != g_ins.shape() || !g_wire.is_square() {
        return Err(ScatteringError::InvalidArgument("Green matrices must be square of equal size".into()));
    }
    solve_right(&(g_wire - g_ins), &(g_wire + g_ins)).map_err(undefined)
}

/// Boundary Green matrix of the half wire `n ≤ 0` at site 0, from the
/// outgoing frame `Ψ₋^z = (X; Y)`: `Ĝ_Wire = −YX⁻¹`.
pub fn wire_green(basis: &ChannelBasis) -> Result<ComplexMatrix, ScatteringError> {
    let l = basis.l();
    let x = basis.psi_minus.block(0, 0, l, l);
    let y = basis.psi_minus.block(l, 0, l, l);
    Ok(solve_right(&y, &x).map_err(undefined)?.scale_re(-1.0))
}

/// Reflection matrices of a scattering system at a fixed spectral
/// parameter; the wire channels are computed once.
#[derive(Clone, Debug)]
pub struct ReflectionSolver<'a> {
    sys: &'a ScatteringSystem,
    z: C64,
    green_route: GreenRoute,
    channels: WireChannels,
    basis: ChannelBasis,
}

impl<'a> ReflectionSolver<'a> {
    /// Channels at `Re z`, continued to `z`.
    pub fn new(sys: &'a ScatteringSystem, z: C64, green_route: GreenRoute) -> Result<Self, ScatteringError> {
        let channels = wire_channels(sys.wire(), z.re)?;
        let basis = channels.continue_to(sys.wire(), z)?;
        Ok(Self { sys, z, green_route, channels, basis })
    }

    pub fn z(&self) -> C64 {
        self.z
    }

    pub fn channels(&self) -> &WireChannels {
        &self.channels
    }

    pub fn basis(&self) -> &ChannelBasis {
        &self.basis
    }

    /// `Ĝ_Ins^z(k)`.
    pub fn insulator_green(&self, k: &[f64]) -> Result<ComplexMatrix, ScatteringError> {
        Ok(boundary_green(self.sys.insulator(), self.z, k, 1, self.green_route)?.matrix)
    }

    pub fn matching(&self, k: &[f64]) -> Result<ScatteringMatch, ScatteringError> {
        match_channels(&self.basis, self.sys.coupling(), &self.insulator_green(k)?)
    }

    pub fn reflection(&self, k: &[f64], route: ReflectionRoute) -> Result<ComplexMatrix, ScatteringError> {
        let a = self.sys.coupling();
        match route {
            ReflectionRoute::Matching => Ok(self.matching(k)?.reflection),
            ReflectionRoute::Moebius => {
                let v = cayley(&self.insulator_green(k)?)?;
                reflection_moebius(&self.basis, a, &v)
            }
            ReflectionRoute::FrameAngles => {
                if self.z.im != 0.0 {
                    return Err(ScatteringError::InvalidArgument(
                        "frame angles need a real energy".into(),
                    ));
                }
                reflection_frame_angles(&self.channels, a, &self.insulator_green(k)?)
            }
        }
    }

    /// `k ↦ R^z(k)` on a boundary grid.
    pub fn field(&self, grid: &MomentumGrid, route: ReflectionRoute) -> Result<BoundaryUnitaryField, ScatteringError> {
        if grid.ndim() != self.sys.insulator().boundary_dim() {
            return Err(ScatteringError::InvalidArgument(format!(
                "boundary grid has {} axes, insulator needs {}",
                grid.ndim(),
                self.sys.insulator().boundary_dim()
            )));
        }
        BoundaryUnitaryField::build(grid, self.z, DEFAULT_EPSILON, FieldLabel::R, |k| self.reflection(k, route))
    }
}

/// `R^z(k)` by channel matching, with the insulator Green matrix from the
/// transfer route.
pub fn reflection_matrix(sys: &ScatteringSystem, z: C64, k: &[f64]) -> Result<ComplexMatrix, ScatteringError> {
    ReflectionSolver::new(sys, z, GreenRoute::TransferSubspace)?.reflection(k, ReflectionRoute::Matching)
}
