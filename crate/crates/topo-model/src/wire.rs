use topo_numerics::{condition_number, ComplexMatrix};

use crate::error::ModelError;
use crate::jacobi::{bloch_fiber, BlockJacobiModel, Boundary, HERMITIAN_TOL, HOPPING_COND_LIMIT};

/// Translation-invariant lead `(Hφ)_n = A φ_{n+1} + B φ_n + A* φ_{n−1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct WireModel {
    a: ComplexMatrix,
    b: ComplexMatrix,
}

impl WireModel {
    pub fn new(a: ComplexMatrix, b: ComplexMatrix) -> Result<Self, ModelError> {
        if !a.is_square() || a.shape() != b.shape() {
            return Err(ModelError::InvalidModel("wire blocks must be square of equal size".into()));
        }
        if b.hermitian_residual() > HERMITIAN_TOL * b.norm_fro().max(1.0) {
            return Err(ModelError::InvalidModel("onsite not Hermitian".into()));
        }
        let cond = condition_number(&a)?;
        if !(cond < HOPPING_COND_LIMIT) {
            return Err(ModelError::InvalidModel(format!(
                "hopping not invertible (condition {cond:.3e})"
            )));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> &ComplexMatrix {
        &self.a
    }

    pub fn b(&self) -> &ComplexMatrix {
        &self.b
    }

    pub fn fiber_dim(&self) -> usize {
        self.a.rows()
    }

    /// Block-tridiagonal matrix of `layers` consecutive wire sites.
    pub fn fiber(&self, layers: usize) -> ComplexMatrix {
        let l = self.fiber_dim();
        let mut h = ComplexMatrix::zeros(layers * l, layers * l);
        for j in 0..layers {
            h.set_block(j * l, j * l, &self.b);
            if j + 1 < layers {
                h.set_block(j * l, (j + 1) * l, &self.a);
                h.set_block((j + 1) * l, j * l, &self.a.adjoint());
            }
        }
        h
    }
}

/// A lead on the sites `n ≤ 0` attached to an insulator on `n ≥ 1`; the
/// two are coupled by the wire hopping `A` across the bond `0|1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScatteringSystem {
    wire: WireModel,
    insulator: BlockJacobiModel,
}

impl ScatteringSystem {
    pub fn new(wire: WireModel, insulator: BlockJacobiModel) -> Result<Self, ModelError> {
        if wire.fiber_dim() != insulator.fiber_dim() {
            return Err(ModelError::InvalidModel(format!(
                "wire fiber dimension {} differs from insulator fiber dimension {}",
                wire.fiber_dim(),
                insulator.fiber_dim()
            )));
        }
        Ok(Self { wire, insulator })
    }

    pub fn wire(&self) -> &WireModel {
        &self.wire
    }

    pub fn insulator(&self) -> &BlockJacobiModel {
        &self.insulator
    }

    /// The interface hopping, which is the wire's `A`.
    pub fn coupling(&self) -> &ComplexMatrix {
        self.wire.a()
    }
}

/// Fiber of the coupled system on `wire_layers` lead sites (ending at site
/// 0) followed by `ins_layers` insulator layers.
pub fn scattering_fiber(
    sys: &ScatteringSystem,
    k: &[f64],
    wire_layers: usize,
    ins_layers: usize,
) -> Result<ComplexMatrix, ModelError> {
    if wire_layers == 0 || ins_layers == 0 {
        return Err(ModelError::InvalidArgument("layer counts must be at least 1".into()));
    }
    let l = sys.wire.fiber_dim();
    let w = sys.wire.fiber(wire_layers);
    let ins = bloch_fiber(&sys.insulator, k, ins_layers, Boundary::HalfSpace)?;
    let n = (wire_layers + ins_layers) * l;
    let mut h = ComplexMatrix::zeros(n, n);
    h.set_block(0, 0, &w);
    h.set_block(wire_layers * l, wire_layers * l, &ins);
    let c = sys.coupling();
    h.set_block((wire_layers - 1) * l, wire_layers * l, c);
    h.set_block(wire_layers * l, (wire_layers - 1) * l, &c.adjoint());
    Ok(h)
}
