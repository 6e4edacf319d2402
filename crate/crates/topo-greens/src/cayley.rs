use topo_krein::{mobius, KreinError};
use topo_model::BlockJacobiModel;
use topo_numerics::{singular_values, ComplexMatrix, C64, I};

use crate::error::GreensError;
use crate::green::{boundary_green, GreenRoute};

/// Smallest singular value below which a boundary unitary counts as not
/// invertible.
pub const INVERTIBILITY_TOL: f64 = 1e-10;

fn cayley_mobius(n: usize, inverse: bool) -> ComplexMatrix {
    let one = ComplexMatrix::identity(n);
    let i = one.scale(I);
    if inverse {
        // G = i(𝟙 + V)(𝟙 − V)⁻¹
        ComplexMatrix::from_blocks(&i, &i, &(-&one), &one)
    } else {
        ComplexMatrix::from_blocks(&one, &(-&i), &one, &i)
    }
}

fn undefined(e: KreinError) -> GreensError {
    match e {
        KreinError::MoebiusUndefined => GreensError::CayleyUndefined,
        other => other.into(),
    }
}

/// `V = (G − i)(G + i)⁻¹`.
pub fn cayley(g: &ComplexMatrix) -> Result<ComplexMatrix, GreensError> {
    mobius(&cayley_mobius(g.rows(), false), g).map_err(undefined)
}

/// `G = i(𝟙 + V)(𝟙 − V)⁻¹`, inverse of [`cayley`].
pub fn cayley_inverse(v: &ComplexMatrix) -> Result<ComplexMatrix, GreensError> {
    mobius(&cayley_mobius(v.rows(), true), v).map_err(undefined)
}

/// `(2εG − i)(2εG + i)⁻¹`, checked for invertibility.
pub fn scaled_cayley(g: &ComplexMatrix, epsilon: f64) -> Result<ComplexMatrix, GreensError> {
    if !(epsilon > 0.0) {
        return Err(GreensError::InvalidArgument(format!("epsilon must be positive, got {epsilon}")));
    }
    let v = cayley(&g.scale_re(2.0 * epsilon))?;
    let smallest = *singular_values(&v)?.last().unwrap_or(&0.0);
    if smallest < INVERTIBILITY_TOL {
        return Err(GreensError::NotInvertible { smallest });
    }
    Ok(v)
}

/// `V̂^z_{N,ε}(k)`; `ε = 1/2` and `N = 1` give `V̂^z(k)`.
pub fn boundary_unitary(
    model: &BlockJacobiModel,
    z: C64,
    k: &[f64],
    n: usize,
    epsilon: f64,
    route: GreenRoute,
) -> Result<ComplexMatrix, GreensError> {
    scaled_cayley(&boundary_green(model, z, k, n, route)?.matrix, epsilon)
}
