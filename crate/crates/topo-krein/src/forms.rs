use std::f64::consts::FRAC_1_SQRT_2;

use topo_numerics::{ComplexMatrix, I, ONE};

/// `𝒢 = i[[0, −𝟙], [𝟙, 0]]`, the indefinite form preserved by transfer
/// matrices at real energy.
pub fn g_form(l: usize) -> ComplexMatrix {
    let z = ComplexMatrix::zeros(l, l);
    let i = ComplexMatrix::scalar(l, I);
    ComplexMatrix::from_blocks(&z, &(-&i), &i, &z)
}

/// `𝒥 = diag(𝟙, −𝟙)`.
pub fn j_form(l: usize) -> ComplexMatrix {
    let z = ComplexMatrix::zeros(l, l);
    let one = ComplexMatrix::identity(l);
    ComplexMatrix::from_blocks(&one, &z, &z, &(-&one))
}

/// Cayley matrix `𝒞 = 2^{−1/2}[[𝟙, −i𝟙], [𝟙, i𝟙]]`, unitary with
/// `𝒥 = 𝒞𝒢𝒞*`.
pub fn cayley_matrix(l: usize) -> ComplexMatrix {
    let one = ComplexMatrix::scalar(l, ONE * FRAC_1_SQRT_2);
    let i = ComplexMatrix::scalar(l, I * FRAC_1_SQRT_2);
    ComplexMatrix::from_blocks(&one, &(-&i), &one, &i)
}

/// The three fixed matrices of the Krein geometry in dimension `2L`.
#[derive(Clone, Debug)]
pub struct KreinForm {
    pub g: ComplexMatrix,
    pub j: ComplexMatrix,
    pub c: ComplexMatrix,
}

impl KreinForm {
    pub fn new(l: usize) -> Self {
        Self { g: g_form(l), j: j_form(l), c: cayley_matrix(l) }
    }

    /// `‖M*𝒢M − 𝒢‖`.
    pub fn g_unitarity_residual(&self, m: &ComplexMatrix) -> f64 {
        (&m.adjoint().matmul(&self.g).matmul(m) - &self.g).norm_fro()
    }

    /// `‖M*𝒥M − 𝒥‖`.
    pub fn j_unitarity_residual(&self, m: &ComplexMatrix) -> f64 {
        (&m.adjoint().matmul(&self.j).matmul(m) - &self.j).norm_fro()
    }

    /// `𝒞 M 𝒞*`, which maps 𝒢-unitaries to 𝒥-unitaries.
    pub fn to_j_picture(&self, m: &ComplexMatrix) -> ComplexMatrix {
        self.c.matmul(m).matmul(&self.c.adjoint())
    }

    /// `𝒞* M 𝒞`, inverse of [`Self::to_j_picture`].
    pub fn to_g_picture(&self, m: &ComplexMatrix) -> ComplexMatrix {
        self.c.adjoint().matmul(m).matmul(&self.c)
    }
}

/// `(v*𝒢w)` for column vectors.
pub fn g_inner(g: &ComplexMatrix, v: &ComplexMatrix, w: &ComplexMatrix) -> ComplexMatrix {
    v.adjoint().matmul(g).matmul(w)
}
