//! Dense complex linear algebra for the topo workspace.
//!
//! [`ComplexMatrix`] is a plain row-major matrix with its own arithmetic;
//! factorizations (general and Hermitian eigensolvers, LU, SVD) are
//! delegated to `faer`. Every inverse that appears in a formula elsewhere
//! in the workspace goes through [`solve`] or [`solve_right`], which
//! refuse ill-conditioned systems.

mod decomp;
mod error;
mod matrix;

pub use decomp::{
    cluster_values, condition_number, det, eigen, hermitian_eigen, hermitian_eigenvalues,
    hermitian_function, inverse, norm_2, orthonormalize_columns, polar_unitary, singular_values,
    solve, solve_right, solve_with_limit, svd, unitary_log, unitary_log_phases, Cluster, EigenDecomposition,
    HermitianEigen, Svd, DEFAULT_CLUSTER_TOL, DEFAULT_COND_LIMIT,
};
pub use error::NumericsError;
pub use matrix::{pauli, ComplexMatrix, C64, I, ONE, ZERO};
