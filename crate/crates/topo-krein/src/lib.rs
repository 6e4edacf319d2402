//! Krein-space geometry of transfer matrices.
//!
//! At real energy the transfer matrices of a block Jacobi recursion
//! preserve the indefinite form `𝒢 = i[[0, −𝟙], [𝟙, 0]]`. This crate builds
//! them, classifies their spectra relative to the unit circle together with
//! Krein signatures, brings elliptic (perfectly conducting) ones into
//! normal form and implements the Möbius and stereographic maps that relate
//! Lagrangian frames to unitary matrices.
//!
//! Convention: eigenvalues of positive signature are the incoming
//! channels; their eigenphase increases with energy.

mod error;
mod forms;
mod mobius;
mod normal_form;
mod spectrum;
mod transfer;

pub use error::KreinError;
pub use forms::{cayley_matrix, g_form, g_inner, j_form, KreinForm};
pub use mobius::{frame_angles, lagrangian_residual, mobius, stereographic, LAGRANGIAN_TOL};
pub use normal_form::{elliptic_normal_form, fix_phases, normal_form_of_matrix, EllipticNormalForm};
pub use spectrum::{
    classify_matrix, classify_spectrum, CircleClass, GUnitarySpectrum, SpectralCluster, CIRCLE_TOL,
    SIGNATURE_TOL,
};
pub use transfer::{monodromy, propagate, transfer_derivative, transfer_matrix, TransferMatrix};
