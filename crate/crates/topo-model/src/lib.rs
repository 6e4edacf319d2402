//! Tight-binding models in block Jacobi form.
//!
//! A [`BlockJacobiModel`] describes a `d`-dimensional lattice Hamiltonian as
//! a three-term recursion in the direction perpendicular to a boundary,
//! with blocks that are trigonometric polynomials in the remaining `d − 1`
//! momenta. From it we build half-space truncations and bulk Bloch fibers
//! ([`bloch_fiber`]), and together with a [`WireModel`] the fibers of a
//! lead–insulator [`ScatteringSystem`] ([`scattering_fiber`]).

pub mod corpus;
mod error;
mod file;
mod fourier;
mod grid;
mod jacobi;
mod wire;

pub use error::ModelError;
pub use file::{load_model, parse_model, ModelFile};
pub use fourier::{FourierMatrix, Harmonic};
pub use grid::MomentumGrid;
pub use jacobi::{
    bloch_fiber, bulk_gap, BlockJacobiModel, Boundary, Perturbation, HERMITIAN_TOL,
    HOPPING_COND_LIMIT,
};
pub use wire::{scattering_fiber, ScatteringSystem, WireModel};
