//! Scattering of a perfectly conducting lead off a half-space insulator.
//!
//! The lead occupies the sites `n ≤ 0` and is attached to the first layer
//! of the insulator by its own hopping `A`. At a real energy inside the
//! lead's bands every transfer eigenvalue lies on the unit circle; the
//! channels of positive Krein signature move towards the insulator and are
//! called incoming. Matching the lead channels to the decaying insulator
//! solutions at the interface yields the reflection matrix `R^z(k)`,
//! unitary at real energies in the insulator gap, whose winding equals
//! that of `V̂^z` and minus the bulk Chern number.
//!
//! Off the real axis the channel frames are continued analytically with
//! the Riesz projectors of the transfer matrix; see
//! [`WireChannels::continue_to`].

mod channels;
mod error;
mod reflection;
mod theorem2;

pub use channels::{
    wire_channels, ChannelBasis, WireChannels, BLOCH_TOL, CONTINUATION_RANK_TOL, PHASE_STEP,
};
pub use error::ScatteringError;
pub use reflection::{
    interface_frame, match_channels, reflection_frame_angles, reflection_matrix, reflection_moebius,
    reflection_simple, wire_green, ReflectionRoute, ReflectionSolver, ScatteringMatch,
};
pub use theorem2::{verify_theorem2, Theorem2Report};
