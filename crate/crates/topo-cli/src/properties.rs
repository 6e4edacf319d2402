//! Seeded randomized checks of the transfer-matrix, Krein and Cayley
//! machinery. Samples are drawn sequentially from one ChaCha stream, so a
//! seed fixes the report.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use topo_greens::{cayley, cayley_inverse};
use topo_krein::{frame_angles, transfer_matrix};
use topo_model::corpus;
use topo_numerics::{eigen, norm_2, ComplexMatrix, C64};
use topo_scattering::wire_channels;

use crate::error::CliError;
use crate::report::Assertion;

pub const G_UNITARITY_TOL: f64 = 1e-10;
pub const PAIRING_TOL: f64 = 1e-8;
pub const FRAME_ANGLES_TOL: f64 = 1e-10;
pub const CONTRACTION_TOL: f64 = 1e-12;
pub const ROUND_TRIP_TOL: f64 = 1e-10;

fn gaussian_matrix(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * scale)
}

fn hermitian(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> ComplexMatrix {
    gaussian_matrix(rng, n, scale).hermitian_part()
}

/// `A = 𝟙 + 0.3X` and Hermitian `B` of random size `1..=4`.
fn random_blocks(rng: &mut ChaCha8Rng) -> (ComplexMatrix, ComplexMatrix) {
    let l = rng.gen_range(1..=4);
    let a = &ComplexMatrix::identity(l) + &gaussian_matrix(rng, l, 0.3);
    (a, hermitian(rng, l, 1.0))
}

/// `‖𝒯*𝒢𝒯 − 𝒢‖` at random real energies.
pub fn g_unitarity(rng: &mut ChaCha8Rng, samples: usize) -> Result<Assertion, CliError> {
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let (a, b) = random_blocks(rng);
        let e = rng.gen_range(-3.0..3.0);
        let t = transfer_matrix(&a, &b, C64::new(e, 0.0))?;
        worst = worst.max(t.g_unitarity_residual());
    }
    Ok(Assertion::bound("transfer_g_unitarity", worst, G_UNITARITY_TOL))
}

/// Every eigenvalue `λ` has a partner within tolerance of `1/λ̄`.
pub fn eigenvalue_pairing(rng: &mut ChaCha8Rng, samples: usize) -> Result<Assertion, CliError> {
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let (a, b) = random_blocks(rng);
        let e = rng.gen_range(-3.0..3.0);
        let t = transfer_matrix(&a, &b, C64::new(e, 0.0))?;
        let ev = eigen(&t.matrix, 1e-8)?.eigenvalues;
        for lam in &ev {
            let partner = lam.conj().inv();
            let d = ev.iter().map(|mu| (mu - partner).norm()).fold(f64::INFINITY, f64::min);
            worst = worst.max(d / partner.norm().max(1.0));
        }
    }
    Ok(Assertion::bound("eigenvalue_pairing", worst, PAIRING_TOL))
}

/// Sign of the central-difference `dθ/dE` against the Krein signature on
/// every channel of random conducting leads.
pub fn velocity_signs(rng: &mut ChaCha8Rng, samples: usize) -> Result<Assertion, CliError> {
    let mut mismatches = 0usize;
    for _ in 0..samples {
        let l = rng.gen_range(1..=4);
        let e = rng.gen_range(-1.4..1.4);
        let ch = wire_channels(&corpus::default_wire(l), e)?;
        mismatches += ch.velocities.iter().zip(&ch.signatures).filter(|(v, s)| v != s).count();
    }
    Ok(Assertion::bound("velocity_sign_law", mismatches as f64, 0.0))
}

/// Unitarity of the frame angles of random 𝒢-Lagrangian frames
/// `(H; 𝟙)K` with Hermitian `H` and invertible `K`.
pub fn frame_angle_unitarity(rng: &mut ChaCha8Rng, samples: usize) -> Result<Assertion, CliError> {
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let l = rng.gen_range(1..=4);
        let e = rng.gen_range(-1.4..1.4);
        let nf = wire_channels(&corpus::default_wire(l), e)?.normal_form;
        let h = hermitian(rng, l, 2.0);
        let k = &ComplexMatrix::identity(l) + &gaussian_matrix(rng, l, 0.3);
        let phi = ComplexMatrix::vstack(&[&h, &ComplexMatrix::identity(l)]).matmul(&k);
        worst = worst.max(frame_angles(&phi, &nf)?.unitarity_residual());
    }
    Ok(Assertion::bound("frame_angles_unitarity", worst, FRAME_ANGLES_TOL))
}

/// `‖cayley(G)‖ ≤ 1` and `cayley_inverse(cayley(G)) = G` for random `G`
/// of size `≤ 8` with `Im G > 0`.
pub fn cayley_properties(rng: &mut ChaCha8Rng, samples: usize) -> Result<(Assertion, Assertion), CliError> {
    let mut excess: f64 = 0.0;
    let mut round_trip: f64 = 0.0;
    for _ in 0..samples {
        let l = rng.gen_range(1..=8);
        let re = hermitian(rng, l, 2.0);
        let x = gaussian_matrix(rng, l, 1.0);
        let floor = rng.gen_range(1e-3..1.0);
        let im = &x.matmul(&x.adjoint()) + &ComplexMatrix::identity(l).scale_re(floor);
        let g = &re + &im.scale(C64::new(0.0, 1.0));
        let v = cayley(&g)?;
        excess = excess.max(norm_2(&v)? - 1.0);
        let back = cayley_inverse(&v)?;
        round_trip = round_trip.max(back.distance(&g) / g.norm_fro().max(1.0));
    }
    Ok((
        Assertion::bound("cayley_contraction", excess.max(0.0), CONTRACTION_TOL),
        Assertion::bound("cayley_round_trip", round_trip, ROUND_TRIP_TOL),
    ))
}

/// All suites with `samples` draws each; Cayley checks use `10·samples`.
pub fn run_properties(seed: u64, samples: usize) -> Result<Vec<Assertion>, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (contraction, round_trip) = cayley_properties(&mut rng, 10 * samples)?;
    Ok(vec![
        g_unitarity(&mut rng, samples)?,
        eigenvalue_pairing(&mut rng, samples)?,
        velocity_signs(&mut rng, samples)?,
        frame_angle_unitarity(&mut rng, samples)?,
        contraction,
        round_trip,
    ])
}
