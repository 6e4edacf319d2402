use proptest::prelude::*;
use topo_krein::*;
use topo_numerics::{eigen, ComplexMatrix, NumericsError, C64, I, ONE, ZERO};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn scalar(x: C64) -> ComplexMatrix {
    ComplexMatrix::scalar(1, x)
}

fn chain_t(e: f64) -> TransferMatrix {
    transfer_matrix(&scalar(ONE), &scalar(ZERO), c(e, 0.0)).unwrap()
}

fn random_matrix(l: usize, vals: &[f64]) -> ComplexMatrix {
    ComplexMatrix::from_fn(l, l, |i, j| c(vals[2 * (i * l + j)], vals[2 * (i * l + j) + 1]))
}

fn random_hopping(l: usize, vals: &[f64]) -> ComplexMatrix {
    &ComplexMatrix::identity(l) + &random_matrix(l, vals).scale_re(0.4)
}

fn random_onsite(l: usize, vals: &[f64]) -> ComplexMatrix {
    random_matrix(l, vals).hermitian_part()
}

fn cluster_at(spec: &GUnitarySpectrum, lambda: C64) -> &SpectralCluster {
    spec.clusters
        .iter()
        .min_by(|a, b| (a.eigenvalue - lambda).norm().total_cmp(&(b.eigenvalue - lambda).norm()))
        .unwrap()
}

#[test]
fn chain_transfer_matrix_entries() {
    let t = chain_t(0.7);
    let expect = ComplexMatrix::from_rows(&[[c(0.7, 0.0), -ONE], [ONE, ZERO]]);
    assert!(t.matrix.distance(&expect) < 1e-15);
}

#[test]
fn singular_hopping_is_rejected() {
    let r = transfer_matrix(&scalar(ZERO), &scalar(ZERO), c(0.0, 0.0));
    assert!(matches!(r, Err(KreinError::Numerics(NumericsError::SingularMatrix { .. }))));
}

#[test]
fn krein_form_identities() {
    for l in 1..4 {
        let k = KreinForm::new(l);
        let j = k.c.matmul(&k.g).matmul(&k.c.adjoint());
        assert!(j.distance(&k.j) < 1e-14);
        assert!(k.c.unitarity_residual() < 1e-14);
    }
}

#[test]
fn chain_mid_band_signatures() {
    let spec = classify_spectrum(&chain_t(0.0), CIRCLE_TOL).unwrap();
    assert_eq!(spec.count_on_circle(), 2);
    let minus_i = cluster_at(&spec, -I);
    assert!((minus_i.eigenvalue + I).norm() < 1e-12);
    assert_eq!(minus_i.signature, Some((1, 0)));
    let plus_i = cluster_at(&spec, I);
    assert_eq!(plus_i.signature, Some((0, 1)));
    assert!(spec.is_elliptic_definite());
}

#[test]
fn chain_outside_band_is_hyperbolic() {
    let spec = classify_spectrum(&chain_t(3.0), CIRCLE_TOL).unwrap();
    assert_eq!(spec.count_on_circle(), 0);
    assert_eq!(spec.count_inside(), 1);
    assert_eq!(spec.count_outside(), 1);
    // λ² − 3λ + 1 = 0
    let mut ev: Vec<f64> = spec.eigenvalues().iter().map(|z| z.re).collect();
    ev.sort_by(f64::total_cmp);
    assert!((ev[0] - (3.0 - 5f64.sqrt()) / 2.0).abs() < 1e-12);
    assert!((ev[1] - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
}

/// A 𝒥-unitary shear `𝟙 + iN` with `N² = 0` conjugated into the 𝒢 picture:
/// its only eigenvalue 1 carries a 2×2 Jordan block.
fn parabolic() -> ComplexMatrix {
    let n = ComplexMatrix::from_rows(&[[ONE, -ONE], [ONE, -ONE]]);
    let m = &ComplexMatrix::identity(2) + &n.scale(I);
    let k = KreinForm::new(1);
    assert!(k.j_unitarity_residual(&m) < 1e-15);
    k.to_g_picture(&m)
}

#[test]
fn parabolic_eigenvalue_is_flagged_indefinite() {
    let t = parabolic();
    assert!(KreinForm::new(1).g_unitarity_residual(&t) < 1e-14);
    let spec = classify_matrix(&t, CIRCLE_TOL).unwrap();
    assert_eq!(spec.clusters.len(), 1);
    let cl = &spec.clusters[0];
    assert!((cl.eigenvalue - ONE).norm() < 1e-6);
    assert!(cl.defective);
    assert!(!cl.is_definite());
    assert!(matches!(normal_form_of_matrix(&t), Err(KreinError::NotPerfectlyConducting { .. })));
}

#[test]
fn propagate_basics() {
    let phi0 = ComplexMatrix::column_vector(&[I, ONE]);
    assert_eq!(propagate(&[], &phi0).unwrap(), phi0);
    let t = chain_t(0.4);
    let id = ComplexMatrix::identity(2).block(0, 0, 2, 1);
    assert_eq!(propagate(std::slice::from_ref(&t), &id).unwrap(), t.matrix.block(0, 0, 2, 1));
    let four = vec![chain_t(0.0); 4];
    assert!(propagate(&four, &phi0).unwrap().distance(&phi0) < 1e-15);
    assert!(monodromy(&four).unwrap().distance(&ComplexMatrix::identity(2)) < 1e-15);
    let bad = ComplexMatrix::zeros(3, 1);
    assert!(matches!(propagate(&four, &bad), Err(KreinError::DimensionMismatch(_))));
}

#[test]
fn chain_normal_form_at_zero_energy() {
    let t = chain_t(0.0);
    let nf = elliptic_normal_form(&t).unwrap();
    assert!((nf.lambda_plus[0] + I).norm() < 1e-12);
    assert!((nf.lambda_minus[0] - I).norm() < 1e-12);
    assert!(nf.g_unitarity_residual() < 1e-12);
    assert!(nf.j_normalization_residual() < 1e-12);
    assert!(nf.block_form_residual(&t.matrix) < 1e-12);
    // With the phase convention the incoming vector is (λ; 1)/√2.
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let expect = ComplexMatrix::column_vector(&[-I * s, ONE * s]);
    assert!(nf.psi_plus.distance(&expect) < 1e-12);
    // The block form is a real rotation for this time-reversal symmetric wire.
    let c = cayley_matrix(1);
    let lam = ComplexMatrix::diag(&[nf.lambda_plus[0], nf.lambda_minus[0]]);
    let rot = c.adjoint().matmul(&lam).matmul(&c);
    assert!(rot.as_slice().iter().all(|z| z.im.abs() < 1e-14));
}

#[test]
fn chain_normal_form_fails_outside_band() {
    assert!(matches!(
        elliptic_normal_form(&chain_t(3.0)),
        Err(KreinError::NotPerfectlyConducting { .. })
    ));
}

#[test]
fn decoupled_chains_normal_form() {
    let t = transfer_matrix(&ComplexMatrix::identity(2), &ComplexMatrix::zeros(2, 2), c(0.0, 0.0)).unwrap();
    let spec = classify_spectrum(&t, CIRCLE_TOL).unwrap();
    assert_eq!(cluster_at(&spec, -I).signature, Some((2, 0)));
    let nf = elliptic_normal_form(&t).unwrap();
    assert!(nf.g_unitarity_residual() < 1e-12);
    assert!(nf.j_normalization_residual() < 1e-12);
    assert!(nf.block_form_residual(&t.matrix) < 1e-12);
    assert!(nf.lambda_plus.iter().all(|l| (l + I).norm() < 1e-12));
}

#[test]
fn mobius_examples() {
    let z = ComplexMatrix::from_rows(&[[c(0.3, 0.1), c(1.0, 0.0)], [c(0.0, -2.0), c(0.5, 0.5)]]);
    assert!(mobius(&ComplexMatrix::identity(4), &z).unwrap().distance(&z) < 1e-15);
    let r = mobius(&cayley_matrix(1), &scalar(ZERO)).unwrap();
    assert!((r[(0, 0)] + ONE).norm() < 1e-15);
    let sing = ComplexMatrix::from_rows(&[[ONE, ZERO], [ZERO, ZERO]]);
    assert!(matches!(mobius(&sing, &scalar(ZERO)), Err(KreinError::MoebiusUndefined)));
}

#[test]
fn stereographic_examples() {
    let one = ComplexMatrix::identity(2);
    let zero = ComplexMatrix::zeros(2, 2);
    let up = ComplexMatrix::vstack(&[&one, &zero]);
    assert!(stereographic(&up).unwrap().distance(&one) < 1e-15);
    let down = ComplexMatrix::vstack(&[&zero, &one]);
    assert!(stereographic(&down).unwrap().distance(&(-&one)) < 1e-15);
    let phi = ComplexMatrix::column_vector(&[c(0.0, 2.0), -ONE]);
    assert!((stereographic(&phi).unwrap()[(0, 0)] - c(3.0, 0.0)).norm() < 1e-14);
    let bad = ComplexMatrix::column_vector(&[-I, ONE]);
    assert!(matches!(stereographic(&bad), Err(KreinError::StereoUndefined)));
}

fn bundle_normal_form() -> (TransferMatrix, EllipticNormalForm) {
    let b = ComplexMatrix::diag(&[c(0.0, 0.0), c(0.5, 0.0), c(-0.7, 0.0)]);
    let t = transfer_matrix(&ComplexMatrix::identity(3), &b, c(0.2, 0.0)).unwrap();
    let nf = elliptic_normal_form(&t).unwrap();
    (t, nf)
}

#[test]
fn frame_angles_on_normal_form_columns() {
    let (_, nf) = bundle_normal_form();
    let one = ComplexMatrix::identity(3);
    assert!(frame_angles(&nf.psi_vee(), &nf).unwrap().distance(&one) < 1e-12);
    assert!(frame_angles(&nf.psi_wedge(), &nf).unwrap().distance(&(-&one)) < 1e-12);
    let not_lagrangian = ComplexMatrix::hstack(&[&nf.psi_vee().block(0, 0, 6, 2), &nf.psi_wedge().block(0, 0, 6, 1)]);
    let mixed = &not_lagrangian + &ComplexMatrix::hstack(&[&ComplexMatrix::zeros(6, 2), &nf.psi_vee().block(0, 0, 6, 1)]);
    assert!(matches!(frame_angles(&mixed, &nf), Err(KreinError::NotLagrangian { .. })));
}

#[test]
fn frame_angles_kernel_dimension() {
    // Φ sharing exactly one column with Ψ_∨ has a one-dimensional kernel of R − 𝟙.
    let (_, nf) = bundle_normal_form();
    let vee = nf.psi_vee();
    let wedge = nf.psi_wedge();
    let phi = ComplexMatrix::hstack(&[&vee.block(0, 0, 6, 1), &wedge.block(0, 1, 6, 2)]);
    let r = frame_angles(&phi, &nf).unwrap();
    let sv = topo_numerics::singular_values(&(&r - &ComplexMatrix::identity(3))).unwrap();
    assert!(sv[2] < 1e-12 && sv[1] > 1e-3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn transfer_matrices_are_g_unitary(
        vals in prop::collection::vec(-1.0f64..1.0, 36),
        e in -4.0f64..4.0,
        l in 1usize..4,
    ) {
        let a = random_hopping(l, &vals[..18]);
        let b = random_onsite(l, &vals[18..]);
        let t = transfer_matrix(&a, &b, c(e, 0.0)).unwrap();
        let scale = t.matrix.norm_fro().powi(2);
        prop_assert!(t.g_unitarity_residual() <= 1e-10 * scale);
    }

    #[test]
    fn eigenvalues_pair_with_inverse_conjugates(
        vals in prop::collection::vec(-1.0f64..1.0, 36),
        e in -3.0f64..3.0,
        l in 1usize..4,
    ) {
        let a = random_hopping(l, &vals[..18]);
        let b = random_onsite(l, &vals[18..]);
        let t = transfer_matrix(&a, &b, c(e, 0.0)).unwrap();
        let ev = eigen(&t.matrix, 1e-8).unwrap().eigenvalues;
        let partners: Vec<C64> = ev.iter().map(|z| ONE / z.conj()).collect();
        // Greedy matching of the multiset {λ} against {1/λ̄}.
        let mut used = vec![false; ev.len()];
        for p in &partners {
            let (j, d) = ev.iter().enumerate().filter(|(j, _)| !used[*j])
                .map(|(j, z)| (j, (z - p).norm() / z.norm().max(1.0)))
                .min_by(|x, y| x.1.total_cmp(&y.1)).unwrap();
            used[j] = true;
            prop_assert!(d < 1e-8, "unpaired eigenvalue, distance {d}");
        }
    }

    #[test]
    fn eigenvectors_are_g_orthogonal(
        vals in prop::collection::vec(-1.0f64..1.0, 36),
        e in -3.0f64..3.0,
        l in 1usize..4,
    ) {
        let a = random_hopping(l, &vals[..18]);
        let b = random_onsite(l, &vals[18..]);
        let t = transfer_matrix(&a, &b, c(e, 0.0)).unwrap();
        let d = eigen(&t.matrix, 1e-8).unwrap();
        let g = g_form(l);
        for i in 0..2 * l {
            for j in 0..2 * l {
                let (li, lj) = (d.eigenvalues[i], d.eigenvalues[j]);
                if (ONE / li - lj.conj()).norm() > 1e-3 {
                    let v = d.vectors.select_columns(&[i]);
                    let w = d.vectors.select_columns(&[j]);
                    let x = g_inner(&g, &v, &w)[(0, 0)].norm();
                    prop_assert!(x <= 1e-8, "|v*Gw| = {x}");
                }
            }
        }
    }

    #[test]
    fn quadratic_form_of_energy_derivative(
        vals in prop::collection::vec(-1.0f64..1.0, 36),
        vec in prop::collection::vec(-1.0f64..1.0, 12),
        e in -3.0f64..3.0,
        l in 1usize..4,
    ) {
        let a = random_hopping(l, &vals[..18]);
        let b = random_onsite(l, &vals[18..]);
        let t = transfer_matrix(&a, &b, c(e, 0.0)).unwrap();
        let dt = transfer_derivative(&a).unwrap();
        let v = ComplexMatrix::from_fn(2 * l, 1, |i, _| c(vec[2 * i], vec[2 * i + 1]));
        let q = (v.adjoint().matmul(&t.matrix.adjoint()).matmul(&g_form(l)).matmul(&dt).matmul(&v))[(0, 0)] / I;
        let upper = v.block(0, 0, l, 1);
        let expect = topo_numerics::solve(&a, &upper).unwrap().norm_fro().powi(2);
        prop_assert!((q - c(expect, 0.0)).norm() <= 1e-10 * (1.0 + expect));
    }

    #[test]
    fn mobius_is_a_group_action(
        vals in prop::collection::vec(-1.0f64..1.0, 162),
        l in 1usize..4,
    ) {
        let m1 = &ComplexMatrix::identity(2 * l) + &random_matrix(2 * l, &vals[..72]).scale_re(0.3);
        let m2 = &ComplexMatrix::identity(2 * l) + &random_matrix(2 * l, &vals[72..144]).scale_re(0.3);
        let z = random_matrix(l, &vals[144..]).scale_re(0.5);
        let lhs = mobius(&m1.matmul(&m2), &z).unwrap();
        let rhs = mobius(&m1, &mobius(&m2, &z).unwrap()).unwrap();
        prop_assert!(lhs.distance(&rhs) < 1e-10);
    }

    #[test]
    fn frame_angles_are_unitary(
        vals in prop::collection::vec(-1.0f64..1.0, 54),
        energies in prop::collection::vec(-2.0f64..2.0, 3),
    ) {
        let (_, nf) = bundle_normal_form();
        // Random 𝒢-unitary as a product of transfer matrices at real energies.
        let mut np = ComplexMatrix::identity(6);
        for (s, &e) in energies.iter().enumerate() {
            let a = random_hopping(3, &vals[18 * s..18 * s + 18]);
            let b = random_onsite(3, &vals[(18 * s + 9) % 36..(18 * s + 9) % 36 + 18]);
            np = transfer_matrix(&a, &b, c(e, 0.0)).unwrap().matrix.matmul(&np);
        }
        let phi = np.block(0, 0, 6, 3);
        let scale = phi.norm_fro();
        let phi = phi.scale_re(1.0 / scale);
        let r = frame_angles(&phi, &nf).unwrap();
        prop_assert!(r.unitarity_residual() < 1e-10);
    }

    #[test]
    fn eigenphase_velocity_matches_signature(
        b0 in -1.0f64..1.0, b1 in -1.0f64..1.0, e in -0.9f64..0.9,
    ) {
        let a = ComplexMatrix::identity(2);
        let b = ComplexMatrix::diag(&[c(b0, 0.0), c(b1 + 0.01, 0.0)]);
        let spec = classify_spectrum(&transfer_matrix(&a, &b, c(e, 0.0)).unwrap(), CIRCLE_TOL).unwrap();
        prop_assume!(spec.is_elliptic_definite());
        let h = 1e-5;
        let up = eigen(&transfer_matrix(&a, &b, c(e + h, 0.0)).unwrap().matrix, 1e-8).unwrap().eigenvalues;
        let dn = eigen(&transfer_matrix(&a, &b, c(e - h, 0.0)).unwrap().matrix, 1e-8).unwrap().eigenvalues;
        let nearest = |set: &[C64], z: C64| *set.iter().min_by(|x, y| (*x - z).norm().total_cmp(&(*y - z).norm())).unwrap();
        for cl in &spec.clusters {
            let lam = cl.eigenvalue;
            let dtheta = (nearest(&up, lam) / nearest(&dn, lam)).arg() / (2.0 * h);
            let (p, m) = cl.signature.unwrap();
            prop_assert_eq!(dtheta.signum() as i64, p as i64 - m as i64);
        }
    }
}
