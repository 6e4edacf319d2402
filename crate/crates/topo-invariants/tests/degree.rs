#[path = "common/degree.rs"]
mod degree;

use degree::*;
use topo_greens::{BoundaryUnitaryField, FieldLabel};
use topo_invariants::*;
use topo_model::MomentumGrid;
use topo_numerics::{ComplexMatrix, C64};

fn field(points: usize, offset: f64, f: impl Fn(&[f64]) -> ComplexMatrix + Sync) -> BoundaryUnitaryField {
    let grid = MomentumGrid::uniform(3, points).unwrap().with_offset(offset);
    BoundaryUnitaryField::build(&grid, C64::new(0.0, 0.0), 0.5, FieldLabel::V, |k| Ok::<_, ()>(f(k))).unwrap()
}

#[test]
fn oracle_counts_chiral_map() {
    let targets = [su2_exp([0.4, -0.9, 0.7]), su2_exp([-1.3, 0.2, 0.5]), su2_exp([2.0, 1.0, -0.3])];
    for t in &targets {
        assert_eq!(preimage_degree(|k| chiral_map(k, -2.0), t, 24), -1);
        assert_eq!(preimage_degree(|k| cayley_map(k, -2.0), t, 24), -2);
        assert_eq!(preimage_degree(|k| chiral_map(k, -4.0), t, 24), 0);
    }
}

#[test]
fn winding_3d_calibration_against_oracle() {
    let target = su2_exp([0.4, -0.9, 0.7]);
    for m in [-2.0, 2.0] {
        let oracle = preimage_degree(|k| chiral_map(k, m), &target, 24);
        let r = winding_3d(&field(16, 0.0, |k| chiral_map(k, m))).unwrap();
        assert!((r.value - oracle as f64).abs() < WINDING_3D_TOL, "m = {m}: {} vs {oracle}", r.value);
        assert_eq!(r.rounded, oracle);
    }
    let oracle = preimage_degree(|k| cayley_map(k, -2.0), &target, 24);
    let r = winding_3d(&field(16, 0.0, |k| cayley_map(k, -2.0))).unwrap();
    assert_eq!(r.rounded, oracle);
}

#[test]
fn higher_order_differences_converge_faster() {
    let v = field(16, 0.5, |k| chiral_map(k, -2.0));
    let errs: Vec<f64> = [2, 4, 6]
        .iter()
        .map(|&o| (winding_density_3d(&v, o).unwrap().value + 1.0).abs())
        .collect();
    assert!(errs[0] > errs[1] && errs[1] > errs[2]);
    assert!(errs[2] < 0.01);
}

#[test]
fn constant_and_one_dimensional_fields_have_zero_winding() {
    let u0 = su2_exp([0.3, 0.2, -1.0]);
    let r = winding_3d(&field(8, 0.0, |_| u0.clone())).unwrap();
    assert!(r.value.abs() < 1e-14);
    let r = winding_3d(&field(8, 0.0, |k| su2_exp([k[1].sin(), 2.0 * k[1].cos(), 0.5]))).unwrap();
    assert!(r.value.abs() < 1e-12);
    let r = winding_3d(&field(8, 0.0, |k| ComplexMatrix::diag(&[C64::from_polar(1.0, k[0]), C64::new(1.0, 0.0)]))).unwrap();
    assert!(r.value.abs() < 1e-12);
}

#[test]
fn winding_3d_is_invariant_under_constant_factors() {
    let (a, b) = (su2_exp([1.0, -0.5, 0.25]), su2_exp([-0.3, 0.8, 2.0]));
    let base = winding_density_3d(&field(12, 0.5, |k| chiral_map(k, -2.0)), 6).unwrap().value;
    let twisted = winding_density_3d(&field(12, 0.5, |k| a.matmul(&chiral_map(k, -2.0)).matmul(&b)), 6).unwrap().value;
    assert!((base - twisted).abs() < 1e-10);
}

#[test]
fn coarse_or_wrong_inputs_are_rejected() {
    let v = field(4, 0.0, |k| chiral_map(k, -2.0));
    assert!(matches!(winding_density_3d(&v, 6), Err(InvariantError::InvalidArgument(_))));
    assert!(matches!(winding_density_3d(&v, 3), Err(InvariantError::InvalidArgument(_))));
    let v = field(8, 0.0, |_| ComplexMatrix::zeros(2, 2));
    assert!(matches!(winding_3d(&v), Err(InvariantError::NotInvertible { .. })));
    // Badly resolved field: far from an integer.
    let v = field(7, 0.0, |k| chiral_map(k, -2.9));
    let r = winding_density_3d(&v, 2).unwrap();
    if r.distance_to_integer > UNCONVERGED_LIMIT {
        assert!(matches!(winding_3d_with_order(&v, 2), Err(InvariantError::Unconverged { .. })));
    }
}
