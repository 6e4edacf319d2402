use topo_numerics::{condition_number, hermitian_eigenvalues, ComplexMatrix, C64};

use crate::error::ModelError;
use crate::fourier::FourierMatrix;
use crate::grid::MomentumGrid;

/// Hopping condition numbers above this are rejected.
pub const HOPPING_COND_LIMIT: f64 = 1e10;
/// Onsite blocks must be Hermitian to this accuracy.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Periodic perturbation λ·H₁ added to the layer data.
#[derive(Clone, Debug, PartialEq)]
pub struct Perturbation {
    pub lambda: f64,
    pub hoppings: Vec<FourierMatrix>,
    pub onsite: Vec<FourierMatrix>,
}

/// Tight-binding Hamiltonian in block Jacobi form along the direction
/// perpendicular to the boundary:
///
/// `(Hφ)_n = A_{n+1} φ_{n+1} + B_n φ_n + A_n* φ_{n−1}`,
///
/// where `A_n`, `B_n` are `L×L` trigonometric polynomials in the
/// `d − 1` boundary-parallel momenta and depend on `n` only through
/// `n mod p`. Layers are numbered from 1.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockJacobiModel {
    dimension: usize,
    fiber_dim: usize,
    period_perp: usize,
    hoppings: Vec<FourierMatrix>,
    onsite: Vec<FourierMatrix>,
    perturbation: Option<Perturbation>,
}

impl BlockJacobiModel {
    /// Validated constructor. `hoppings[j]` and `onsite[j]` are `A_{j+1}`
    /// and `B_{j+1}`.
    pub fn new(
        dimension: usize,
        fiber_dim: usize,
        period_perp: usize,
        hoppings: Vec<FourierMatrix>,
        onsite: Vec<FourierMatrix>,
        perturbation: Option<Perturbation>,
    ) -> Result<Self, ModelError> {
        if dimension == 0 {
            return Err(ModelError::InvalidModel("dimension must be at least 1".into()));
        }
        if fiber_dim == 0 {
            return Err(ModelError::InvalidModel("fiber_dim must be at least 1".into()));
        }
        if period_perp == 0 {
            return Err(ModelError::InvalidModel("period_perp must be at least 1".into()));
        }
        let vars = dimension - 1;
        let check_list = |name: &str, list: &[FourierMatrix]| -> Result<(), ModelError> {
            if list.len() != period_perp {
                return Err(ModelError::InvalidModel(format!(
                    "{name}: {} layers given, period_perp is {period_perp}",
                    list.len()
                )));
            }
            for (j, f) in list.iter().enumerate() {
                if f.dim() != fiber_dim || f.vars() != vars {
                    return Err(ModelError::InvalidModel(format!(
                        "{name} layer {}: shape does not match fiber_dim {fiber_dim}, dimension {dimension}",
                        j + 1
                    )));
                }
            }
            Ok(())
        };
        check_list("hoppings", &hoppings)?;
        check_list("onsite", &onsite)?;
        if let Some(p) = &perturbation {
            if !(p.lambda >= 0.0 && p.lambda.is_finite()) {
                return Err(ModelError::InvalidModel("perturbation lambda must be >= 0".into()));
            }
            check_list("perturbation hoppings", &p.hoppings)?;
            check_list("perturbation onsite", &p.onsite)?;
            if p.onsite.iter().any(|b| b.hermiticity_defect() > HERMITIAN_TOL) {
                return Err(ModelError::InvalidModel("perturbation onsite not Hermitian".into()));
            }
        }
        if onsite.iter().any(|b| b.hermiticity_defect() > HERMITIAN_TOL) {
            return Err(ModelError::InvalidModel("onsite not Hermitian".into()));
        }
        let model = Self { dimension, fiber_dim, period_perp, hoppings, onsite, perturbation };
        model.check_hoppings_invertible()?;
        Ok(model)
    }

    fn check_hoppings_invertible(&self) -> Result<(), ModelError> {
        let vars = self.dimension - 1;
        let sample = MomentumGrid::new(vec![6; vars])
            .expect("sample grid is valid")
            .with_offset(0.25);
        let mut points = sample.points();
        points.push(vec![0.0; vars]);
        for n in 1..=self.period_perp {
            for k in &points {
                let cond = condition_number(&self.hopping(n, k))?;
                if !(cond < HOPPING_COND_LIMIT) {
                    return Err(ModelError::InvalidModel(format!(
                        "hopping not invertible (layer {n}, condition {cond:.3e})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Number of boundary-parallel momenta, `d − 1`.
    pub fn boundary_dim(&self) -> usize {
        self.dimension - 1
    }

    pub fn fiber_dim(&self) -> usize {
        self.fiber_dim
    }

    pub fn period_perp(&self) -> usize {
        self.period_perp
    }

    pub fn perturbation(&self) -> Option<&Perturbation> {
        self.perturbation.as_ref()
    }

    /// Copy of the model with the perturbation strength replaced.
    pub fn with_lambda(&self, lambda: f64) -> Self {
        let mut m = self.clone();
        if let Some(p) = &mut m.perturbation {
            p.lambda = lambda;
        }
        m
    }

    fn slot(&self, n: usize) -> usize {
        assert!(n >= 1, "layers are numbered from 1");
        (n - 1) % self.period_perp
    }

    /// `A_n(k)`, including the perturbation.
    pub fn hopping(&self, n: usize, k: &[f64]) -> ComplexMatrix {
        let j = self.slot(n);
        let mut a = self.hoppings[j].eval(k);
        if let Some(p) = &self.perturbation {
            a += &p.hoppings[j].eval(k).scale_re(p.lambda);
        }
        a
    }

    /// `B_n(k)`, including the perturbation.
    pub fn onsite(&self, n: usize, k: &[f64]) -> ComplexMatrix {
        let j = self.slot(n);
        let mut b = self.onsite[j].eval(k);
        if let Some(p) = &self.perturbation {
            b += &p.onsite[j].eval(k).scale_re(p.lambda);
        }
        b
    }

    /// Bulk Bloch fiber of one perpendicular period, `pL × pL`, at boundary
    /// momenta `k` and perpendicular quasi-momentum `q` (φ_{n+p} = e^{iq} φ_n).
    pub fn bulk_fiber(&self, k: &[f64], q: f64) -> ComplexMatrix {
        bloch_fiber(self, k, self.period_perp, Boundary::Periodic { k_perp: q })
            .expect("bulk fiber of a validated model")
    }

    /// Bulk fiber at a full momentum `(k_1, …, k_{d−1}, q)`.
    pub fn bulk_fiber_at(&self, momentum: &[f64]) -> ComplexMatrix {
        let (k, q) = momentum.split_at(self.dimension - 1);
        self.bulk_fiber(k, q[0])
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Boundary {
    /// Layers `1..=M` with a hard wall beyond layer `M`.
    HalfSpace,
    /// `M` layers closed periodically with Bloch phase `e^{i k_perp}`.
    Periodic { k_perp: f64 },
}

/// Block-tridiagonal `ML × ML` fiber of the model at boundary momenta `k`.
pub fn bloch_fiber(
    model: &BlockJacobiModel,
    k: &[f64],
    layers: usize,
    boundary: Boundary,
) -> Result<ComplexMatrix, ModelError> {
    if layers == 0 {
        return Err(ModelError::InvalidArgument("at least one layer is required".into()));
    }
    if k.len() != model.boundary_dim() {
        return Err(ModelError::InvalidArgument(format!(
            "momentum has {} components, model expects {}",
            k.len(),
            model.boundary_dim()
        )));
    }
    let l = model.fiber_dim();
    let mut h = ComplexMatrix::zeros(layers * l, layers * l);
    for n in 1..=layers {
        let b = model.onsite(n, k);
        if b.hermitian_residual() > HERMITIAN_TOL * b.norm_fro().max(1.0) {
            return Err(ModelError::InvalidModel(format!("onsite block of layer {n} not Hermitian")));
        }
        h.set_block((n - 1) * l, (n - 1) * l, &b);
        if n < layers {
            let a = model.hopping(n + 1, k);
            h.set_block((n - 1) * l, n * l, &a);
            h.set_block(n * l, (n - 1) * l, &a.adjoint());
        }
    }
    if let Boundary::Periodic { k_perp } = boundary {
        if layers % model.period_perp() != 0 {
            return Err(ModelError::InvalidArgument(format!(
                "periodic fiber needs a multiple of the period {}, got {layers} layers",
                model.period_perp()
            )));
        }
        let a = model.hopping(layers + 1, k).scale(C64::from_polar(1.0, k_perp));
        let r = (layers - 1) * l;
        h.add_block(r, 0, &a);
        h.add_block(0, r, &a.adjoint());
    }
    Ok(h)
}

/// Spectral edges around `mu` of the bulk fibers on a grid of the full
/// torus: `(max eigenvalue below mu, min eigenvalue above mu)`.
///
/// Fails with [`ModelError::Gapless`] when some eigenvalue lies within
/// `tol` of `mu`.
pub fn bulk_gap(
    model: &BlockJacobiModel,
    mu: f64,
    grid: &MomentumGrid,
    tol: f64,
) -> Result<(f64, f64), ModelError> {
    if grid.ndim() != model.dimension() {
        return Err(ModelError::InvalidArgument(format!(
            "grid has {} axes, model dimension is {}",
            grid.ndim(),
            model.dimension()
        )));
    }
    let mut below = f64::NEG_INFINITY;
    let mut above = f64::INFINITY;
    for idx in 0..grid.len() {
        let p = grid.point(idx);
        for e in hermitian_eigenvalues(&model.bulk_fiber_at(&p))? {
            if (e - mu).abs() < tol {
                return Err(ModelError::Gapless { energy: e, momentum: p });
            }
            if e < mu {
                below = below.max(e);
            } else {
                above = above.min(e);
            }
        }
    }
    Ok((below, above))
}
