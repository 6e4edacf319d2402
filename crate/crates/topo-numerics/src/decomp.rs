use faer::linalg::solvers::Solve;
use faer::Side;

use crate::error::NumericsError;
use crate::matrix::{ComplexMatrix, C64, I, ZERO};

/// Condition-number ceiling above which [`solve`] refuses to answer.
pub const DEFAULT_COND_LIMIT: f64 = 1e12;

/// Tolerance used for eigenvalue clustering and defect detection.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-8;

/// A group of numerically coincident eigenvalues.
#[derive(Clone, Debug, PartialEq)]
pub struct Cluster {
    pub members: Vec<usize>,
    /// Set when the eigenvectors of the cluster fail to span a space of the
    /// cluster's size, i.e. the eigenvalue is (possibly) defective.
    pub defective: bool,
}

#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<C64>,
    /// Right eigenvectors as unit-norm columns.
    pub vectors: ComplexMatrix,
    pub clusters: Vec<Cluster>,
    /// Largest relative residual ‖Av − λv‖/‖A‖ over all pairs.
    pub max_residual: f64,
}

impl EigenDecomposition {
    pub fn vector(&self, i: usize) -> Vec<C64> {
        self.vectors.column(i)
    }

    /// Whether eigenvalue `i` belongs to a cluster flagged as defective.
    pub fn jordan_defect_flag(&self, i: usize) -> bool {
        self.clusters
            .iter()
            .find(|c| c.members.contains(&i))
            .is_some_and(|c| c.defective)
    }

    pub fn cluster_of(&self, i: usize) -> &Cluster {
        self.clusters
            .iter()
            .find(|c| c.members.contains(&i))
            .expect("every eigenvalue belongs to a cluster")
    }
}

fn ensure_finite(a: &ComplexMatrix) -> Result<(), NumericsError> {
    if a.is_finite() {
        Ok(())
    } else {
        Err(NumericsError::NonFinite)
    }
}

fn ensure_square(a: &ComplexMatrix, what: &str) -> Result<(), NumericsError> {
    if a.is_square() {
        Ok(())
    } else {
        Err(NumericsError::DimensionMismatch(format!(
            "{what} must be square, got {}x{}",
            a.rows(),
            a.cols()
        )))
    }
}

/// Eigendecomposition of a general complex matrix.
///
/// Every pair satisfies ‖Av − λv‖ ≤ `tol`·‖A‖. Eigenvalues closer than
/// √`tol`·max(1, ‖A‖) are grouped into clusters; a cluster is flagged
/// defective when the Gram matrix of its eigenvectors has an eigenvalue
/// below `tol`.
pub fn eigen(a: &ComplexMatrix, tol: f64) -> Result<EigenDecomposition, NumericsError> {
    ensure_square(a, "eigen input")?;
    ensure_finite(a)?;
    let n = a.rows();
    if n == 0 {
        return Ok(EigenDecomposition {
            eigenvalues: vec![],
            vectors: ComplexMatrix::zeros(0, 0),
            clusters: vec![],
            max_residual: 0.0,
        });
    }
    let evd = a
        .to_faer()
        .eigen()
        .map_err(|_| NumericsError::NotConverged { residual: f64::NAN })?;
    let s = evd.S();
    let eigenvalues: Vec<C64> = (0..n).map(|i| s[i]).collect();
    let mut vectors = ComplexMatrix::from_faer(evd.U());
    for j in 0..n {
        let nrm = vectors.column(j).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if nrm > 0.0 {
            for i in 0..n {
                vectors[(i, j)] /= nrm;
            }
        }
    }
    let scale = a.norm_fro().max(f64::MIN_POSITIVE);
    let av = a.matmul(&vectors);
    let mut max_residual: f64 = 0.0;
    for j in 0..n {
        let r = (0..n)
            .map(|i| (av[(i, j)] - eigenvalues[j] * vectors[(i, j)]).norm_sqr())
            .sum::<f64>()
            .sqrt();
        max_residual = max_residual.max(r / scale);
    }
    if !(max_residual <= tol) {
        return Err(NumericsError::NotConverged { residual: max_residual });
    }
    let radius = tol.sqrt() * scale.max(1.0);
    let clusters = cluster_values(&eigenvalues, radius)
        .into_iter()
        .map(|members| {
            let defective = members.len() > 1 && {
                let v = vectors.select_columns(&members);
                let gram = v.adjoint().matmul(&v);
                hermitian_eigen(&gram).map(|e| e.values[0] < tol).unwrap_or(true)
            };
            Cluster { members, defective }
        })
        .collect();
    Ok(EigenDecomposition { eigenvalues, vectors, clusters, max_residual })
}

/// Single-linkage clustering of complex values at the given radius.
pub fn cluster_values(values: &[C64], radius: f64) -> Vec<Vec<usize>> {
    let n = values.len();
    let mut label: Vec<usize> = (0..n).collect();
    fn find(label: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while label[r] != r {
            r = label[r];
        }
        label[i] = r;
        r
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (values[i] - values[j]).norm() <= radius {
                let (ri, rj) = (find(&mut label, i), find(&mut label, j));
                if ri != rj {
                    label[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_of_group: Vec<usize> = Vec::new();
    for i in 0..n {
        let r = find(&mut label, i);
        match root_of_group.iter().position(|&g| g == r) {
            Some(p) => groups[p].push(i),
            None => {
                root_of_group.push(r);
                groups.push(vec![i]);
            }
        }
    }
    groups
}

#[derive(Clone, Debug)]
pub struct HermitianEigen {
    /// Eigenvalues in nondecreasing order.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns.
    pub vectors: ComplexMatrix,
}

/// Eigendecomposition of the Hermitian part of `a`.
pub fn hermitian_eigen(a: &ComplexMatrix) -> Result<HermitianEigen, NumericsError> {
    ensure_square(a, "hermitian_eigen input")?;
    ensure_finite(a)?;
    let h = a.hermitian_part();
    let evd = h
        .to_faer()
        .self_adjoint_eigen(Side::Lower)
        .map_err(|_| NumericsError::NotConverged { residual: f64::NAN })?;
    let s = evd.S();
    let values = (0..h.rows()).map(|i| s[i].re).collect();
    Ok(HermitianEigen { values, vectors: ComplexMatrix::from_faer(evd.U()) })
}

/// Eigenvalues of the Hermitian part of `a`, nondecreasing.
pub fn hermitian_eigenvalues(a: &ComplexMatrix) -> Result<Vec<f64>, NumericsError> {
    ensure_square(a, "hermitian_eigenvalues input")?;
    ensure_finite(a)?;
    let h = a.hermitian_part();
    h.to_faer()
        .self_adjoint_eigenvalues(Side::Lower)
        .map_err(|_| NumericsError::NotConverged { residual: f64::NAN })
}

/// `V f(Λ) V*` for the Hermitian part of `a`.
pub fn hermitian_function(
    a: &ComplexMatrix,
    f: impl Fn(f64) -> C64,
) -> Result<ComplexMatrix, NumericsError> {
    let e = hermitian_eigen(a)?;
    let n = e.values.len();
    let mut vf = e.vectors.clone();
    for j in 0..n {
        let c = f(e.values[j]);
        for i in 0..n {
            vf[(i, j)] *= c;
        }
    }
    Ok(vf.matmul(&e.vectors.adjoint()))
}

#[derive(Clone, Debug)]
pub struct Svd {
    pub u: ComplexMatrix,
    /// Singular values in nonincreasing order.
    pub s: Vec<f64>,
    pub v: ComplexMatrix,
}

pub fn svd(a: &ComplexMatrix) -> Result<Svd, NumericsError> {
    ensure_finite(a)?;
    let d = a
        .to_faer()
        .svd()
        .map_err(|_| NumericsError::NotConverged { residual: f64::NAN })?;
    let s = d.S();
    let k = a.rows().min(a.cols());
    Ok(Svd {
        u: ComplexMatrix::from_faer(d.U()),
        s: (0..k).map(|i| s[i].re).collect(),
        v: ComplexMatrix::from_faer(d.V()),
    })
}

pub fn singular_values(a: &ComplexMatrix) -> Result<Vec<f64>, NumericsError> {
    ensure_finite(a)?;
    a.to_faer()
        .singular_values()
        .map_err(|_| NumericsError::NotConverged { residual: f64::NAN })
}

/// Spectral norm.
pub fn norm_2(a: &ComplexMatrix) -> Result<f64, NumericsError> {
    Ok(singular_values(a)?.first().copied().unwrap_or(0.0))
}

/// 2-norm condition number; infinite for singular input.
pub fn condition_number(a: &ComplexMatrix) -> Result<f64, NumericsError> {
    let s = singular_values(a)?;
    match (s.first(), s.last()) {
        (Some(&hi), Some(&lo)) if lo > 0.0 => Ok(hi / lo),
        (Some(_), Some(_)) => Ok(f64::INFINITY),
        _ => Ok(1.0),
    }
}

/// Unitary factor `U V*` of the polar decomposition.
pub fn polar_unitary(a: &ComplexMatrix) -> Result<ComplexMatrix, NumericsError> {
    let d = svd(a)?;
    let k = a.rows().min(a.cols());
    let u = d.u.block(0, 0, a.rows(), k);
    let v = d.v.block(0, 0, a.cols(), k);
    Ok(u.matmul(&v.adjoint()))
}

pub fn det(a: &ComplexMatrix) -> Result<C64, NumericsError> {
    ensure_square(a, "det input")?;
    ensure_finite(a)?;
    if a.rows() == 0 {
        return Ok(C64::new(1.0, 0.0));
    }
    Ok(a.to_faer().determinant())
}

/// Solves `A X = B` by LU with partial pivoting, rejecting systems whose
/// condition number exceeds [`DEFAULT_COND_LIMIT`].
pub fn solve(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix, NumericsError> {
    solve_with_limit(a, b, DEFAULT_COND_LIMIT)
}

pub fn solve_with_limit(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    cond_limit: f64,
) -> Result<ComplexMatrix, NumericsError> {
    ensure_square(a, "solve matrix")?;
    if a.rows() != b.rows() {
        return Err(NumericsError::DimensionMismatch(format!(
            "solve: matrix has {} rows, right-hand side {}",
            a.rows(),
            b.rows()
        )));
    }
    ensure_finite(a)?;
    ensure_finite(b)?;
    if a.rows() == 0 {
        return Ok(b.clone());
    }
    let condition = condition_number(a)?;
    if !(condition <= cond_limit) {
        return Err(NumericsError::SingularMatrix { condition });
    }
    let lu = a.to_faer().partial_piv_lu();
    let x = lu.solve(b.to_faer());
    Ok(ComplexMatrix::from_faer(x.as_ref()))
}

/// `X Y⁻¹`, computed as the transpose of `Yᵀ \ Xᵀ`.
pub fn solve_right(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<ComplexMatrix, NumericsError> {
    Ok(solve(&y.transpose(), &x.transpose())?.transpose())
}

/// `A⁻¹` through a solve against the identity.
pub fn inverse(a: &ComplexMatrix) -> Result<ComplexMatrix, NumericsError> {
    solve(a, &ComplexMatrix::identity(a.rows()))
}

/// Orthonormalizes the columns of `a` (modified Gram–Schmidt, two passes).
pub fn orthonormalize_columns(a: &ComplexMatrix) -> ComplexMatrix {
    let (n, k) = a.shape();
    let mut q = a.clone();
    for j in 0..k {
        for _ in 0..2 {
            for p in 0..j {
                let mut dot = ZERO;
                for i in 0..n {
                    dot += q[(i, p)].conj() * q[(i, j)];
                }
                for i in 0..n {
                    let qp = q[(i, p)];
                    q[(i, j)] -= dot * qp;
                }
            }
        }
        let nrm = (0..n).map(|i| q[(i, j)].norm_sqr()).sum::<f64>().sqrt();
        if nrm > 0.0 {
            for i in 0..n {
                q[(i, j)] /= nrm;
            }
        }
    }
    q
}

/// Principal logarithm of a unitary matrix, anti-Hermitian with spectrum
/// in i(−π, π].
pub fn unitary_log(u: &ComplexMatrix) -> Result<ComplexMatrix, NumericsError> {
    Ok(unitary_log_phases(u)?.0)
}

/// [`unitary_log`] together with the eigenphases of `u`.
pub fn unitary_log_phases(u: &ComplexMatrix) -> Result<(ComplexMatrix, Vec<f64>), NumericsError> {
    ensure_square(u, "unitary_log input")?;
    let e = eigen(u, 1e-8)?;
    let q = orthonormalize_columns(&e.vectors);
    let n = u.rows();
    let phases: Vec<f64> = e.eigenvalues.iter().map(|l| l.arg()).collect();
    let mut ql = q.clone();
    for j in 0..n {
        let l = I * phases[j];
        for i in 0..n {
            ql[(i, j)] *= l;
        }
    }
    Ok((ql.matmul(&q.adjoint()), phases))
}
