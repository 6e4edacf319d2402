use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;

pub type C64 = Complex64;

pub const I: C64 = C64::new(0.0, 1.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const ZERO: C64 = C64::new(0.0, 0.0);

/// Dense complex matrix stored in row-major order.
///
/// Most physical objects (fibers, Green matrices, unitaries) are square;
/// frames such as 2L×L stacks of column vectors use the same type.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length does not match shape");
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![ZERO; rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, ONE)
    }

    pub fn scalar(n: usize, c: C64) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::new(rows, cols, data)
    }

    /// Builds a matrix from row-major real and imaginary parts.
    pub fn from_parts(rows: usize, cols: usize, re: &[f64], im: &[f64]) -> Self {
        assert_eq!(re.len(), rows * cols);
        assert_eq!(im.len(), rows * cols);
        let data = re.iter().zip(im).map(|(&a, &b)| C64::new(a, b)).collect();
        Self::new(rows, cols, data)
    }

    pub fn from_real(rows: usize, cols: usize, re: &[f64]) -> Self {
        assert_eq!(re.len(), rows * cols);
        Self::new(rows, cols, re.iter().map(|&a| C64::new(a, 0.0)).collect())
    }

    /// Row-major construction from nested rows.
    pub fn from_rows<R: AsRef<[C64]>>(rows: &[R]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.as_ref().len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.as_ref().len(), c, "ragged rows");
            data.extend_from_slice(row.as_ref());
        }
        Self::new(r, c, data)
    }

    pub fn diag(values: &[C64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn column_vector(values: &[C64]) -> Self {
        Self::new(values.len(), 1, values.to_vec())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Dimension of a square matrix.
    pub fn dim(&self) -> usize {
        debug_assert!(self.is_square());
        self.rows
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [C64] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<C64> {
        self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self::new(self.rows, self.cols, self.data.iter().map(|z| z.conj()).collect())
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        Self::new(self.rows, self.cols, self.data.iter().map(|&z| f(z)).collect())
    }

    pub fn scale(&self, c: C64) -> Self {
        self.map(|z| z * c)
    }

    pub fn scale_re(&self, c: f64) -> Self {
        self.map(|z| z * c)
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matmul shape mismatch");
        let (n, m, p) = (self.rows, self.cols, rhs.cols);
        let mut out = vec![ZERO; n * p];
        for i in 0..n {
            let orow = &mut out[i * p..(i + 1) * p];
            for k in 0..m {
                let a = self.data[i * m + k];
                if a == ZERO {
                    continue;
                }
                let brow = &rhs.data[k * p..(k + 1) * p];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    *o += a * b;
                }
            }
        }
        Self::new(n, p, out)
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn norm_fro(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn norm_max(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Copy of the `nr × nc` block whose top-left corner is `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        assert!(r0 + nr <= self.rows && c0 + nc <= self.cols, "block out of range");
        Self::from_fn(nr, nc, |i, j| self[(r0 + i, c0 + j)])
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols, "block out of range");
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)];
            }
        }
    }

    pub fn add_block(&mut self, r0: usize, c0: usize, b: &Self) {
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols, "block out of range");
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] += b[(i, j)];
            }
        }
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.rows, idx.len(), |i, j| self[(i, idx[j])])
    }

    pub fn set_column(&mut self, j: usize, v: &[C64]) {
        assert_eq!(v.len(), self.rows);
        for (i, &x) in v.iter().enumerate() {
            self[(i, j)] = x;
        }
    }

    pub fn hstack(parts: &[&Self]) -> Self {
        let rows = parts[0].rows;
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut c0 = 0;
        for p in parts {
            assert_eq!(p.rows, rows, "hstack row mismatch");
            out.set_block(0, c0, p);
            c0 += p.cols;
        }
        out
    }

    pub fn vstack(parts: &[&Self]) -> Self {
        let cols = parts[0].cols;
        let rows = parts.iter().map(|p| p.rows).sum();
        let mut out = Self::zeros(rows, cols);
        let mut r0 = 0;
        for p in parts {
            assert_eq!(p.cols, cols, "vstack column mismatch");
            out.set_block(r0, 0, p);
            r0 += p.rows;
        }
        out
    }

    /// `[[a, b], [c, d]]` assembled from four equally sized square blocks.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        Self::vstack(&[&Self::hstack(&[a, b]), &Self::hstack(&[c, d])])
    }

    pub fn kron(a: &Self, b: &Self) -> Self {
        Self::from_fn(a.rows * b.rows, a.cols * b.cols, |i, j| {
            a[(i / b.rows, j / b.cols)] * b[(i % b.rows, j % b.cols)]
        })
    }

    /// Frobenius norm of `A − A*`.
    pub fn hermitian_residual(&self) -> f64 {
        (self - &self.adjoint()).norm_fro()
    }

    /// Frobenius norm of `A*A − 𝟙`.
    pub fn unitarity_residual(&self) -> f64 {
        (&self.adjoint().matmul(self) - &Self::identity(self.cols)).norm_fro()
    }

    pub fn hermitian_part(&self) -> Self {
        (self + &self.adjoint()).scale_re(0.5)
    }

    /// `(A − A*)/(2i)`.
    pub fn imaginary_part(&self) -> Self {
        (self - &self.adjoint()).scale(C64::new(0.0, -0.5))
    }

    pub fn distance(&self, other: &Self) -> f64 {
        (self - other).norm_fro()
    }

    pub(crate) fn to_faer(&self) -> faer::Mat<C64> {
        faer::Mat::from_fn(self.rows, self.cols, |i, j| self[(i, j)])
    }

    pub(crate) fn from_faer(m: faer::MatRef<'_, C64>) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.6e}{:+.6e}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Add<&ComplexMatrix> for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.shape(), rhs.shape(), "add shape mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        ComplexMatrix::new(self.rows, self.cols, data)
    }
}

impl Sub<&ComplexMatrix> for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.shape(), rhs.shape(), "sub shape mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        ComplexMatrix::new(self.rows, self.cols, data)
    }
}

impl Add for ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: ComplexMatrix) -> ComplexMatrix {
        &self + &rhs
    }
}

impl Sub for ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: ComplexMatrix) -> ComplexMatrix {
        &self - &rhs
    }
}

impl AddAssign<&ComplexMatrix> for ComplexMatrix {
    fn add_assign(&mut self, rhs: &ComplexMatrix) {
        assert_eq!(self.shape(), rhs.shape(), "add shape mismatch");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }
}

impl SubAssign<&ComplexMatrix> for ComplexMatrix {
    fn sub_assign(&mut self, rhs: &ComplexMatrix) {
        assert_eq!(self.shape(), rhs.shape(), "sub shape mismatch");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.map(|z| -z)
    }
}

impl Neg for ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        -&self
    }
}

impl Mul<&ComplexMatrix> for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

impl Mul for ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: ComplexMatrix) -> ComplexMatrix {
        self.matmul(&rhs)
    }
}

impl Mul<C64> for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: C64) -> ComplexMatrix {
        self.scale(rhs)
    }
}

impl Mul<f64> for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: f64) -> ComplexMatrix {
        self.scale_re(rhs)
    }
}

/// Pauli matrices σ₁, σ₂, σ₃.
pub fn pauli() -> [ComplexMatrix; 3] {
    [
        ComplexMatrix::from_rows(&[[ZERO, ONE], [ONE, ZERO]]),
        ComplexMatrix::from_rows(&[[ZERO, -I], [I, ZERO]]),
        ComplexMatrix::from_rows(&[[ONE, ZERO], [ZERO, -ONE]]),
    ]
}
