//! Dense complex linear algebra at desk scale.
//!
//! [`CMatrix`] is a row-major matrix of [`Complex`] entries. Every entry is
//! finite: constructors that take external data reject NaN and infinities,
//! and the arithmetic here cannot produce them from finite inputs of sane
//! magnitude.

mod det;
mod eigen;
mod svd;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Sub};

// f64 maths without std.
#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result};

pub use det::det;
pub use eigen::{real_symmetric_eigen, hermitian_eigenvalues, hermitian_eigenvalues_tol, symmetric_eigen};
pub use svd::{svd, trace_norm, Svd};

pub type Complex = num_complex::Complex64;

/// Default orthogonality tolerance for unitary factors.
pub const TOL_ORTHO: f64 = 1e-9;

pub(crate) const ZERO: Complex = Complex::new(0.0, 0.0);
pub(crate) const ONE: Complex = Complex::new(1.0, 0.0);

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
        CMatrix { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from row-major entries, rejecting non-finite values.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::Dimension {
                op: "from_vec",
                detail: format!("{rows}x{cols} needs {} entries, got {}", rows * cols, data.len()),
            });
        }
        if let Some(k) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite { row: k / cols, col: k % cols });
        }
        Ok(CMatrix { rows, cols, data })
    }

    /// Builds a matrix from a slice of equally long rows.
    pub fn from_rows<R: AsRef<[Complex]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        if rows.iter().any(|r| r.as_ref().len() != cols) {
            return Err(Error::Dimension { op: "from_rows", detail: "ragged rows".into() });
        }
        let data = rows.iter().flat_map(|r| r.as_ref().iter().copied()).collect();
        Self::from_vec(rows.len(), cols, data)
    }

    /// Real matrix from rows of `f64`.
    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let rows: Vec<Vec<Complex>> = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| Complex::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn diag(values: &[Complex]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn diag_real(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex::new(v, 0.0);
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[Complex] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Complex> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, values: &[Complex]) {
        debug_assert_eq!(values.len(), self.rows);
        for (i, &v) in values.iter().enumerate() {
            self[(i, j)] = v;
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn map(&self, f: impl Fn(Complex) -> Complex) -> Self {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| f(z)).collect() }
    }

    pub fn scale(&self, s: Complex) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.map(|z| z * s)
    }

    pub fn trace(&self) -> Complex {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus of `self - other`; shapes must agree.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!(self.shape(), other.shape(), "max_abs_diff: shape mismatch");
        self.data.iter().zip(&other.data).fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }

    /// Largest modulus of `a[i,j] - conj(a[j,i])`.
    pub fn hermitian_deviation(&self) -> f64 {
        self.pair_deviation(|a, b| a - b.conj())
    }

    /// Largest modulus of `a[i,j] - a[j,i]`.
    pub fn symmetric_deviation(&self) -> f64 {
        self.pair_deviation(|a, b| a - b)
    }

    /// Largest modulus of `a[i,j] + a[j,i]`.
    pub fn antisymmetric_deviation(&self) -> f64 {
        self.pair_deviation(|a, b| a + b)
    }

    fn pair_deviation(&self, f: impl Fn(Complex, Complex) -> Complex) -> f64 {
        assert!(self.is_square(), "deviation measures need a square matrix");
        let mut dev = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max(f(self[(i, j)], self[(j, i)]).norm());
            }
        }
        dev
    }

    pub fn matmul(&self, rhs: &CMatrix) -> Result<CMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension {
                op: "matmul",
                detail: format!("{}x{} times {}x{}", self.rows, self.cols, rhs.rows, rhs.cols),
            });
        }
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.data[k * rhs.cols + j];
                }
            }
        }
        Ok(out)
    }

    pub(crate) fn require_square(&self, op: &'static str) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::Dimension { op, detail: format!("expected square, got {}x{}", self.rows, self.cols) })
        }
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.shape(), rhs.shape(), "add: shape mismatch");
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;

    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.shape(), rhs.shape(), "sub: shape mismatch");
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Panics on inner-dimension mismatch; use [`CMatrix::matmul`] for a fallible product.
impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.matmul(rhs).expect("matrix product dimension mismatch")
    }
}

/// Kronecker product: entry `((i*b.rows + k), (j*b.cols + l))` is `a[i,j] * b[k,l]`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (br, bc) = b.shape();
    CMatrix::from_fn(a.rows * br, a.cols * bc, |r, c| a[(r / br, c / bc)] * b[(r % br, c % bc)])
}

/// Hermitian inner product `<x, y> = sum conj(x_i) y_i`.
pub(crate) fn inner(x: &[Complex], y: &[Complex]) -> Complex {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

pub(crate) fn vec_norm(x: &[Complex]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Completes the first `filled` orthonormal columns of `q` to a unitary
/// matrix. Candidate directions are the standard basis vectors, taken in
/// order; each is orthogonalised twice against everything accepted so far.
pub(crate) fn complete_unitary(q: &mut CMatrix, filled: usize) {
    let n = q.rows();
    let mut basis: Vec<Vec<Complex>> = (0..filled).map(|j| q.column(j)).collect();
    let mut e = 0;
    while basis.len() < q.cols() && e < n {
        let mut v = vec![ZERO; n];
        v[e] = ONE;
        e += 1;
        for _ in 0..2 {
            for b in &basis {
                let p = inner(b, &v);
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= p * bi;
                }
            }
        }
        let nv = vec_norm(&v);
        if nv > 1e-8 {
            v.iter_mut().for_each(|z| *z /= nv);
            basis.push(v);
        }
    }
    for (j, b) in basis.iter().enumerate().skip(filled) {
        q.set_column(j, b);
    }
}

/// Re-orthonormalises the columns of `q` in place (modified Gram-Schmidt,
/// two passes). Columns that collapse are replaced by completion vectors.
pub(crate) fn reorthonormalize(q: &mut CMatrix) {
    let n = q.cols();
    let mut accepted: Vec<Vec<Complex>> = Vec::with_capacity(n);
    let mut dropped = false;
    for j in 0..n {
        let mut v = q.column(j);
        for _ in 0..2 {
            for b in &accepted {
                let p = inner(b, &v);
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= p * bi;
                }
            }
        }
        let nv = vec_norm(&v);
        if nv > 1e-8 && !dropped {
            v.iter_mut().for_each(|z| *z /= nv);
            accepted.push(v);
        } else {
            dropped = true;
        }
    }
    let filled = accepted.len();
    for (j, b) in accepted.iter().enumerate() {
        q.set_column(j, b);
    }
    if filled < n {
        complete_unitary(q, filled);
    }
}

/// Largest entry modulus of `q^H q - I`.
pub fn unitarity_defect(q: &CMatrix) -> f64 {
    let g = &q.adjoint() * q;
    g.max_abs_diff(&CMatrix::identity(q.cols()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex {
        Complex::new(re, 0.0)
    }

    #[test]
    fn kron_identities() {
        assert_eq!(kron(&CMatrix::identity(2), &CMatrix::identity(2)), CMatrix::identity(4));
    }

    #[test]
    fn kron_of_diagonal_factors() {
        let f = CMatrix::diag_real(&[0.6, 0.8]);
        let k = kron(&f, &f);
        let want = CMatrix::diag_real(&[0.36, 0.48, 0.48, 0.64]);
        assert!(k.max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn kron_projector_places_block_top_left() {
        let mut p = CMatrix::zeros(2, 2);
        p[(0, 0)] = ONE;
        let m = CMatrix::from_fn(3, 2, |i, j| Complex::new(i as f64 + 1.0, j as f64 - 0.5));
        let k = kron(&p, &m);
        assert_eq!(k.shape(), (6, 4));
        for r in 0..6 {
            for col in 0..4 {
                let want = if r < 3 && col < 2 { m[(r, col)] } else { ZERO };
                assert_eq!(k[(r, col)], want);
            }
        }
    }

    #[test]
    fn rejects_non_finite_and_ragged() {
        let err = CMatrix::from_vec(1, 2, alloc::vec![ONE, Complex::new(f64::NAN, 0.0)]).unwrap_err();
        assert_eq!(err, Error::NonFinite { row: 0, col: 1 });
        let rows: [&[Complex]; 2] = [&[ONE, ONE], &[ONE]];
        assert!(matches!(CMatrix::from_rows(&rows), Err(Error::Dimension { .. })));
    }

    #[test]
    fn completion_yields_unitary() {
        let mut q = CMatrix::zeros(3, 3);
        let s = 1.0 / 2f64.sqrt();
        q.set_column(0, &[c(s), c(s), ZERO]);
        complete_unitary(&mut q, 1);
        assert!(unitarity_defect(&q) < 1e-14);
    }
}
