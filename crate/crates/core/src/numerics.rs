//! Dense complex matrices and the handful of spectral routines the rest of
//! the crate needs.
//!
//! Both decompositions are Jacobi methods: a cyclic two-sided Jacobi sweep for
//! Hermitian eigenproblems and a one-sided (Hestenes) Jacobi SVD. Sizes stay
//! below ~100, where Jacobi is fast enough and gives small eigen/singular
//! values to absolute accuracy near machine epsilon times the matrix norm.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::{Error, Result};

/// Default Hermiticity tolerance for spectral routines.
pub const DEFAULT_HERM_TOL: f64 = 1e-8;

const MAX_SWEEPS: usize = 100;

#[inline]
pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[inline]
pub(crate) fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    /// # Panics
    /// If either dimension is zero.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
        CMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = re(1.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from row-major entries, rejecting empty shapes,
    /// length mismatches and non-finite values.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Shape(format!("empty matrix {rows}x{cols}")));
        }
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Argument("matrix has non-finite entries".into()));
        }
        Ok(CMatrix { rows, cols, data })
    }

    /// Real matrix from row-major entries.
    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::from_vec(rows, cols, data.iter().map(|&x| re(x)).collect())
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = re(d);
        }
        m
    }

    /// The projector-like outer product `|v><v|`.
    pub fn outer(v: &[Complex64]) -> Self {
        Self::from_fn(v.len(), v.len(), |i, j| v[i] * v[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn matmul(&self, other: &CMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let orow = other.row(k);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &CMatrix) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &CMatrix) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &CMatrix, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "shape mismatch {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn scale(&self, s: f64) -> Self {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    /// # Panics
    /// If the matrix is not square.
    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// Largest entry of `|M - M^dagger|`. Non-square matrices report infinity.
    pub fn hermiticity_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut dev = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// `(M + M^dagger) / 2`.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5)
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm_sqr(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

pub fn adjoint(m: &CMatrix) -> CMatrix {
    m.adjoint()
}

pub fn matmul(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    a.matmul(b)
}

/// Eigenvalues (descending) and matching orthonormal eigenvectors stored as
/// the columns of `vectors`.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl HermitianEigen {
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        (0..self.vectors.rows()).map(|i| self.vectors[(i, k)]).collect()
    }
}

fn check_hermitian(m: &CMatrix, herm_tol: f64) -> Result<()> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "eigenproblem needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let dev = m.hermiticity_deviation();
    if dev > herm_tol {
        return Err(Error::Validation {
            invariant: crate::Invariant::Hermiticity,
            deviation: dev,
        });
    }
    Ok(())
}

/// Descending sort permutation; ties keep input order.
fn descending_order(values: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    idx
}

/// Cyclic Jacobi on a Hermitian matrix, in place. Eigenvectors accumulate in
/// `vecs` when given.
fn jacobi_hermitian(a: &mut CMatrix, mut vecs: Option<&mut CMatrix>) {
    let n = a.rows();
    for _ in 0..MAX_SWEEPS {
        let total = a.frobenius_norm_sqr();
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[(p, q)].norm_sqr();
            }
        }
        if off <= 1e-32 * total || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                if r < 1e-18 * (app.abs() + aqq.abs()) {
                    a[(p, q)] = re(0.0);
                    a[(q, p)] = re(0.0);
                    continue;
                }
                let e = apq / r;
                let ec = e.conj();
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + libm::sqrt(1.0 + tau * tau))
                } else {
                    -1.0 / (-tau + libm::sqrt(1.0 + tau * tau))
                };
                let cs = 1.0 / libm::sqrt(1.0 + t * t);
                let sn = t * cs;
                // A <- A J
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * cs - akq * ec * sn;
                    a[(k, q)] = akp * sn + akq * ec * cs;
                }
                // A <- J^dagger A
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = apk * cs - aqk * e * sn;
                    a[(q, k)] = apk * sn + aqk * e * cs;
                }
                a[(p, q)] = re(0.0);
                a[(q, p)] = re(0.0);
                a[(p, p)] = re(a[(p, p)].re);
                a[(q, q)] = re(a[(q, q)].re);
                if let Some(v) = vecs.as_deref_mut() {
                    for k in 0..n {
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = vkp * cs - vkq * ec * sn;
                        v[(k, q)] = vkp * sn + vkq * ec * cs;
                    }
                }
            }
        }
    }
}

/// Eigenvalues of the Hermitian part of `m`, descending.
///
/// Fails with a shape error for non-square input and with a Hermiticity
/// validation error when `max |M - M^dagger|` exceeds `herm_tol`.
pub fn hermitian_eigenvalues(m: &CMatrix, herm_tol: f64) -> Result<Vec<f64>> {
    check_hermitian(m, herm_tol)?;
    let mut a = m.hermitian_part();
    jacobi_hermitian(&mut a, None);
    let vals: Vec<f64> = (0..a.rows()).map(|i| a[(i, i)].re).collect();
    Ok(descending_order(&vals).into_iter().map(|i| vals[i]).collect())
}

/// Full eigendecomposition of the Hermitian part of `m`.
pub fn hermitian_eigen(m: &CMatrix, herm_tol: f64) -> Result<HermitianEigen> {
    check_hermitian(m, herm_tol)?;
    let n = m.rows();
    let mut a = m.hermitian_part();
    let mut v = CMatrix::identity(n);
    jacobi_hermitian(&mut a, Some(&mut v));
    let vals: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let order = descending_order(&vals);
    let values = order.iter().map(|&i| vals[i]).collect();
    let vectors = CMatrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    Ok(HermitianEigen { values, vectors })
}

/// Singular values, descending, `min(rows, cols)` of them.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    // Columns of the tall orientation; the SVD of M^dagger has the same values.
    let mut cols: Vec<Vec<Complex64>> = if m.rows() >= m.cols() {
        (0..m.cols())
            .map(|j| (0..m.rows()).map(|i| m[(i, j)]).collect())
            .collect()
    } else {
        (0..m.rows())
            .map(|i| m.row(i).iter().map(|z| z.conj()).collect())
            .collect()
    };
    let n = cols.len();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let (lo, hi) = cols.split_at_mut(q);
                let wp = &mut lo[p];
                let wq = &mut hi[0];
                let alpha: f64 = wp.iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = wq.iter().map(|z| z.norm_sqr()).sum();
                let gamma: Complex64 = wp.iter().zip(wq.iter()).map(|(x, y)| x.conj() * y).sum();
                let r = gamma.norm();
                if r == 0.0 || r <= 1e-15 * libm::sqrt(alpha * beta) {
                    continue;
                }
                rotated = true;
                let ec = (gamma / r).conj();
                let tau = (beta - alpha) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + libm::sqrt(1.0 + tau * tau))
                } else {
                    -1.0 / (-tau + libm::sqrt(1.0 + tau * tau))
                };
                let cs = 1.0 / libm::sqrt(1.0 + t * t);
                let sn = t * cs;
                for (x, y) in wp.iter_mut().zip(wq.iter_mut()) {
                    let (a, b) = (*x, *y);
                    *x = a * cs - b * ec * sn;
                    *y = a * sn + b * ec * cs;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let norms: Vec<f64> = cols
        .iter()
        .map(|w| libm::sqrt(w.iter().map(|z| z.norm_sqr()).sum::<f64>()))
        .collect();
    descending_order(&norms).into_iter().map(|i| norms[i]).collect()
}

/// Sum of singular values.
pub fn trace_norm(m: &CMatrix) -> f64 {
    singular_values(m).iter().sum()
}

/// `[sum(v^1), ..., sum(v^k)]`.
pub fn power_sums(values: &[f64], k: usize) -> Vec<f64> {
    let mut acc: Vec<f64> = values.to_vec();
    let mut out = Vec::with_capacity(k);
    for order in 1..=k {
        if order > 1 {
            for (a, &v) in acc.iter_mut().zip(values) {
                *a *= v;
            }
        }
        out.push(acc.iter().sum());
    }
    out
}

/// `[Tr M, Tr M^2, ..., Tr M^k]` of a Hermitian matrix, via its spectrum.
pub fn power_traces(m: &CMatrix, k: usize, herm_tol: f64) -> Result<Vec<f64>> {
    if k == 0 {
        return Err(Error::Argument("moment depth must be at least 1".into()));
    }
    let vals = hermitian_eigenvalues(m, herm_tol)?;
    Ok(power_sums(&vals, k))
}
