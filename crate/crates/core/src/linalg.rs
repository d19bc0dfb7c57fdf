//! Dense complex matrices and vectors.
//!
//! Everything in this crate lives in dimensions of at most a few hundred, so
//! matrices are plain row-major buffers. Hermitian eigen-decompositions are
//! delegated to `nalgebra`.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };
pub const I: C64 = C64 { re: 0.0, im: 1.0 };

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// `<u|v>`, antilinear in the first argument.
pub fn inner(u: &[C64], v: &[C64]) -> C64 {
    debug_assert_eq!(u.len(), v.len());
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn norm_sqr(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

pub fn norm(v: &[C64]) -> f64 {
    norm_sqr(v).sqrt()
}

pub fn scale(v: &[C64], s: C64) -> Vec<C64> {
    v.iter().map(|z| z * s).collect()
}

/// Canonical basis vector `e_k` of `C^d`.
pub fn basis_vector(d: usize, k: usize) -> Vec<C64> {
    let mut v = vec![ZERO; d];
    v[k] = ONE;
    v
}

/// Kronecker product of two vectors, first factor outer.
pub fn tensor_vec(a: &[C64], b: &[C64]) -> Vec<C64> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(d: usize) -> Self {
        let mut m = Self::zeros(d, d);
        for k in 0..d {
            m[(k, k)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for col in 0..cols {
                data.push(f(r, col));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds from row-major entries; fails if the length is not `rows * cols`.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::LengthMismatch { expected: rows * cols, actual: data.len() });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let r = rows.len();
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::LengthMismatch { expected: cols, actual: row.len() });
            }
            data.extend_from_slice(row);
        }
        Ok(Self { rows: r, cols, data })
    }

    /// Matrix whose columns are the given vectors (all of length `dim`).
    pub fn from_columns(dim: usize, columns: &[Vec<C64>]) -> Self {
        Self::from_fn(dim, columns.len(), |r, col| columns[col][r])
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (k, &x) in diag.iter().enumerate() {
            m[(k, k)] = re(x);
        }
        m
    }

    /// `|u><v|`
    pub fn outer(u: &[C64], v: &[C64]) -> Self {
        Self::from_fn(u.len(), v.len(), |r, col| u[r] * v[col].conj())
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

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[C64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, col: usize) -> Vec<C64> {
        (0..self.rows).map(|r| self[(r, col)]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<C64>> {
        (0..self.cols).map(|col| self.column(col)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<C64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, col| self[(col, r)].conj())
    }

    pub fn scaled(&self, s: C64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|k| self[(k, k)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max |a_jk - conj(a_kj)|`; infinite for non-square input.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut dev = 0.0_f64;
        for j in 0..self.rows {
            for k in j..self.cols {
                dev = dev.max((self[(j, k)] - self[(k, j)].conj()).norm());
            }
        }
        dev
    }

    /// `||U^dag U - I||_F`; infinite for non-square input.
    pub fn unitarity_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        (&self.adjoint().matmul(self) - &Self::identity(self.rows)).frobenius_norm()
    }

    pub fn first_non_finite(&self) -> Option<(usize, usize)> {
        self.data
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
            .map(|p| (p / self.cols, p % self.cols))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == ZERO {
                    continue;
                }
                let src = other.row(k);
                let dst = &mut out.data[r * other.cols..(r + 1) * other.cols];
                for (o, b) in dst.iter_mut().zip(src) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len(), "apply shape mismatch");
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `<u|A|v>`
    pub fn sandwich(&self, u: &[C64], v: &[C64]) -> C64 {
        inner(u, &self.apply(v))
    }

    /// Kronecker product; `(a⊗b)_{(i,k),(j,l)} = a_ij b_kl`.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        Self::from_fn(rows, cols, |r, col| {
            self[(r / other.rows, col / other.cols)] * other[(r % other.rows, col % other.cols)]
        })
    }

    /// Embeds `self` in the top-left block of a zero matrix enlarged by `extra`.
    pub fn pad_zero(&self, extra: usize) -> Self {
        let mut out = Self::zeros(self.rows + extra, self.cols + extra);
        for r in 0..self.rows {
            for col in 0..self.cols {
                out[(r, col)] = self[(r, col)];
            }
        }
        out
    }

    /// Eigen-decomposition of a Hermitian matrix. Eigenvalues ascending; the
    /// returned matrix holds the matching unit eigenvectors as columns.
    pub fn hermitian_eigen(&self) -> Result<(Vec<f64>, ComplexMatrix)> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        // Symmetrize so tiny asymmetries do not leak into the solver.
        let m = DMatrix::from_fn(n, n, |r, col| 0.5 * (self[(r, col)] + self[(col, r)].conj()));
        let eig = m.symmetric_eigen();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        let vectors = ComplexMatrix::from_fn(n, n, |r, col| eig.eigenvectors[(r, order[col])]);
        Ok((values, vectors))
    }

    pub fn hermitian_eigenvalues(&self) -> Result<Vec<f64>> {
        self.hermitian_eigen().map(|(v, _)| v)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    #[inline]
    fn index(&self, (r, col): (usize, usize)) -> &C64 {
        &self.data[r * self.cols + col]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (r, col): (usize, usize)) -> &mut C64 {
        &mut self.data[r * self.cols + col]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sub shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

/// Kronecker product of two matrices.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kron(b)
}

/// `{"re": r, "im": i}` on the wire.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JsonComplex {
    pub re: f64,
    pub im: f64,
}

impl From<C64> for JsonComplex {
    fn from(z: C64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<JsonComplex> for C64 {
    fn from(z: JsonComplex) -> Self {
        C64::new(z.re, z.im)
    }
}


pub(crate) fn vec_from_json(v: &[JsonComplex]) -> Vec<C64> {
    v.iter().copied().map(C64::from).collect()
}
