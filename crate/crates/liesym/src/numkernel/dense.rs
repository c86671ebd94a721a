//! The validated dense matrix wrapper.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{C64, CMat, MatrixError};

/// Dense matrix with complex entries and a flag recording the ground field.
///
/// Constructed values always have finite entries. Real matrices carry zero
/// imaginary parts; operations that stay over ℝ re-collapse tiny imaginary
/// round-off on output.
#[derive(Clone, PartialEq)]
pub struct DenseMatrix {
    data: CMat,
    real: bool,
}

impl DenseMatrix {
    /// Builds a real matrix from row-major entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self, MatrixError> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(MatrixError::ShapeMismatch(format!(
                "expected {rows}x{cols} = {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(MatrixError::NonFinite);
        }
        let data = CMat::from_fn(rows, cols, |i, j| C64::new(entries[i * cols + j], 0.0));
        Ok(Self { data, real: true })
    }

    /// Builds a complex matrix from row-major entries.
    pub fn from_complex(rows: usize, cols: usize, entries: &[C64]) -> Result<Self, MatrixError> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(MatrixError::ShapeMismatch(format!(
                "expected {rows}x{cols} = {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(MatrixError::NonFinite);
        }
        let data = CMat::from_fn(rows, cols, |i, j| entries[i * cols + j]);
        Ok(Self { data, real: false }.collapsed())
    }

    /// Identity matrix over the reals.
    pub fn identity(n: usize) -> Self {
        Self { data: CMat::identity(n, n), real: true }
    }

    /// Zero matrix over the reals.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { data: CMat::zeros(rows, cols), real: true }
    }

    /// Real diagonal matrix.
    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let data = CMat::from_fn(n, n, |i, j| {
            if i == j { C64::new(diag[i], 0.0) } else { C64::new(0.0, 0.0) }
        });
        Self { data, real: true }
    }

    /// Wraps raw data, collapsing to the real field when `real_hint` is set
    /// and every imaginary part is at or below the collapse threshold.
    pub(crate) fn from_raw(data: CMat, real_hint: bool) -> Self {
        let m = Self { data, real: real_hint };
        if real_hint { m.collapsed() } else { m }
    }

    fn collapsed(mut self) -> Self {
        let thresh = super::collapse_threshold();
        let max_im = self.data.iter().map(|z| z.im.abs()).fold(0.0f64, f64::max);
        if max_im <= thresh {
            for z in self.data.iter_mut() {
                z.im = 0.0;
            }
            self.real = true;
        } else {
            self.real = false;
        }
        self
    }

    pub fn rows(&self) -> usize {
        self.data.nrows()
    }

    pub fn cols(&self) -> usize {
        self.data.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    /// True when the matrix lives over the real ground field.
    pub fn is_real(&self) -> bool {
        self.real
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[(i, j)]
    }

    /// Borrow the underlying complex storage.
    pub fn raw(&self) -> &CMat {
        &self.data
    }

    pub(crate) fn require_square(&self) -> Result<(), MatrixError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(MatrixError::NotSquare { rows: self.rows(), cols: self.cols() })
        }
    }

    pub fn transpose(&self) -> Self {
        Self { data: self.data.transpose(), real: self.real }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self { data: self.data.adjoint(), real: self.real }
    }

    pub fn conjugate(&self) -> Self {
        Self { data: self.data.map(|z| z.conj()), real: self.real }
    }

    pub fn inverse(&self) -> Result<Self, MatrixError> {
        self.require_square()?;
        self.data
            .clone()
            .try_inverse()
            .map(|inv| Self::from_raw(inv, self.real))
            .ok_or(MatrixError::Singular)
    }

    pub fn determinant(&self) -> Result<C64, MatrixError> {
        self.require_square()?;
        Ok(self.data.determinant())
    }

    pub fn trace(&self) -> C64 {
        self.data.diagonal().sum()
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.data.norm()
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self::from_raw(&self.data * factor, self.real && factor.im == 0.0)
    }

    /// Real part of the Frobenius inner product `tr(self* · other)`.
    pub fn inner(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a.conj() * b).re)
            .sum()
    }

    /// Max imaginary magnitude over all entries.
    pub fn max_imag(&self) -> f64 {
        self.data.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DenseMatrix({}x{}, {})", self.rows(), self.cols(), if self.real { "real" } else { "complex" })?;
        for i in 0..self.rows() {
            write!(f, "\n  [")?;
            for j in 0..self.cols() {
                let z = self.data[(i, j)];
                if j > 0 {
                    write!(f, ", ")?;
                }
                if self.real {
                    write!(f, "{:.6}", z.re)?;
                } else {
                    write!(f, "{:.6}{:+.6}i", z.re, z.im)?;
                }
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

impl Mul for &DenseMatrix {
    type Output = DenseMatrix;
    fn mul(self, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols(), rhs.rows(), "dimension mismatch in matrix product");
        DenseMatrix::from_raw(&self.data * &rhs.data, self.real && rhs.real)
    }
}

impl Add for &DenseMatrix {
    type Output = DenseMatrix;
    fn add(self, rhs: &DenseMatrix) -> DenseMatrix {
        DenseMatrix::from_raw(&self.data + &rhs.data, self.real && rhs.real)
    }
}

impl Sub for &DenseMatrix {
    type Output = DenseMatrix;
    fn sub(self, rhs: &DenseMatrix) -> DenseMatrix {
        DenseMatrix::from_raw(&self.data - &rhs.data, self.real && rhs.real)
    }
}

impl Neg for &DenseMatrix {
    type Output = DenseMatrix;
    fn neg(self) -> DenseMatrix {
        DenseMatrix::from_raw(-&self.data, self.real)
    }
}
