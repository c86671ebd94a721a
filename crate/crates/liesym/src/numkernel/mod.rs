//! Dense matrix primitives over real and complex scalars.
//!
//! Everything upstream needs is here: the exponential, two logarithms with an
//! explicit branch policy, the square root built from them, and SVD-based
//! numerical rank. Complex entries are the universal representation; a flag
//! records whether the matrix lives over the reals, and outputs whose
//! imaginary parts fall below [`tolerance::REAL_COLLAPSE`] collapse back to
//! the real ground field.

mod dense;
mod eig;
mod expm;
mod logm;

pub use dense::DenseMatrix;

use nalgebra::{Complex, DMatrix};
use thiserror::Error;

use crate::tolerance;

pub(crate) type C64 = Complex<f64>;
pub(crate) type CMat = DMatrix<C64>;

/// Which matrix logarithm to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchPolicy {
    /// Inverse-scaling-and-squaring principal logarithm. Fails when any
    /// eigenvalue lies on the closed negative real axis.
    Principal,
    /// For matrices normal to tolerance: unitary diagonalization and an
    /// eigenvalue-wise principal-branch logarithm. Fails only on an
    /// eigenvalue within [`tolerance::MINUS_ONE_BAND`] of −1.
    NormalSpectral,
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum MatrixError {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix entries must be finite")]
    NonFinite,
    #[error("matrix is singular to working precision")]
    Singular,
    #[error("no logarithm on the requested branch: eigenvalue {eigenvalue} obstructs it")]
    NoLogarithm { eigenvalue: C64 },
    #[error("no square root: both logarithm policies failed on spectrum {spectrum:?}")]
    NoSquareRoot { spectrum: Vec<C64> },
    #[error("{algorithm} did not converge")]
    NoConvergence { algorithm: &'static str },
    #[error("matrix is not normal to tolerance (commutator residual {residual:.3e})")]
    NotNormal { residual: f64 },
}

/// Matrix exponential via scaling-and-squaring with diagonal Padé cores.
///
/// Relative accuracy is near machine precision for well-conditioned inputs
/// of moderate norm.
pub fn mat_exp(a: &DenseMatrix) -> Result<DenseMatrix, MatrixError> {
    a.require_square()?;
    let out = expm::expm(a.raw());
    Ok(DenseMatrix::from_raw(out, a.is_real()))
}

/// Matrix logarithm under the given [`BranchPolicy`].
///
/// Both policies guarantee `‖exp(log M) − M‖ ≤ 1e-9·‖M‖` on success.
pub fn mat_log(m: &DenseMatrix, policy: BranchPolicy) -> Result<DenseMatrix, MatrixError> {
    m.require_square()?;
    let out = match policy {
        BranchPolicy::Principal => logm::log_principal(m.raw())?,
        BranchPolicy::NormalSpectral => logm::log_normal_spectral(m.raw())?,
    };
    Ok(DenseMatrix::from_raw(out, m.is_real()))
}

/// Principal-flavored matrix square root: `exp(½·log M)` with the Principal
/// policy first and NormalSpectral as fallback.
pub fn mat_sqrt(m: &DenseMatrix) -> Result<DenseMatrix, MatrixError> {
    m.require_square()?;
    let log = logm::log_principal(m.raw())
        .or_else(|_| logm::log_normal_spectral(m.raw()))
        .map_err(|_| MatrixError::NoSquareRoot {
            spectrum: eig::eigenvalues(m.raw()).unwrap_or_default(),
        })?;
    let s = expm::expm(&(log * C64::new(0.5, 0.0)));
    let resid = (&s * &s - m.raw()).norm() / m.raw().norm().max(f64::MIN_POSITIVE);
    if resid > 1e-8 {
        return Err(MatrixError::NoSquareRoot {
            spectrum: eig::eigenvalues(m.raw()).unwrap_or_default(),
        });
    }
    Ok(DenseMatrix::from_raw(s, m.is_real()))
}

/// Number of singular values at or below `tol_rel` times the largest one
/// (or times 1 when the matrix is zero), from a full SVD.
pub fn kernel_dim(m: &DenseMatrix, tol_rel: f64) -> usize {
    let sv = singular_values(m);
    let scale = sv.iter().cloned().fold(0.0f64, f64::max);
    let scale = if scale == 0.0 { 1.0 } else { scale };
    sv.iter().filter(|&&s| s <= tol_rel * scale).count()
}

/// Numerical rank at relative tolerance `tol_rel`.
pub fn rank(m: &DenseMatrix, tol_rel: f64) -> usize {
    m.rows().min(m.cols()) - kernel_dim(m, tol_rel)
}

/// All singular values, descending.
pub fn singular_values(m: &DenseMatrix) -> Vec<f64> {
    singular_values_raw(m.raw())
}

pub(crate) fn singular_values_raw(m: &CMat) -> Vec<f64> {
    // nalgebra's bidiagonal SVD almost always converges at these sizes; the
    // Hermitian eigenproblem for M*M is the globally convergent fallback.
    if let Some(svd) = m.clone().try_svd(false, false, f64::EPSILON, 100_000) {
        let mut sv: Vec<f64> = svd.singular_values.iter().cloned().collect();
        sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
        return sv;
    }
    let gram = m.adjoint() * m;
    let eig = nalgebra::SymmetricEigen::new(gram);
    let mut sv: Vec<f64> = eig.eigenvalues.iter().map(|l| l.max(0.0).sqrt()).collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    sv
}

/// Eigenvalues of a general square matrix, unordered.
pub fn eigenvalues(m: &DenseMatrix) -> Result<Vec<C64>, MatrixError> {
    m.require_square()?;
    eig::eigenvalues(m.raw())
}

pub(crate) fn collapse_threshold() -> f64 {
    tolerance::REAL_COLLAPSE
}

pub(crate) fn expm_raw(a: &CMat) -> CMat {
    expm::expm(a)
}

pub(crate) fn diagonalize_normal_raw(m: &CMat) -> Result<(CMat, Vec<C64>), MatrixError> {
    eig::diagonalize_normal(m)
}
