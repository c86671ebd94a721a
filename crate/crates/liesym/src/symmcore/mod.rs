//! The core constructions: membership in the coincident sets `P = Q = R₀ = R²`,
//! the factorization `g = p·k`, the twisted conjugate action, component
//! dimensions of `R`, transversality, and coset intersections `gK ∩ P`.

mod factor;
mod intersect;
mod membership;

pub use intersect::Su2CosetClass;

use thiserror::Error;

use crate::involution::{SymmetricTriple, TripleError};
use crate::liegroup::{self, AlgebraElement, GroupElement, GroupError};
use crate::numkernel::{self, C64, DenseMatrix, MatrixError};
use crate::tolerance;

/// The three realizations of the symmetric space inside the group: `P` is
/// `exp(𝔭)`, `Q` the twisted-conjugation orbit of the identity, and `R` the
/// set `{g : σ(g) = g⁻¹}`. The first two coincide with the identity component
/// of `R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MembershipSet {
    P,
    Q,
    R,
}

#[derive(Debug, Clone, Error)]
pub enum SymmError {
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("decomposition failed: φ(g) admits no certified square root in P (spectrum {spectrum:?})")]
    DecomposeFailure { spectrum: Vec<C64> },
    #[error("coset intersection sampling supports dim 𝔨 ≤ 2, got {dim_k}")]
    UnsupportedKDimension { dim_k: usize },
    #[error("operation requires the {0} triple")]
    WrongTriple(String),
    #[error("no logarithm certificate available: {0}")]
    NoCertificate(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Triple(#[from] TripleError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// The factorization `g = p·k` with `p ∈ P`, `k ∈ K`, and the logarithm
/// certificate of `p`.
#[derive(Debug, Clone)]
pub struct Decomposition {
    /// The `P`-factor, `p = exp(X)`.
    pub p: GroupElement,
    /// The `K`-factor, fixed by σ.
    pub k: GroupElement,
    /// `X ∈ 𝔭` with `exp(X) = p`.
    pub x: AlgebraElement,
    /// Relative reconstruction residual `‖g − p·k‖ / ‖g‖`.
    pub residual: f64,
}

/// Points of `gK ∩ P` found by sampling, with transversality and count data.
#[derive(Debug, Clone)]
pub struct IntersectionReport {
    pub coset_rep: GroupElement,
    /// Distinct members of `gK ∩ P` found (pairwise further apart than the
    /// distinctness threshold).
    pub points: Vec<GroupElement>,
    /// True when the coset meets `P` transversally at every found point.
    pub transversal: bool,
    /// Sampling can never prove completeness; only closed-form classifiers
    /// set this.
    pub exhaustive: bool,
    /// Points the same sampler finds in `K ∩ P`, the cardinality bound for
    /// cosets with commuting geodesics.
    pub bound_k_cap_p: Option<usize>,
}

/// Membership in `R` together with the dimension `dim ker(dσ + Ad(g))` of the
/// component of `R` through `g`.
#[derive(Debug, Clone)]
pub struct ComponentReport {
    pub g: GroupElement,
    pub in_r: bool,
    /// `dim ker(dσ + Ad(g))`; the dimension of a component of `R` only when
    /// `in_r` is set.
    pub dim: usize,
}

impl ComponentReport {
    /// The kernel dimension measures a component of `R` only at points of `R`.
    pub fn dim_is_component_dimension(&self) -> bool {
        self.in_r
    }
}

/// Sampling controls for [`SymmetricTriple::intersect_coset`].
#[derive(Debug, Clone, Copy)]
pub struct SamplerConfig {
    /// Number of grid candidates over (a fundamental window of) `K`.
    pub grid_points: usize,
    /// Relative residual at which Newton refinement stops.
    pub refine_tol: f64,
    /// Seed reserved for randomized candidate generation; the grid itself is
    /// deterministic.
    pub seed: u64,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        Self { grid_points: 128, refine_tol: 1e-10, seed: 0 }
    }
}

impl SymmetricTriple {
    /// Membership in `R = {g : σ(g) = g⁻¹}`. Never `Indeterminate`.
    pub fn membership_r(&self, g: &GroupElement) -> liegroup::MembershipVerdict {
        let sg = self.sigma(g);
        let inv = g.inverse();
        let residual =
            (sg.matrix() - inv.matrix()).norm() / inv.matrix().norm().max(f64::MIN_POSITIVE);
        if residual <= self.tolerances().membership {
            liegroup::MembershipVerdict::in_with_residual("σ(g) = g⁻¹", residual)
        } else {
            liegroup::MembershipVerdict::out("σ(g) = g⁻¹", residual)
        }
    }

    /// `φ(g) = g·σ(g)⁻¹`, the quotient map onto `P`; its image always lies
    /// in `R`.
    pub fn phi_map(&self, g: &GroupElement) -> GroupElement {
        let sg_inv = self.sigma(g).inverse();
        g * &sg_inv
    }

    /// The twisted conjugate action `τ_g(h) = g·h·σ(g)⁻¹`.
    pub fn twisted_conjugate(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        let sg_inv = self.sigma(g).inverse();
        &(g * h) * &sg_inv
    }

    /// `p·p′·p`, which stays in `P` for `p, p′ ∈ P`.
    pub fn sandwich(&self, p: &GroupElement, p2: &GroupElement) -> Result<GroupElement, SymmError> {
        for (label, q) in [("first", p), ("second", p2)] {
            if !self.membership_p(q).is_in() {
                return Err(SymmError::PreconditionViolation(format!(
                    "sandwich requires both factors in P; the {label} argument is not certified"
                )));
            }
        }
        Ok(&(p * p2) * p)
    }

    /// `exp(tX)`, the `P`-representative of the geodesic `t ↦ exp(tX)·[e]`.
    pub fn geodesic_point(&self, x: &AlgebraElement, t: f64) -> Result<GroupElement, SymmError> {
        let leak = self.project_k(x).norm();
        if leak > tolerance::P_CERTIFICATE {
            return Err(SymmError::PreconditionViolation(format!(
                "geodesic direction must lie in 𝔭 (𝔨-component {leak:.3e})"
            )));
        }
        Ok(x.scale(t).exp())
    }

    /// `dim ker(dσ + Ad(g))`, the dimension of the component of `R` through
    /// `g` whenever `g ∈ R`.
    pub fn component_dim(&self, g: &GroupElement) -> Result<ComponentReport, SymmError> {
        let in_r = self.membership_r(g).is_in();
        let ad = liegroup::adjoint_matrix(g, self.g_basis())?;
        let sum = &ad + self.dsigma_matrix();
        let dim = numkernel::kernel_dim(&sum, self.tolerances().rank);
        Ok(ComponentReport { g: g.clone(), in_r, dim })
    }
}

pub(crate) fn rel_residual(a: &DenseMatrix, b: &DenseMatrix) -> f64 {
    (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
}
