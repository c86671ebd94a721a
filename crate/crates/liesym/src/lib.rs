//! Numerical realizations of Riemannian symmetric spaces inside matrix Lie groups.
//!
//! Given a connected matrix group `G` with an involutive automorphism `σ` and
//! fixed-point subgroup `K`, the symmetric space `G/K` embeds in `G` as the
//! closed submanifold `P = exp(𝔭)`, where `𝔭` is the (−1)-eigenspace of `dσ`.
//! This crate computes with that embedding on the classical groups SL(n,ℝ),
//! SU(n), SO(n) and SO(p,q):
//!
//! - eigenspace splits `𝔤 = 𝔨 ⊕ 𝔭` for a catalog of involutions,
//! - membership tests for the coincident sets `P = Q = R₀ = R²` with
//!   logarithm certificates,
//! - the Cartan-type factorization `g = p·k` generalizing the polar
//!   decomposition,
//! - dimensions of the components of `R = {g : σ(g) = g⁻¹}` via
//!   `dim ker(dσ + Ad(g))`,
//! - coset/submanifold intersections `gK ∩ P`, transversality tests, and the
//!   full closed-form classification for SU(2)/SO(2),
//! - seeded randomized suites that re-verify these facts and emit
//!   reproducible JSON reports.
//!
//! Start with the runnable programs under `examples/`, one per capability.
//! The `liesym` binary exposes the same operations as a JSON-reporting CLI.

pub mod cli;
pub mod involution;
pub mod liegroup;
pub mod numkernel;
pub mod symmcore;
pub mod tolerance;
pub mod verify;

pub use involution::{Involution, InvolutionKind, SymmetricTriple, TripleError};
pub use liegroup::{
    AlgebraBasis, AlgebraElement, GroupElement, GroupError, GroupFamily, GroupSpec,
    MembershipVerdict, Verdict, Witness,
};
pub use numkernel::{BranchPolicy, DenseMatrix, MatrixError};
pub use symmcore::{
    ComponentReport, Decomposition, IntersectionReport, MembershipSet, SamplerConfig,
    Su2CosetClass, SymmError,
};
pub use verify::{SuiteConfig, SuiteKind, SuiteReport};
