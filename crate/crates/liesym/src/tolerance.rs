//! The single tolerance policy used across the crate.
//!
//! All comparisons are relative to the norm of the quantity being tested;
//! the constants below are the shipped defaults and every membership-style
//! operation accepts a [`Tolerances`] override.

/// Group membership, set membership (P/Q/R) and factorization residuals.
pub const MEMBERSHIP: f64 = 1e-8;

/// Numerical rank decisions (kernel dimension, transversality).
pub const RANK: f64 = 1e-8;

/// Kernel arithmetic: exp/log round trips and other internal iterations.
pub const KERNEL: f64 = 1e-12;

/// Linear defining relations of Lie algebra elements.
pub const ALGEBRA: f64 = 1e-10;

/// Residual allowed when checking `[𝔨,𝔨]⊂𝔨`, `[𝔨,𝔭]⊂𝔭`, `[𝔭,𝔭]⊂𝔨`.
pub const BRACKET_CLOSURE: f64 = 1e-9;

/// Maximum 𝔨-component of a logarithm certificate for membership in P.
pub const P_CERTIFICATE: f64 = 1e-9;

/// Intersection points closer than this are treated as duplicates.
pub const DISTINCT_POINTS: f64 = 1e-6;

/// Imaginary parts at or below this collapse to the real ground field.
pub const REAL_COLLAPSE: f64 = 1e-10;

/// Width of the band around the eigenvalue −1 on which the spectral
/// logarithm of a normal matrix refuses to pick a branch.
pub const MINUS_ONE_BAND: f64 = 1e-10;

/// |a| threshold separating generic from antipodal cosets in SU(2)/SO(2).
pub const SU2_GENERIC_A: f64 = 1e-8;

/// Tolerances that callers may override per operation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative residual for membership verdicts and factorizations.
    pub membership: f64,
    /// Relative threshold for numerical rank decisions.
    pub rank: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { membership: MEMBERSHIP, rank: RANK }
    }
}

impl Tolerances {
    /// Uses `tol` for both membership and rank decisions.
    pub fn uniform(tol: f64) -> Self {
        Self { membership: tol, rank: tol }
    }
}
