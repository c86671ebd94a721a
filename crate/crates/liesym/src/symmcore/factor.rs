//! The Cartan-type factorization `g = p·k`.
//!
//! The construction is the compact-case identity run backwards: `φ(g) = p²`,
//! so `p` is the certified square root of `φ(g)` in `P` and `k = p⁻¹g` is
//! automatically fixed by σ. The failure set is exactly where `φ(g)` loses
//! its logarithm certificate (an eigenvalue pinned at −1), which has measure
//! zero.

use crate::involution::SymmetricTriple;
use crate::liegroup::GroupElement;
use crate::numkernel;
use crate::symmcore::{rel_residual, Decomposition, SymmError};

impl SymmetricTriple {
    /// Factors `g = p·k` with `p ∈ P` and `σ(k) = k`, returning the logarithm
    /// certificate of `p` and the reconstruction residual.
    pub fn decompose(&self, g: &GroupElement) -> Result<Decomposition, SymmError> {
        let q = self.phi_map(g);
        let (p, half) = self.sqrt_in_p(&q).map_err(|err| match err {
            SymmError::NoCertificate(_) | SymmError::PreconditionViolation(_) => {
                SymmError::DecomposeFailure {
                    spectrum: numkernel::eigenvalues(q.matrix()).unwrap_or_default(),
                }
            }
            other => other,
        })?;
        let k = &p.inverse() * g;
        let residual = rel_residual(&(p.matrix() * k.matrix()), g.matrix());
        let sigma_k_residual = rel_residual(self.sigma(&k).matrix(), k.matrix());
        let tol = self.tolerances().membership;
        if residual > tol || sigma_k_residual > tol {
            return Err(SymmError::DecomposeFailure {
                spectrum: numkernel::eigenvalues(q.matrix()).unwrap_or_default(),
            });
        }
        Ok(Decomposition { p, k, x: half, residual })
    }
}
