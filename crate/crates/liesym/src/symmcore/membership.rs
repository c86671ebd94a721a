//! Tiered membership in `P = exp(𝔭)`.
//!
//! Deciding which component of `R` an element belongs to is not constructive
//! in general, so the decision is layered: an exact characterization where one
//! exists (symmetric positive-definite matrices for SL(n,ℝ) under transpose-
//! inverse), then logarithm certificates, then — on the compact families — a
//! Gauss–Newton search over `𝔭`-coordinates. An element none of the tiers can
//! certify is reported `Indeterminate`, never guessed.

use nalgebra::{DMatrix, DVector};

use crate::involution::SymmetricTriple;
use crate::liegroup::{
    AlgebraElement, GroupElement, GroupFamily, MembershipVerdict, Verdict, Witness,
};
use crate::numkernel::{self, expm_raw, C64, CMat, DenseMatrix};
use crate::symmcore::{rel_residual, MembershipSet, SymmError};
use crate::tolerance;
use crate::InvolutionKind;

impl SymmetricTriple {
    /// Membership in `P = exp(𝔭)`, with a logarithm certificate on success.
    pub fn membership_p(&self, g: &GroupElement) -> MembershipVerdict {
        let mut trail: Vec<String> = Vec::new();

        // P ⊂ R, so failing the R-test settles the question.
        let r = self.membership_r(g);
        if !r.is_in() {
            let residual = match r.witness {
                Witness::Residual { residual, .. } => residual,
                _ => f64::NAN,
            };
            return MembershipVerdict {
                verdict: Verdict::Out,
                witness: Witness::Residual { relation: "σ(g) = g⁻¹ (P ⊂ R)".into(), residual },
            };
        }

        // Exact form: for SL(n,ℝ) under transpose-inverse, P is precisely the
        // symmetric positive-definite slice.
        if self.spec().family() == GroupFamily::SpecialLinearReal
            && self.involution().kind() == InvolutionKind::TransposeInverse
        {
            return self.membership_p_spd(g);
        }

        // Logarithm certificates: principal, then normal-spectral.
        if let Ok(x) = self.certificate_from_logs(g, &mut trail) {
            return MembershipVerdict { verdict: Verdict::In, witness: Witness::LogCertificate(x) };
        }

        // Square-root/Newton refinement only helps on the compact families,
        // where group elements are normal matrices.
        let compact = matches!(
            self.spec().family(),
            GroupFamily::SpecialUnitary | GroupFamily::SpecialOrthogonal
        );
        if compact {
            if let Some(x) = self.certificate_from_newton(g, &mut trail) {
                return MembershipVerdict { verdict: Verdict::In, witness: Witness::LogCertificate(x) };
            }
        } else {
            trail.push("p-coordinate refinement skipped: non-compact family".into());
        }

        MembershipVerdict {
            verdict: Verdict::Indeterminate,
            witness: Witness::Failure { reason: trail.join("; ") },
        }
    }

    /// Membership in `Q = {g·σ(g)⁻¹}`. The sets coincide (`Q = P`), and a
    /// `P`-certificate `X` converts to the `Q`-witness `h = exp(X/2)` with
    /// `φ(h) = g`.
    pub fn membership_q(&self, g: &GroupElement) -> MembershipVerdict {
        self.membership_p(g)
    }

    /// Membership in the requested realization of the symmetric space.
    pub fn membership(&self, set: MembershipSet, g: &GroupElement) -> MembershipVerdict {
        match set {
            MembershipSet::P => self.membership_p(g),
            MembershipSet::Q => self.membership_q(g),
            MembershipSet::R => self.membership_r(g),
        }
    }

    fn membership_p_spd(&self, g: &GroupElement) -> MembershipVerdict {
        let m = g.matrix();
        let sym_resid = (&m.transpose() - m).norm() / m.norm().max(1.0);
        if sym_resid > self.tolerances().membership {
            return MembershipVerdict {
                verdict: Verdict::Out,
                witness: Witness::Residual { relation: "g = gᵀ".into(), residual: sym_resid },
            };
        }
        let eig = nalgebra::SymmetricEigen::new(m.raw().clone());
        let min_eig = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
        if min_eig <= 0.0 {
            return MembershipVerdict {
                verdict: Verdict::Out,
                witness: Witness::Residual {
                    relation: "g positive-definite".into(),
                    residual: -min_eig,
                },
            };
        }
        // Logs of SPD matrices always exist and are symmetric traceless. The
        // spectral route is exact even for extreme condition numbers, so try
        // it first and fall back to the principal iteration.
        let log = numkernel::mat_log(m, numkernel::BranchPolicy::NormalSpectral)
            .or_else(|_| numkernel::mat_log(m, numkernel::BranchPolicy::Principal));
        match log.map_err(|e| e.to_string()).and_then(|xm| {
            AlgebraElement::new(self.spec(), xm).map_err(|e| e.to_string())
        }) {
            Ok(x) => MembershipVerdict { verdict: Verdict::In, witness: Witness::LogCertificate(x) },
            // SPD membership is certain, but In must carry a certificate.
            Err(reason) => MembershipVerdict {
                verdict: Verdict::Indeterminate,
                witness: Witness::Failure {
                    reason: format!("element is symmetric positive-definite but no certificate was computed: {reason}"),
                },
            },
        }
    }

    fn certificate_from_logs(
        &self,
        g: &GroupElement,
        trail: &mut Vec<String>,
    ) -> Result<AlgebraElement, ()> {
        for policy in [numkernel::BranchPolicy::Principal, numkernel::BranchPolicy::NormalSpectral] {
            match numkernel::mat_log(g.matrix(), policy) {
                Ok(xm) => match self.certify(g, xm) {
                    Ok(x) => return Ok(x),
                    Err(reason) => trail.push(format!("{policy:?} log: {reason}")),
                },
                Err(err) => trail.push(format!("{policy:?} log: {err}")),
            }
        }
        Err(())
    }

    /// Validates a candidate logarithm as a `P`-certificate: it must lie in
    /// the algebra, have a negligible `𝔨`-component, and reproduce `g`.
    fn certify(&self, g: &GroupElement, xm: DenseMatrix) -> Result<AlgebraElement, String> {
        let x = AlgebraElement::new(self.spec(), xm)
            .map_err(|e| format!("logarithm is outside 𝔤 ({e})"))?;
        let k_part = self.project_k(&x).norm();
        if k_part > tolerance::P_CERTIFICATE {
            return Err(format!("logarithm has 𝔨-component {k_part:.3e}"));
        }
        let resid = rel_residual(x.exp().matrix(), g.matrix());
        if resid > self.tolerances().membership {
            return Err(format!("exp(X) misses g by {resid:.3e}"));
        }
        Ok(x)
    }

    /// Gauss–Newton over `𝔭`-coordinates minimizing `‖exp(X) − g‖`, seeded
    /// from branch-balanced spectral logarithms. Only sound to attempt on
    /// normal matrices, i.e. the compact families.
    fn certificate_from_newton(
        &self,
        g: &GroupElement,
        trail: &mut Vec<String>,
    ) -> Option<AlgebraElement> {
        let mut inits: Vec<AlgebraElement> = Vec::new();
        match balanced_spectral_log(g.matrix().raw()) {
            Ok(x0) => {
                let projected = self.project_onto_p(&x0);
                inits.push(projected);
            }
            Err(reason) => trail.push(format!("spectral initializer: {reason}")),
        }
        // A couple of seeded perturbations rescue stalled searches.
        let base = inits.first().cloned();
        for seed in 0..2u64 {
            let noise = self.random_p(0xA11CE + seed, 0.05);
            match &base {
                Some(b) => inits.push(b.add(&noise)),
                None => inits.push(noise),
            }
        }

        for (idx, x0) in inits.iter().enumerate() {
            match self.gauss_newton_p(g, x0) {
                Ok(x) => match self.certify(g, x.matrix().clone()) {
                    Ok(cert) => return Some(cert),
                    Err(reason) => trail.push(format!("refined candidate {idx}: {reason}")),
                },
                Err(reason) => trail.push(format!("refinement from init {idx}: {reason}")),
            }
        }
        None
    }

    /// Orthogonal projection of an arbitrary matrix onto the span of the
    /// `𝔭`-basis under `Re tr(X*Y)`.
    fn project_onto_p(&self, raw: &CMat) -> AlgebraElement {
        let x = DenseMatrix::from_raw(raw.clone(), self.spec().is_real());
        let coords: Vec<f64> =
            self.p_basis().vectors().iter().map(|v| v.matrix().inner(&x)).collect();
        self.p_basis().combination(&coords).expect("coordinate count matches")
    }

    fn gauss_newton_p(
        &self,
        g: &GroupElement,
        x0: &AlgebraElement,
    ) -> Result<AlgebraElement, String> {
        let dim = self.dim_p();
        if dim == 0 {
            return Err("𝔭 is trivial".into());
        }
        let n = self.spec().n();
        let mut coords = self
            .p_basis()
            .coordinates(x0)
            .map_err(|e| format!("initializer has no 𝔭-coordinates ({e})"))?;
        let gm = g.matrix().raw();
        let gnorm = gm.norm().max(f64::MIN_POSITIVE);

        let eval = |c: &[f64]| -> (AlgebraElement, CMat, f64) {
            let x = self.p_basis().combination(c).expect("dimension matches");
            let e = expm_raw(x.matrix().raw());
            let resid = (&e - gm).norm() / gnorm;
            (x, e, resid)
        };

        let (mut x, mut e, mut resid) = eval(&coords);
        for _ in 0..60 {
            if resid <= 1e-12 {
                break;
            }
            // Jacobian of exp at X along each 𝔭 direction, by the block trick
            // exp([[X,H],[0,X]]) = [[e^X, L(X,H)],[0, e^X]].
            let mut jac = DMatrix::<f64>::zeros(2 * n * n, dim);
            for (col, basis_vec) in self.p_basis().vectors().iter().enumerate() {
                let l = frechet_exp(x.matrix().raw(), basis_vec.matrix().raw());
                for (row, z) in l.iter().enumerate() {
                    jac[(row, col)] = z.re;
                    jac[(row + n * n, col)] = z.im;
                }
            }
            let mut rhs = DVector::<f64>::zeros(2 * n * n);
            let diff = gm - &e;
            for (row, z) in diff.iter().enumerate() {
                rhs[row] = z.re;
                rhs[row + n * n] = z.im;
            }
            let step = jac
                .svd(true, true)
                .solve(&rhs, 1e-14)
                .map_err(|e| format!("least-squares step failed: {e}"))?;

            // Backtracking keeps the iteration from overshooting the fiber.
            let mut accepted = false;
            let mut t = 1.0;
            for _ in 0..8 {
                let trial: Vec<f64> =
                    coords.iter().zip(step.iter()).map(|(c, s)| c + t * s).collect();
                let (tx, te, tresid) = eval(&trial);
                if tresid < resid {
                    coords = trial;
                    x = tx;
                    e = te;
                    resid = tresid;
                    accepted = true;
                    break;
                }
                t *= 0.5;
            }
            if !accepted {
                break;
            }
        }

        if resid <= self.tolerances().membership {
            Ok(x)
        } else {
            Err(format!("stalled at relative residual {resid:.3e}"))
        }
    }

    /// The square root of `q ∈ P` staying inside `P`: halves the logarithm
    /// certificate, so `p = exp(X/2)` with `p² = q`.
    pub fn sqrt_in_p(&self, q: &GroupElement) -> Result<(GroupElement, AlgebraElement), SymmError> {
        let verdict = self.membership_p(q);
        match verdict.verdict {
            Verdict::In => {}
            Verdict::Out => {
                return Err(SymmError::PreconditionViolation(
                    "sqrt_in_p requires membership in P; element is Out".into(),
                ))
            }
            Verdict::Indeterminate => {
                let reason = match verdict.witness {
                    Witness::Failure { reason } => reason,
                    _ => "membership indeterminate".into(),
                };
                return Err(SymmError::NoCertificate(reason));
            }
        }
        let x = verdict
            .certificate()
            .cloned()
            .ok_or_else(|| SymmError::NoCertificate("verdict carried no certificate".into()))?;
        let half = x.scale(0.5);
        Ok((half.exp(), half))
    }
}

/// A logarithm of a normal matrix whose eigenvalue branches are shifted by
/// multiples of 2πi until the trace vanishes, the natural initializer for
/// determinant-one groups. Eigenvalues pinned at −1 alternate between ±iπ.
fn balanced_spectral_log(m: &CMat) -> Result<CMat, String> {
    let (u, eigs) = numkernel::diagonalize_normal_raw(m).map_err(|e| e.to_string())?;
    let scale = eigs.iter().map(|l| l.norm()).fold(0.0f64, f64::max);
    let mut logs: Vec<C64> = Vec::with_capacity(eigs.len());
    let mut minus_one_toggle = false;
    for l in &eigs {
        if l.norm() <= 1e-14 * scale.max(f64::MIN_POSITIVE) {
            return Err("singular eigenvalue".into());
        }
        if (l + C64::new(1.0, 0.0)).norm() <= 1e-8 {
            // No principal branch at −1: alternate ±iπ to keep the trace small.
            let sign = if minus_one_toggle { -1.0 } else { 1.0 };
            minus_one_toggle = !minus_one_toggle;
            logs.push(C64::new(0.0, sign * std::f64::consts::PI));
        } else {
            logs.push(l.ln());
        }
    }
    // det = 1 forces Σ log λ ∈ 2πi·ℤ; shift the largest-argument branches
    // until the sum vanishes.
    let tau = std::f64::consts::TAU;
    for _ in 0..eigs.len() + 2 {
        let total: f64 = logs.iter().map(|z| z.im).sum();
        let winding = (total / tau).round();
        if winding == 0.0 {
            break;
        }
        let dir = -winding.signum();
        let pick = logs
            .iter()
            .enumerate()
            .max_by(|(_, a), (_, b)| {
                (a.im * -dir).partial_cmp(&(b.im * -dir)).unwrap()
            })
            .map(|(i, _)| i)
            .unwrap();
        logs[pick].im += dir * tau;
    }

    let diag = CMat::from_diagonal(&DVector::from_vec(logs));
    Ok(&u * diag * u.adjoint())
}

/// Fréchet derivative of exp at `x` in direction `h` via the 2n×2n block
/// exponential.
fn frechet_exp(x: &CMat, h: &CMat) -> CMat {
    let n = x.nrows();
    let mut block = CMat::zeros(2 * n, 2 * n);
    block.view_mut((0, 0), (n, n)).copy_from(x);
    block.view_mut((0, n), (n, n)).copy_from(h);
    block.view_mut((n, n), (n, n)).copy_from(x);
    let e = expm_raw(&block);
    e.view((0, n), (n, n)).into_owned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::involution::catalog;

    #[test]
    fn sl2_minus_identity_is_in_r_but_out_of_p() {
        let triple = catalog::sl2();
        let minus_i =
            GroupElement::new(triple.spec(), DenseMatrix::from_diagonal(&[-1.0, -1.0])).unwrap();
        assert!(triple.membership_r(&minus_i).is_in());
        let verdict = triple.membership_p(&minus_i);
        assert_eq!(verdict.verdict, Verdict::Out);
        match verdict.witness {
            Witness::Residual { relation, .. } => assert!(relation.contains("positive-definite")),
            other => panic!("expected a residual witness, got {other:?}"),
        }
    }

    #[test]
    fn exp_of_p_elements_is_certified_in_p() {
        for triple in catalog::all() {
            for seed in 0..10 {
                let x = triple.random_p(seed, 1.0);
                let g = x.exp();
                let verdict = triple.membership_p(&g);
                assert!(verdict.is_in(), "{} seed {seed}: {:?}", triple.id(), verdict.witness);
                let cert = verdict.certificate().unwrap();
                assert!(rel_residual(cert.exp().matrix(), g.matrix()) <= 1e-8);
                assert!(triple.project_k(cert).norm() <= tolerance::P_CERTIFICATE);
            }
        }
    }

    #[test]
    fn su2_minus_identity_is_in_p_via_refinement() {
        // −I ∈ K ∩ P: both logarithm policies fail on the eigenvalue −1, so
        // this exercises the Gauss–Newton tier.
        let triple = catalog::su2();
        let minus_i =
            GroupElement::new(triple.spec(), DenseMatrix::from_diagonal(&[-1.0, -1.0])).unwrap();
        let verdict = triple.membership_p(&minus_i);
        assert!(verdict.is_in(), "witness: {:?}", verdict.witness);
        let x = verdict.certificate().unwrap();
        assert!(rel_residual(x.exp().matrix(), minus_i.matrix()) <= 1e-8);
    }

    #[test]
    fn su3_element_with_minus_one_eigenvalue_pair() {
        // diag(−1, i, i) lies in P: it is exp(i·diag(−π, π/2, π/2)) with a
        // real symmetric traceless exponent.
        let triple = catalog::su3();
        let g = GroupElement::new(
            triple.spec(),
            DenseMatrix::from_complex(
                3,
                3,
                &[
                    C64::new(-1.0, 0.0),
                    C64::new(0.0, 0.0),
                    C64::new(0.0, 0.0),
                    C64::new(0.0, 0.0),
                    C64::new(0.0, 1.0),
                    C64::new(0.0, 0.0),
                    C64::new(0.0, 0.0),
                    C64::new(0.0, 0.0),
                    C64::new(0.0, 1.0),
                ],
            )
            .unwrap(),
        )
        .unwrap();
        let verdict = triple.membership_p(&g);
        assert!(verdict.is_in(), "witness: {:?}", verdict.witness);
    }

    #[test]
    fn su2_r_points_are_in_p() {
        // R ≅ S² is connected for SU(2), so R = P; sample the sphere.
        let triple = catalog::su2();
        for seed in 0..30u64 {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut v = [0.0f64; 3];
            loop {
                for x in v.iter_mut() {
                    *x = rng.random::<f64>() * 2.0 - 1.0;
                }
                let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
                if norm > 1e-3 {
                    for x in v.iter_mut() {
                        *x /= norm;
                    }
                    break;
                }
            }
            let (a, b, c) = (v[0], v[1], v[2]);
            let p = GroupElement::new(
                triple.spec(),
                DenseMatrix::from_complex(
                    2,
                    2,
                    &[C64::new(a, b), C64::new(0.0, c), C64::new(0.0, c), C64::new(a, -b)],
                )
                .unwrap(),
            )
            .unwrap();
            let verdict = triple.membership_p(&p);
            assert!(verdict.is_in(), "seed {seed} (a={a:.3}): {:?}", verdict.witness);
        }
    }

    #[test]
    fn indeterminate_on_non_compact_family_without_exact_form() {
        // SL(2,ℝ) with the inner involution by s = [[0,1],[−1,0]] (s² = −I).
        // Conjugation by s coincides with (gᵀ)⁻¹ on SL(2,ℝ), but the exact
        // SPD tier only fires for the literal transpose-inverse kind, so −I
        // exercises the honest Indeterminate path: −I ∈ R, both logarithm
        // policies fail on the eigenvalue −1, and the family is not compact.
        let spec = crate::GroupSpec::sl_real(2).unwrap();
        let s = GroupElement::new(
            spec,
            DenseMatrix::from_real(2, 2, &[0.0, 1.0, -1.0, 0.0]).unwrap(),
        )
        .unwrap();
        let triple =
            crate::involution::split_algebra(spec, crate::Involution::inner(s).unwrap()).unwrap();
        let minus_i =
            GroupElement::new(spec, DenseMatrix::from_diagonal(&[-1.0, -1.0])).unwrap();
        assert!(triple.membership_r(&minus_i).is_in());
        let verdict = triple.membership_p(&minus_i);
        assert_eq!(verdict.verdict, Verdict::Indeterminate);
    }

    #[test]
    fn sqrt_in_p_halves_certificates() {
        for triple in catalog::all() {
            let e = crate::GroupElement::identity(triple.spec());
            let (root, half) = triple.sqrt_in_p(&e).unwrap();
            assert!(root.is_identity(1e-10));
            assert!(half.norm() < 1e-10);

            for seed in 0..5 {
                let q = triple.random_p(seed, 1.0).exp();
                let (root, half) = triple.sqrt_in_p(&q).unwrap();
                assert!(rel_residual(&(root.matrix() * root.matrix()), q.matrix()) <= 1e-8);
                assert!(triple.membership_p(&root).is_in());
                assert!(rel_residual(half.exp().matrix(), root.matrix()) <= 1e-10);
            }
        }
    }

    #[test]
    fn sqrt_in_p_diagonal_closed_form() {
        let triple = catalog::sl2();
        let q = GroupElement::new(triple.spec(), DenseMatrix::from_diagonal(&[4.0, 0.25])).unwrap();
        let (root, _) = triple.sqrt_in_p(&q).unwrap();
        assert!((root.matrix() - &DenseMatrix::from_diagonal(&[2.0, 0.5])).norm() < 1e-10);
    }

    #[test]
    fn sqrt_in_p_fails_without_certificate() {
        let triple = catalog::sl2();
        let minus_i =
            GroupElement::new(triple.spec(), DenseMatrix::from_diagonal(&[-1.0, -1.0])).unwrap();
        assert!(triple.sqrt_in_p(&minus_i).is_err());
    }

    #[test]
    fn membership_q_matches_p_and_witness_halves() {
        let triple = catalog::su2();
        let g = triple.random_p(2, 1.0).exp();
        let q_verdict = triple.membership_q(&g);
        assert!(q_verdict.is_in());
        let x = q_verdict.certificate().unwrap();
        // h = exp(X/2) satisfies φ(h) = g.
        let h = x.scale(0.5).exp();
        assert!(rel_residual(triple.phi_map(&h).matrix(), g.matrix()) <= 1e-9);
    }
}
