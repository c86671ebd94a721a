//! Seeded randomized verification suites.
//!
//! Each suite turns one family of invariants into a reproducible pass/fail
//! report: identical `(triple, suite, seed, trials, scale)` arguments produce
//! byte-identical JSON. Branch-cut failures of the decomposition (an
//! eigenvalue of `φ(g)` pinned at −1) are tracked separately from genuine
//! failures, since they are the documented measure-zero failure set rather
//! than broken invariants.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::involution::SymmetricTriple;
use crate::liegroup::{GroupElement, GroupFamily};
use crate::numkernel::{C64, DenseMatrix};
use crate::symmcore::{rel_residual, SamplerConfig, Su2CosetClass, SymmError};
use crate::InvolutionKind;

/// The available suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteKind {
    /// Inclusions P ⊂ R², R² ⊂ Q (as the identity `h² = φ(h)` on `R`), and
    /// Q ⊂ R.
    Chain,
    /// `p·p′·p ∈ P` for `p, p′ ∈ P`.
    Sandwich,
    /// `φ(g₁·g) = τ_{g₁}(φ(g))`.
    Equivariance,
    /// Round trip of the factorization `g = p·k`.
    Decompose,
    /// Component dimensions `dim ker(dσ + Ad(g))`.
    Dims,
    /// The full SU(2)/SO(2) coset classification.
    Su2Example,
    /// Fraction of cosets meeting `P` transversally at every found point.
    TransversalityPrevalence,
}

impl SuiteKind {
    pub fn name(&self) -> &'static str {
        match self {
            SuiteKind::Chain => "chain",
            SuiteKind::Sandwich => "sandwich",
            SuiteKind::Equivariance => "equivariance",
            SuiteKind::Decompose => "decompose",
            SuiteKind::Dims => "dims",
            SuiteKind::Su2Example => "su2_example",
            SuiteKind::TransversalityPrevalence => "transversality_prevalence",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "chain" => Some(SuiteKind::Chain),
            "sandwich" => Some(SuiteKind::Sandwich),
            "equivariance" => Some(SuiteKind::Equivariance),
            "decompose" => Some(SuiteKind::Decompose),
            "dims" => Some(SuiteKind::Dims),
            "su2_example" | "su2-example" => Some(SuiteKind::Su2Example),
            "transversality_prevalence" | "transversality-prevalence" => {
                Some(SuiteKind::TransversalityPrevalence)
            }
            _ => None,
        }
    }

    pub fn all() -> [SuiteKind; 7] {
        [
            SuiteKind::Chain,
            SuiteKind::Sandwich,
            SuiteKind::Equivariance,
            SuiteKind::Decompose,
            SuiteKind::Dims,
            SuiteKind::Su2Example,
            SuiteKind::TransversalityPrevalence,
        ]
    }
}

/// Trial count, master seed, and sampling scale for a suite run.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub trials: usize,
    pub seed: u64,
    /// Standard deviation of the algebra-element samples. Larger scales
    /// stress the branch cuts and raise the expected branch-failure count.
    pub scale: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { trials: 100, seed: 0, scale: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseVerdict {
    Pass,
    Fail,
    /// The documented measure-zero branch-cut failure of the decomposition;
    /// not a suite failure.
    BranchCut,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CaseRecord {
    /// Stable case id; re-running the suite reproduces exactly this case.
    pub case: String,
    /// Truncated SHA-256 of the primary input matrix.
    pub input_digest: String,
    pub residual: f64,
    pub verdict: CaseVerdict,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub triple_id: String,
    pub suite: String,
    pub trials: usize,
    pub failures: usize,
    /// Branch-cut decompositions, counted separately from failures.
    pub branch_failures: usize,
    pub worst_residual: f64,
    pub seed: u64,
    pub scale: f64,
    pub cases: Vec<CaseRecord>,
}

impl SuiteReport {
    fn new(triple: &SymmetricTriple, suite: SuiteKind, config: &SuiteConfig) -> Self {
        Self {
            triple_id: triple.id(),
            suite: suite.name().to_string(),
            trials: config.trials,
            failures: 0,
            branch_failures: 0,
            worst_residual: 0.0,
            seed: config.seed,
            scale: config.scale,
            cases: Vec::new(),
        }
    }

    fn push(&mut self, case: String, input: &DenseMatrix, residual: f64, verdict: CaseVerdict) {
        match verdict {
            CaseVerdict::Fail => self.failures += 1,
            CaseVerdict::BranchCut => self.branch_failures += 1,
            CaseVerdict::Pass => {}
        }
        if residual.is_finite() {
            self.worst_residual = self.worst_residual.max(residual);
        }
        self.cases.push(CaseRecord {
            case,
            input_digest: digest(input),
            residual,
            verdict,
        });
    }
}

fn digest(m: &DenseMatrix) -> String {
    let mut hasher = Sha256::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let z = m.get(i, j);
            hasher.update(z.re.to_le_bytes());
            hasher.update(z.im.to_le_bytes());
        }
    }
    hex::encode(&hasher.finalize()[..8])
}

/// Distinct per-case seed stream derived from the master seed.
fn case_seed(seed: u64, index: u64, salt: u64) -> u64 {
    seed.wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(salt.wrapping_mul(0xD1B5_4A32_D192_ED03))
}

/// Runs one suite and returns its report.
pub fn run_suite(
    triple: &SymmetricTriple,
    suite: SuiteKind,
    config: &SuiteConfig,
) -> Result<SuiteReport, SymmError> {
    let mut report = SuiteReport::new(triple, suite, config);
    match suite {
        SuiteKind::Chain => chain_suite(triple, config, &mut report),
        SuiteKind::Sandwich => sandwich_suite(triple, config, &mut report),
        SuiteKind::Equivariance => equivariance_suite(triple, config, &mut report),
        SuiteKind::Decompose => decompose_suite(triple, config, &mut report),
        SuiteKind::Dims => dims_suite(triple, config, &mut report),
        SuiteKind::Su2Example => su2_example_suite(triple, config, &mut report)?,
        SuiteKind::TransversalityPrevalence => {
            transversality_suite(triple, config, &mut report)?
        }
    }
    Ok(report)
}

fn membership_residual(verdict: &crate::liegroup::MembershipVerdict) -> f64 {
    match &verdict.witness {
        crate::liegroup::Witness::Residual { residual, .. } => *residual,
        crate::liegroup::Witness::LogCertificate(_) => 0.0,
        crate::liegroup::Witness::Failure { .. } => f64::NAN,
    }
}

fn chain_suite(triple: &SymmetricTriple, config: &SuiteConfig, report: &mut SuiteReport) {
    for i in 0..config.trials {
        let x = triple.random_p(case_seed(config.seed, i as u64, 1), config.scale);
        let g = x.exp();
        let h = x.scale(0.5).exp();

        // (a) P ⊂ R²: exp(X/2) ∈ R and exp(X) ∈ P.
        let r_half = triple.membership_r(&h);
        let p_full = triple.membership_p(&g);
        let pass_a = r_half.is_in() && p_full.is_in();
        report.push(
            format!("t{i}.p_subset_r_squared"),
            g.matrix(),
            membership_residual(&r_half),
            if pass_a { CaseVerdict::Pass } else { CaseVerdict::Fail },
        );

        // (b) R² ⊂ Q through the identity h·σ(h)⁻¹ = h² for h ∈ R.
        let h_sq = &h * &h;
        let phi_h = triple.phi_map(&h);
        let resid_b = rel_residual(phi_h.matrix(), h_sq.matrix());
        let decided = triple.membership_p(&h_sq).is_in();
        let pass_b = resid_b <= triple.tolerances().membership && decided;
        report.push(
            format!("t{i}.r_squared_subset_q"),
            h_sq.matrix(),
            resid_b,
            if pass_b { CaseVerdict::Pass } else { CaseVerdict::Fail },
        );

        // (c) Q ⊂ R on a fully random group element.
        let any_g = triple.random_group(case_seed(config.seed, i as u64, 3), config.scale);
        let r_phi = triple.membership_r(&triple.phi_map(&any_g));
        report.push(
            format!("t{i}.q_subset_r"),
            any_g.matrix(),
            membership_residual(&r_phi),
            if r_phi.is_in() { CaseVerdict::Pass } else { CaseVerdict::Fail },
        );
    }
}

fn sandwich_suite(triple: &SymmetricTriple, config: &SuiteConfig, report: &mut SuiteReport) {
    for i in 0..config.trials {
        let p = triple.random_p(case_seed(config.seed, i as u64, 11), config.scale).exp();
        let p2 = triple.random_p(case_seed(config.seed, i as u64, 13), config.scale).exp();
        let product = &(&p * &p2) * &p;
        let verdict = triple.membership_p(&product);
        let residual = match verdict.certificate() {
            Some(x) => rel_residual(x.exp().matrix(), product.matrix()),
            None => membership_residual(&verdict),
        };
        report.push(
            format!("t{i}.sandwich_in_p"),
            product.matrix(),
            residual,
            if verdict.is_in() { CaseVerdict::Pass } else { CaseVerdict::Fail },
        );
    }
}

fn equivariance_suite(triple: &SymmetricTriple, config: &SuiteConfig, report: &mut SuiteReport) {
    for i in 0..config.trials {
        let g1 = triple.random_group(case_seed(config.seed, i as u64, 21), config.scale);
        let g = triple.random_group(case_seed(config.seed, i as u64, 23), config.scale);
        let lhs = triple.phi_map(&(&g1 * &g));
        let rhs = triple.twisted_conjugate(&g1, &triple.phi_map(&g));
        let residual = rel_residual(lhs.matrix(), rhs.matrix());
        let pass = residual <= triple.tolerances().membership;
        report.push(
            format!("t{i}.phi_equivariant"),
            g.matrix(),
            residual,
            if pass { CaseVerdict::Pass } else { CaseVerdict::Fail },
        );
    }
}

fn decompose_suite(triple: &SymmetricTriple, config: &SuiteConfig, report: &mut SuiteReport) {
    for i in 0..config.trials {
        let g = triple.random_group(case_seed(config.seed, i as u64, 31), config.scale);
        match triple.decompose(&g) {
            Ok(d) => {
                let sigma_k = rel_residual(triple.sigma(&d.k).matrix(), d.k.matrix());
                let residual = d.residual.max(sigma_k);
                let pass = residual <= triple.tolerances().membership;
                report.push(
                    format!("t{i}.decompose_round_trip"),
                    g.matrix(),
                    residual,
                    if pass { CaseVerdict::Pass } else { CaseVerdict::Fail },
                );
            }
            Err(SymmError::DecomposeFailure { .. }) => {
                report.push(
                    format!("t{i}.decompose_round_trip"),
                    g.matrix(),
                    f64::NAN,
                    CaseVerdict::BranchCut,
                );
            }
            Err(_) => {
                report.push(
                    format!("t{i}.decompose_round_trip"),
                    g.matrix(),
                    f64::NAN,
                    CaseVerdict::Fail,
                );
            }
        }
    }
}

fn dims_suite(triple: &SymmetricTriple, config: &SuiteConfig, report: &mut SuiteReport) {
    let e = GroupElement::identity(triple.spec());
    let dim_p = triple.dim_p();
    match triple.component_dim(&e) {
        Ok(rep) => {
            let pass = rep.in_r && rep.dim == dim_p;
            report.push(
                "identity_component_dim".into(),
                e.matrix(),
                (rep.dim as f64 - dim_p as f64).abs(),
                if pass { CaseVerdict::Pass } else { CaseVerdict::Fail },
            );
        }
        Err(_) => report.push("identity_component_dim".into(), e.matrix(), f64::NAN, CaseVerdict::Fail),
    }

    // The SO(5) inner triple has a second component of R with a different
    // dimension: 6 at g₀ = diag(−1,−1,−1,−1,1) against 4 at the identity.
    if triple.spec().family() == GroupFamily::SpecialOrthogonal
        && triple.spec().n() == 5
        && triple.involution().kind() == InvolutionKind::Inner
    {
        let g0 = GroupElement::new(
            triple.spec(),
            DenseMatrix::from_diagonal(&[-1.0, -1.0, -1.0, -1.0, 1.0]),
        )
        .expect("g0 is orthogonal with determinant one");
        match triple.component_dim(&g0) {
            Ok(rep) => {
                let pass = rep.in_r && rep.dim == 6;
                report.push(
                    "reflection_component_dim".into(),
                    g0.matrix(),
                    (rep.dim as f64 - 6.0).abs(),
                    if pass { CaseVerdict::Pass } else { CaseVerdict::Fail },
                );
            }
            Err(_) => {
                report.push("reflection_component_dim".into(), g0.matrix(), f64::NAN, CaseVerdict::Fail)
            }
        }
    }

    // Every point of P sits in the identity component, whose dimension is
    // dim 𝔭 throughout.
    for i in 0..config.trials {
        let g = triple.random_p(case_seed(config.seed, i as u64, 41), config.scale).exp();
        match triple.component_dim(&g) {
            Ok(rep) => {
                let pass = rep.in_r && rep.dim == dim_p;
                report.push(
                    format!("t{i}.p_point_component_dim"),
                    g.matrix(),
                    (rep.dim as f64 - dim_p as f64).abs(),
                    if pass { CaseVerdict::Pass } else { CaseVerdict::Fail },
                );
            }
            Err(_) => report.push(
                format!("t{i}.p_point_component_dim"),
                g.matrix(),
                f64::NAN,
                CaseVerdict::Fail,
            ),
        }
    }
}

fn require_su2(triple: &SymmetricTriple) -> Result<(), SymmError> {
    let ok = triple.spec().family() == GroupFamily::SpecialUnitary
        && triple.spec().n() == 2
        && triple.involution().kind() == InvolutionKind::TransposeInverse;
    if ok {
        Ok(())
    } else {
        Err(SymmError::WrongTriple("SU(2) transpose-inverse".into()))
    }
}

/// Seeded uniform point of `P(SU(2)) ≅ S²`, optionally bounded away from the
/// antipodal circle `a = 0`.
fn su2_sphere_point(triple: &SymmetricTriple, seed: u64, min_abs_a: f64) -> GroupElement {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut v = [0.0f64; 3];
        let mut norm2 = 0.0;
        for x in v.iter_mut() {
            *x = rng.random::<f64>() * 2.0 - 1.0;
            norm2 += *x * *x;
        }
        let norm = norm2.sqrt();
        if norm < 1e-3 {
            continue;
        }
        let (a, b, c) = (v[0] / norm, v[1] / norm, v[2] / norm);
        if a.abs() <= min_abs_a {
            continue;
        }
        let m = DenseMatrix::from_complex(
            2,
            2,
            &[C64::new(a, b), C64::new(0.0, c), C64::new(0.0, c), C64::new(a, -b)],
        )
        .expect("finite entries");
        return GroupElement::new(triple.spec(), m).expect("unit sphere points are in SU(2)");
    }
}

fn su2_example_suite(
    triple: &SymmetricTriple,
    config: &SuiteConfig,
    report: &mut SuiteReport,
) -> Result<(), SymmError> {
    require_su2(triple)?;
    let e = GroupElement::identity(triple.spec());

    // K ∩ P = {±I}.
    match triple.su2_coset_classify(&e)? {
        Su2CosetClass::Generic { points } => {
            let minus = DenseMatrix::identity(2).scale(C64::new(-1.0, 0.0));
            let ok = points[0].is_identity(1e-10)
                && (points[1].matrix() - &minus).norm() < 1e-10;
            report.push(
                "k_cap_p_is_plus_minus_identity".into(),
                e.matrix(),
                0.0,
                if ok { CaseVerdict::Pass } else { CaseVerdict::Fail },
            );
        }
        Su2CosetClass::Antipodal => {
            report.push("k_cap_p_is_plus_minus_identity".into(), e.matrix(), 1.0, CaseVerdict::Fail)
        }
    }

    // Generic cosets: the classifier gives exactly {±p}, cross-checked by the
    // grid sampler. Near the antipodal circle the R-residual flattens out
    // like |a|, so the refinement tolerance sits well below the 1e-8 match
    // threshold.
    let sampler = SamplerConfig { grid_points: 96, refine_tol: 1e-12, seed: 0 };
    for i in 0..config.trials {
        let p = su2_sphere_point(triple, case_seed(config.seed, i as u64, 51), 0.01);
        let classified = triple.su2_coset_classify(&p)?;
        let mut pass = false;
        let mut residual = f64::NAN;
        if let Su2CosetClass::Generic { points } = &classified {
            let found = triple.intersect_coset(&p, &sampler)?;
            if found.points.len() == 2 {
                residual = found
                    .points
                    .iter()
                    .map(|q| {
                        points
                            .iter()
                            .map(|cp| (cp.matrix() - q.matrix()).norm())
                            .fold(f64::INFINITY, f64::min)
                    })
                    .fold(0.0f64, f64::max);
                pass = residual <= 1e-8 && found.bound_k_cap_p == Some(2);
            }
        }
        report.push(
            format!("t{i}.generic_coset_two_points"),
            p.matrix(),
            residual,
            if pass { CaseVerdict::Pass } else { CaseVerdict::Fail },
        );
    }

    // The antipodal coset lies entirely inside P: verify on an equispaced
    // grid of K.
    let p0 = GroupElement::new(
        triple.spec(),
        DenseMatrix::from_complex(
            2,
            2,
            &[C64::new(0.0, 1.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, -1.0)],
        )
        .unwrap(),
    )
    .expect("antipodal representative is in SU(2)");
    match triple.su2_coset_classify(&p0)? {
        Su2CosetClass::Antipodal => {
            let grid = 64usize;
            let mut all_in = true;
            let mut worst = 0.0f64;
            for j in 0..grid {
                let theta = std::f64::consts::TAU * j as f64 / grid as f64;
                let k = GroupElement::new(
                    triple.spec(),
                    DenseMatrix::from_real(
                        2,
                        2,
                        &[theta.cos(), -theta.sin(), theta.sin(), theta.cos()],
                    )
                    .unwrap(),
                )
                .expect("rotations are in SU(2)");
                let q = &p0 * &k;
                let verdict = triple.membership_p(&q);
                all_in &= verdict.is_in();
                if let Some(x) = verdict.certificate() {
                    worst = worst.max(rel_residual(x.exp().matrix(), q.matrix()));
                }
            }
            report.push(
                "antipodal_coset_inside_p".into(),
                p0.matrix(),
                worst,
                if all_in { CaseVerdict::Pass } else { CaseVerdict::Fail },
            );
        }
        Su2CosetClass::Generic { .. } => {
            report.push("antipodal_coset_inside_p".into(), p0.matrix(), 1.0, CaseVerdict::Fail)
        }
    }
    Ok(())
}

fn transversality_suite(
    triple: &SymmetricTriple,
    config: &SuiteConfig,
    report: &mut SuiteReport,
) -> Result<(), SymmError> {
    require_su2(triple)?;
    for i in 0..config.trials {
        let g = triple.random_group(case_seed(config.seed, i as u64, 61), config.scale);
        match triple.decompose(&g) {
            Ok(d) => match triple.su2_coset_classify(&d.p)? {
                Su2CosetClass::Generic { points } => {
                    let mut all = true;
                    for q in &points {
                        all &= triple.transversal(q)?;
                    }
                    report.push(
                        format!("t{i}.coset_transversal"),
                        g.matrix(),
                        0.0,
                        if all { CaseVerdict::Pass } else { CaseVerdict::Fail },
                    );
                }
                Su2CosetClass::Antipodal => {
                    // A random coset landing exactly on the antipodal circle
                    // is measure-zero; it is genuinely non-transversal.
                    report.push(
                        format!("t{i}.coset_transversal"),
                        g.matrix(),
                        1.0,
                        CaseVerdict::Fail,
                    );
                }
            },
            Err(SymmError::DecomposeFailure { .. }) => report.push(
                format!("t{i}.coset_transversal"),
                g.matrix(),
                f64::NAN,
                CaseVerdict::BranchCut,
            ),
            Err(err) => return Err(err),
        }
    }

    // The antipodal coset must be detected as non-transversal.
    let p0 = GroupElement::new(
        triple.spec(),
        DenseMatrix::from_complex(
            2,
            2,
            &[C64::new(0.0, 1.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, -1.0)],
        )
        .unwrap(),
    )
    .expect("antipodal representative is in SU(2)");
    let non_transversal = !triple.transversal(&p0)?;
    report.push(
        "antipodal_coset_non_transversal".into(),
        p0.matrix(),
        if non_transversal { 0.0 } else { 1.0 },
        if non_transversal { CaseVerdict::Pass } else { CaseVerdict::Fail },
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::involution::catalog;

    #[test]
    fn empty_suite_reports_zero_trials_zero_failures() {
        let triple = catalog::sl2();
        let config = SuiteConfig { trials: 0, seed: 5, scale: 1.0 };
        let report = run_suite(&triple, SuiteKind::Chain, &config).unwrap();
        assert_eq!(report.trials, 0);
        assert_eq!(report.failures, 0);
        assert!(report.cases.is_empty());
    }

    #[test]
    fn chain_suite_is_clean_on_every_builtin_triple() {
        for triple in catalog::all() {
            let config = SuiteConfig { trials: 25, seed: 42, scale: 1.0 };
            let report = run_suite(&triple, SuiteKind::Chain, &config).unwrap();
            assert_eq!(report.failures, 0, "{}: {:?}", triple.id(), failing(&report));
            assert_eq!(report.cases.len(), 75);
        }
    }

    #[test]
    fn sandwich_and_equivariance_are_clean() {
        for triple in catalog::all() {
            let config = SuiteConfig { trials: 15, seed: 7, scale: 1.0 };
            for kind in [SuiteKind::Sandwich, SuiteKind::Equivariance] {
                let report = run_suite(&triple, kind, &config).unwrap();
                assert_eq!(report.failures, 0, "{} {}: {:?}", triple.id(), kind.name(), failing(&report));
            }
        }
    }

    #[test]
    fn decompose_suite_round_trips() {
        for triple in catalog::all() {
            let config = SuiteConfig { trials: 30, seed: 3, scale: 1.0 };
            let report = run_suite(&triple, SuiteKind::Decompose, &config).unwrap();
            assert_eq!(report.failures, 0, "{}: {:?}", triple.id(), failing(&report));
            assert!(
                (report.branch_failures as f64) < 0.01 * config.trials as f64 + 1.0,
                "{}: unexpected branch-failure rate",
                triple.id()
            );
        }
    }

    #[test]
    fn dims_suite_matches_both_so5_components() {
        let triple = catalog::so5_inner();
        let config = SuiteConfig { trials: 1, seed: 0, scale: 1.0 };
        let report = run_suite(&triple, SuiteKind::Dims, &config).unwrap();
        assert_eq!(report.failures, 0, "{:?}", failing(&report));
        assert!(report.cases.iter().any(|c| c.case == "reflection_component_dim"));
    }

    #[test]
    fn su2_example_suite_matches_the_classification() {
        let triple = catalog::su2();
        let config = SuiteConfig { trials: 200, seed: 7, scale: 1.0 };
        let report = run_suite(&triple, SuiteKind::Su2Example, &config).unwrap();
        assert_eq!(report.failures, 0, "{:?}", failing(&report));
        // K ∩ P has exactly two points.
        assert!(report
            .cases
            .iter()
            .any(|c| c.case == "k_cap_p_is_plus_minus_identity" && c.verdict == CaseVerdict::Pass));
    }

    #[test]
    fn su2_suites_reject_other_triples() {
        let triple = catalog::sl3();
        let config = SuiteConfig::default();
        assert!(run_suite(&triple, SuiteKind::Su2Example, &config).is_err());
        assert!(run_suite(&triple, SuiteKind::TransversalityPrevalence, &config).is_err());
    }

    #[test]
    fn transversality_suite_detects_the_antipodal_coset() {
        let triple = catalog::su2();
        let config = SuiteConfig { trials: 20, seed: 11, scale: 1.0 };
        let report = run_suite(&triple, SuiteKind::TransversalityPrevalence, &config).unwrap();
        assert!(report
            .cases
            .iter()
            .any(|c| c.case == "antipodal_coset_non_transversal" && c.verdict == CaseVerdict::Pass));
        assert_eq!(report.failures, 0, "{:?}", failing(&report));
    }

    #[test]
    fn reports_are_byte_identical_across_runs() {
        let triple = catalog::su2();
        let config = SuiteConfig { trials: 8, seed: 99, scale: 1.0 };
        let a = run_suite(&triple, SuiteKind::Chain, &config).unwrap();
        let b = run_suite(&triple, SuiteKind::Chain, &config).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    fn failing(report: &SuiteReport) -> Vec<&CaseRecord> {
        report.cases.iter().filter(|c| c.verdict == CaseVerdict::Fail).collect()
    }
}
