//! Transversality of `gK` and `P`, sampled coset intersections, and the
//! closed-form classification of cosets in SU(2)/SO(2).

use nalgebra::{DMatrix, DVector};

use crate::involution::SymmetricTriple;
use crate::liegroup::{self, GroupElement, GroupFamily};
use crate::numkernel::{self, C64, DenseMatrix};
use crate::symmcore::{IntersectionReport, SamplerConfig, SymmError};
use crate::tolerance;
use crate::InvolutionKind;

/// Exhaustive classification of a coset `pK` in SU(2)/SO(2).
///
/// Writing `p = [[a+bi, ci],[ci, a−bi]]`, the coset meets `P` in exactly
/// `{±p}` when `a ≠ 0` and is entirely contained in `P` when `a = 0` (the
/// antipodal coset of the sphere).
#[derive(Debug, Clone)]
pub enum Su2CosetClass {
    /// `pK ∩ P = {p, −p}`.
    Generic { points: [GroupElement; 2] },
    /// `pK ⊂ P`: the whole coset lies in `P`.
    Antipodal,
}

impl Su2CosetClass {
    pub fn is_generic(&self) -> bool {
        matches!(self, Su2CosetClass::Generic { .. })
    }
}

impl SymmetricTriple {
    /// Whether the coset `pK` meets `P` transversally at `p ∈ P`: the
    /// left-translated tangent of `P` at `p` is the image of
    /// `X ↦ Ad(p⁻¹)X − dσ(X)`, the tangent of the coset is `𝔨`, and
    /// transversality asks their span to be all of `𝔤`.
    pub fn transversal(&self, p: &GroupElement) -> Result<bool, SymmError> {
        if !self.membership_p(p).is_in() {
            return Err(SymmError::PreconditionViolation(
                "transversality is tested at points of P".into(),
            ));
        }
        let dim = self.g_basis().dim();
        let dim_k = self.dim_k();
        let ad_inv = liegroup::adjoint_matrix(&p.inverse(), self.g_basis())?;
        let orbit_map = &ad_inv - self.dsigma_matrix();

        let mut stacked = DMatrix::<f64>::zeros(dim, dim + dim_k);
        for i in 0..dim {
            for j in 0..dim {
                stacked[(i, j)] = orbit_map.get(i, j).re;
            }
        }
        for (col, y) in self.k_basis().vectors().iter().enumerate() {
            let coords = self.g_basis().coordinates(y)?;
            for (i, c) in coords.iter().enumerate() {
                stacked[(i, dim + col)] = *c;
            }
        }
        let stacked = DenseMatrix::from_raw(stacked.map(|x| C64::new(x, 0.0)), true);
        Ok(numkernel::rank(&stacked, self.tolerances().rank) == dim)
    }

    /// Samples `gK ∩ P` by exponentiating a grid over a fundamental window
    /// of `𝔨`, refining each near-miss with Gauss–Newton on the `R`-residual
    /// and keeping the points certified in `P`. Supported for `dim 𝔨 ≤ 2`.
    ///
    /// Sampling cannot prove completeness, so `exhaustive` is always false
    /// here; `bound_k_cap_p` reports what the same sampler finds in `K ∩ P`.
    pub fn intersect_coset(
        &self,
        g: &GroupElement,
        sampler: &SamplerConfig,
    ) -> Result<IntersectionReport, SymmError> {
        let dim_k = self.dim_k();
        if dim_k > 2 {
            return Err(SymmError::UnsupportedKDimension { dim_k });
        }
        let points = self.sample_coset_points(g, sampler)?;
        let identity = GroupElement::identity(self.spec());
        let bound = self.sample_coset_points(&identity, sampler)?.len();
        let mut transversal = true;
        for q in &points {
            transversal &= self.transversal(q)?;
        }
        Ok(IntersectionReport {
            coset_rep: g.clone(),
            points,
            transversal,
            exhaustive: false,
            bound_k_cap_p: Some(bound),
        })
    }

    fn sample_coset_points(
        &self,
        g: &GroupElement,
        sampler: &SamplerConfig,
    ) -> Result<Vec<GroupElement>, SymmError> {
        let dim_k = self.dim_k();
        let mut points: Vec<GroupElement> = Vec::new();

        if dim_k == 0 {
            if self.membership_p(g).is_in() {
                points.push(g.clone());
            }
            return Ok(points);
        }

        // One full period of the slowest rotation frequency per 𝔨 direction
        // (non-compact directions fall back to a fixed window).
        let windows: Vec<f64> = self
            .k_basis()
            .vectors()
            .iter()
            .map(|y| {
                let eigs = numkernel::eigenvalues(y.matrix()).unwrap_or_default();
                let omega = eigs
                    .iter()
                    .map(|l| l.im.abs())
                    .filter(|w| *w > 1e-8)
                    .fold(f64::INFINITY, f64::min);
                if omega.is_finite() {
                    std::f64::consts::TAU / omega
                } else {
                    8.0 * std::f64::consts::PI
                }
            })
            .collect();

        let per_axis = match dim_k {
            1 => vec![sampler.grid_points.max(4)],
            _ => {
                let m = ((sampler.grid_points as f64).sqrt().ceil() as usize).max(3);
                vec![m, m]
            }
        };
        let total: usize = per_axis.iter().product();

        for index in 0..total {
            let mut rem = index;
            let mut t = vec![0.0f64; dim_k];
            for axis in 0..dim_k {
                let steps = per_axis[axis];
                t[axis] = (rem % steps) as f64 / steps as f64 * windows[axis];
                rem /= steps;
            }
            let q0 = g * &self.k_point(&t)?;
            if self.r_residual(&q0) > 0.5 {
                continue;
            }
            let Some(refined) = self.refine_coset_candidate(g, &t, &windows, sampler.refine_tol)
            else {
                continue;
            };
            let q = g * &self.k_point(&refined)?;
            if !self.membership_p(&q).is_in() {
                continue;
            }
            // Same-coset invariant: q⁻¹·g must be fixed by σ.
            let back = &q.inverse() * g;
            if !self.is_sigma_fixed(&back) {
                continue;
            }
            if points.iter().all(|existing| {
                (existing.matrix() - q.matrix()).norm() > tolerance::DISTINCT_POINTS
            }) {
                points.push(q);
            }
        }
        Ok(points)
    }

    fn k_point(&self, t: &[f64]) -> Result<GroupElement, SymmError> {
        let y = self.k_basis().combination(t)?;
        Ok(y.exp())
    }

    fn r_residual(&self, q: &GroupElement) -> f64 {
        let sq = self.sigma(q);
        let inv = q.inverse();
        (sq.matrix() - inv.matrix()).norm() / inv.matrix().norm().max(f64::MIN_POSITIVE)
    }

    /// Gauss–Newton on `t ↦ σ(g·exp(Σtᵢ Yᵢ)) − (g·exp(Σtᵢ Yᵢ))⁻¹` with a
    /// numerical Jacobian; `dim 𝔨 ≤ 2` keeps this cheap.
    fn refine_coset_candidate(
        &self,
        g: &GroupElement,
        t0: &[f64],
        windows: &[f64],
        refine_tol: f64,
    ) -> Option<Vec<f64>> {
        let n = self.spec().n();
        let dim = t0.len();
        let residual_vec = |t: &[f64]| -> Option<DVector<f64>> {
            let q = g * &self.k_point(t).ok()?;
            let sq = self.sigma(&q);
            let inv = q.inverse();
            let diff = sq.matrix() - inv.matrix();
            let mut v = DVector::<f64>::zeros(2 * n * n);
            for (row, z) in diff.raw().iter().enumerate() {
                v[row] = z.re;
                v[row + n * n] = z.im;
            }
            Some(v)
        };

        let mut t = t0.to_vec();
        let mut r = residual_vec(&t)?;
        let scale = (n as f64).sqrt();
        for _ in 0..40 {
            if r.norm() <= refine_tol * scale {
                return Some(t);
            }
            let h = 1e-6f64;
            let mut jac = DMatrix::<f64>::zeros(2 * n * n, dim);
            for axis in 0..dim {
                let mut plus = t.clone();
                plus[axis] += h;
                let mut minus = t.clone();
                minus[axis] -= h;
                let fp = residual_vec(&plus)?;
                let fm = residual_vec(&minus)?;
                for row in 0..2 * n * n {
                    jac[(row, axis)] = (fp[row] - fm[row]) / (2.0 * h);
                }
            }
            let step = jac.svd(true, true).solve(&(-&r), 1e-14).ok()?;
            let mut advanced = false;
            let mut damping = 1.0;
            for _ in 0..8 {
                let trial: Vec<f64> = t
                    .iter()
                    .zip(step.iter())
                    .zip(windows.iter())
                    .map(|((ti, si), w)| (ti + damping * si).rem_euclid(*w))
                    .collect();
                if let Some(tr) = residual_vec(&trial) {
                    if tr.norm() < r.norm() {
                        t = trial;
                        r = tr;
                        advanced = true;
                        break;
                    }
                }
                damping *= 0.5;
            }
            if !advanced {
                return None;
            }
        }
        if r.norm() <= refine_tol * scale {
            Some(t)
        } else {
            None
        }
    }

    /// Closed-form, exhaustive classification of `pK ∩ P` for the SU(2)
    /// triple, from the identity `kp = pk⁻¹ ⇔ a·sin θ = 0`.
    pub fn su2_coset_classify(&self, p: &GroupElement) -> Result<Su2CosetClass, SymmError> {
        let right_triple = self.spec().family() == GroupFamily::SpecialUnitary
            && self.spec().n() == 2
            && self.involution().kind() == InvolutionKind::TransposeInverse;
        if !right_triple {
            return Err(SymmError::WrongTriple("SU(2) transpose-inverse".into()));
        }
        if !self.membership_p(p).is_in() {
            return Err(SymmError::PreconditionViolation(
                "su2_coset_classify expects p ∈ P".into(),
            ));
        }
        let m = p.matrix();
        // p ∈ P ⊂ R means p is symmetric: [[a+bi, ci],[ci, a−bi]].
        let form_resid = [
            (m.get(0, 1) - m.get(1, 0)).norm(),
            m.get(0, 1).re.abs(),
            (m.get(0, 0).re - m.get(1, 1).re).abs(),
            (m.get(0, 0).im + m.get(1, 1).im).abs(),
        ]
        .into_iter()
        .fold(0.0f64, f64::max);
        if form_resid > self.tolerances().membership {
            return Err(SymmError::PreconditionViolation(format!(
                "element is not of the symmetric SU(2) form (residual {form_resid:.3e})"
            )));
        }
        let a = 0.5 * (m.get(0, 0).re + m.get(1, 1).re);
        if a.abs() > tolerance::SU2_GENERIC_A {
            let minus = GroupElement::new_unchecked(self.spec(), m.scale(C64::new(-1.0, 0.0)));
            Ok(Su2CosetClass::Generic { points: [p.clone(), minus] })
        } else {
            Ok(Su2CosetClass::Antipodal)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::involution::catalog;

    fn su2_r_point(a: f64, b: f64, c: f64) -> GroupElement {
        let triple = catalog::su2();
        let norm = (a * a + b * b + c * c).sqrt();
        let (a, b, c) = (a / norm, b / norm, c / norm);
        GroupElement::new(
            triple.spec(),
            DenseMatrix::from_complex(
                2,
                2,
                &[C64::new(a, b), C64::new(0.0, c), C64::new(0.0, c), C64::new(a, -b)],
            )
            .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn transversal_at_identity_for_all_triples() {
        for triple in catalog::all() {
            let e = GroupElement::identity(triple.spec());
            assert!(triple.transversal(&e).unwrap(), "{}", triple.id());
        }
    }

    #[test]
    fn su2_antipodal_points_are_not_transversal() {
        let triple = catalog::su2();
        let p = su2_r_point(0.0, 0.6, 0.8);
        assert!(!triple.transversal(&p).unwrap());
    }

    #[test]
    fn su2_generic_points_are_transversal() {
        let triple = catalog::su2();
        for (a, b, c) in [(0.6, 0.8, 0.0), (0.3, -0.5, 0.81), (-0.7, 0.1, 0.7)] {
            let p = su2_r_point(a, b, c);
            assert!(triple.transversal(&p).unwrap(), "({a},{b},{c})");
        }
    }

    #[test]
    fn transversal_requires_membership() {
        let triple = catalog::sl2();
        let minus_i =
            GroupElement::new(triple.spec(), DenseMatrix::from_diagonal(&[-1.0, -1.0])).unwrap();
        assert!(matches!(
            triple.transversal(&minus_i),
            Err(SymmError::PreconditionViolation(_))
        ));
    }

    #[test]
    fn su2_identity_coset_intersection_is_plus_minus_identity() {
        let triple = catalog::su2();
        let e = GroupElement::identity(triple.spec());
        let report = triple.intersect_coset(&e, &SamplerConfig::default()).unwrap();
        assert_eq!(report.points.len(), 2, "K ∩ P = {{±I}}");
        let identity = DenseMatrix::identity(2);
        let minus = identity.scale(C64::new(-1.0, 0.0));
        for q in &report.points {
            let d_plus = (q.matrix() - &identity).norm();
            let d_minus = (q.matrix() - &minus).norm();
            assert!(d_plus < 1e-8 || d_minus < 1e-8);
        }
        assert!(!report.exhaustive);
        assert_eq!(report.bound_k_cap_p, Some(2));
    }

    #[test]
    fn su2_generic_coset_has_two_points_matching_classifier() {
        let triple = catalog::su2();
        let p = su2_r_point(0.6, 0.0, 0.8);
        let report = triple.intersect_coset(&p, &SamplerConfig::default()).unwrap();
        assert_eq!(report.points.len(), 2);
        for q in &report.points {
            let d_plus = (q.matrix() - p.matrix()).norm();
            let d_minus = (q.matrix() - &p.matrix().scale(C64::new(-1.0, 0.0))).norm();
            assert!(d_plus < 1e-8 || d_minus < 1e-8, "point matches ±p");
        }
        assert!(report.transversal);
    }

    #[test]
    fn coset_of_exp_p_contains_its_representative() {
        for triple in [catalog::sl2(), catalog::su2()] {
            let x = triple.random_p(3, 0.8);
            let g = x.exp();
            let report = triple.intersect_coset(&g, &SamplerConfig::default()).unwrap();
            assert!(
                report
                    .points
                    .iter()
                    .any(|q| (q.matrix() - g.matrix()).norm() < 1e-7),
                "{}: exp(X) must appear among its own coset's intersection points",
                triple.id()
            );
        }
    }

    #[test]
    fn sl2_identity_coset_meets_p_only_at_identity() {
        // K = SO(2) and P = SPD intersect exactly at I (−I is not positive).
        let triple = catalog::sl2();
        let e = GroupElement::identity(triple.spec());
        let report = triple.intersect_coset(&e, &SamplerConfig::default()).unwrap();
        assert_eq!(report.points.len(), 1);
        assert!(report.points[0].is_identity(1e-8));
    }

    #[test]
    fn unsupported_k_dimension_is_reported() {
        let triple = catalog::su3();
        let e = GroupElement::identity(triple.spec());
        assert!(matches!(
            triple.intersect_coset(&e, &SamplerConfig::default()),
            Err(SymmError::UnsupportedKDimension { dim_k: 3 })
        ));
    }

    #[test]
    fn su2_classifier_on_identity() {
        let triple = catalog::su2();
        let e = GroupElement::identity(triple.spec());
        match triple.su2_coset_classify(&e).unwrap() {
            Su2CosetClass::Generic { points } => {
                assert!(points[0].is_identity(1e-10));
                let minus = DenseMatrix::identity(2).scale(C64::new(-1.0, 0.0));
                assert!((points[1].matrix() - &minus).norm() < 1e-10);
            }
            Su2CosetClass::Antipodal => panic!("identity coset is generic"),
        }
    }

    #[test]
    fn su2_classifier_antipodal_case() {
        let triple = catalog::su2();
        let p = su2_r_point(0.0, 1.0, 0.0);
        assert!(matches!(triple.su2_coset_classify(&p).unwrap(), Su2CosetClass::Antipodal));
    }

    #[test]
    fn su2_classifier_generic_cross_checked_by_grid() {
        // a = 0.6, b = 0.8: the dense-grid oracle over K finds exactly the
        // two classifier points.
        let triple = catalog::su2();
        let p = su2_r_point(0.6, 0.8, 0.0);
        let class = triple.su2_coset_classify(&p).unwrap();
        let Su2CosetClass::Generic { points } = &class else {
            panic!("expected generic");
        };
        let sampler = SamplerConfig { grid_points: 256, ..Default::default() };
        let report = triple.intersect_coset(&p, &sampler).unwrap();
        assert_eq!(report.points.len(), 2);
        for q in &report.points {
            assert!(points
                .iter()
                .any(|cp| (cp.matrix() - q.matrix()).norm() < 1e-7));
        }
    }

    #[test]
    fn su2_classifier_rejects_other_triples() {
        let triple = catalog::sl2();
        let e = GroupElement::identity(triple.spec());
        assert!(matches!(
            triple.su2_coset_classify(&e),
            Err(SymmError::WrongTriple(_))
        ));
    }
}
