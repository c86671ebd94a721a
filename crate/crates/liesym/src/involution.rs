//! The involution catalog, its differential, and the eigenspace split
//! `𝔤 = 𝔨 ⊕ 𝔭`.
//!
//! `K` is never materialized as a set: it is represented by `𝔨` (for sampling
//! `k = exp(Y)`) together with the fixed-point predicate `σ(k) = k`, which is
//! all the downstream operations need and stays robust when `K` is
//! disconnected.

use thiserror::Error;

use crate::liegroup::{
    self, AlgebraBasis, AlgebraElement, GroupElement, GroupError, GroupSpec,
};
use crate::numkernel::{C64, DenseMatrix, MatrixError};
use crate::tolerance::{self, Tolerances};

/// The involutive automorphisms this crate ships.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvolutionKind {
    /// `σ(g) = (gᵀ)⁻¹`.
    TransposeInverse,
    /// `σ(g) = (g*)⁻¹` with the conjugate transpose.
    ConjugateInverse,
    /// `σ(g) = s·g·s⁻¹` for a fixed group element with scalar `s²`.
    Inner,
}

/// An involution of a matrix group.
#[derive(Debug, Clone)]
pub struct Involution {
    kind: InvolutionKind,
    s: Option<GroupElement>,
}

#[derive(Debug, Clone, Error)]
pub enum TripleError {
    #[error("invalid involution: {0}")]
    InvalidInvolution(String),
    #[error("symmetric-triple validation failed: {0}")]
    ValidationFailure(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

impl Involution {
    pub fn transpose_inverse() -> Self {
        Self { kind: InvolutionKind::TransposeInverse, s: None }
    }

    pub fn conjugate_inverse() -> Self {
        Self { kind: InvolutionKind::ConjugateInverse, s: None }
    }

    /// Conjugation by `s`; requires `s²` to be a scalar multiple of the
    /// identity so that the conjugation is involutive.
    pub fn inner(s: GroupElement) -> Result<Self, TripleError> {
        let sq = s.matrix() * s.matrix();
        let c = sq.get(0, 0);
        let scalar = DenseMatrix::identity(s.spec().n()).scale(c);
        let resid = (&sq - &scalar).norm() / sq.norm().max(1.0);
        if resid > tolerance::MEMBERSHIP {
            return Err(TripleError::InvalidInvolution(format!(
                "s² is not scalar (residual {resid:.3e}), conjugation by s is not involutive"
            )));
        }
        Ok(Self { kind: InvolutionKind::Inner, s: Some(s) })
    }

    pub fn kind(&self) -> InvolutionKind {
        self.kind
    }

    pub fn inner_element(&self) -> Option<&GroupElement> {
        self.s.as_ref()
    }

    fn tag(&self) -> &'static str {
        match self.kind {
            InvolutionKind::TransposeInverse => "transpose-inverse",
            InvolutionKind::ConjugateInverse => "conjugate-inverse",
            InvolutionKind::Inner => "inner",
        }
    }
}

/// Applies `σ` to a group element.
pub fn apply_sigma(inv: &Involution, g: &GroupElement) -> Result<GroupElement, TripleError> {
    let m = sigma_matrix(inv, g.matrix())?;
    Ok(GroupElement::new_unchecked(g.spec(), m))
}

fn sigma_matrix(inv: &Involution, m: &DenseMatrix) -> Result<DenseMatrix, TripleError> {
    match inv.kind {
        InvolutionKind::TransposeInverse => Ok(m.transpose().inverse()?),
        InvolutionKind::ConjugateInverse => Ok(m.adjoint().inverse()?),
        InvolutionKind::Inner => {
            let s = inv
                .s
                .as_ref()
                .ok_or_else(|| TripleError::InvalidInvolution("Inner involution without s".into()))?;
            let s_inv = s.inverse();
            Ok(&(s.matrix() * m) * s_inv.matrix())
        }
    }
}

/// Applies the differential `dσ` to an algebra element.
pub fn dsigma_element(inv: &Involution, x: &AlgebraElement) -> Result<AlgebraElement, TripleError> {
    let m = match inv.kind {
        InvolutionKind::TransposeInverse => -&x.matrix().transpose(),
        InvolutionKind::ConjugateInverse => -&x.matrix().adjoint(),
        InvolutionKind::Inner => {
            let s = inv
                .s
                .as_ref()
                .ok_or_else(|| TripleError::InvalidInvolution("Inner involution without s".into()))?;
            &(s.matrix() * x.matrix()) * s.inverse().matrix()
        }
    };
    Ok(AlgebraElement::new_unchecked(x.spec(), m))
}

/// The matrix of `dσ` in the given basis. Squares to the identity.
pub fn dsigma_matrix(
    inv: &Involution,
    basis: &AlgebraBasis,
) -> Result<DenseMatrix, TripleError> {
    let dim = basis.dim();
    let mut out = nalgebra::DMatrix::<f64>::zeros(dim, dim);
    for (j, v) in basis.vectors().iter().enumerate() {
        let image = dsigma_element(inv, v)?;
        let column = basis.coordinates(&image)?;
        for (i, c) in column.iter().enumerate() {
            out[(i, j)] = *c;
        }
    }
    Ok(DenseMatrix::from_raw(out.map(|x| C64::new(x, 0.0)), true))
}

/// A validated `(G, σ, K)` triple with orthonormal bases of `𝔨`, `𝔭` and `𝔤`.
#[derive(Debug, Clone)]
pub struct SymmetricTriple {
    spec: GroupSpec,
    inv: Involution,
    g_basis: AlgebraBasis,
    k_basis: AlgebraBasis,
    p_basis: AlgebraBasis,
    dsigma: DenseMatrix,
    tol: Tolerances,
}

impl SymmetricTriple {
    pub fn spec(&self) -> GroupSpec {
        self.spec
    }

    pub fn involution(&self) -> &Involution {
        &self.inv
    }

    pub fn g_basis(&self) -> &AlgebraBasis {
        &self.g_basis
    }

    pub fn k_basis(&self) -> &AlgebraBasis {
        &self.k_basis
    }

    pub fn p_basis(&self) -> &AlgebraBasis {
        &self.p_basis
    }

    /// Matrix of `dσ` in the canonical `𝔤` basis.
    pub fn dsigma_matrix(&self) -> &DenseMatrix {
        &self.dsigma
    }

    pub fn dim_k(&self) -> usize {
        self.k_basis.dim()
    }

    pub fn dim_p(&self) -> usize {
        self.p_basis.dim()
    }

    pub fn tolerances(&self) -> Tolerances {
        self.tol
    }

    pub fn with_tolerances(mut self, tol: Tolerances) -> Self {
        self.tol = tol;
        self
    }

    /// Stable identifier used in reports, e.g. `su2-transpose-inverse`.
    pub fn id(&self) -> String {
        let family = match (self.spec.family(), self.spec.signature()) {
            (liegroup::GroupFamily::SpecialLinearReal, _) => format!("sl{}r", self.spec.n()),
            (liegroup::GroupFamily::SpecialUnitary, _) => format!("su{}", self.spec.n()),
            (liegroup::GroupFamily::SpecialOrthogonal, _) => format!("so{}", self.spec.n()),
            (liegroup::GroupFamily::IndefiniteOrthogonal, Some((p, q))) => format!("so{p}_{q}"),
            (liegroup::GroupFamily::IndefiniteOrthogonal, None) => unreachable!(),
        };
        format!("{family}-{}", self.inv.tag())
    }

    pub fn sigma(&self, g: &GroupElement) -> GroupElement {
        apply_sigma(&self.inv, g).expect("involution validated at construction")
    }

    pub fn dsigma(&self, x: &AlgebraElement) -> AlgebraElement {
        dsigma_element(&self.inv, x).expect("involution validated at construction")
    }

    /// `(X − dσX)/2`, the `𝔭`-component.
    pub fn project_p(&self, x: &AlgebraElement) -> AlgebraElement {
        let d = self.dsigma(x);
        AlgebraElement::new_unchecked(
            self.spec,
            (x.matrix() - d.matrix()).scale(C64::new(0.5, 0.0)),
        )
    }

    /// `(X + dσX)/2`, the `𝔨`-component.
    pub fn project_k(&self, x: &AlgebraElement) -> AlgebraElement {
        let d = self.dsigma(x);
        AlgebraElement::new_unchecked(
            self.spec,
            (x.matrix() + d.matrix()).scale(C64::new(0.5, 0.0)),
        )
    }

    /// Whether `σ(g) = g` to the membership tolerance, i.e. `g ∈ K`.
    pub fn is_sigma_fixed(&self, g: &GroupElement) -> bool {
        let s = self.sigma(g);
        (s.matrix() - g.matrix()).norm() <= self.tol.membership * g.matrix().norm().max(1.0)
    }

    /// Seeded Gaussian element of `𝔭`.
    pub fn random_p(&self, seed: u64, scale: f64) -> AlgebraElement {
        self.random_in(&self.p_basis, seed, scale)
    }

    /// Seeded Gaussian element of `𝔨`.
    pub fn random_k(&self, seed: u64, scale: f64) -> AlgebraElement {
        self.random_in(&self.k_basis, seed, scale)
    }

    /// Seeded random group element (not confined to `P` or `K`).
    pub fn random_group(&self, seed: u64, scale: f64) -> GroupElement {
        liegroup::random_element(&self.spec, seed, scale)
    }

    fn random_in(&self, basis: &AlgebraBasis, seed: u64, scale: f64) -> AlgebraElement {
        use rand::SeedableRng;
        use rand_distr::{Distribution, StandardNormal};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let coeffs: Vec<f64> = (0..basis.dim())
            .map(|_| scale * Distribution::<f64>::sample(&StandardNormal, &mut rng))
            .collect();
        basis.combination(&coeffs).expect("dimension matches")
    }
}

/// Splits `𝔤` into the ±1 eigenspaces of `dσ` and validates the triple.
///
/// The projectors `(I ± dσ)/2` are orthonormalized by a rank-revealing QR;
/// the involution identities are spot-checked on seeded samples, and the
/// bracket closure relations are verified pairwise on the bases.
pub fn split_algebra(spec: GroupSpec, inv: Involution) -> Result<SymmetricTriple, TripleError> {
    validate_involution(&spec, &inv)?;

    let g_basis = liegroup::algebra_basis(&spec);
    let dim = g_basis.dim();
    let dsigma = dsigma_matrix(&inv, &g_basis)?;

    let sq = &dsigma * &dsigma;
    let sq_resid = (&sq - &DenseMatrix::identity(dim)).norm();
    if sq_resid > tolerance::ALGEBRA * (dim as f64) {
        return Err(TripleError::ValidationFailure(format!(
            "dσ does not square to the identity (residual {sq_resid:.3e})"
        )));
    }

    let k_basis = eigenspace_basis(&spec, &g_basis, &dsigma, 1.0)?;
    let p_basis = eigenspace_basis(&spec, &g_basis, &dsigma, -1.0)?;

    if k_basis.dim() + p_basis.dim() != dim {
        return Err(TripleError::ValidationFailure(format!(
            "dim 𝔨 ({}) + dim 𝔭 ({}) != dim 𝔤 ({dim})",
            k_basis.dim(),
            p_basis.dim()
        )));
    }

    let triple = SymmetricTriple {
        spec,
        inv,
        g_basis,
        k_basis,
        p_basis,
        dsigma,
        tol: Tolerances::default(),
    };

    // dσ must be +1 on 𝔨 and −1 on 𝔭.
    for v in triple.k_basis.vectors() {
        let resid = (triple.dsigma(v).matrix() - v.matrix()).norm();
        if resid > tolerance::ALGEBRA {
            return Err(TripleError::ValidationFailure(format!(
                "dσ is not +1 on a 𝔨 basis vector (residual {resid:.3e})"
            )));
        }
    }
    for v in triple.p_basis.vectors() {
        let resid = (triple.dsigma(v).matrix() + v.matrix()).norm();
        if resid > tolerance::ALGEBRA {
            return Err(TripleError::ValidationFailure(format!(
                "dσ is not −1 on a 𝔭 basis vector (residual {resid:.3e})"
            )));
        }
    }

    check_bracket_closure(&triple)?;
    Ok(triple)
}

fn validate_involution(spec: &GroupSpec, inv: &Involution) -> Result<(), TripleError> {
    if let Some(s) = &inv.s {
        if s.spec() != *spec {
            return Err(TripleError::InvalidInvolution(
                "inner element s belongs to a different group".into(),
            ));
        }
    }
    let tol = tolerance::MEMBERSHIP;
    // σ∘σ = id and σ(gh) = σ(g)σ(h) on seeded samples; the catalog kinds are
    // exact by construction, this guards user-supplied inner elements.
    for seed in 0..20u64 {
        let g = liegroup::random_element(spec, 0x5EED_0000 + seed, 1.0);
        let sg = apply_sigma(inv, &g)?;
        if !liegroup::check_group_membership(spec, sg.matrix()).is_in() {
            return Err(TripleError::InvalidInvolution(format!(
                "σ does not preserve the group on seed {seed}"
            )));
        }
        let ssg = apply_sigma(inv, &sg)?;
        let resid = (ssg.matrix() - g.matrix()).norm() / g.matrix().norm().max(1.0);
        if resid > tol {
            return Err(TripleError::InvalidInvolution(format!(
                "σ∘σ ≠ id on seed {seed} (residual {resid:.3e})"
            )));
        }

        let h = liegroup::random_element(spec, 0xBEEF_0000 + seed, 1.0);
        let lhs = apply_sigma(inv, &(&g * &h))?;
        let rhs = &apply_sigma(inv, &g)? * &apply_sigma(inv, &h)?;
        let resid = (lhs.matrix() - rhs.matrix()).norm() / rhs.matrix().norm().max(1.0);
        if resid > tol {
            return Err(TripleError::InvalidInvolution(format!(
                "σ is not a homomorphism on seed {seed} (residual {resid:.3e})"
            )));
        }
    }
    Ok(())
}

/// Orthonormal basis of the image of `(I + sign·dσ)/2` by column-pivoted QR.
fn eigenspace_basis(
    spec: &GroupSpec,
    g_basis: &AlgebraBasis,
    dsigma: &DenseMatrix,
    sign: f64,
) -> Result<AlgebraBasis, TripleError> {
    let dim = g_basis.dim();
    let projector = nalgebra::DMatrix::<f64>::from_fn(dim, dim, |i, j| {
        let d = dsigma.get(i, j).re * sign;
        0.5 * (d + if i == j { 1.0 } else { 0.0 })
    });
    let qr = projector.clone().col_piv_qr();
    let diag = qr.r().diagonal();
    let scale = diag.iter().map(|x| x.abs()).fold(0.0f64, f64::max);
    let rank = if scale == 0.0 {
        0
    } else {
        diag.iter().filter(|x| x.abs() > tolerance::RANK * scale).count()
    };
    let q = qr.q();
    let mut vectors = Vec::with_capacity(rank);
    for col in 0..rank {
        let coords: Vec<f64> = q.column(col).iter().cloned().collect();
        vectors.push(g_basis.combination(&coords)?);
    }
    AlgebraBasis::from_vectors(*spec, vectors).map_err(TripleError::Group)
}

fn check_bracket_closure(triple: &SymmetricTriple) -> Result<(), TripleError> {
    let tol = tolerance::BRACKET_CLOSURE;
    let pairs: [(&AlgebraBasis, &AlgebraBasis, bool, &str); 3] = [
        (&triple.k_basis, &triple.k_basis, true, "[𝔨,𝔨]⊂𝔨"),
        (&triple.k_basis, &triple.p_basis, false, "[𝔨,𝔭]⊂𝔭"),
        (&triple.p_basis, &triple.p_basis, true, "[𝔭,𝔭]⊂𝔨"),
    ];
    for (left, right, lands_in_k, label) in pairs {
        for x in left.vectors() {
            for y in right.vectors() {
                let br = liegroup::bracket(x, y)?;
                let leak = if lands_in_k {
                    triple.project_p(&br)
                } else {
                    triple.project_k(&br)
                };
                let resid = leak.norm();
                if resid > tol * br.norm().max(1.0) {
                    return Err(TripleError::ValidationFailure(format!(
                        "{label} fails (leak {resid:.3e})"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// The built-in triples shipped with the crate.
pub mod catalog {
    use super::*;

    /// SL(2,ℝ) with `σ(g) = (gᵀ)⁻¹`; `K = SO(2)`.
    pub fn sl2() -> SymmetricTriple {
        split_algebra(GroupSpec::sl_real(2).unwrap(), Involution::transpose_inverse())
            .expect("built-in triple validates")
    }

    /// SL(3,ℝ) with `σ(g) = (gᵀ)⁻¹`; `K = SO(3)`.
    pub fn sl3() -> SymmetricTriple {
        split_algebra(GroupSpec::sl_real(3).unwrap(), Involution::transpose_inverse())
            .expect("built-in triple validates")
    }

    /// SU(2) with `σ(g) = (gᵀ)⁻¹`; `K = SO(2)`.
    pub fn su2() -> SymmetricTriple {
        split_algebra(GroupSpec::su(2).unwrap(), Involution::transpose_inverse())
            .expect("built-in triple validates")
    }

    /// SU(3) with `σ(g) = (gᵀ)⁻¹`; `K = SO(3)`.
    pub fn su3() -> SymmetricTriple {
        split_algebra(GroupSpec::su(3).unwrap(), Involution::transpose_inverse())
            .expect("built-in triple validates")
    }

    /// SO(5) with `σ(g) = sgs`, `s = diag(1,−1,−1,−1,−1)`.
    pub fn so5_inner() -> SymmetricTriple {
        let spec = GroupSpec::so(5).unwrap();
        let s = GroupElement::new(
            spec,
            DenseMatrix::from_diagonal(&[1.0, -1.0, -1.0, -1.0, -1.0]),
        )
        .unwrap();
        split_algebra(spec, Involution::inner(s).unwrap()).expect("built-in triple validates")
    }

    /// Every built-in triple, in a fixed order.
    pub fn all() -> Vec<SymmetricTriple> {
        vec![sl2(), sl3(), su2(), su3(), so5_inner()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel;

    #[test]
    fn sigma_fixes_identity() {
        for triple in catalog::all() {
            let e = GroupElement::identity(triple.spec());
            let se = triple.sigma(&e);
            assert!((se.matrix() - e.matrix()).norm() < 1e-12, "{}", triple.id());
        }
    }

    #[test]
    fn su2_transpose_inverse_on_diagonal_phases() {
        let triple = catalog::su2();
        let theta = 0.9f64;
        let g = GroupElement::new(
            triple.spec(),
            DenseMatrix::from_complex(
                2,
                2,
                &[
                    C64::from_polar(1.0, theta),
                    C64::new(0.0, 0.0),
                    C64::new(0.0, 0.0),
                    C64::from_polar(1.0, -theta),
                ],
            )
            .unwrap(),
        )
        .unwrap();
        let sg = triple.sigma(&g);
        assert!((sg.matrix().get(0, 0) - C64::from_polar(1.0, -theta)).norm() < 1e-12);
        assert!((sg.matrix().get(1, 1) - C64::from_polar(1.0, theta)).norm() < 1e-12);
    }

    #[test]
    fn so5_inner_sigma_is_involutive_on_seeded_samples() {
        let triple = catalog::so5_inner();
        for seed in 0..10 {
            let g = triple.random_group(seed, 1.0);
            let back = triple.sigma(&triple.sigma(&g));
            assert!((back.matrix() - g.matrix()).norm() < 1e-9 * g.matrix().norm());
        }
    }

    #[test]
    fn dsigma_squares_to_identity() {
        for triple in catalog::all() {
            let d = triple.dsigma_matrix();
            let dim = triple.g_basis().dim();
            assert!(
                (&(d * d) - &DenseMatrix::identity(dim)).norm() < 1e-10 * dim as f64,
                "{}",
                triple.id()
            );
        }
    }

    #[test]
    fn sl2_dsigma_eigenvalue_pattern() {
        // For sl(2,ℝ) under (gᵀ)⁻¹ the antisymmetric generator is fixed and
        // the two symmetric ones are negated: eigenvalues (1, −1, −1).
        let triple = catalog::sl2();
        assert_eq!(triple.dim_k(), 1);
        assert_eq!(triple.dim_p(), 2);
        let trace = triple.dsigma_matrix().trace();
        assert!((trace.re + 1.0).abs() < 1e-12);
    }

    #[test]
    fn so5_inner_split_dims_and_dsigma_trace() {
        // 𝔨 = so(4)⊕so(1) has dimension 6, 𝔭 the 1x4 cross block dimension 4,
        // so tr dσ = 6 − 4 = 2; cross-checked by counting eigenvalues.
        let triple = catalog::so5_inner();
        assert_eq!(triple.dim_k(), 6);
        assert_eq!(triple.dim_p(), 4);
        let trace = triple.dsigma_matrix().trace();
        assert!((trace.re - 2.0).abs() < 1e-10);
        let eigs = numkernel::eigenvalues(triple.dsigma_matrix()).unwrap();
        let plus = eigs.iter().filter(|l| (l.re - 1.0).abs() < 1e-8).count();
        let minus = eigs.iter().filter(|l| (l.re + 1.0).abs() < 1e-8).count();
        assert_eq!((plus, minus), (6, 4));
    }

    #[test]
    fn su2_split_dims() {
        let triple = catalog::su2();
        assert_eq!(triple.dim_k(), 1);
        assert_eq!(triple.dim_p(), 2);
    }

    #[test]
    fn projections_sum_to_identity_and_land_in_eigenspaces() {
        for triple in catalog::all() {
            for seed in 0..5 {
                let x = liegroup::random_algebra_element(&triple.spec(), seed, 1.0);
                let p = triple.project_p(&x);
                let k = triple.project_k(&x);
                assert!((&(p.matrix() + k.matrix()) - x.matrix()).norm() < 1e-12 * x.norm().max(1.0));
                assert!((triple.dsigma(&p).matrix() + p.matrix()).norm() < 1e-10 * p.norm().max(1.0));
                assert!((triple.dsigma(&k).matrix() - k.matrix()).norm() < 1e-10 * k.norm().max(1.0));
            }
        }
    }

    #[test]
    fn projection_is_identity_on_p_elements() {
        let triple = catalog::su3();
        let x = triple.random_p(7, 1.0);
        let p = triple.project_p(&x);
        let k = triple.project_k(&x);
        assert!((p.matrix() - x.matrix()).norm() < 1e-12 * x.norm());
        assert!(k.norm() < 1e-12 * x.norm().max(1.0));
    }

    #[test]
    fn exp_commutes_with_sigma_through_dsigma() {
        // exp(dσX) = σ(exp X) on seeded samples.
        for triple in catalog::all() {
            for seed in 0..5 {
                let x = liegroup::random_algebra_element(&triple.spec(), seed, 1.0);
                let lhs = triple.dsigma(&x).exp();
                let rhs = triple.sigma(&x.exp());
                assert!(
                    (lhs.matrix() - rhs.matrix()).norm() <= 1e-8 * rhs.matrix().norm(),
                    "{} seed {seed}",
                    triple.id()
                );
            }
        }
    }

    #[test]
    fn adjoint_of_k_preserves_p() {
        for triple in catalog::all() {
            for seed in 0..5 {
                let k = triple.random_k(seed, 1.0).exp();
                let k_inv = k.inverse();
                for v in triple.p_basis().vectors() {
                    let moved = &(k.matrix() * v.matrix()) * k_inv.matrix();
                    let moved = AlgebraElement::new_unchecked(triple.spec(), moved);
                    let leak = triple.project_k(&moved);
                    assert!(
                        leak.norm() <= 1e-8,
                        "{} seed {seed}: Ad(k) leaks out of 𝔭 by {:.3e}",
                        triple.id(),
                        leak.norm()
                    );
                }
            }
        }
    }

    #[test]
    fn inner_involution_requires_scalar_square() {
        let spec = GroupSpec::so(3).unwrap();
        // A generic rotation squares to another rotation, not a scalar.
        let g = liegroup::random_element(&spec, 1, 0.8);
        assert!(matches!(Involution::inner(g), Err(TripleError::InvalidInvolution(_))));
    }

    #[test]
    fn conjugate_inverse_degenerates_on_su() {
        // On SU(n), (g*)⁻¹ = g, so the whole algebra is fixed and 𝔭 = 0.
        let triple =
            split_algebra(GroupSpec::su(2).unwrap(), Involution::conjugate_inverse()).unwrap();
        assert_eq!(triple.dim_k(), 3);
        assert_eq!(triple.dim_p(), 0);
    }
}
