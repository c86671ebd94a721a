//! Descriptors for the supported classical matrix groups, their Lie algebra
//! bases, membership checks, adjoint representations, and seeded random
//! sampling.
//!
//! Every algebra here is a real vector space of matrices; bases are
//! orthonormal under the real inner product `⟨X,Y⟩ = Re tr(X*Y)`, so numerical
//! rank tests downstream stay well-conditioned.

use nalgebra::DVector;
use rand::SeedableRng;
use rand_distr::{Distribution, StandardNormal};
use thiserror::Error;

use crate::numkernel::{self, C64, CMat, DenseMatrix, MatrixError};
use crate::tolerance;

/// The classical families the crate supports. The orthogonal families always
/// mean the identity component (determinant +1, and for the indefinite form
/// the component reachable from the exponential).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupFamily {
    /// SL(n,ℝ): real matrices of determinant one.
    SpecialLinearReal,
    /// SU(n): complex unitary matrices of determinant one.
    SpecialUnitary,
    /// SO(n): real orthogonal matrices of determinant one.
    SpecialOrthogonal,
    /// SO(p,q): the identity component of the indefinite orthogonal group
    /// preserving `J = diag(I_p, −I_q)`.
    IndefiniteOrthogonal,
}

/// Which classical matrix group: family, size, and (for SO(p,q)) signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    family: GroupFamily,
    n: usize,
    signature: Option<(usize, usize)>,
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum GroupError {
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),
    #[error("expected a {expected_rows}x{expected_cols} matrix, got {rows}x{cols}")]
    ShapeMismatch { expected_rows: usize, expected_cols: usize, rows: usize, cols: usize },
    #[error("operands belong to different group specs")]
    SpecMismatch,
    #[error("matrix is not in the group: {relation} has residual {residual:.3e}")]
    NotInGroup { relation: String, residual: f64 },
    #[error("matrix is not in the Lie algebra: {relation} has residual {residual:.3e}")]
    NotInAlgebra { relation: String, residual: f64 },
    #[error("basis vectors are not linearly independent")]
    DependentBasis,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

impl GroupSpec {
    pub fn sl_real(n: usize) -> Result<Self, GroupError> {
        if n < 1 {
            return Err(GroupError::InvalidSpec("SL(n,R) needs n >= 1".into()));
        }
        Ok(Self { family: GroupFamily::SpecialLinearReal, n, signature: None })
    }

    pub fn su(n: usize) -> Result<Self, GroupError> {
        if n < 2 {
            return Err(GroupError::InvalidSpec("SU(n) needs n >= 2".into()));
        }
        Ok(Self { family: GroupFamily::SpecialUnitary, n, signature: None })
    }

    pub fn so(n: usize) -> Result<Self, GroupError> {
        if n < 2 {
            return Err(GroupError::InvalidSpec("SO(n) needs n >= 2".into()));
        }
        Ok(Self { family: GroupFamily::SpecialOrthogonal, n, signature: None })
    }

    pub fn so_indefinite(p: usize, q: usize) -> Result<Self, GroupError> {
        if p < 1 || q < 1 {
            return Err(GroupError::InvalidSpec("SO(p,q) needs p >= 1 and q >= 1".into()));
        }
        Ok(Self { family: GroupFamily::IndefiniteOrthogonal, n: p + q, signature: Some((p, q)) })
    }

    pub fn family(&self) -> GroupFamily {
        self.family
    }

    /// Matrix size n.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn signature(&self) -> Option<(usize, usize)> {
        self.signature
    }

    /// Whether the ground field is ℝ.
    pub fn is_real(&self) -> bool {
        !matches!(self.family, GroupFamily::SpecialUnitary)
    }

    /// Dimension of the Lie algebra as a real vector space.
    pub fn algebra_dim(&self) -> usize {
        match self.family {
            GroupFamily::SpecialLinearReal | GroupFamily::SpecialUnitary => self.n * self.n - 1,
            GroupFamily::SpecialOrthogonal | GroupFamily::IndefiniteOrthogonal => {
                self.n * (self.n - 1) / 2
            }
        }
    }

    /// The indefinite form `J = diag(I_p, −I_q)`; identity for the other
    /// families.
    pub fn form_matrix(&self) -> DenseMatrix {
        match self.signature {
            Some((p, q)) => {
                let diag: Vec<f64> =
                    (0..p).map(|_| 1.0).chain((0..q).map(|_| -1.0)).collect();
                DenseMatrix::from_diagonal(&diag)
            }
            None => DenseMatrix::identity(self.n),
        }
    }
}

impl std::fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.family {
            GroupFamily::SpecialLinearReal => write!(f, "SL({},R)", self.n),
            GroupFamily::SpecialUnitary => write!(f, "SU({})", self.n),
            GroupFamily::SpecialOrthogonal => write!(f, "SO({})", self.n),
            GroupFamily::IndefiniteOrthogonal => {
                let (p, q) = self.signature.unwrap();
                write!(f, "SO({p},{q})")
            }
        }
    }
}

/// Tri-state answer of a membership test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    In,
    Out,
    Indeterminate,
}

/// What backs a verdict up: a logarithm certificate, the worst residual seen,
/// or the reason no decision was reached.
#[derive(Debug, Clone)]
pub enum Witness {
    /// An `X ∈ 𝔭` with `exp(X)` equal to the tested element.
    LogCertificate(AlgebraElement),
    /// The (violated or satisfied) relation and its relative residual.
    Residual { relation: String, residual: f64 },
    /// Why the test could not decide.
    Failure { reason: String },
}

#[derive(Debug, Clone)]
pub struct MembershipVerdict {
    pub verdict: Verdict,
    pub witness: Witness,
}

impl MembershipVerdict {
    pub fn is_in(&self) -> bool {
        self.verdict == Verdict::In
    }

    pub fn certificate(&self) -> Option<&AlgebraElement> {
        match &self.witness {
            Witness::LogCertificate(x) => Some(x),
            _ => None,
        }
    }

    pub(crate) fn in_with_residual(relation: &str, residual: f64) -> Self {
        Self {
            verdict: Verdict::In,
            witness: Witness::Residual { relation: relation.into(), residual },
        }
    }

    pub(crate) fn out(relation: &str, residual: f64) -> Self {
        Self {
            verdict: Verdict::Out,
            witness: Witness::Residual { relation: relation.into(), residual },
        }
    }
}

/// A validated element of a classical matrix group.
#[derive(Debug, Clone)]
pub struct GroupElement {
    spec: GroupSpec,
    m: DenseMatrix,
}

impl GroupElement {
    /// Validates the defining relations before wrapping the matrix.
    pub fn new(spec: GroupSpec, m: DenseMatrix) -> Result<Self, GroupError> {
        require_shape(&spec, &m)?;
        match check_group_membership(&spec, &m) {
            v if v.is_in() => Ok(Self { spec, m }),
            v => match v.witness {
                Witness::Residual { relation, residual } => {
                    Err(GroupError::NotInGroup { relation, residual })
                }
                _ => Err(GroupError::NotInGroup { relation: "membership".into(), residual: f64::NAN }),
            },
        }
    }

    pub(crate) fn new_unchecked(spec: GroupSpec, m: DenseMatrix) -> Self {
        Self { spec, m }
    }

    pub fn identity(spec: GroupSpec) -> Self {
        Self { spec, m: DenseMatrix::identity(spec.n()) }
    }

    pub fn spec(&self) -> GroupSpec {
        self.spec
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.m
    }

    pub fn inverse(&self) -> GroupElement {
        let inv = self.m.inverse().expect("validated group elements are invertible");
        Self { spec: self.spec, m: inv }
    }

    /// Relative Frobenius distance to another element.
    pub fn distance(&self, other: &GroupElement) -> f64 {
        (&self.m - &other.m).norm() / self.m.norm().max(1.0)
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        (&self.m - &DenseMatrix::identity(self.spec.n())).norm() <= tol * (self.spec.n() as f64).sqrt()
    }
}

impl std::ops::Mul for &GroupElement {
    type Output = GroupElement;
    fn mul(self, rhs: &GroupElement) -> GroupElement {
        assert_eq!(self.spec, rhs.spec, "group elements from different specs");
        GroupElement { spec: self.spec, m: &self.m * &rhs.m }
    }
}

/// A validated element of the Lie algebra of a [`GroupSpec`].
#[derive(Debug, Clone)]
pub struct AlgebraElement {
    spec: GroupSpec,
    m: DenseMatrix,
}

impl AlgebraElement {
    pub fn new(spec: GroupSpec, m: DenseMatrix) -> Result<Self, GroupError> {
        require_shape(&spec, &m)?;
        check_algebra_relations(&spec, &m)?;
        Ok(Self { spec, m })
    }

    pub(crate) fn new_unchecked(spec: GroupSpec, m: DenseMatrix) -> Self {
        Self { spec, m }
    }

    pub fn zero(spec: GroupSpec) -> Self {
        Self { spec, m: DenseMatrix::zeros(spec.n(), spec.n()) }
    }

    pub fn spec(&self) -> GroupSpec {
        self.spec
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.m
    }

    pub fn norm(&self) -> f64 {
        self.m.norm()
    }

    pub fn scale(&self, t: f64) -> AlgebraElement {
        Self { spec: self.spec, m: self.m.scale(C64::new(t, 0.0)) }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        Self { spec: self.spec, m: &self.m + &other.m }
    }

    /// Exponentiates into the group.
    pub fn exp(&self) -> GroupElement {
        let e = numkernel::mat_exp(&self.m).expect("algebra elements are square");
        GroupElement { spec: self.spec, m: e }
    }
}

/// An ordered, orthonormal list of algebra elements spanning a subspace.
#[derive(Debug, Clone)]
pub struct AlgebraBasis {
    spec: GroupSpec,
    vectors: Vec<AlgebraElement>,
}

impl AlgebraBasis {
    /// Wraps basis vectors after checking linear independence through the
    /// rank of their Gram matrix.
    pub fn from_vectors(spec: GroupSpec, vectors: Vec<AlgebraElement>) -> Result<Self, GroupError> {
        if vectors.iter().any(|v| v.spec != spec) {
            return Err(GroupError::SpecMismatch);
        }
        let dim = vectors.len();
        if dim > 0 {
            let gram = DenseMatrix::from_raw(
                CMat::from_fn(dim, dim, |i, j| {
                    C64::new(vectors[i].matrix().inner(vectors[j].matrix()), 0.0)
                }),
                true,
            );
            if numkernel::rank(&gram, tolerance::RANK) < dim {
                return Err(GroupError::DependentBasis);
            }
        }
        Ok(Self { spec, vectors })
    }

    pub fn spec(&self) -> GroupSpec {
        self.spec
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[AlgebraElement] {
        &self.vectors
    }

    /// Coordinates of `x` in this basis, solving through the Gram matrix so
    /// non-orthonormal bases still work.
    pub fn coordinates(&self, x: &AlgebraElement) -> Result<Vec<f64>, GroupError> {
        if x.spec != self.spec {
            return Err(GroupError::SpecMismatch);
        }
        let dim = self.dim();
        if dim == 0 {
            return Ok(Vec::new());
        }
        let gram = nalgebra::DMatrix::<f64>::from_fn(dim, dim, |i, j| {
            self.vectors[i].matrix().inner(self.vectors[j].matrix())
        });
        let rhs = DVector::<f64>::from_fn(dim, |i, _| self.vectors[i].matrix().inner(x.matrix()));
        let sol = gram
            .lu()
            .solve(&rhs)
            .ok_or(GroupError::DependentBasis)?;
        Ok(sol.iter().cloned().collect())
    }

    /// The combination `Σ cᵢ·vᵢ`.
    pub fn combination(&self, coeffs: &[f64]) -> Result<AlgebraElement, GroupError> {
        if coeffs.len() != self.dim() {
            return Err(GroupError::InvalidSpec(format!(
                "expected {} coefficients, got {}",
                self.dim(),
                coeffs.len()
            )));
        }
        let n = self.spec.n();
        let mut acc = CMat::zeros(n, n);
        for (c, v) in coeffs.iter().zip(&self.vectors) {
            acc += v.matrix().raw() * C64::new(*c, 0.0);
        }
        Ok(AlgebraElement { spec: self.spec, m: DenseMatrix::from_raw(acc, self.spec.is_real()) })
    }
}

fn require_shape(spec: &GroupSpec, m: &DenseMatrix) -> Result<(), GroupError> {
    if m.rows() != spec.n() || m.cols() != spec.n() {
        return Err(GroupError::ShapeMismatch {
            expected_rows: spec.n(),
            expected_cols: spec.n(),
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok(())
}

/// Checks the defining relations of the group at relative tolerance
/// [`tolerance::MEMBERSHIP`]. Never returns `Indeterminate`.
pub fn check_group_membership(spec: &GroupSpec, m: &DenseMatrix) -> MembershipVerdict {
    if m.rows() != spec.n() || m.cols() != spec.n() {
        return MembershipVerdict::out("matrix shape", f64::INFINITY);
    }
    let tol = tolerance::MEMBERSHIP;
    let n = spec.n();
    let sqrt_n = (n as f64).sqrt();
    let mut worst = 0.0f64;

    if spec.is_real() {
        let imag = m.max_imag();
        if imag > tolerance::REAL_COLLAPSE {
            return MembershipVerdict::out("real entries", imag);
        }
    }

    match spec.family() {
        GroupFamily::SpecialLinearReal => {
            let det = m.determinant().unwrap();
            let resid = (det - C64::new(1.0, 0.0)).norm();
            if resid > tol {
                return MembershipVerdict::out("det = 1", resid);
            }
            worst = worst.max(resid);
        }
        GroupFamily::SpecialUnitary => {
            let gram = &m.adjoint() * m;
            let resid = (&gram - &DenseMatrix::identity(n)).norm() / sqrt_n;
            if resid > tol {
                return MembershipVerdict::out("m*·m = I", resid);
            }
            worst = worst.max(resid);
            let det = m.determinant().unwrap();
            let dresid = (det - C64::new(1.0, 0.0)).norm();
            if dresid > tol {
                return MembershipVerdict::out("det = 1", dresid);
            }
            worst = worst.max(dresid);
        }
        GroupFamily::SpecialOrthogonal => {
            let gram = &m.transpose() * m;
            let resid = (&gram - &DenseMatrix::identity(n)).norm() / sqrt_n;
            if resid > tol {
                return MembershipVerdict::out("mᵀ·m = I", resid);
            }
            worst = worst.max(resid);
            let det = m.determinant().unwrap();
            let dresid = (det - C64::new(1.0, 0.0)).norm();
            if dresid > tol {
                return MembershipVerdict::out("det = 1", dresid);
            }
            worst = worst.max(dresid);
        }
        GroupFamily::IndefiniteOrthogonal => {
            let j = spec.form_matrix();
            let gram = &(&m.transpose() * &j) * m;
            let resid = (&gram - &j).norm() / sqrt_n;
            if resid > tol {
                return MembershipVerdict::out("mᵀ·J·m = J", resid);
            }
            worst = worst.max(resid);
            // Only determinant-level detection of the identity component is
            // possible here; elements of SO(p,q) outside the identity
            // component with det +1 pass through, which the exp-based
            // samplers never produce.
            let det = m.determinant().unwrap();
            let dresid = (det - C64::new(1.0, 0.0)).norm();
            if dresid > tol {
                return MembershipVerdict::out("det = 1 (identity component)", dresid);
            }
            worst = worst.max(dresid);
        }
    }
    MembershipVerdict::in_with_residual("group relations", worst)
}

fn check_algebra_relations(spec: &GroupSpec, m: &DenseMatrix) -> Result<(), GroupError> {
    let tol = tolerance::ALGEBRA * m.norm().max(1.0);
    if spec.is_real() {
        let imag = m.max_imag();
        if imag > tol {
            return Err(GroupError::NotInAlgebra { relation: "real entries".into(), residual: imag });
        }
    }
    match spec.family() {
        GroupFamily::SpecialLinearReal => {
            let tr = m.trace().norm();
            if tr > tol {
                return Err(GroupError::NotInAlgebra { relation: "trace 0".into(), residual: tr });
            }
        }
        GroupFamily::SpecialUnitary => {
            let anti = (&m.adjoint() + m).norm();
            if anti > tol {
                return Err(GroupError::NotInAlgebra {
                    relation: "anti-hermitian".into(),
                    residual: anti,
                });
            }
            let tr = m.trace().norm();
            if tr > tol {
                return Err(GroupError::NotInAlgebra { relation: "trace 0".into(), residual: tr });
            }
        }
        GroupFamily::SpecialOrthogonal => {
            let sym = (&m.transpose() + m).norm();
            if sym > tol {
                return Err(GroupError::NotInAlgebra {
                    relation: "antisymmetric".into(),
                    residual: sym,
                });
            }
        }
        GroupFamily::IndefiniteOrthogonal => {
            let j = spec.form_matrix();
            let resid = (&(&m.transpose() * &j) + &(&j * m)).norm();
            if resid > tol {
                return Err(GroupError::NotInAlgebra {
                    relation: "mᵀJ + Jm = 0".into(),
                    residual: resid,
                });
            }
        }
    }
    Ok(())
}

/// The deterministic canonical basis of the Lie algebra, orthonormal under
/// `⟨X,Y⟩ = Re tr(X*Y)`.
pub fn algebra_basis(spec: &GroupSpec) -> AlgebraBasis {
    let n = spec.n();
    let mut vectors: Vec<AlgebraElement> = Vec::with_capacity(spec.algebra_dim());
    let real = |entries: CMat| DenseMatrix::from_raw(entries, true);
    let complex = |entries: CMat| DenseMatrix::from_raw(entries, false);
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;

    let elementary = |i: usize, j: usize, v: C64| {
        let mut m = CMat::zeros(n, n);
        m[(i, j)] = v;
        m
    };
    // Traceless diagonal ladder diag(1,…,1,−k,0,…)/√(k(k+1)).
    let diag_ladder = |k: usize| {
        let mut m = CMat::zeros(n, n);
        let norm = (k as f64 * (k as f64 + 1.0)).sqrt();
        for i in 0..k {
            m[(i, i)] = C64::new(1.0 / norm, 0.0);
        }
        m[(k, k)] = C64::new(-(k as f64) / norm, 0.0);
        m
    };

    match spec.family() {
        GroupFamily::SpecialLinearReal => {
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        vectors.push(AlgebraElement::new_unchecked(
                            *spec,
                            real(elementary(i, j, C64::new(1.0, 0.0))),
                        ));
                    }
                }
            }
            for k in 1..n {
                vectors.push(AlgebraElement::new_unchecked(*spec, real(diag_ladder(k))));
            }
        }
        GroupFamily::SpecialUnitary => {
            for i in 0..n {
                for j in (i + 1)..n {
                    let mut anti = CMat::zeros(n, n);
                    anti[(i, j)] = C64::new(inv_sqrt2, 0.0);
                    anti[(j, i)] = C64::new(-inv_sqrt2, 0.0);
                    vectors.push(AlgebraElement::new_unchecked(*spec, complex(anti)));
                }
            }
            for i in 0..n {
                for j in (i + 1)..n {
                    let mut sym = CMat::zeros(n, n);
                    sym[(i, j)] = C64::new(0.0, inv_sqrt2);
                    sym[(j, i)] = C64::new(0.0, inv_sqrt2);
                    vectors.push(AlgebraElement::new_unchecked(*spec, complex(sym)));
                }
            }
            for k in 1..n {
                let d = diag_ladder(k) * C64::new(0.0, 1.0);
                vectors.push(AlgebraElement::new_unchecked(*spec, complex(d)));
            }
        }
        GroupFamily::SpecialOrthogonal => {
            for i in 0..n {
                for j in (i + 1)..n {
                    let mut anti = CMat::zeros(n, n);
                    anti[(i, j)] = C64::new(inv_sqrt2, 0.0);
                    anti[(j, i)] = C64::new(-inv_sqrt2, 0.0);
                    vectors.push(AlgebraElement::new_unchecked(*spec, real(anti)));
                }
            }
        }
        GroupFamily::IndefiniteOrthogonal => {
            let (p, _q) = spec.signature().unwrap();
            let in_same_block = |i: usize, j: usize| (i < p) == (j < p);
            for i in 0..n {
                for j in (i + 1)..n {
                    let mut m = CMat::zeros(n, n);
                    if in_same_block(i, j) {
                        m[(i, j)] = C64::new(inv_sqrt2, 0.0);
                        m[(j, i)] = C64::new(-inv_sqrt2, 0.0);
                    } else {
                        m[(i, j)] = C64::new(inv_sqrt2, 0.0);
                        m[(j, i)] = C64::new(inv_sqrt2, 0.0);
                    }
                    vectors.push(AlgebraElement::new_unchecked(*spec, real(m)));
                }
            }
        }
    }

    debug_assert_eq!(vectors.len(), spec.algebra_dim());
    AlgebraBasis { spec: *spec, vectors }
}

/// Lie bracket `XY − YX`.
pub fn bracket(x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement, GroupError> {
    if x.spec != y.spec {
        return Err(GroupError::SpecMismatch);
    }
    let m = &(x.matrix() * y.matrix()) - &(y.matrix() * x.matrix());
    Ok(AlgebraElement { spec: x.spec, m })
}

/// The matrix of `Ad(g): X ↦ gXg⁻¹` in the given basis. Real because every
/// supported algebra is a real vector space preserved by conjugation.
pub fn adjoint_matrix(g: &GroupElement, basis: &AlgebraBasis) -> Result<DenseMatrix, GroupError> {
    if g.spec != basis.spec() {
        return Err(GroupError::SpecMismatch);
    }
    let dim = basis.dim();
    let inv = g.inverse();
    let mut out = nalgebra::DMatrix::<f64>::zeros(dim, dim);
    for (j, v) in basis.vectors().iter().enumerate() {
        let conjugated = &(g.matrix() * v.matrix()) * inv.matrix();
        let column = basis.coordinates(&AlgebraElement {
            spec: g.spec,
            m: conjugated,
        })?;
        for (i, c) in column.iter().enumerate() {
            out[(i, j)] = *c;
        }
    }
    Ok(DenseMatrix::from_raw(out.map(|x| C64::new(x, 0.0)), true))
}

/// The matrix of `ad(x) = [x, ·]` in the given basis.
pub fn ad_matrix(x: &AlgebraElement, basis: &AlgebraBasis) -> Result<DenseMatrix, GroupError> {
    if x.spec != basis.spec() {
        return Err(GroupError::SpecMismatch);
    }
    let dim = basis.dim();
    let mut out = nalgebra::DMatrix::<f64>::zeros(dim, dim);
    for (j, v) in basis.vectors().iter().enumerate() {
        let br = bracket(x, v)?;
        let column = basis.coordinates(&br)?;
        for (i, c) in column.iter().enumerate() {
            out[(i, j)] = *c;
        }
    }
    Ok(DenseMatrix::from_raw(out.map(|x| C64::new(x, 0.0)), true))
}

/// A seeded Gaussian combination of the canonical basis with standard
/// deviation `scale`. Deterministic in `(spec, seed, scale)`.
pub fn random_algebra_element(spec: &GroupSpec, seed: u64, scale: f64) -> AlgebraElement {
    let basis = algebra_basis(spec);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let normal = StandardNormal;
    let coeffs: Vec<f64> = (0..basis.dim())
        .map(|_| scale * Distribution::<f64>::sample(&normal, &mut rng))
        .collect();
    basis.combination(&coeffs).expect("coefficient count matches basis dimension")
}

/// `exp` of a seeded Gaussian algebra element; always passes the membership
/// check, and `scale = 0` gives the identity.
pub fn random_element(spec: &GroupSpec, seed: u64, scale: f64) -> GroupElement {
    random_algebra_element(spec, seed, scale).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_dimensions() {
        assert_eq!(algebra_basis(&GroupSpec::sl_real(2).unwrap()).dim(), 3);
        assert_eq!(algebra_basis(&GroupSpec::so(5).unwrap()).dim(), 10);
        assert_eq!(algebra_basis(&GroupSpec::su(2).unwrap()).dim(), 3);
        assert_eq!(algebra_basis(&GroupSpec::su(3).unwrap()).dim(), 8);
        assert_eq!(algebra_basis(&GroupSpec::so_indefinite(2, 1).unwrap()).dim(), 3);
    }

    #[test]
    fn canonical_bases_are_orthonormal_and_in_algebra() {
        for spec in [
            GroupSpec::sl_real(3).unwrap(),
            GroupSpec::su(3).unwrap(),
            GroupSpec::so(4).unwrap(),
            GroupSpec::so_indefinite(2, 2).unwrap(),
        ] {
            let basis = algebra_basis(&spec);
            for (i, v) in basis.vectors().iter().enumerate() {
                check_algebra_relations(&spec, v.matrix()).unwrap();
                for (j, w) in basis.vectors().iter().enumerate() {
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!(
                        (v.matrix().inner(w.matrix()) - want).abs() < 1e-12,
                        "{spec}: gram({i},{j})"
                    );
                }
            }
        }
    }

    #[test]
    fn membership_trivial_cases() {
        let su2 = GroupSpec::su(2).unwrap();
        assert!(check_group_membership(&su2, &DenseMatrix::identity(2)).is_in());

        let sl2 = GroupSpec::sl_real(2).unwrap();
        let bad = DenseMatrix::from_diagonal(&[2.0, 1.0]);
        let verdict = check_group_membership(&sl2, &bad);
        assert_eq!(verdict.verdict, Verdict::Out);
        match verdict.witness {
            Witness::Residual { relation, residual } => {
                assert!(relation.contains("det"));
                assert!((residual - 1.0).abs() < 1e-12);
            }
            _ => panic!("expected residual witness"),
        }

        let so3 = GroupSpec::so(3).unwrap();
        let t: f64 = 0.7;
        let rot = DenseMatrix::from_real(
            3,
            3,
            &[t.cos(), -t.sin(), 0.0, t.sin(), t.cos(), 0.0, 0.0, 0.0, 1.0],
        )
        .unwrap();
        assert!(check_group_membership(&so3, &rot).is_in());
    }

    #[test]
    fn bracket_antisymmetry_and_su2_structure() {
        let su2 = GroupSpec::su(2).unwrap();
        let x = random_algebra_element(&su2, 3, 1.0);
        let self_bracket = bracket(&x, &x).unwrap();
        assert!(self_bracket.norm() < 1e-12);

        // su(2) in the canonical basis (e1 antisymmetric, e2 i-symmetric,
        // e3 i-diagonal): [e1,e2] = √2·e3, [e2,e3] = √2·e1, [e3,e1] = √2·e2.
        // Verified against direct matrix multiplication.
        let basis = algebra_basis(&su2);
        let e = basis.vectors();
        let cases = [(0, 1, 2), (1, 2, 0), (2, 0, 1)];
        for (a, b, c) in cases {
            let br = bracket(&e[a], &e[b]).unwrap();
            let direct = &(e[a].matrix() * e[b].matrix()) - &(e[b].matrix() * e[a].matrix());
            assert!((&direct - &br.matrix().clone()).norm() < 1e-14);
            let coords = basis.coordinates(&br).unwrap();
            for (k, coord) in coords.iter().enumerate() {
                let want = if k == c { std::f64::consts::SQRT_2 } else { 0.0 };
                assert!(
                    (coord - want).abs() < 1e-12,
                    "structure constant [{a},{b}] -> {k}: got {coord}, want {want}"
                );
            }
        }
    }

    #[test]
    fn bracket_bilinear_antisymmetric_on_seeded_pairs() {
        let so4 = GroupSpec::so(4).unwrap();
        for seed in 0..10 {
            let x = random_algebra_element(&so4, seed, 1.0);
            let y = random_algebra_element(&so4, seed + 100, 1.0);
            let xy = bracket(&x, &y).unwrap();
            let yx = bracket(&y, &x).unwrap();
            assert!(xy.add(&yx).norm() < 1e-12);
        }
    }

    #[test]
    fn adjoint_of_identity_is_identity() {
        let so3 = GroupSpec::so(3).unwrap();
        let basis = algebra_basis(&so3);
        let ad = adjoint_matrix(&GroupElement::identity(so3), &basis).unwrap();
        assert!((&ad - &DenseMatrix::identity(3)).norm() < 1e-12);
    }

    #[test]
    fn adjoint_respects_inverses() {
        let su3 = GroupSpec::su(3).unwrap();
        let basis = algebra_basis(&su3);
        let g = random_element(&su3, 17, 1.0);
        let a = adjoint_matrix(&g, &basis).unwrap();
        let b = adjoint_matrix(&g.inverse(), &basis).unwrap();
        assert!((&(&a * &b) - &DenseMatrix::identity(basis.dim())).norm() < 1e-8);
    }

    #[test]
    fn adjoint_of_so3_element_is_orthogonal_and_matches_direct_conjugation() {
        let so3 = GroupSpec::so(3).unwrap();
        let basis = algebra_basis(&so3);
        let g = random_element(&so3, 4, 1.0);
        let ad = adjoint_matrix(&g, &basis).unwrap();
        let gram = &ad.transpose() * &ad;
        assert!((&gram - &DenseMatrix::identity(3)).norm() < 1e-9);

        // Direct conjugation oracle, one basis vector at a time.
        let inv = g.inverse();
        for (j, v) in basis.vectors().iter().enumerate() {
            let conj = &(g.matrix() * v.matrix()) * inv.matrix();
            for i in 0..3 {
                let coord = basis.vectors()[i].matrix().inner(&conj);
                assert!((coord - ad.get(i, j).re).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn random_element_is_deterministic_and_in_group() {
        let su3 = GroupSpec::su(3).unwrap();
        let a = random_element(&su3, 42, 1.0);
        let b = random_element(&su3, 42, 1.0);
        assert_eq!(a.matrix().raw(), b.matrix().raw(), "same seed must give identical bits");

        for seed in 0..100 {
            let g = random_element(&su3, seed, 1.0);
            assert!(check_group_membership(&su3, g.matrix()).is_in(), "seed {seed}");
        }
    }

    #[test]
    fn random_element_scale_zero_is_identity() {
        let so5 = GroupSpec::so(5).unwrap();
        let g = random_element(&so5, 9, 0.0);
        assert!(g.is_identity(1e-14));
    }

    #[test]
    fn jacobi_identity_on_seeded_triples() {
        for spec in [GroupSpec::sl_real(3).unwrap(), GroupSpec::su(3).unwrap()] {
            for seed in 0..5 {
                let x = random_algebra_element(&spec, seed, 1.0);
                let y = random_algebra_element(&spec, seed + 50, 1.0);
                let z = random_algebra_element(&spec, seed + 100, 1.0);
                let a = bracket(&x, &bracket(&y, &z).unwrap()).unwrap();
                let b = bracket(&y, &bracket(&z, &x).unwrap()).unwrap();
                let c = bracket(&z, &bracket(&x, &y).unwrap()).unwrap();
                assert!(a.add(&b).add(&c).norm() <= 1e-10 * (1.0 + x.norm() * y.norm() * z.norm()));
            }
        }
    }

    #[test]
    fn ad_exp_matches_exp_ad() {
        let so3 = GroupSpec::so(3).unwrap();
        let basis = algebra_basis(&so3);
        for seed in 0..5 {
            let x = random_algebra_element(&so3, seed, 0.8);
            let lhs = adjoint_matrix(&x.exp(), &basis).unwrap();
            let rhs = numkernel::mat_exp(&ad_matrix(&x, &basis).unwrap()).unwrap();
            assert!((&lhs - &rhs).norm() <= 1e-8, "seed {seed}");
        }
    }

    #[test]
    fn indefinite_orthogonal_elements_satisfy_the_form() {
        let so21 = GroupSpec::so_indefinite(2, 1).unwrap();
        for seed in 0..20 {
            let g = random_element(&so21, seed, 0.7);
            assert!(check_group_membership(&so21, g.matrix()).is_in(), "seed {seed}");
        }
    }
}
