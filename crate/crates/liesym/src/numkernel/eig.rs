//! Complex eigenvalues via Hessenberg reduction and single-shift QR, plus a
//! unitary diagonalizer for normal matrices.
//!
//! nalgebra's generic Schur iteration stalls on some unitary matrices (cyclic
//! permutations, for instance), so the QR loop here carries LAPACK-style
//! exceptional shifts and a hard iteration cap.

use nalgebra::DVector;

use super::{C64, CMat, MatrixError};

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// Eigenvalues of a general square complex matrix, unordered.
pub(crate) fn eigenvalues(m: &CMat) -> Result<Vec<C64>, MatrixError> {
    let n = m.nrows();
    debug_assert_eq!(n, m.ncols());
    match n {
        0 => return Ok(Vec::new()),
        1 => return Ok(vec![m[(0, 0)]]),
        2 => {
            let (l1, l2) = eig2(m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
            return Ok(vec![l1, l2]);
        }
        _ => {}
    }
    let mut h = nalgebra::Hessenberg::new(m.clone()).unpack_h();
    hessenberg_qr(&mut h)
}

/// Eigenvalues of a 2x2 block, by the quadratic formula with the shift taken
/// out for accuracy.
fn eig2(a: C64, b: C64, c: C64, d: C64) -> (C64, C64) {
    let mean = (a + d) * C64::new(0.5, 0.0);
    let disc = ((a - d) * (a - d) * C64::new(0.25, 0.0) + b * c).sqrt();
    (mean + disc, mean - disc)
}

fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let (l1, l2) = eig2(a, b, c, d);
    if (l1 - d).norm() <= (l2 - d).norm() { l1 } else { l2 }
}

fn hessenberg_qr(h: &mut CMat) -> Result<Vec<C64>, MatrixError> {
    let n = h.nrows();
    let mut eigs = Vec::with_capacity(n);
    let scale = h.norm().max(f64::MIN_POSITIVE);
    let mut active = n;
    let mut stalled = 0usize;
    let mut total = 0usize;
    let max_total = 80 * n;

    while active > 0 {
        if active == 1 {
            eigs.push(h[(0, 0)]);
            break;
        }
        // Declare negligible subdiagonals zero.
        for i in 1..active {
            let local = h[(i - 1, i - 1)].norm() + h[(i, i)].norm();
            let thresh = f64::EPSILON * if local > 0.0 { local } else { scale };
            if h[(i, i - 1)].norm() <= thresh {
                h[(i, i - 1)] = ZERO;
            }
        }
        // Deflate converged 1x1 and 2x2 trailing blocks.
        if h[(active - 1, active - 2)] == ZERO {
            eigs.push(h[(active - 1, active - 1)]);
            active -= 1;
            stalled = 0;
            continue;
        }
        if active == 2 || h[(active - 2, active - 3)] == ZERO {
            let (l1, l2) = eig2(
                h[(active - 2, active - 2)],
                h[(active - 2, active - 1)],
                h[(active - 1, active - 2)],
                h[(active - 1, active - 1)],
            );
            eigs.push(l1);
            eigs.push(l2);
            active -= 2;
            stalled = 0;
            continue;
        }
        // Start of the unreduced block that ends at `active`.
        let mut lo = active - 1;
        while lo > 0 && h[(lo, lo - 1)] != ZERO {
            lo -= 1;
        }
        let shift = if stalled > 0 && stalled.is_multiple_of(12) {
            // Exceptional shift breaks symmetric stalls (e.g. cyclic matrices).
            h[(active - 1, active - 1)]
                + C64::new(0.75 * h[(active - 1, active - 2)].norm(), 0.0)
        } else {
            wilkinson_shift(
                h[(active - 2, active - 2)],
                h[(active - 2, active - 1)],
                h[(active - 1, active - 2)],
                h[(active - 1, active - 1)],
            )
        };
        qr_step(h, lo, active, shift);
        stalled += 1;
        total += 1;
        if total > max_total {
            return Err(MatrixError::NoConvergence { algorithm: "Hessenberg QR eigenvalue iteration" });
        }
    }
    Ok(eigs)
}

/// One implicit single-shift QR sweep on the unreduced block `lo..hi`.
fn qr_step(h: &mut CMat, lo: usize, hi: usize, shift: C64) {
    let mut x = h[(lo, lo)] - shift;
    let mut y = h[(lo + 1, lo)];
    for k in lo..hi - 1 {
        let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
        if r > 0.0 {
            let (cx, cy) = (x / r, y / r);
            // Left rotation on rows k, k+1. Column k-1 holds the bulge.
            let jstart = if k == lo { lo } else { k - 1 };
            for j in jstart..hi {
                let a = h[(k, j)];
                let b = h[(k + 1, j)];
                h[(k, j)] = cx.conj() * a + cy.conj() * b;
                h[(k + 1, j)] = -cy * a + cx * b;
            }
            // Right rotation on columns k, k+1.
            let iend = hi.min(k + 3);
            for i in lo..iend {
                let a = h[(i, k)];
                let b = h[(i, k + 1)];
                h[(i, k)] = a * cx + b * cy;
                h[(i, k + 1)] = -a * cy.conj() + b * cx.conj();
            }
            if k > lo {
                h[(k + 1, k - 1)] = ZERO;
            }
        }
        if k < hi - 2 {
            x = h[(k + 1, k)];
            y = h[(k + 2, k)];
        }
    }
}

/// Unitary diagonalization `M = U Λ U*` of a matrix that is normal to
/// tolerance. Returns the eigenvector matrix and the eigenvalues.
///
/// A normal matrix splits into commuting Hermitian parts `M = H + iS`; a
/// generic real combination `c₁H + c₂S` separates the joint eigenspaces, and
/// exact degeneracies are harmless because `M` is scalar on them. A clustered
/// two-stage pass backs up the rare collision.
pub(crate) fn diagonalize_normal(m: &CMat) -> Result<(CMat, Vec<C64>), MatrixError> {
    let n = m.nrows();
    let scale = m.norm().max(f64::MIN_POSITIVE);
    let comm = m * m.adjoint() - m.adjoint() * m;
    let normality = comm.norm() / (scale * scale);
    if normality > 1e-8 {
        return Err(MatrixError::NotNormal { residual: normality });
    }

    let herm = (m + m.adjoint()) * C64::new(0.5, 0.0);
    let skew = (m - m.adjoint()) * C64::new(0.0, -0.5);

    // Two fixed generic combinations; collisions under both would force the
    // joint eigenvalues to coincide exactly.
    let combos = [(0.754_877_666_246_692_7, 0.655_926_467_846_802_9), (0.231_049_060_186_648, 0.972_942_419_745_46)];
    let mut best: Option<(f64, CMat)> = None;
    for (c1, c2) in combos {
        let t = &herm * C64::new(c1, 0.0) + &skew * C64::new(c2, 0.0);
        let Some(se) = nalgebra::SymmetricEigen::try_new(t, f64::EPSILON, 100_000) else {
            continue;
        };
        let u = se.eigenvectors;
        let d = u.adjoint() * m * &u;
        let off = offdiag_norm(&d);
        if best.as_ref().is_none_or(|(b, _)| off < *b) {
            best = Some((off, u));
        }
        if off <= 1e-11 * scale {
            break;
        }
    }

    // Fallback: eigenspaces of H refined by S inside each cluster.
    if best.as_ref().is_none_or(|(off, _)| *off > 1e-9 * scale) {
        if let Some(u) = clustered_diagonalizer(&herm, &skew, scale) {
            let d = u.adjoint() * m * &u;
            let off = offdiag_norm(&d);
            if best.as_ref().is_none_or(|(b, _)| off < *b) {
                best = Some((off, u));
            }
        }
    }

    let Some((off, u)) = best else {
        return Err(MatrixError::NoConvergence { algorithm: "normal-matrix diagonalization" });
    };
    if off > 1e-7 * scale {
        return Err(MatrixError::NotNormal { residual: off / scale });
    }
    let d = u.adjoint() * m * &u;
    let eigs = (0..n).map(|i| d[(i, i)]).collect();
    Ok((u, eigs))
}

fn offdiag_norm(d: &CMat) -> f64 {
    let mut s = 0.0;
    for i in 0..d.nrows() {
        for j in 0..d.ncols() {
            if i != j {
                s += d[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn clustered_diagonalizer(herm: &CMat, skew: &CMat, scale: f64) -> Option<CMat> {
    let n = herm.nrows();
    let se = nalgebra::SymmetricEigen::try_new(herm.clone(), f64::EPSILON, 100_000)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| se.eigenvalues[a].partial_cmp(&se.eigenvalues[b]).unwrap());
    let vals: Vec<f64> = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let mut u = CMat::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        u.set_column(col, &se.eigenvectors.column(src));
    }

    let gap = 1e-7 * scale.max(1.0);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && vals[end] - vals[end - 1] <= gap {
            end += 1;
        }
        if end - start > 1 {
            let block = u.columns(start, end - start).into_owned();
            let compressed = block.adjoint() * skew * &block;
            let inner = nalgebra::SymmetricEigen::try_new(compressed, f64::EPSILON, 100_000)?;
            let rotated = &block * inner.eigenvectors;
            for (k, col) in (start..end).enumerate() {
                u.set_column(col, &rotated.column(k));
            }
        }
        start = end;
    }
    Some(u)
}

/// Eigenvalue-wise map through a unitary diagonalization.
pub(crate) fn normal_matrix_function(
    u: &CMat,
    eigs: &[C64],
    f: impl Fn(C64) -> C64,
) -> CMat {
    let mapped = DVector::from_iterator(eigs.len(), eigs.iter().map(|&l| f(l)));
    u * CMat::from_diagonal(&mapped) * u.adjoint()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_by_re_im(mut v: Vec<C64>) -> Vec<C64> {
        v.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
        v
    }

    #[test]
    fn cyclic_permutation_eigenvalues_are_roots_of_unity() {
        // The case that defeats shift-free QR iterations.
        let n = 8;
        let mut m = CMat::zeros(n, n);
        for i in 1..n {
            m[(i, i - 1)] = C64::new(1.0, 0.0);
        }
        m[(0, n - 1)] = C64::new(1.0, 0.0);
        let eigs = eigenvalues(&m).unwrap();
        assert_eq!(eigs.len(), n);
        for l in &eigs {
            assert!((l.norm() - 1.0).abs() < 1e-10);
            let arg = l.arg() * n as f64 / std::f64::consts::TAU;
            assert!((arg - arg.round()).abs() < 1e-8, "not an 8th root of unity: {l}");
        }
    }

    #[test]
    fn jordan_block_eigenvalues() {
        let n = 5;
        let mut m = CMat::identity(n, n) * C64::new(2.0, -1.0);
        for i in 0..n - 1 {
            m[(i, i + 1)] = C64::new(1.0, 0.0);
        }
        let eigs = eigenvalues(&m).unwrap();
        for l in &eigs {
            // Defective eigenvalues are only computable to eps^(1/n).
            assert!((l - C64::new(2.0, -1.0)).norm() < 1e-2);
        }
        let mean = eigs.iter().sum::<C64>() / C64::new(n as f64, 0.0);
        assert!((mean - C64::new(2.0, -1.0)).norm() < 1e-10);
    }

    #[test]
    fn eigenvalue_product_matches_determinant() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for trial in 0..50 {
            let n = 2 + trial % 6;
            let m = CMat::from_fn(n, n, |_, _| {
                C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
            }) * C64::new(3.0, 0.0);
            let eigs = eigenvalues(&m).unwrap();
            let prod: C64 = eigs.iter().product();
            let det = m.determinant();
            assert!(
                (prod - det).norm() <= 1e-9 * det.norm().max(1.0),
                "trial {trial}: product {prod} vs det {det}"
            );
        }
    }

    #[test]
    fn normal_diagonalization_roundtrip() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for n in 2..7usize {
            // Random unitary from QR of a random matrix, times random phases.
            let g = CMat::from_fn(n, n, |_, _| {
                C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
            });
            let q = g.qr().q();
            let phases = DVector::from_iterator(
                n,
                (0..n).map(|_| C64::from_polar(1.0, (rng.random::<f64>() - 0.5) * 6.0)),
            );
            let m = &q * CMat::from_diagonal(&phases) * q.adjoint();
            let (u, eigs) = diagonalize_normal(&m).unwrap();
            let recon = normal_matrix_function(&u, &eigs, |l| l);
            assert!((recon - &m).norm() < 1e-10 * m.norm());
            let got = sorted_by_re_im(eigs);
            let want = sorted_by_re_im(phases.iter().cloned().collect());
            for (a, b) in got.iter().zip(want.iter()) {
                assert!((a - b).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn normal_diagonalization_handles_degenerate_spectrum() {
        // -I has a fully degenerate spectrum.
        let m = CMat::identity(4, 4) * C64::new(-1.0, 0.0);
        let (u, eigs) = diagonalize_normal(&m).unwrap();
        assert!((u.adjoint() * &u - CMat::identity(4, 4)).norm() < 1e-12);
        for l in eigs {
            assert!((l - C64::new(-1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn non_normal_input_is_rejected() {
        let mut m = CMat::identity(3, 3);
        m[(0, 2)] = C64::new(5.0, 0.0);
        assert!(matches!(diagonalize_normal(&m), Err(MatrixError::NotNormal { .. })));
    }
}
