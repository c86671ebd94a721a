//! Matrix logarithms: inverse scaling-and-squaring for the principal branch,
//! and an eigenvalue-wise spectral logarithm for normal matrices.

use std::sync::OnceLock;

use super::{eig, expm, C64, CMat, MatrixError};

/// Frobenius-norm threshold below which the Padé approximant of log(I+E) is
/// accurate to machine precision at the degree used here.
const PADE_THRESHOLD: f64 = 0.35;
const PADE_DEGREE: usize = 12;
const MAX_SQRTS: u32 = 40;

/// Principal matrix logarithm by inverse scaling-and-squaring: repeated
/// square roots bring the matrix near the identity, a diagonal Padé
/// approximant evaluates log there, and doublings undo the roots.
///
/// Fails with [`MatrixError::NoLogarithm`] when any eigenvalue lies on the
/// closed negative real axis, and with [`MatrixError::Singular`] on singular
/// input.
pub(crate) fn log_principal(m: &CMat) -> Result<CMat, MatrixError> {
    let eigs = eig::eigenvalues(m)?;
    screen_spectrum(&eigs, |l| l.re < 0.0 && l.im.abs() <= 1e-12 * l.norm())?;

    let n = m.nrows();
    let eye = CMat::identity(n, n);
    let mut a = m.clone();
    let mut doublings = 0u32;
    while (&a - &eye).norm() > PADE_THRESHOLD {
        if doublings >= MAX_SQRTS {
            return Err(MatrixError::NoConvergence { algorithm: "inverse scaling-and-squaring" });
        }
        a = sqrt_denman_beavers(&a)?;
        doublings += 1;
    }
    let x = pade_log(&(&a - &eye)) * C64::new(2f64.powi(doublings as i32), 0.0);
    check_log_contract(m, x)
}

/// Spectral logarithm for matrices normal to tolerance: unitary
/// diagonalization, then the principal branch eigenvalue-wise. Only an
/// eigenvalue inside the band around −1 has no well-defined branch here.
pub(crate) fn log_normal_spectral(m: &CMat) -> Result<CMat, MatrixError> {
    let (u, eigs) = eig::diagonalize_normal(m)?;
    screen_spectrum(&eigs, |l| (l + C64::new(1.0, 0.0)).norm() <= crate::tolerance::MINUS_ONE_BAND)?;
    let x = eig::normal_matrix_function(&u, &eigs, |l| l.ln());
    check_log_contract(m, x)
}

fn screen_spectrum(eigs: &[C64], on_cut: impl Fn(C64) -> bool) -> Result<(), MatrixError> {
    let scale = eigs.iter().map(|l| l.norm()).fold(0.0f64, f64::max);
    for &l in eigs {
        if l.norm() <= 1e-14 * scale.max(f64::MIN_POSITIVE) {
            return Err(MatrixError::Singular);
        }
        if on_cut(l) {
            return Err(MatrixError::NoLogarithm { eigenvalue: l });
        }
    }
    Ok(())
}

fn check_log_contract(m: &CMat, x: CMat) -> Result<CMat, MatrixError> {
    let resid = (expm::expm(&x) - m).norm() / m.norm().max(f64::MIN_POSITIVE);
    if resid > 1e-9 {
        return Err(MatrixError::NoConvergence { algorithm: "matrix logarithm residual check" });
    }
    Ok(x)
}

/// Principal square root by the scaled Denman–Beavers iteration. Converges
/// for every matrix whose spectrum avoids the closed negative real axis;
/// callers screen the spectrum first.
pub(crate) fn sqrt_denman_beavers(a: &CMat) -> Result<CMat, MatrixError> {
    let n = a.nrows();
    let nf = n as f64;
    let mut y = a.clone();
    let mut z = CMat::identity(n, n);
    let mut scaling = true;
    let mut prev_rel = f64::INFINITY;
    for _ in 0..60 {
        let y_inv = y.clone().try_inverse().ok_or(MatrixError::Singular)?;
        let z_inv = z.clone().try_inverse().ok_or(MatrixError::Singular)?;
        let mu = if scaling {
            let dets = (y.determinant().norm() * z.determinant().norm()).max(f64::MIN_POSITIVE);
            dets.powf(-1.0 / (2.0 * nf)).clamp(1e-8, 1e8)
        } else {
            1.0
        };
        let y_next = (&y * C64::new(mu, 0.0) + &z_inv * C64::new(1.0 / mu, 0.0)) * C64::new(0.5, 0.0);
        let z_next = (&z * C64::new(mu, 0.0) + &y_inv * C64::new(1.0 / mu, 0.0)) * C64::new(0.5, 0.0);
        let delta = (&y_next - &y).norm();
        y = y_next;
        z = z_next;
        let rel = delta / y.norm().max(f64::MIN_POSITIVE);
        if rel < 1e-2 {
            scaling = false;
        }
        // Quadratic convergence plateaus at the rounding floor set by the
        // conditioning of the root; stop on the plateau, not on a fixed eps.
        let stagnated = rel < 1e-6 && rel >= prev_rel;
        if rel <= 4.0 * f64::EPSILON || stagnated {
            let resid = (&y * &y - a).norm() / a.norm().max(f64::MIN_POSITIVE);
            if resid > 1e-6 {
                return Err(MatrixError::NoConvergence { algorithm: "Denman-Beavers square root" });
            }
            return Ok(y);
        }
        prev_rel = rel;
    }
    Err(MatrixError::NoConvergence { algorithm: "Denman-Beavers square root" })
}

/// Diagonal Padé approximant of log(I+E) in Gauss–Legendre partial-fraction
/// form: Σ wᵢ·E·(I + tᵢE)⁻¹ with the degree-12 nodes on [0,1].
fn pade_log(e: &CMat) -> CMat {
    let n = e.nrows();
    let (nodes, weights) = gauss_legendre_unit();
    let mut acc = CMat::zeros(n, n);
    let eye = CMat::identity(n, n);
    for (&t, &w) in nodes.iter().zip(weights.iter()) {
        let denom = &eye + e * C64::new(t, 0.0);
        let solved = denom
            .lu()
            .solve(e)
            .expect("I + tE is nonsingular for ||E|| below the Padé threshold");
        acc += solved * C64::new(w, 0.0);
    }
    acc
}

/// Degree-12 Gauss–Legendre nodes and weights on [0,1], computed once by
/// Newton iteration on the Legendre recurrence.
fn gauss_legendre_unit() -> (&'static [f64], &'static [f64]) {
    static CACHE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    let (n, w) = CACHE.get_or_init(|| {
        let m = PADE_DEGREE;
        let mut nodes = vec![0.0; m];
        let mut weights = vec![0.0; m];
        for i in 0..m {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre(m, x);
                let step = p / dp;
                x -= step;
                if step.abs() < 1e-15 {
                    break;
                }
            }
            let (_, dp) = legendre(m, x);
            nodes[m - 1 - i] = 0.5 * (x + 1.0);
            weights[m - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
        }
        (nodes, weights)
    });
    (n, w)
}

/// Value and derivative of the Legendre polynomial P_m at x.
fn legendre(m: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=m {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = m as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}
