//! Scaling-and-squaring matrix exponential with diagonal Padé approximants,
//! after Higham, "The Scaling and Squaring Method for the Matrix Exponential
//! Revisited" (2005). Entries are complex; the coefficient arithmetic is the
//! same as in the real case.

use super::{C64, CMat};

const THETA_3: f64 = 1.495585217958292e-2;
const THETA_5: f64 = 2.53939833006323e-1;
const THETA_7: f64 = 9.504178996162932e-1;
const THETA_9: f64 = 2.097847961257068e0;
const THETA_13: f64 = 5.371920351148152e0;

pub(crate) fn expm(a: &CMat) -> CMat {
    let n = a.nrows();
    debug_assert_eq!(n, a.ncols());
    if n == 1 {
        return CMat::from_element(1, 1, a[(0, 0)].exp());
    }

    let norm = one_norm(a);
    if norm <= THETA_3 {
        return pade_solve(a, &[120.0, 60.0, 12.0, 1.0]);
    }
    if norm <= THETA_5 {
        return pade_solve(a, &[30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0]);
    }
    if norm <= THETA_7 {
        return pade_solve(
            a,
            &[17_297_280.0, 8_648_640.0, 1_995_840.0, 277_200.0, 25_200.0, 1_512.0, 56.0, 1.0],
        );
    }
    if norm <= THETA_9 {
        return pade_solve(
            a,
            &[
                17_643_225_600.0,
                8_821_612_800.0,
                2_075_673_600.0,
                302_702_400.0,
                30_270_240.0,
                2_162_160.0,
                110_880.0,
                3_960.0,
                90.0,
                1.0,
            ],
        );
    }

    let squarings = ((norm / THETA_13).log2().ceil() as i32).max(0) as u32;
    let scaled = a * C64::new(0.5f64.powi(squarings as i32), 0.0);
    let mut result = pade13(&scaled);
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

/// Evaluates the [m/m] Padé approximant with coefficient table `b` (orders 3,
/// 5, 7, 9 share this shape) and solves `(V−U)·X = V+U`.
fn pade_solve(a: &CMat, b: &[f64]) -> CMat {
    let n = a.nrows();
    let eye = CMat::identity(n, n);
    let a2 = a * a;

    // Powers a^2, a^4, ... appear in both the odd sum U/a and the even sum V.
    let mut even_pows = vec![eye.clone(), a2.clone()];
    while 2 * (even_pows.len() - 1) + 1 < b.len() - 1 {
        let next = even_pows.last().unwrap() * &a2;
        even_pows.push(next);
    }

    let mut u_inner = CMat::zeros(n, n);
    let mut v = CMat::zeros(n, n);
    for (k, &coeff) in b.iter().enumerate() {
        let c = C64::new(coeff, 0.0);
        if k % 2 == 1 {
            u_inner += &even_pows[(k - 1) / 2] * c;
        } else {
            v += &even_pows[k / 2] * c;
        }
    }
    let u = a * u_inner;

    let numer = &v + &u;
    let denom = &v - &u;
    denom
        .lu()
        .solve(&numer)
        .expect("Padé denominator is nonsingular for norms below the order threshold")
}

fn pade13(a: &CMat) -> CMat {
    const B: [f64; 14] = [
        64_764_752_532_480_000.0,
        32_382_376_266_240_000.0,
        7_771_770_303_897_600.0,
        1_187_353_796_428_800.0,
        129_060_195_264_000.0,
        10_559_470_521_600.0,
        670_442_572_800.0,
        33_522_128_640.0,
        1_323_241_920.0,
        40_840_800.0,
        960_960.0,
        16_380.0,
        182.0,
        1.0,
    ];
    let n = a.nrows();
    let eye = CMat::identity(n, n);
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;

    let c = |x: f64| C64::new(x, 0.0);
    let w1 = &a6 * c(B[13]) + &a4 * c(B[11]) + &a2 * c(B[9]);
    let w2 = &w1 * &a6 + &a6 * c(B[7]) + &a4 * c(B[5]) + &a2 * c(B[3]) + &eye * c(B[1]);
    let u = a * w2;
    let v1 = &a6 * c(B[12]) + &a4 * c(B[10]) + &a2 * c(B[8]);
    let v = &v1 * &a6 + &a6 * c(B[6]) + &a4 * c(B[4]) + &a2 * c(B[2]) + &eye * c(B[0]);

    let numer = &v + &u;
    let denom = &v - &u;
    denom
        .lu()
        .solve(&numer)
        .expect("Padé-13 denominator is nonsingular after scaling")
}

pub(crate) fn one_norm(a: &CMat) -> f64 {
    let mut max = 0.0f64;
    for j in 0..a.ncols() {
        let s: f64 = a.column(j).iter().map(|z| z.norm()).sum();
        max = max.max(s);
    }
    max
}
