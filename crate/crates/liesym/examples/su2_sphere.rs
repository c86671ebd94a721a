//! The SU(2)/SO(2) picture: P = R ≅ S², cosets meet P in exactly {±p}
//! except along the antipodal circle, where the whole coset lies in P.
//!
//! ```bash
//! cargo run -p liesym --example su2_sphere
//! ```

use liesym::involution::catalog;
use liesym::{DenseMatrix, GroupElement, Su2CosetClass};
use nalgebra::Complex;

type C64 = Complex<f64>;

fn sphere_point(a: f64, b: f64, c: f64) -> GroupElement {
    let triple = catalog::su2();
    let n = (a * a + b * b + c * c).sqrt();
    let (a, b, c) = (a / n, b / n, c / n);
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

fn main() {
    let triple = catalog::su2();

    // K ∩ P = {±I}.
    let e = GroupElement::identity(triple.spec());
    match triple.su2_coset_classify(&e).unwrap() {
        Su2CosetClass::Generic { points } => {
            println!("K ∩ P has {} points:", points.len());
            for p in &points {
                println!("  {:?}", p.matrix());
            }
        }
        Su2CosetClass::Antipodal => unreachable!(),
    }

    // A generic coset: pK ∩ P = {±p}, and the intersection is transversal.
    let p = sphere_point(0.6, 0.8, 0.0);
    println!("\np with a = 0.6:");
    match triple.su2_coset_classify(&p).unwrap() {
        Su2CosetClass::Generic { points } => {
            println!("  generic coset, pK ∩ P = {{p, −p}} ({} points)", points.len());
            for q in &points {
                println!("  transversal at point: {}", triple.transversal(q).unwrap());
            }
        }
        Su2CosetClass::Antipodal => unreachable!(),
    }

    // The antipodal coset (a = 0): pK ⊂ P, a one-dimensional intersection,
    // necessarily non-transversal.
    let p0 = sphere_point(0.0, 1.0, 0.0);
    println!("\np with a = 0:");
    match triple.su2_coset_classify(&p0).unwrap() {
        Su2CosetClass::Antipodal => {
            println!("  antipodal coset: the whole circle pK lies inside P");
            println!("  transversal at p: {}", triple.transversal(&p0).unwrap());
            let mut all_in = true;
            for j in 0..32 {
                let theta = std::f64::consts::TAU * j as f64 / 32.0;
                let k = GroupElement::new(
                    triple.spec(),
                    DenseMatrix::from_real(
                        2,
                        2,
                        &[theta.cos(), -theta.sin(), theta.sin(), theta.cos()],
                    )
                    .unwrap(),
                )
                .unwrap();
                all_in &= triple.membership_p(&(&p0 * &k)).is_in();
            }
            println!("  membership_P(p·k) along a 32-point grid of K: all in = {all_in}");
        }
        Su2CosetClass::Generic { .. } => unreachable!(),
    }

    // Geodesics through [e] are t ↦ exp(tX); the antipodal point sits at the
    // other pole of the sphere.
    let x = liesym::AlgebraElement::new(
        triple.spec(),
        DenseMatrix::from_complex(
            2,
            2,
            &[
                C64::new(0.0, std::f64::consts::FRAC_PI_2),
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(0.0, -std::f64::consts::FRAC_PI_2),
            ],
        )
        .unwrap(),
    )
    .unwrap();
    let antipode = triple.geodesic_point(&x, 2.0).unwrap();
    println!("\ngeodesic exp(tX) at t = 2: {:?}", antipode.matrix());
}
