//! Sampling the intersection gK ∩ P by exponentiating a grid over 𝔨 and
//! refining with Gauss–Newton, with the transversality test at each point.
//!
//! ```bash
//! cargo run -p liesym --example coset_intersections
//! ```

use liesym::involution::catalog;
use liesym::SamplerConfig;

fn main() {
    let sampler = SamplerConfig { grid_points: 128, refine_tol: 1e-12, seed: 0 };

    // SU(2): a coset through a random group element.
    let triple = catalog::su2();
    let g = triple.random_group(19, 1.0);
    let report = triple.intersect_coset(&g, &sampler).unwrap();
    println!("triple {}", triple.id());
    println!("  points found in gK ∩ P: {}", report.points.len());
    for (i, q) in report.points.iter().enumerate() {
        println!("  point {i}: {:?}", q.matrix());
    }
    println!("  transversal at every point: {}", report.transversal);
    println!("  exhaustive: {} (sampling cannot prove completeness)", report.exhaustive);
    println!("  #(K ∩ P) by the same sampler: {:?}", report.bound_k_cap_p);
    println!(
        "  cardinality bound respected: {}",
        report.points.len() <= report.bound_k_cap_p.unwrap_or(usize::MAX)
    );

    // SL(2,R): the coset of exp(X) always contains exp(X) itself, and
    // K ∩ P = {I} here, so generic cosets meet P exactly once.
    let triple = catalog::sl2();
    let x = triple.random_p(4, 0.8);
    let g = x.exp();
    let report = triple.intersect_coset(&g, &sampler).unwrap();
    println!("\ntriple {}", triple.id());
    println!("  points found: {}", report.points.len());
    println!(
        "  contains exp(X): {}",
        report
            .points
            .iter()
            .any(|q| (q.matrix() - g.matrix()).norm() < 1e-7)
    );
    println!("  #(K ∩ P): {:?}", report.bound_k_cap_p);

    // Larger isotropy algebras are out of range for the sampler.
    let su3 = catalog::su3();
    let e = liesym::GroupElement::identity(su3.spec());
    match su3.intersect_coset(&e, &sampler) {
        Err(err) => println!("\ntriple {}: {err}", su3.id()),
        Ok(_) => unreachable!("dim 𝔨 = 3 is unsupported"),
    }
}
