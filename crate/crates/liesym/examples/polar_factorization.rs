//! The Cartan-type factorization g = p·k, generalizing the polar
//! decomposition.
//!
//! ```bash
//! cargo run -p liesym --example polar_factorization
//! ```

use liesym::involution::catalog;

fn main() {
    // SL(3,R) under (g^T)^{-1}: the factorization is the classical left
    // polar decomposition g = (g g^T)^{1/2} · (orthogonal).
    let triple = catalog::sl3();
    let g = triple.random_group(7, 1.0);
    println!("triple: {}", triple.id());
    println!("g = {:?}", g.matrix());

    let d = triple.decompose(&g).expect("branch cuts have measure zero");
    println!("p = {:?}", d.p.matrix());
    println!("k = {:?}", d.k.matrix());
    println!("relative residual ‖g − p·k‖/‖g‖ = {:.3e}", d.residual);
    println!("σ(k) = k residual: {:.3e}", {
        let sk = triple.sigma(&d.k);
        (sk.matrix() - d.k.matrix()).norm() / d.k.matrix().norm()
    });
    println!("certificate X ∈ 𝔭 with exp(X) = p, ‖X‖ = {:.6}", d.x.norm());

    // The K-factor of the polar decomposition is orthogonal.
    let kkt = &(d.k.matrix() * &d.k.matrix().transpose());
    let n = kkt.rows();
    let eye = liesym::DenseMatrix::identity(n);
    println!("‖k·kᵀ − I‖ = {:.3e}", (kkt - &eye).norm());

    // The same machinery factors unitary groups.
    let su2 = catalog::su2();
    let g = su2.random_group(21, 1.0);
    let d = su2.decompose(&g).unwrap();
    println!("\ntriple: {}", su2.id());
    println!("residual = {:.3e}, ‖X‖ = {:.6}", d.residual, d.x.norm());
}
