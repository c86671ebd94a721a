//! Components of R = {g : σ(g) = g⁻¹} can have different dimensions:
//! dim ker(dσ + Ad(g)) computed on SO(5) with σ(g) = sgs for
//! s = diag(1,−1,−1,−1,−1).
//!
//! ```bash
//! cargo run -p liesym --example component_dimensions
//! ```

use liesym::involution::catalog;
use liesym::{DenseMatrix, GroupElement};

fn main() {
    let triple = catalog::so5_inner();
    println!("triple {}: dim 𝔤 = {}, dim 𝔨 = {}, dim 𝔭 = {}",
        triple.id(),
        triple.g_basis().dim(),
        triple.dim_k(),
        triple.dim_p(),
    );

    // The component of R through the identity is P itself, of dimension
    // dim 𝔭 = 4.
    let e = GroupElement::identity(triple.spec());
    let at_e = triple.component_dim(&e).unwrap();
    println!("at e:  in_R = {}, dim ker(dσ + Ad(e)) = {}", at_e.in_r, at_e.dim);

    // g₀ = diag(−1,−1,−1,−1,1) sits in a different component, of dimension 6.
    let g0 = GroupElement::new(
        triple.spec(),
        DenseMatrix::from_diagonal(&[-1.0, -1.0, -1.0, -1.0, 1.0]),
    )
    .unwrap();
    let at_g0 = triple.component_dim(&g0).unwrap();
    println!("at g₀: in_R = {}, dim ker(dσ + Ad(g₀)) = {}", at_g0.in_r, at_g0.dim);

    // Any point of P = exp(𝔭) stays in the identity component: dimension 4.
    let p = triple.random_p(5, 1.0).exp();
    let at_p = triple.component_dim(&p).unwrap();
    println!("at exp(X), X ∈ 𝔭: dim = {}", at_p.dim);

    // The kernel dimension is still reported off R, but only measures a
    // component of R at points of R.
    let g = triple.random_group(11, 1.0);
    let off = triple.component_dim(&g).unwrap();
    println!(
        "at a generic g: in_R = {}, dim = {} (component dimension: {})",
        off.in_r,
        off.dim,
        off.dim_is_component_dimension()
    );
}
