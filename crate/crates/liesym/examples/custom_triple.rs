//! Building a symmetric triple from scratch: pick a group, pick an
//! involution, and let the validation machinery split 𝔤 = 𝔨 ⊕ 𝔭.
//!
//! ```bash
//! cargo run -p liesym --example custom_triple
//! ```

use liesym::involution::{split_algebra, Involution};
use liesym::liegroup::{algebra_basis, GroupSpec};
use liesym::{DenseMatrix, GroupElement};

fn main() {
    // SO(2,1): the identity component of the Lorentz-type group preserving
    // diag(1, 1, −1), with the transpose-inverse involution.
    let spec = GroupSpec::so_indefinite(2, 1).unwrap();
    println!("group {spec}: dim 𝔤 = {}", algebra_basis(&spec).dim());

    let triple = split_algebra(spec, Involution::transpose_inverse()).unwrap();
    println!(
        "split for {}: dim 𝔨 = {}, dim 𝔭 = {}",
        triple.id(),
        triple.dim_k(),
        triple.dim_p()
    );

    // The split diagonalizes dσ: +1 on 𝔨, −1 on 𝔭.
    let trace = triple.dsigma_matrix().trace();
    println!("tr dσ = {} = dim 𝔨 − dim 𝔭", trace.re.round());

    // Boosts are the 𝔭 directions; exp(𝔭) elements factor with trivial
    // K-part.
    let boost = triple.random_p(1, 0.6).exp();
    let d = triple.decompose(&boost).unwrap();
    println!("boost decomposition: residual {:.3e}, ‖k − e‖ = {:.3e}", d.residual, {
        let e = GroupElement::identity(spec);
        (d.k.matrix() - e.matrix()).norm()
    });

    // A custom inner involution on SU(2): conjugation by s = diag(i, −i)
    // (s² = −I is central, so conjugation is involutive).
    let su2 = GroupSpec::su(2).unwrap();
    let s = GroupElement::new(
        su2,
        DenseMatrix::from_complex(
            2,
            2,
            &[
                nalgebra::Complex::new(0.0, 1.0),
                nalgebra::Complex::new(0.0, 0.0),
                nalgebra::Complex::new(0.0, 0.0),
                nalgebra::Complex::new(0.0, -1.0),
            ],
        )
        .unwrap(),
    )
    .unwrap();
    let inner = split_algebra(su2, Involution::inner(s).unwrap()).unwrap();
    println!(
        "\nsplit for {}: dim 𝔨 = {}, dim 𝔭 = {}",
        inner.id(),
        inner.dim_k(),
        inner.dim_p()
    );
    let x = inner.random_p(2, 1.0);
    println!(
        "membership_P(exp X) for X ∈ 𝔭: {}",
        if inner.membership_p(&x.exp()).is_in() { "In" } else { "not In" }
    );
}
