//! Membership in the coincident sets P = Q = R₀ = R², with logarithm
//! certificates, including the classical element of R that is not in P.
//!
//! ```bash
//! cargo run -p liesym --example membership_certificates
//! ```

use liesym::involution::catalog;
use liesym::{DenseMatrix, GroupElement, MembershipSet, Verdict, Witness};

fn describe(verdict: &liesym::MembershipVerdict) -> String {
    match (&verdict.verdict, &verdict.witness) {
        (Verdict::In, Witness::LogCertificate(x)) => {
            format!("In, certificate X ∈ 𝔭 with ‖X‖ = {:.6}", x.norm())
        }
        (Verdict::In, Witness::Residual { relation, residual }) => {
            format!("In ({relation}, residual {residual:.3e})")
        }
        (Verdict::Out, Witness::Residual { relation, residual }) => {
            format!("Out (violates {relation}, residual {residual:.3e})")
        }
        (Verdict::Indeterminate, Witness::Failure { reason }) => {
            format!("Indeterminate ({reason})")
        }
        other => format!("{other:?}"),
    }
}

fn main() {
    // exp(X) for X ∈ 𝔭 is always in P, and the recovered certificate
    // reproduces the element.
    let triple = catalog::su3();
    let x = triple.random_p(3, 1.0);
    let g = x.exp();
    println!("triple {}", triple.id());
    println!("  membership_P(exp X): {}", describe(&triple.membership_p(&g)));
    println!("  membership_R(exp X): {}", describe(&triple.membership_r(&g)));

    // −I ∈ SL(2,R) is in R (it is symmetric) but not in P (not positive
    // definite): P ⊊ R whenever R is disconnected.
    let sl2 = catalog::sl2();
    let minus_i =
        GroupElement::new(sl2.spec(), DenseMatrix::from_diagonal(&[-1.0, -1.0])).unwrap();
    println!("\ntriple {}", sl2.id());
    println!("  membership_R(−I): {}", describe(&sl2.membership_r(&minus_i)));
    println!("  membership_P(−I): {}", describe(&sl2.membership_p(&minus_i)));

    // In SU(2) the set R ≅ S² is connected, so −I ∈ P; the certificate needs
    // the Newton tier because both logarithm branches fail at −1.
    let su2 = catalog::su2();
    let minus_i =
        GroupElement::new(su2.spec(), DenseMatrix::from_diagonal(&[-1.0, -1.0])).unwrap();
    println!("\ntriple {}", su2.id());
    println!("  membership_P(−I): {}", describe(&su2.membership_p(&minus_i)));

    // Q = {g·σ(g)⁻¹} coincides with P; the certificate converts to the
    // twisted-orbit witness h = exp(X/2) with φ(h) = g.
    let g = su2.random_p(9, 1.0).exp();
    let verdict = su2.membership(MembershipSet::Q, &g);
    if let Some(x) = verdict.certificate() {
        let h = x.scale(0.5).exp();
        let phi_h = su2.phi_map(&h);
        println!("\n  Q-witness: φ(exp(X/2)) hits g to {:.3e}", {
            (phi_h.matrix() - g.matrix()).norm() / g.matrix().norm()
        });
    }
}
