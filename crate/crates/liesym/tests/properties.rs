//! Property-based invariants across the public surface.

use liesym::involution::catalog;
use liesym::liegroup::{self, GroupSpec};
use liesym::numkernel::{self, BranchPolicy, DenseMatrix};
use nalgebra::Complex;
use proptest::prelude::*;

type C64 = Complex<f64>;

fn entry() -> impl Strategy<Value = f64> {
    (-100i32..=100).prop_map(|x| x as f64 / 50.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// log(exp(A)) = A whenever ‖A‖ ≤ 2, which keeps every eigenvalue's
    /// imaginary part inside (−π, π).
    #[test]
    fn log_inverts_exp_inside_the_strip(
        entries in proptest::collection::vec(entry(), 9),
    ) {
        let mut a = DenseMatrix::from_real(3, 3, &entries).unwrap();
        let norm = a.norm();
        if norm > 2.0 {
            a = a.scale(C64::new(2.0 / norm, 0.0));
        }
        let e = numkernel::mat_exp(&a).unwrap();
        let l = numkernel::mat_log(&e, BranchPolicy::Principal).unwrap();
        prop_assert!((&l - &a).norm() <= 1e-8, "round trip error {}", (&l - &a).norm());
    }

    /// Singular values split into kernel and rank on every rectangular shape.
    #[test]
    fn kernel_dim_and_rank_partition_min_dimension(
        rows in 1usize..6,
        cols in 1usize..6,
        scale in 0usize..3,
        seed_entries in proptest::collection::vec(entry(), 36),
    ) {
        let entries: Vec<f64> = seed_entries
            .iter()
            .take(rows * cols)
            .map(|x| x * 10f64.powi(-(scale as i32) * 4))
            .collect();
        let m = DenseMatrix::from_real(rows, cols, &entries).unwrap();
        prop_assert_eq!(
            numkernel::kernel_dim(&m, 1e-8) + numkernel::rank(&m, 1e-8),
            rows.min(cols)
        );
    }

    /// mat_sqrt squares back to its argument whenever it succeeds.
    #[test]
    fn sqrt_squares_back(entries in proptest::collection::vec(entry(), 9)) {
        let m = DenseMatrix::from_real(3, 3, &entries).unwrap();
        if let Ok(s) = numkernel::mat_sqrt(&m) {
            prop_assert!((&(&s * &s) - &m).norm() <= 1e-8 * m.norm().max(1.0));
        }
    }

    /// Brackets are antisymmetric and satisfy the Jacobi identity.
    #[test]
    fn bracket_identities(seed_x in any::<u64>(), seed_y in any::<u64>(), seed_z in any::<u64>()) {
        let spec = GroupSpec::su(3).unwrap();
        let x = liegroup::random_algebra_element(&spec, seed_x, 1.0);
        let y = liegroup::random_algebra_element(&spec, seed_y, 1.0);
        let z = liegroup::random_algebra_element(&spec, seed_z, 1.0);

        let xy = liegroup::bracket(&x, &y).unwrap();
        let yx = liegroup::bracket(&y, &x).unwrap();
        prop_assert!(xy.add(&yx).norm() <= 1e-10 * (1.0 + x.norm() * y.norm()));

        let a = liegroup::bracket(&x, &liegroup::bracket(&y, &z).unwrap()).unwrap();
        let b = liegroup::bracket(&y, &liegroup::bracket(&z, &x).unwrap()).unwrap();
        let c = liegroup::bracket(&z, &liegroup::bracket(&x, &y).unwrap()).unwrap();
        let jacobi = a.add(&b).add(&c).norm();
        prop_assert!(jacobi <= 1e-10 * (1.0 + x.norm() * y.norm() * z.norm()));
    }

    /// Ad is a homomorphism and intertwines exp with ad.
    #[test]
    fn adjoint_homomorphism(seed_g in any::<u64>(), seed_h in any::<u64>()) {
        let spec = GroupSpec::so(4).unwrap();
        let basis = liegroup::algebra_basis(&spec);
        let g = liegroup::random_element(&spec, seed_g, 1.0);
        let h = liegroup::random_element(&spec, seed_h, 1.0);
        let lhs = liegroup::adjoint_matrix(&(&g * &h), &basis).unwrap();
        let rhs = &liegroup::adjoint_matrix(&g, &basis).unwrap()
            * &liegroup::adjoint_matrix(&h, &basis).unwrap();
        prop_assert!((&lhs - &rhs).norm() <= 1e-8 * rhs.norm().max(1.0));
    }

    #[test]
    fn adjoint_of_exp_is_exp_of_ad(seed in any::<u64>()) {
        let spec = GroupSpec::su(2).unwrap();
        let basis = liegroup::algebra_basis(&spec);
        let x = liegroup::random_algebra_element(&spec, seed, 0.8);
        let lhs = liegroup::adjoint_matrix(&x.exp(), &basis).unwrap();
        let rhs = numkernel::mat_exp(&liegroup::ad_matrix(&x, &basis).unwrap()).unwrap();
        prop_assert!((&lhs - &rhs).norm() <= 1e-8);
    }

    /// exp(dσX) = σ(exp X) and the eigenprojections behave.
    #[test]
    fn dsigma_exp_and_projections(seed in any::<u64>(), which in 0usize..5) {
        let triple = &catalog::all()[which];
        let x = liegroup::random_algebra_element(&triple.spec(), seed, 1.0);

        let lhs = triple.dsigma(&x).exp();
        let rhs = triple.sigma(&x.exp());
        prop_assert!((lhs.matrix() - rhs.matrix()).norm() <= 1e-8 * rhs.matrix().norm());

        let p = triple.project_p(&x);
        let k = triple.project_k(&x);
        prop_assert!((&(p.matrix() + k.matrix()) - x.matrix()).norm() <= 1e-12 * x.norm().max(1.0));
        prop_assert!((triple.dsigma(&p).matrix() + p.matrix()).norm() <= 1e-10 * p.norm().max(1.0));
    }

    /// φ intertwines left multiplication with the twisted action.
    #[test]
    fn phi_equivariance(seed_g1 in any::<u64>(), seed_g in any::<u64>(), which in 0usize..5) {
        let triple = &catalog::all()[which];
        let g1 = triple.random_group(seed_g1, 1.0);
        let g = triple.random_group(seed_g, 1.0);
        let lhs = triple.phi_map(&(&g1 * &g));
        let rhs = triple.twisted_conjugate(&g1, &triple.phi_map(&g));
        prop_assert!(
            (lhs.matrix() - rhs.matrix()).norm() <= 1e-8 * rhs.matrix().norm().max(1.0)
        );
    }
}

proptest! {
    // Membership decisions are comparatively expensive; fewer cases.
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// The sandwich p·p′·p stays in P (with its membership certificate).
    #[test]
    fn sandwich_closure(seed_p in any::<u64>(), seed_q in any::<u64>(), which in 0usize..5) {
        let triple = &catalog::all()[which];
        let p = triple.random_p(seed_p, 1.0).exp();
        let q = triple.random_p(seed_q, 1.0).exp();
        let s = triple.sandwich(&p, &q).unwrap();
        prop_assert!(triple.membership_p(&s).is_in());
    }

    /// Chain inclusions: exp(𝔭) ⊂ R² and Q ⊂ R.
    #[test]
    fn chain_inclusions(seed in any::<u64>(), which in 0usize..5) {
        let triple = &catalog::all()[which];
        let x = triple.random_p(seed, 1.0);
        prop_assert!(triple.membership_r(&x.scale(0.5).exp()).is_in());
        prop_assert!(triple.membership_p(&x.exp()).is_in());

        let g = triple.random_group(seed ^ 0xFFFF, 1.0);
        prop_assert!(triple.membership_r(&triple.phi_map(&g)).is_in());
    }
}
