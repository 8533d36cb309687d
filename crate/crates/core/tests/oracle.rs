use besselrec_core::asymptotic::Family;
use besselrec_core::closed::closed_f;
use besselrec_core::kernels::{k_half_exact, k_nu_scaled};
use besselrec_core::oracle::{oracle, oracle_f, oracle_g, OracleForm};
use besselrec_core::Error;
use proptest::prelude::*;

#[test]
fn algebraic_and_hyperbolic_forms_agree_for_g() {
    for (n, nu, z) in [(3.0, 1.0, 0.5), (5.0, 1.0, 4.0), (1.5, 2.2, 12.0)] {
        let a = oracle(Family::G, OracleForm::Algebraic, n, nu, z, 1e-10).unwrap();
        let b = oracle(Family::G, OracleForm::Hyperbolic, n, nu, z, 1e-10).unwrap();
        assert!((a.value - b.value).abs() <= a.abs_error_estimate + b.abs_error_estimate);
    }
}

#[test]
fn oracle_matches_closed_forms_off_grid() {
    for (n, nu, z) in [(4, 3, 0.7), (9, 2, 3.3), (0, 7, 1.1)] {
        let exact = closed_f(n, nu).unwrap().eval(z);
        let r = oracle_f(n as f64, nu as f64, z, 1e-11).unwrap();
        assert!((r.value - exact).abs() <= 1e-10 * exact);
        assert!(r.abs_error_estimate <= 1e-11 * exact);
    }
}

#[test]
fn truncation_point_grows_with_n() {
    let small = oracle_f(0.0, 1.0, 1.0, 1e-10).unwrap().truncation_point;
    let large = oracle_f(12.0, 1.0, 1.0, 1e-10).unwrap().truncation_point;
    assert!(large > small);
}

#[test]
fn tolerance_bounds_are_enforced() {
    assert!(matches!(oracle_g(1.0, 1.0, 1.0, 1e-2), Err(Error::Tolerance(_))));
    assert!(matches!(oracle_g(1.0, 1.0, -1.0, 1e-8), Err(Error::Domain(_))));
    assert!(matches!(oracle_g(f64::NAN, 1.0, 1.0, 1e-8), Err(Error::Domain(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn kernel_is_symmetric_positive_and_decreasing(nu in 0.0f64..12.0, x in 0.05f64..60.0) {
        let a = k_nu_scaled(nu, x, 1e-12).unwrap();
        prop_assert!(a > 0.0);
        prop_assert_eq!(a, k_nu_scaled(-nu, x, 1e-12).unwrap());
        // K_nu(x) decreases in x
        let b = k_nu_scaled(nu, x * 1.1, 1e-12).unwrap() * (-0.1 * x).exp();
        prop_assert!(b < a);
    }

    #[test]
    fn kernel_matches_half_integer_forms(m in 0u32..10, x in 0.05f64..40.0) {
        let exact = k_half_exact(m).eval_scaled(x);
        let numeric = k_nu_scaled(m as f64 + 0.5, x, 1e-13).unwrap();
        prop_assert!((numeric - exact).abs() <= 1e-12 * exact);
    }

    #[test]
    fn oracle_is_positive_symmetric_and_monotone(n in 0.0f64..6.0, nu in 0.0f64..4.0, z in 0.2f64..15.0) {
        let f = oracle_f(n, nu, z, 1e-9).unwrap();
        prop_assert!(f.value > 0.0);
        let neg = oracle_f(n, -nu, z, 1e-9).unwrap();
        prop_assert!((f.value - neg.value).abs() <= f.abs_error_estimate + neg.abs_error_estimate);
        // larger N weights larger x: F^{N+1} > F^N
        let up = oracle_f(n + 1.0, nu, z, 1e-9).unwrap();
        prop_assert!(up.value > f.value);
        // F decreases in z
        let right = oracle_f(n, nu, z * 1.2, 1e-9).unwrap();
        prop_assert!(right.value < f.value);
        let g = oracle_g(n, nu, z, 1e-9).unwrap();
        prop_assert!(g.value > 0.0);
    }
}
