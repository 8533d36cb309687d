use besselrec_core::{Rational, ReciprocalPoly};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-50i64..50, 1i64..20).prop_map(|(p, q)| Rational::new(p, q))
}

fn poly() -> impl Strategy<Value = ReciprocalPoly> {
    prop::collection::vec(small_rational(), 0..8).prop_map(ReciprocalPoly::new)
}

proptest! {
    #[test]
    fn normalization_is_idempotent(p in poly(), pad in 0usize..4) {
        let mut coeffs = p.coeffs().to_vec();
        coeffs.extend(std::iter::repeat_with(Rational::zero).take(pad));
        let q = ReciprocalPoly::new(coeffs);
        prop_assert_eq!(&q, &p);
        prop_assert!(q.coeffs().last().is_none_or(|c| !c.is_zero()));
        prop_assert_eq!(ReciprocalPoly::new(q.coeffs().to_vec()), q);
    }

    #[test]
    fn derivative_matches_central_difference(p in poly(), u in -1.0f64..1.0) {
        let h = 1e-5;
        let fd = (p.eval(u + h) - p.eval(u - h)) / (2.0 * h);
        let scale: f64 = p.coeffs().iter().enumerate().map(|(k, c)| k as f64 * k as f64 * c.to_f64().abs()).sum();
        prop_assert!((p.derivative().eval(u) - fd).abs() <= 1e-6 * scale.max(1.0));
    }

    #[test]
    fn combine_evaluates_exactly(a in small_rational(), p in poly(), b in small_rational(), q in poly(), u in -2.0f64..2.0) {
        let c = ReciprocalPoly::combine(&a, &p, &b, &q);
        let direct = a.to_f64() * p.eval(u) + b.to_f64() * q.eval(u);
        let absum = |r: &ReciprocalPoly| -> f64 {
            r.coeffs().iter().enumerate().map(|(k, x)| x.to_f64().abs() * u.abs().powi(k as i32)).sum()
        };
        let mag = a.to_f64().abs() * absum(&p) + b.to_f64().abs() * absum(&q);
        prop_assert!((c.eval(u) - direct).abs() <= 32.0 * f64::EPSILON * mag);
    }

    #[test]
    fn shifts_are_inverse(p in poly(), k in 0usize..5) {
        prop_assert_eq!(p.shift_up(k).shift_down(k), Some(p));
    }

    #[test]
    fn rational_field_laws(a in small_rational(), b in small_rational()) {
        prop_assert_eq!(&a + &b - &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&a * &b / &b, a.clone());
        }
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
    }
}
