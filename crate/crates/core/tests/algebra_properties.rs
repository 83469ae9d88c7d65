//! Scalar, rotation-algebra and K-theory invariants.

use atheta::groupoids::sample;
use atheta::ktheory::{twist_apply, twist_compose, twist_inverse, twist_matrix, KClass};
use atheta::nc_torus::{lambda_pow, nct_multiply, nct_trace, SmoothElement};
use atheta::scalars::{mobius, mu, torus_reduce, IntMatrix2, ThetaScalar};
use atheta::bimodules::samples;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gl2() -> impl Strategy<Value = IntMatrix2> {
    [-5i64..=5, -5i64..=5, -5i64..=5, -5i64..=5]
        .prop_map(|[a, b, c, d]| IntMatrix2::new(a, b, c, d))
        .prop_filter("invertible over Z", |m| m.det().abs() == 1)
}

fn theta() -> impl Strategy<Value = f64> {
    0.01f64..0.99
}

proptest! {
    #[test]
    fn mobius_is_an_action(m in gl2(), n in gl2(), t in theta()) {
        let near_pole = |g: &IntMatrix2, x: f64| (g.c as f64 * x + g.d as f64).abs() < 1e-3;
        prop_assume!(!near_pole(&m, t) && !near_pole(&n.mul(&m), t));
        let inner = mobius(&m, t).unwrap();
        prop_assume!(!near_pole(&n, inner));
        let lhs = mobius(&n, inner).unwrap();
        let rhs = mobius(&n.mul(&m), t).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs().max(1.0));
    }

    #[test]
    fn mu_vanishes_only_on_scalars(a in -5i64..=5, b in -5i64..=5, c in -5i64..=5, d in -5i64..=5) {
        let g = IntMatrix2::new(a, b, c, d);
        prop_assert_eq!(mu(&g).is_zero(), b == 0 && c == 0 && a == d);
    }

    #[test]
    fn torus_reduce_is_idempotent_and_integer_blind(seed in any::<u64>(), n in -1000i64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = sample::linear(&mut rng) + ThetaScalar::theta().checked_mul(&ThetaScalar::theta()).unwrap().scale(sample::rational(&mut rng));
        let once = torus_reduce(x);
        prop_assert_eq!(torus_reduce(once.rep()), once);
        prop_assert_eq!(torus_reduce(x + ThetaScalar::integer(n)), once);
    }

    #[test]
    fn rotation_relation(t in theta(), k in -4i64..=4, l in -4i64..=4) {
        let u = SmoothElement::monomial(t, 0, k, atheta::operator::c(1.0, 0.0));
        let v = SmoothElement::monomial(t, l, 0, atheta::operator::c(1.0, 0.0));
        // V^l U^k = λ^{kl} U^k V^l
        let lhs = nct_multiply(&v, &u);
        let rhs = nct_multiply(&u, &v).scale(lambda_pow(t, k * l));
        prop_assert!(lhs.distance(&rhs) < 1e-12);
    }

    #[test]
    fn trace_is_cyclic(t in theta(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = samples::smooth(&mut rng, t, 3);
        let b = samples::smooth(&mut rng, t, 3);
        prop_assert!((nct_trace(&nct_multiply(&a, &b)) - nct_trace(&nct_multiply(&b, &a))).norm() < 1e-12);
    }

    #[test]
    fn multiplication_is_associative(t in theta(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (samples::smooth(&mut rng, t, 2), samples::smooth(&mut rng, t, 2), samples::smooth(&mut rng, t, 2));
        let lhs = nct_multiply(&nct_multiply(&a, &b), &c);
        let rhs = nct_multiply(&a, &nct_multiply(&b, &c));
        prop_assert!(lhs.distance(&rhs) < 1e-12);
    }

    #[test]
    fn twists_form_a_homomorphism(b in -1000i64..1000, b2 in -1000i64..1000) {
        prop_assert_eq!(twist_matrix(b).mul(&twist_matrix(b2)), twist_matrix(twist_compose(b, b2)));
        prop_assert_eq!(twist_matrix(b).det(), 1);
        prop_assert_eq!(twist_matrix(twist_inverse(b)), twist_matrix(b).inverse().unwrap());
        if b != b2 {
            prop_assert_ne!(twist_matrix(b), twist_matrix(b2));
        }
    }

    #[test]
    fn twists_leave_odd_classes_alone(b in -50i64..50, k0 in any::<(i32, i32)>(), k1 in any::<(i32, i32)>()) {
        let c = KClass::new((k0.0 as i64, k0.1 as i64), (k1.0 as i64, k1.1 as i64));
        let moved = twist_apply(b, &c);
        prop_assert_eq!(moved.k1, c.k1);
        prop_assert_eq!(twist_apply(twist_inverse(b), &moved), c);
    }
}
