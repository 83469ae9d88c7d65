//! Module and transform invariants on seeded closed-form data.

use std::f64::consts::PI;

use atheta::bimodules::line::{d_lambda_apply, dn_apply, hb_inner, hb_right, hb_z_act, nb_inner, nb_right, rule_for, w_forward, w_inverse};
use atheta::bimodules::{samples, tr_distance};
use atheta::duality_cycle::{
    d_r_shifted, gamma, gamma_inv, i_norm, resolvent_solve, sample_points, sb_distance, sb_seminorm, standard_set, xi,
    xi_inv, SeminormGrid,
};
use atheta::operator::c;
use atheta::profile::{trig_conj, trig_distance, trig_mul, trig_translate};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const THETA: f64 = 0.618_033_988_749_894_9;

fn shear() -> impl Strategy<Value = i64> {
    (1i64..=3, any::<bool>()).prop_map(|(b, neg)| if neg { -b } else { b })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn w_is_unitary(seed in any::<u64>(), b in shear()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = samples::tr(&mut rng, 2);
        let psi = samples::tr(&mut rng, 2);
        let q = rule_for(16.0, 48.0);
        prop_assert!(tr_distance(&w_inverse(&w_forward(&phi, b), b), &phi) < 1e-12);
        let nb = nb_inner(&w_forward(&phi, b), &w_forward(&psi, b), b, &q).unwrap();
        prop_assert!(trig_distance(&nb, &hb_inner(&phi, &psi, &q).unwrap()) < 1e-6);
    }

    #[test]
    fn w_conjugates_d_n_to_d_lambda(seed in any::<u64>(), b in shear()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = samples::tr(&mut rng, 2);
        let lhs = w_inverse(&dn_apply(&w_forward(&phi, b), true, b), b).scale(c(b as f64, 0.0));
        prop_assert!(tr_distance(&lhs, &d_lambda_apply(&phi, true, 2.0 * PI * b as f64)) < 1e-6);
    }

    #[test]
    fn h_b_is_a_covariant_right_module(seed in any::<u64>(), l in -3i64..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = rule_for(16.0, 40.0);
        let phi = samples::tr(&mut rng, 2);
        let psi = samples::tr(&mut rng, 2);
        let f = samples::trig_poly(&mut rng, 2);
        let g = samples::trig_poly(&mut rng, 2);
        prop_assert!(tr_distance(&hb_right(&hb_right(&phi, &f), &g), &hb_right(&phi, &trig_mul(&f, &g))) < 1e-10);
        let base = hb_inner(&phi, &psi, &q).unwrap();
        prop_assert!(trig_distance(&hb_inner(&phi, &hb_right(&psi, &f), &q).unwrap(), &trig_mul(&base, &f)) < 1e-8);
        prop_assert!(trig_distance(&hb_inner(&psi, &phi, &q).unwrap(), &trig_conj(&base)) < 1e-8);
        let moved = hb_inner(&hb_z_act(l, &phi, THETA), &hb_z_act(l, &psi, THETA), &q).unwrap();
        prop_assert!(trig_distance(&moved, &trig_translate(&base, l as f64 * THETA)) < 1e-8);
    }

    #[test]
    fn n_b_is_a_right_module(seed in any::<u64>(), b in shear()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = rule_for(16.0, 48.0);
        let phi = samples::tr(&mut rng, 2);
        let psi = samples::tr(&mut rng, 2);
        let f = samples::trig_poly(&mut rng, 2);
        let base = nb_inner(&phi, &psi, b, &q).unwrap();
        prop_assert!(trig_distance(&nb_inner(&phi, &nb_right(&psi, &f, b), b, &q).unwrap(), &trig_mul(&base, &f)) < 1e-8);
        prop_assert!(trig_distance(&nb_inner(&psi, &phi, b, &q).unwrap(), &trig_conj(&base)) < 1e-8);
    }

    #[test]
    fn resolvent_inverts_shifted_d_r(seed in 0u64..1000, which in 0usize..6, plus in any::<bool>()) {
        let set = standard_set(seed);
        let (f, g) = (&set[2 * which], &set[2 * which + 1]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts = sample_points(f, 6, 3.0, &mut rng);
        let (p1, p2) = resolvent_solve(f, g, plus);
        let (a, b) = d_r_shifted(&p1, &p2, plus);
        prop_assert!(sb_distance(&a, f, &pts) < 1e-12 && sb_distance(&b, g, &pts) < 1e-12);
    }

    #[test]
    fn gamma_roundtrip_is_exact(seed in 0u64..1000, which in 0usize..12, b in shear()) {
        let f = &standard_set(seed)[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let back = gamma_inv(&gamma(f, b, THETA).unwrap(), b, THETA).unwrap();
        prop_assert!(sb_distance(&back, f, &sample_points(f, 6, 2.0, &mut rng)) < 1e-12);
    }

    #[test]
    fn seminorms_are_homogeneous(seed in 0u64..1000, which in 0usize..12, scale in 0.1f64..10.0) {
        let f = &standard_set(seed)[which];
        let grid = SeminormGrid { radius: 4.0, step: 0.5, torus: 2 };
        let base = sb_seminorm(f, 2, (1, 0), &grid);
        let scaled = sb_seminorm(&f.scale(c(scale, 0.0)), 2, (1, 0), &grid);
        prop_assert!((scaled - scale * base).abs() <= 1e-12 * scale * base.max(1.0));
    }

    #[test]
    fn i_norm_is_subadditive(a in proptest::collection::vec(0.0f64..1.0, 25), b in proptest::collection::vec(0.0f64..1.0, 25)) {
        let table = |v: &[f64], l1: i64, x: f64, l2: i64| v[((l1 + 2) * 5 + l2 + 2) as usize] * (1.0 + (2.0 * PI * x).cos().abs());
        let f = |l1, v, l2, _w| table(&a, l1, v, l2);
        let g = |l1, v, l2, _w| table(&b, l1, v, l2);
        let sum = i_norm(|l1, v, l2, w| f(l1, v, l2, w) + g(l1, v, l2, w), THETA, 2, 3);
        prop_assert!(sum <= i_norm(f, THETA, 2, 3) + i_norm(g, THETA, 2, 3) + 1e-12);
    }
}

proptest! {
    // each case transforms a function twice, so fewer cases
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn xi_roundtrip(seed in 0u64..1000, which in 0usize..12, b in shear()) {
        let f = &standard_set(seed)[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let back = xi_inv(&xi(f, b, THETA).unwrap(), b, THETA).unwrap();
        prop_assert!(sb_distance(&back, f, &sample_points(f, 3, 1.5, &mut rng)) < 1e-6);
    }
}
