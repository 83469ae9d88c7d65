//! Spectral invariants of the Dirac–Schrödinger family.

use atheta::operator::c;
use atheta::oscillator::{commutator_norm, d_lambda_matrix, fredholm_index, ladder_residual_grid};
use proptest::prelude::*;

fn slope() -> impl Strategy<Value = f64> {
    (0.2f64..8.0, any::<bool>()).prop_map(|(x, neg)| if neg { -x } else { x })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn index_follows_the_sign_of_lambda(lambda in slope(), l in 4usize..48) {
        prop_assert_eq!(fredholm_index(lambda, l).unwrap(), if lambda > 0.0 { 1 } else { -1 });
    }

    #[test]
    fn spectrum_is_symmetric_apart_from_the_kernel(lambda in slope(), l in 4usize..32) {
        let ev = d_lambda_matrix(lambda, 0.0, l).unwrap().eigenvalues();
        let n = ev.len();
        let scale = ev[n - 1].abs().max(1.0);
        prop_assert!(ev[n / 2].abs() < 1e-10 * scale);
        for i in 0..n / 2 {
            prop_assert!((ev[i] + ev[n - 1 - i]).abs() < 1e-10 * scale);
        }
    }

    #[test]
    fn ladder_identity_on_the_grid(lambda in 0.5f64..4.0, l in 0usize..=10) {
        prop_assert!(ladder_residual_grid(lambda, 0.0, l) < 1e-8);
    }

    #[test]
    fn commutators_with_trig_polynomials_are_bounded(
        b in 1i64..=3,
        coeffs in proptest::collection::vec((-3i64..=3, -1.0f64..1.0, -1.0f64..1.0), 1..4),
    ) {
        let f: Vec<_> = coeffs.iter().map(|&(m, re, im)| (m, c(re, im))).collect();
        let (norm, bound) = commutator_norm(1.0, b as f64, &f, 12, 3);
        prop_assert!(norm <= 1.1 * bound + 1e-12, "{norm} > 1.1 * {bound}");
    }
}
