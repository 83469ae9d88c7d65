//! Exact groupoid laws on seeded random data.

use atheta::groupoids::{
    atheta2_act_on_zg, atheta_compose, btheta_compose, fg_act_on_zg, fg_compose, fg_iso_transformation, fg_to_quadruple,
    phi_m, reduction_embed, reduction_iso, sample, zg_roundtrip, AThetaArrow, BThetaArrow, FgArrow,
};
use atheta::scalars::IntMatrix2;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rotation_groupoid_laws(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = sample::a_arrow(&mut rng);
        let h = sample::a_arrow_at(&mut rng, f.source());
        let k = sample::a_arrow_at(&mut rng, h.source());
        let fh = atheta_compose(&f, &h).unwrap();
        let hk = atheta_compose(&h, &k).unwrap();
        prop_assert_eq!(atheta_compose(&fh, &k).unwrap(), atheta_compose(&f, &hk).unwrap());
        prop_assert_eq!(atheta_compose(&AThetaArrow::unit(f.range()), &f).unwrap(), f);
        prop_assert_eq!(atheta_compose(&f, &f.inverse()).unwrap(), AThetaArrow::unit(f.range()));
    }

    #[test]
    fn flow_groupoid_laws(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = sample::b_arrow(&mut rng);
        let h = sample::b_arrow_at(&mut rng, f.source());
        let k = sample::b_arrow_at(&mut rng, h.source());
        let fh = btheta_compose(&f, &h).unwrap();
        let hk = btheta_compose(&h, &k).unwrap();
        prop_assert_eq!(btheta_compose(&fh, &k).unwrap(), btheta_compose(&f, &hk).unwrap());
        let (x, y) = f.source();
        prop_assert_eq!(btheta_compose(&f, &BThetaArrow::unit(x, y)).unwrap(), f);
        prop_assert_eq!(btheta_compose(&f.inverse(), &f).unwrap(), BThetaArrow::unit(x, y));
    }

    #[test]
    fn shear_groupoid_laws(seed in any::<u64>(), b in 1i64..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = IntMatrix2::shear(b);
        let f = sample::fg_arrow(&mut rng, g);
        let h = sample::fg_arrow_at(&mut rng, f.source(), g);
        let k = sample::fg_arrow_at(&mut rng, h.source(), g);
        let fh = fg_compose(&f, &h).unwrap();
        let hk = fg_compose(&h, &k).unwrap();
        prop_assert_eq!(fg_compose(&fh, &k).unwrap(), fg_compose(&f, &hk).unwrap());
        let (x, y) = f.range();
        prop_assert_eq!(fg_compose(&FgArrow::unit(x, y, g).unwrap(), &f).unwrap(), f);
        let (x, y) = f.source();
        prop_assert_eq!(fg_compose(&f.inverse(), &f).unwrap(), FgArrow::unit(x, y, g).unwrap());
    }

    #[test]
    fn phi_is_functorial(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (m, n) = (sample::unimodular(&mut rng), sample::unimodular(&mut rng));
        let f = sample::b_arrow(&mut rng);
        let h = sample::b_arrow_at(&mut rng, f.source());
        prop_assert_eq!(phi_m(&phi_m(&f, &m).unwrap(), &n).unwrap(), phi_m(&f, &n.mul(&m)).unwrap());
        let composed = phi_m(&btheta_compose(&f, &h).unwrap(), &m).unwrap();
        prop_assert_eq!(btheta_compose(&phi_m(&f, &m).unwrap(), &phi_m(&h, &m).unwrap()).unwrap(), composed);
    }

    #[test]
    fn reduction_is_a_homomorphism(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = sample::a_arrow(&mut rng);
        let h = sample::a_arrow_at(&mut rng, a.source());
        prop_assert_eq!(reduction_iso(&reduction_embed(&a)).unwrap(), a);
        let lhs = btheta_compose(&reduction_embed(&a), &reduction_embed(&h)).unwrap();
        prop_assert_eq!(lhs, reduction_embed(&atheta_compose(&a, &h).unwrap()));
    }

    #[test]
    fn equivalence_roundtrips(seed in any::<u64>(), b in 1i64..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = IntMatrix2::shear(b);
        let z = sample::zg_point(&mut rng, g);
        prop_assert_eq!(zg_roundtrip(&z).unwrap(), z);
        let a = sample::fg_arrow(&mut rng, g);
        prop_assert_eq!(fg_iso_transformation(&fg_to_quadruple(&a)).unwrap(), a);
    }

    #[test]
    fn left_and_right_actions_commute(seed in any::<u64>(), b in 1i64..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = IntMatrix2::shear(b);
        let z = sample::zg_point(&mut rng, g);
        let arrow = FgArrow::from_source(z.left_anchor().unwrap(), sample::small_int(&mut rng), sample::small_int(&mut rng), g).unwrap();
        let (v, w) = z.right_anchor();
        let (a1, a2) = (sample::a_arrow_at(&mut rng, v), sample::a_arrow_at(&mut rng, w));
        let left_first = atheta2_act_on_zg(&fg_act_on_zg(&arrow, &z).unwrap(), &a1, &a2).unwrap();
        let right_first = fg_act_on_zg(&arrow, &atheta2_act_on_zg(&z, &a1, &a2).unwrap()).unwrap();
        prop_assert_eq!(left_first, right_first);
    }
}
