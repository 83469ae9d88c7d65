//! Exact groupoid laws and the equivalences between them.

use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{count_map, job, params, Job, Outcome, RunConfig};
use crate::error::Result;
use crate::groupoids::{
    atheta2_act_on_zg, atheta_compose, btheta_compose, fg_act_on_zg, fg_compose, fg_iso_transformation, fg_to_quadruple,
    phi_m, reduction_embed, reduction_iso, sample, zg_roundtrip, AThetaArrow, BThetaArrow, FgArrow,
};
use crate::scalars::{IntMatrix2, ThetaScalar};

pub(super) fn jobs() -> Vec<Job> {
    vec![
        job("groupoids.atheta_axioms", "rotation groupoid T ⋊ Z: associativity, units, inverses", atheta_axioms),
        job("groupoids.btheta_axioms", "Kronecker flow groupoid T² ⋊ R: associativity, units, inverses", btheta_axioms),
        job("groupoids.fg_axioms", "transformation groupoid T² ⋊ Z² for g = [[1, b], [0, 1]]", fg_axioms),
        job("groupoids.phi_functoriality", "isomorphisms φ^M of Kronecker flow groupoids compose as φ^{NM}", phi_functoriality),
        job("groupoids.reduction_homomorphism", "reduction of the flow groupoid to T × {0} is the rotation groupoid", reduction),
        job("groupoids.zg_roundtrip", "linking space Z_g ≅ Y_g ∗ X", zg_roundtrips),
        job("groupoids.fg_iso_roundtrip", "F_g inside B_θ × B_θ as a transformation groupoid", fg_iso_roundtrips),
        job("groupoids.actions_commute", "left F_g and right A_θ × A_θ actions on Z_g commute", actions_commute),
    ]
}

const TRIPLES: usize = 1000;
const SAMPLES: usize = 500;
const SHEARS: [i64; 3] = [1, 2, 3];

/// Failures of associativity, the two unit laws and the two inverse laws
/// on one composable triple.
fn triple_failures<A: PartialEq>(
    (f, h, k): (&A, &A, &A),
    compose: impl Fn(&A, &A) -> Result<A>,
    unit_range: impl Fn(&A) -> A,
    unit_source: impl Fn(&A) -> A,
    inverse: impl Fn(&A) -> A,
) -> usize {
    let is = |r: Result<A>, want: &A| matches!(r, Ok(ref x) if x == want);
    let assoc = match (compose(f, h), compose(h, k)) {
        (Ok(fh), Ok(hk)) => matches!((compose(&fh, k), compose(f, &hk)), (Ok(a), Ok(b)) if a == b),
        _ => false,
    };
    let left_unit = is(compose(&unit_range(f), f), f);
    let right_unit = is(compose(f, &unit_source(f)), f);
    let inv_right = is(compose(f, &inverse(f)), &unit_range(f));
    let inv_left = is(compose(&inverse(f), f), &unit_source(f));
    [assoc, left_unit, right_unit, inv_right, inv_left].iter().filter(|&&ok| !ok).count()
}

fn atheta_axioms(_: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let mut failures = 0;
    for _ in 0..TRIPLES {
        let f = sample::a_arrow(rng);
        let h = sample::a_arrow_at(rng, f.source());
        let k = sample::a_arrow_at(rng, h.source());
        failures += triple_failures(
            (&f, &h, &k),
            atheta_compose,
            |a| AThetaArrow::unit(a.range()),
            |a| AThetaArrow::unit(a.source()),
            AThetaArrow::inverse,
        );
    }
    Ok(Outcome::exact(failures, params(&[("triples", json!(TRIPLES))])))
}

fn btheta_axioms(_: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let mut failures = 0;
    for _ in 0..TRIPLES {
        let f = sample::b_arrow(rng);
        let h = sample::b_arrow_at(rng, f.source());
        let k = sample::b_arrow_at(rng, h.source());
        let unit = |p: (_, _)| BThetaArrow::unit(p.0, p.1);
        failures += triple_failures(
            (&f, &h, &k),
            btheta_compose,
            |a| unit(a.range()),
            |a| unit(a.source()),
            BThetaArrow::inverse,
        );
    }
    Ok(Outcome::exact(failures, params(&[("triples", json!(TRIPLES))])))
}

fn fg_axioms(_: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let (failures, counts) = count_map(SHEARS.iter().map(|&b| {
        let g = IntMatrix2::shear(b);
        let mut failures = 0;
        for _ in 0..TRIPLES {
            let f = sample::fg_arrow(rng, g);
            let h = sample::fg_arrow_at(rng, f.source(), g);
            let k = sample::fg_arrow_at(rng, h.source(), g);
            let unit = |p: (_, _)| FgArrow::unit(p.0, p.1, g).expect("shear has rational mu");
            failures += triple_failures((&f, &h, &k), fg_compose, |a| unit(a.range()), |a| unit(a.source()), FgArrow::inverse);
        }
        (format!("b={b}"), failures)
    }));
    Ok(Outcome::exact(failures, params(&[("triples_per_b", json!(TRIPLES)), ("failures", counts)])))
}

fn phi_functoriality(_: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let mut failures = 0;
    for _ in 0..100 {
        let (m, n) = (sample::unimodular(rng), sample::unimodular(rng));
        let f = sample::b_arrow(rng);
        let h = sample::b_arrow_at(rng, f.source());
        if phi_m(&phi_m(&f, &m)?, &n)? != phi_m(&f, &n.mul(&m))? {
            failures += 1;
        }
        let composed = phi_m(&btheta_compose(&f, &h)?, &m)?;
        if btheta_compose(&phi_m(&f, &m)?, &phi_m(&h, &m)?) != Ok(composed) {
            failures += 1;
        }
        let unit = phi_m(&BThetaArrow::unit(f.x, f.y), &m)?;
        if unit.displacement() != [ThetaScalar::zero(); 2] {
            failures += 1;
        }
    }
    Ok(Outcome::exact(failures, params(&[("pairs", json!(100)), ("max_entry", json!(5))])))
}

fn reduction(_: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let mut failures = 0;
    for _ in 0..SAMPLES {
        let a = sample::a_arrow(rng);
        let h = sample::a_arrow_at(rng, a.source());
        if reduction_iso(&reduction_embed(&a)) != Ok(a) {
            failures += 1;
        }
        let lhs = reduction_embed(&atheta_compose(&a, &h)?);
        if btheta_compose(&reduction_embed(&a), &reduction_embed(&h)) != Ok(lhs) {
            failures += 1;
        }
    }
    Ok(Outcome::exact(failures, params(&[("samples", json!(SAMPLES))])))
}

fn zg_roundtrips(_: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let (failures, counts) = count_map(SHEARS.iter().map(|&b| {
        let g = IntMatrix2::shear(b);
        let bad = (0..SAMPLES)
            .filter(|_| {
                let z = sample::zg_point(rng, g);
                zg_roundtrip(&z) != Ok(z)
            })
            .count();
        (format!("b={b}"), bad)
    }));
    Ok(Outcome::exact(failures, params(&[("samples_per_b", json!(SAMPLES)), ("failures", counts)])))
}

fn fg_iso_roundtrips(_: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let (failures, counts) = count_map(SHEARS.iter().map(|&b| {
        let g = IntMatrix2::shear(b);
        let bad = (0..SAMPLES)
            .filter(|_| {
                let a = sample::fg_arrow(rng, g);
                fg_iso_transformation(&fg_to_quadruple(&a)) != Ok(a)
            })
            .count();
        (format!("b={b}"), bad)
    }));
    Ok(Outcome::exact(failures, params(&[("samples_per_b", json!(SAMPLES)), ("failures", counts)])))
}

fn actions_commute(_: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let mut failures = 0;
    for i in 0..SAMPLES {
        let g = IntMatrix2::shear(SHEARS[i % 3]);
        let z = sample::zg_point(rng, g);
        let arrow = FgArrow::from_source(z.left_anchor()?, sample::small_int(rng), sample::small_int(rng), g)?;
        let (v, w) = z.right_anchor();
        let (a1, a2) = (sample::a_arrow_at(rng, v), sample::a_arrow_at(rng, w));
        let left_first = fg_act_on_zg(&arrow, &z).and_then(|y| atheta2_act_on_zg(&y, &a1, &a2));
        let right_first = atheta2_act_on_zg(&z, &a1, &a2).and_then(|y| fg_act_on_zg(&arrow, &y));
        match (left_first, right_first) {
            (Ok(a), Ok(b)) if a == b => {}
            _ => failures += 1,
        }
    }
    Ok(Outcome::exact(failures, params(&[("samples", json!(SAMPLES)), ("shears", json!(SHEARS))])))
}
