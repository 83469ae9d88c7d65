//! Integer bookkeeping of the twists on K-theory.

use std::collections::HashSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{job, params, Job, Outcome, RunConfig};
use crate::error::Result;
use crate::ktheory::{group_law_failures, twist_apply, twist_compose, twist_inverse, twist_matrix, twist_mobius, KClass};

pub(super) fn jobs() -> Vec<Job> {
    vec![
        job("ktheory.group_law", "twists form a cyclic group: τ_b τ_b′ = τ_{b+b′}, τ_{−b} = τ_b⁻¹", group_law),
        job("ktheory.injective", "distinct twists act by distinct unimodular matrices", injective),
        job("ktheory.rotation_number", "twist acts on the rotation number by θ ↦ θ + b", rotation_number),
    ]
}

const BOUND: i64 = 10;

fn classes(rng: &mut ChaCha8Rng) -> Vec<KClass> {
    let mut out = vec![KClass::new((1, 0), (0, 0)), KClass::new((0, 1), (0, 0)), KClass::new((0, 0), (1, 0))];
    out.extend((0..20).map(|_| {
        KClass::new(
            (rng.gen_range(-50..=50), rng.gen_range(-50..=50)),
            (rng.gen_range(-50..=50), rng.gen_range(-50..=50)),
        )
    }));
    out
}

fn group_law(_: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let classes = classes(rng);
    let mut failures = group_law_failures(BOUND, &classes);
    for b in -BOUND..=BOUND {
        for c in &classes {
            if twist_apply(twist_inverse(b), &twist_apply(b, c)) != *c {
                failures += 1;
            }
        }
        if twist_compose(b, twist_inverse(b)) != 0 {
            failures += 1;
        }
    }
    Ok(Outcome::exact(failures, params(&[("bound", json!(BOUND)), ("classes", json!(classes.len()))])))
}

fn injective(_: &RunConfig, _: &mut ChaCha8Rng) -> Result<Outcome> {
    let matrices: HashSet<_> = (-BOUND..=BOUND).map(twist_matrix).collect();
    let mut failures = (2 * BOUND as usize + 1) - matrices.len();
    failures += matrices.iter().filter(|m| m.det() != 1).count();
    Ok(Outcome::exact(failures, params(&[("bound", json!(BOUND))])))
}

fn rotation_number(cfg: &RunConfig, _: &mut ChaCha8Rng) -> Result<Outcome> {
    let worst = (-BOUND..=BOUND)
        .map(|b| (twist_mobius(b, cfg.theta) - (cfg.theta + b as f64)).abs())
        .fold(0.0, f64::max);
    Ok(Outcome::within(worst, cfg.tol.exact, params(&[("bound", json!(BOUND)), ("theta", json!(cfg.theta))])))
}
