//! Integer bookkeeping for the b-twists on K-theory.
//!
//! `K₀` carries the standard basis `([1], [p])` with `[p]` a projection of
//! trace θ. Which integer basis is matched by the duality is not derived
//! here; the labels are a fixed choice.

use serde::Serialize;

use crate::scalars::{mobius, IntMatrix2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct KClass {
    pub k0: (i64, i64),
    pub k1: (i64, i64),
}

impl KClass {
    pub fn new(k0: (i64, i64), k1: (i64, i64)) -> Self {
        Self { k0, k1 }
    }
}

/// `[[1, b], [0, 1]]`.
pub fn twist_matrix(b: i64) -> IntMatrix2 {
    IntMatrix2::shear(b)
}

/// Acts on `K₀` by the twist matrix and trivially on `K₁`.
pub fn twist_apply(b: i64, c: &KClass) -> KClass {
    let m = twist_matrix(b);
    KClass { k0: (m.a * c.k0.0 + m.b * c.k0.1, m.c * c.k0.0 + m.d * c.k0.1), k1: c.k1 }
}

pub fn twist_compose(b: i64, b2: i64) -> i64 {
    b + b2
}

pub fn twist_inverse(b: i64) -> i64 {
    -b
}

/// The twist's Möbius action on the rotation number, `θ ↦ θ + b`.
pub fn twist_mobius(b: i64, theta: f64) -> f64 {
    mobius(&twist_matrix(b), theta).expect("upper triangular matrices have no pole")
}

/// Checks the group law and inversion over `|b|, |b′| ≤ bound` on the given
/// classes; returns the number of failures.
pub fn group_law_failures(bound: i64, classes: &[KClass]) -> usize {
    let mut failures = 0;
    for b in -bound..=bound {
        for b2 in -bound..=bound {
            let product = twist_matrix(b).mul(&twist_matrix(b2));
            if product != twist_matrix(twist_compose(b, b2)) {
                failures += 1;
            }
            for c in classes {
                if twist_apply(b, &twist_apply(b2, c)) != twist_apply(twist_compose(b, b2), c) {
                    failures += 1;
                }
            }
        }
        for c in classes {
            if twist_apply(twist_inverse(b), &twist_apply(b, c)) != *c {
                failures += 1;
            }
        }
    }
    failures
}
