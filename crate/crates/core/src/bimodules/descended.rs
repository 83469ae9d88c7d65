//! Modules over the rotation algebra built on `Z × T × R`: the descended
//! module `𝓗_{−b}`, the `A_θ ⊗ A_θ`-module `𝓛_g` for the shear
//! `g = [[1, b], [0, 1]]`, and its descent `𝓝_g⁰`.
//!
//! Elements are [`ZTRFunction`]s. For `𝓛_g` and `𝓝_g⁰` the slot index is the
//! integer coordinate `k` of a point `([v], r, k)`.

use num_complex::Complex64;

use super::line::nb_inner;
use super::{check_rule, mode_products, TensorElement, ZTRFunction};
use crate::error::Result;
use crate::nc_torus::{e, lambda_pow, SmoothElement};
use crate::operator::c;
use crate::profile::{trig, trig_translate};
use crate::quadrature::Quadrature;

/// `(a.Ψ)(n, [x], r) = Σ_m a([x − rb], m) Ψ(n − m, [x − mθ], r − m)`.
pub fn mch_left(a: &SmoothElement, psi: &ZTRFunction, b: i64) -> ZTRFunction {
    let theta = a.theta();
    let mut out = ZTRFunction::zero();
    for (j, m, z) in a.terms() {
        let f = trig(&[(j, z)]);
        for (&n, slot) in &psi.slots {
            let moved = slot.translate_x(m as f64 * theta).shift_r(m as f64).mul_trig(&f, -(b as f64));
            out.add_slot(n + m, moved);
        }
    }
    out
}

/// `(Ψ.a)(n, [x], r) = Σ_m Ψ(m, [x], r) a([x − mθ], n − m)`.
pub fn mch_right(psi: &ZTRFunction, a: &SmoothElement) -> ZTRFunction {
    let theta = a.theta();
    let mut out = ZTRFunction::zero();
    for (&m, slot) in &psi.slots {
        for (j, k, z) in a.terms() {
            let f = trig(&[(j, z * e(-(j * m) as f64 * theta))]);
            out.add_slot(m + k, slot.mul_trig(&f, 0.0));
        }
    }
    out
}

/// `⟨Ψ₁, Ψ₂⟩([w], l) = Σ_k ∫ conj Ψ₁(k, [w + kθ], r) Ψ₂(l + k, [w + kθ], r) dr`.
pub fn mch_inner(psi1: &ZTRFunction, psi2: &ZTRFunction, theta: f64, quad: &Quadrature) -> Result<SmoothElement> {
    check_rule(quad, psi1.support_bound().min(psi2.support_bound()), psi1.band() + psi2.band())?;
    let mut terms = Vec::new();
    for (&k, f1) in &psi1.slots {
        for (&k2, f2) in &psi2.slots {
            let l = k2 - k;
            for (n, v) in mode_products(f1, f2, quad) {
                let z: Complex64 = v.iter().zip(&quad.weights).map(|(z, w)| z * w).sum();
                terms.push((n, l, z * e((n * k) as f64 * theta)));
            }
        }
    }
    Ok(SmoothElement::from_terms(theta, &terms))
}

/// Right action of the monomial `V^{l₁}U^{k₁} ⊗ V^{l₂}U^{k₂}` on `𝓛_g`:
/// `Φ([v + k₁θ], r − k₁, k − k₂ + k₁) e^{2πil₁(v + k₁θ)} e^{2πil₂(v + rb + (k₂ − k)θ)}`.
pub fn lg_right_monomial(phi: &ZTRFunction, l1: i64, k1: i64, l2: i64, k2: i64, b: i64, theta: f64) -> ZTRFunction {
    let mut out = ZTRFunction::zero();
    for (&k_in, slot) in &phi.slots {
        let k = k_in + k2 - k1;
        let phase = e((l1 * k1) as f64 * theta) * e((l2 * (k2 - k)) as f64 * theta);
        let moved = slot
            .translate_x(-(k1 as f64) * theta)
            .shift_r(k1 as f64)
            .mul_trig(&trig(&[(l1, phase)]), 0.0)
            .mul_trig(&trig(&[(l2, c(1.0, 0.0))]), b as f64);
        out.add_slot(k, moved);
    }
    out
}

pub fn lg_right_act(phi: &ZTRFunction, f: &TensorElement, b: i64, theta: f64) -> ZTRFunction {
    let mut out = ZTRFunction::zero();
    for (l1, k1, l2, k2, z) in f.monomials() {
        out = out.add(&lg_right_monomial(phi, l1, k1, l2, k2, b, theta).scale(z));
    }
    out
}

/// `⟨Φ, Ψ⟩([v], l₁, [w], l₂) = Σ_{k₁,k₂} conj Φ([v], s, k₂) Ψ([v − l₁θ], s + l₁, k₂ + l₂ − l₁)`
/// with `s = (k₁ + k₂θ + w − v)/b`; the `k₁` range covers the profiles'
/// support.
#[allow(clippy::too_many_arguments)]
pub fn lg_inner(phi: &ZTRFunction, psi: &ZTRFunction, b: i64, theta: f64, l1: i64, v: f64, l2: i64, w: f64) -> Complex64 {
    let reach = phi.support_bound() * b.abs() as f64;
    let bf = b as f64;
    let mut acc = c(0.0, 0.0);
    for (&k2, slot) in &phi.slots {
        let Some(target) = psi.slot(k2 + l2 - l1) else { continue };
        let centre = v - w - k2 as f64 * theta;
        let lo = (centre - reach).floor() as i64;
        let hi = (centre + reach).ceil() as i64;
        for k1 in lo..=hi {
            let s = (k1 as f64 + k2 as f64 * theta + w - v) / bf;
            acc += slot.eval(v, s).conj() * target.eval(v - l1 as f64 * theta, s + l1 as f64);
        }
    }
    acc
}

/// `(V^{l₁}U^{k₁} □ Φ)([v], r, k) = Φ([v − k₁θ], r + k₁, k − k₁) e^{2πil₁v}`.
pub fn ng0_left(a: &SmoothElement, phi: &ZTRFunction) -> ZTRFunction {
    let theta = a.theta();
    let mut out = ZTRFunction::zero();
    for (l1, k1, z) in a.terms() {
        for (&k, slot) in &phi.slots {
            let moved = slot.translate_x(k1 as f64 * theta).shift_r(-(k1 as f64)).mul_trig(&trig(&[(l1, z)]), 0.0);
            out.add_slot(k + k1, moved);
        }
    }
    out
}

/// The left action through `𝓛_g`: `V^{l₁}U^{k₁} □ Φ = λ^{l₁k₁} Φ·(V^{l₁}U^{−k₁} ⊗ 1)`.
pub fn ng0_left_via_lg(a: &SmoothElement, phi: &ZTRFunction, b: i64) -> ZTRFunction {
    let theta = a.theta();
    let mut out = ZTRFunction::zero();
    for (l1, k1, z) in a.terms() {
        let moved = lg_right_monomial(phi, l1, -k1, 0, 0, b, theta);
        out = out.add(&moved.scale(z * lambda_pow(theta, l1 * k1)));
    }
    out
}

/// `(Φ □ V^{l₂}U^{k₂})([v], r, k) = λ^{l₂(k₂ − k)} Φ([v], r, k − k₂) e^{2πil₂(v + rb)}`.
pub fn ng0_right(phi: &ZTRFunction, a: &SmoothElement, b: i64) -> ZTRFunction {
    let theta = a.theta();
    let mut out = ZTRFunction::zero();
    for (&k_in, slot) in &phi.slots {
        for (l2, k2, z) in a.terms() {
            // k − k₂ = k_in, so λ^{l₂(k₂ − k)} = λ^{−l₂ k_in}
            let f = trig(&[(l2, z * lambda_pow(theta, -l2 * k_in))]);
            out.add_slot(k_in + k2, slot.mul_trig(&f, b as f64));
        }
    }
    out
}

/// The right action through `𝓛_g`: `Φ □ a = Φ·(1 ⊗ a)`.
pub fn ng0_right_via_lg(phi: &ZTRFunction, a: &SmoothElement, b: i64) -> ZTRFunction {
    let theta = a.theta();
    lg_right_act(phi, &TensorElement::new(SmoothElement::one(theta), a.clone()), b, theta)
}

/// Inner product on `𝓝_g⁰` in descended form,
/// `⟨Φ, Ψ⟩([x], l) = Σ_k ⟨Φ(k), Ψ(k + l)⟩_{N_b}([x + kθ])`.
pub fn ng0_inner(phi: &ZTRFunction, psi: &ZTRFunction, b: i64, theta: f64, quad: &Quadrature) -> Result<SmoothElement> {
    let mut terms = Vec::new();
    for (&k, f1) in &phi.slots {
        for (&k2, f2) in &psi.slots {
            let ip = nb_inner(f1, f2, b, quad)?;
            for (n, z) in trig_translate(&ip, -(k as f64) * theta) {
                terms.push((n, k2 - k, z));
            }
        }
    }
    Ok(SmoothElement::from_terms(theta, &terms))
}

/// Inner product on `𝓝_g⁰` as the torus average `∫_T ⟨Φ, Ψ⟩^{𝓛_g}([y], 0, [x], l) dy`,
/// by the `points`-node trapezoid rule (spectrally accurate for the
/// periodic integrand).
#[allow(clippy::too_many_arguments)]
pub fn ng0_inner_integrated(phi: &ZTRFunction, psi: &ZTRFunction, b: i64, theta: f64, x: f64, l: i64, points: usize) -> Complex64 {
    let total: Complex64 = (0..points).map(|j| lg_inner(phi, psi, b, theta, 0, j as f64 / points as f64, l, x)).sum();
    total / points as f64
}
