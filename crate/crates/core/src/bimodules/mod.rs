//! Hilbert-module structures on functions over `T × R` and `Z × T × R`.
//!
//! Functions are stored as Fourier series in the torus slot with a
//! closed-form [`Profile`] per mode, so every action that only translates,
//! rotates or modulates its argument is applied exactly. Inner products
//! integrate over `R` with a composite Gauss–Legendre rule.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::nc_torus::{e, nct_multiply, SmoothElement};
use crate::operator::c;
use crate::profile::{GaussTerm, Profile, Trig};
use crate::quadrature::Quadrature;

pub mod descended;
pub mod line;

/// `φ([x], r) = Σ_m φ̂_m(r) e^{2πimx}`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TRFunction {
    pub modes: BTreeMap<i64, Profile>,
}

impl TRFunction {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(m: i64, p: Profile) -> Self {
        let mut f = Self::zero();
        f.add_mode(m, p);
        f
    }

    pub fn add_mode(&mut self, m: i64, p: Profile) {
        let slot = self.modes.entry(m).or_default();
        *slot = slot.add(&p);
    }

    pub fn eval(&self, x: f64, r: f64) -> Complex64 {
        self.modes.iter().map(|(&m, p)| p.eval(r) * e(m as f64 * x)).sum()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (&m, p) in &o.modes {
            out.add_mode(m, p.clone());
        }
        out
    }

    pub fn scale(&self, z: Complex64) -> Self {
        self.map(|m, p| (m, p.scale(z)))
    }

    /// Applies `f` to every `(mode, profile)` pair, merging collisions.
    pub fn map(&self, f: impl Fn(i64, &Profile) -> (i64, Profile)) -> Self {
        let mut out = Self::zero();
        for (&m, p) in &self.modes {
            let (m2, p2) = f(m, p);
            out.add_mode(m2, p2);
        }
        out
    }

    /// `([x], r) ↦ φ([x − a], r)`.
    pub fn translate_x(&self, a: f64) -> Self {
        self.map(|m, p| (m, p.scale(e(-(m as f64) * a))))
    }

    /// `([x], r) ↦ φ([x], r − τ)`.
    pub fn shift_r(&self, tau: f64) -> Self {
        self.map(|m, p| (m, p.shift(tau)))
    }

    /// Multiplication by `f([x + slope·r])`.
    pub fn mul_trig(&self, f: &Trig, slope: f64) -> Self {
        let mut out = Self::zero();
        for (&j, &z) in f {
            for (&m, p) in &self.modes {
                out.add_mode(m + j, p.scale(z).modulate(j as f64 * slope));
            }
        }
        out
    }

    pub fn support_bound(&self) -> f64 {
        self.modes.values().map(Profile::support_bound).fold(0.0, f64::max)
    }

    /// Largest frequency in `r` over all modes.
    pub fn band(&self) -> f64 {
        self.modes.values().map(Profile::band).fold(0.0, f64::max)
    }

    pub fn max_mode(&self) -> i64 {
        self.modes.keys().map(|m| m.abs()).max().unwrap_or(0)
    }

    /// Mode-by-node sample array on the rule's nodes.
    pub fn values(&self, quad: &Quadrature) -> Vec<(i64, Vec<Complex64>)> {
        self.modes.iter().map(|(&m, p)| (m, quad.nodes.iter().map(|&r| p.eval(r)).collect())).collect()
    }
}

/// A finitely supported family `Ψ(n, [x], r)` of [`TRFunction`]s.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ZTRFunction {
    pub slots: BTreeMap<i64, TRFunction>,
}

impl ZTRFunction {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(n: i64, f: TRFunction) -> Self {
        let mut out = Self::zero();
        out.add_slot(n, f);
        out
    }

    pub fn add_slot(&mut self, n: i64, f: TRFunction) {
        let slot = self.slots.entry(n).or_default();
        *slot = slot.add(&f);
    }

    pub fn slot(&self, n: i64) -> Option<&TRFunction> {
        self.slots.get(&n)
    }

    pub fn eval(&self, n: i64, x: f64, r: f64) -> Complex64 {
        self.slots.get(&n).map_or(c(0.0, 0.0), |f| f.eval(x, r))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (&n, f) in &o.slots {
            out.add_slot(n, f.clone());
        }
        out
    }

    pub fn scale(&self, z: Complex64) -> Self {
        Self { slots: self.slots.iter().map(|(&n, f)| (n, f.scale(z))).collect() }
    }

    pub fn support_bound(&self) -> f64 {
        self.slots.values().map(TRFunction::support_bound).fold(0.0, f64::max)
    }

    pub fn band(&self) -> f64 {
        self.slots.values().map(TRFunction::band).fold(0.0, f64::max)
    }

    pub fn max_mode(&self) -> i64 {
        self.slots.values().map(TRFunction::max_mode).max().unwrap_or(0)
    }

    pub fn max_slot(&self) -> i64 {
        self.slots.keys().map(|n| n.abs()).max().unwrap_or(0)
    }
}

/// Largest pointwise difference over a fixed sample of `[0, 1) × [−4, 4]`.
pub fn tr_distance(a: &TRFunction, b: &TRFunction) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..7 {
        let x = i as f64 / 7.0 + 0.03;
        for j in 0..33 {
            let r = -4.0 + j as f64 * 0.25;
            worst = worst.max((a.eval(x, r) - b.eval(x, r)).norm());
        }
    }
    worst
}

pub fn ztr_distance(a: &ZTRFunction, b: &ZTRFunction) -> f64 {
    let empty = TRFunction::zero();
    let mut keys: Vec<i64> = a.slots.keys().chain(b.slots.keys()).copied().collect();
    keys.sort_unstable();
    keys.dedup();
    keys.iter()
        .map(|n| tr_distance(a.slots.get(n).unwrap_or(&empty), b.slots.get(n).unwrap_or(&empty)))
        .fold(0.0, f64::max)
}

/// Rejects a rule that cannot hold the functions' support or resolve their
/// oscillation.
pub fn check_rule(quad: &Quadrature, support: f64, band: f64) -> Result<()> {
    if support > quad.hi.min(-quad.lo) {
        return Err(Error::TruncationTooSmall(format!(
            "profiles reach |r| = {support:.2} but the rule covers [{}, {}]",
            quad.lo, quad.hi
        )));
    }
    if band > quad.nyquist() {
        return Err(Error::AliasingDetected { freq: band, nyquist: quad.nyquist() });
    }
    Ok(())
}

/// Mode-wise products `Σ_{m₁} conj(φ̂_{m₁}) ψ̂_{m₁+m}` sampled on the rule's nodes.
pub(crate) fn mode_products(phi: &TRFunction, psi: &TRFunction, quad: &Quadrature) -> BTreeMap<i64, Vec<Complex64>> {
    let pv = phi.values(quad);
    let qv = psi.values(quad);
    let mut out: BTreeMap<i64, Vec<Complex64>> = BTreeMap::new();
    for (m1, a) in &pv {
        for (m2, b) in &qv {
            let acc = out.entry(m2 - m1).or_insert_with(|| vec![c(0.0, 0.0); quad.len()]);
            for ((o, x), y) in acc.iter_mut().zip(a).zip(b) {
                *o += x.conj() * y;
            }
        }
    }
    out
}

/// Finite sum of elementary tensors in `A_θ ⊙ A_θ`.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorElement {
    pub terms: Vec<(SmoothElement, SmoothElement)>,
}

impl TensorElement {
    pub fn new(a: SmoothElement, b: SmoothElement) -> Self {
        Self { terms: vec![(a, b)] }
    }

    pub fn one(theta: f64) -> Self {
        Self::new(SmoothElement::one(theta), SmoothElement::one(theta))
    }

    /// `V^{l₁}U^{k₁} ⊗ V^{l₂}U^{k₂}`.
    pub fn monomial(theta: f64, l1: i64, k1: i64, l2: i64, k2: i64) -> Self {
        Self::new(
            SmoothElement::monomial(theta, l1, k1, c(1.0, 0.0)),
            SmoothElement::monomial(theta, l2, k2, c(1.0, 0.0)),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (a, b) in &self.terms {
            for (a2, b2) in &o.terms {
                terms.push((nct_multiply(a, a2), nct_multiply(b, b2)));
            }
        }
        Self { terms }
    }

    /// Every monomial `c · V^{l₁}U^{k₁} ⊗ V^{l₂}U^{k₂}` as `(l₁, k₁, l₂, k₂, c)`.
    pub fn monomials(&self) -> Vec<(i64, i64, i64, i64, Complex64)> {
        let mut out = Vec::new();
        for (a, b) in &self.terms {
            for (l1, k1, z1) in a.terms() {
                for (l2, k2, z2) in b.terms() {
                    out.push((l1, k1, l2, k2, z1 * z2));
                }
            }
        }
        out
    }

    /// Value at the arrow `(([x₁], n₁), ([x₂], n₂))` of `A_θ × A_θ`.
    pub fn eval(&self, n1: i64, x1: f64, n2: i64, x2: f64) -> Complex64 {
        self.terms.iter().map(|(a, b)| a.eval(x1, n1) * b.eval(x2, n2)).sum()
    }

    /// `U`-powers appearing in each factor.
    fn u_support(&self) -> (Vec<i64>, Vec<i64>) {
        let mut first: Vec<i64> = Vec::new();
        let mut second: Vec<i64> = Vec::new();
        for (a, b) in &self.terms {
            first.extend(a.terms().map(|t| t.1));
            second.extend(b.terms().map(|t| t.1));
        }
        first.sort_unstable();
        first.dedup();
        second.sort_unstable();
        second.dedup();
        (first, second)
    }
}

/// Convolution `(H ∗ ξ)(l₁, [v], l₂, [w])` on `A_θ × A_θ`, for `H` given
/// pointwise in the argument order `(l₁, v, l₂, w)` used by the inner
/// products.
pub fn a_convolve(
    h: impl Fn(i64, f64, i64, f64) -> Complex64,
    xi: &TensorElement,
    theta: f64,
    l1: i64,
    v: f64,
    l2: i64,
    w: f64,
) -> Complex64 {
    let (s1, s2) = xi.u_support();
    let mut acc = c(0.0, 0.0);
    for &j1 in &s1 {
        for &j2 in &s2 {
            let (m1, m2) = (l1 - j1, l2 - j2);
            let x = xi.eval(j1, v - m1 as f64 * theta, j2, w - m2 as f64 * theta);
            if x != c(0.0, 0.0) {
                acc += h(m1, v, m2, w) * x;
            }
        }
    }
    acc
}

/// `H*(l₁, v, l₂, w) = conj H(−l₁, v − l₁θ, −l₂, w − l₂θ)`.
pub fn a_involution(h: impl Fn(i64, f64, i64, f64) -> Complex64, theta: f64, l1: i64, v: f64, l2: i64, w: f64) -> Complex64 {
    h(-l1, v - l1 as f64 * theta, -l2, w - l2 as f64 * theta).conj()
}

/// Random closed-form test data.
pub mod samples {
    use super::*;

    pub fn profile(rng: &mut impl Rng) -> Profile {
        let terms = rng.gen_range(1..=2);
        Profile {
            terms: (0..terms)
                .map(|_| GaussTerm {
                    coeff: c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                    center: rng.gen_range(-1.0..1.0),
                    alpha: rng.gen_range(0.6..1.5),
                    power: rng.gen_range(0..=2),
                    freq: rng.gen_range(-0.5..0.5),
                })
                .collect(),
        }
    }

    /// Up to three modes in `[−max_mode, max_mode]`.
    pub fn tr(rng: &mut impl Rng, max_mode: i64) -> TRFunction {
        let mut f = TRFunction::zero();
        for _ in 0..rng.gen_range(1..=3) {
            f.add_mode(rng.gen_range(-max_mode..=max_mode), profile(rng));
        }
        f
    }

    pub fn ztr(rng: &mut impl Rng, max_slot: i64, max_mode: i64) -> ZTRFunction {
        let mut f = ZTRFunction::zero();
        for _ in 0..rng.gen_range(1..=2) {
            f.add_slot(rng.gen_range(-max_slot..=max_slot), tr(rng, max_mode));
        }
        f
    }

    pub fn trig_poly(rng: &mut impl Rng, max_mode: i64) -> Trig {
        (0..rng.gen_range(1..=3))
            .map(|_| (rng.gen_range(-max_mode..=max_mode), c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))))
            .fold(Trig::new(), |mut t, (m, z)| {
                *t.entry(m).or_default() += z;
                t
            })
    }

    pub fn smooth(rng: &mut impl Rng, theta: f64, radius: i64) -> SmoothElement {
        let terms: Vec<(i64, i64, Complex64)> = (0..rng.gen_range(1..=3))
            .map(|_| {
                (
                    rng.gen_range(-radius..=radius),
                    rng.gen_range(-radius..=radius),
                    c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                )
            })
            .collect();
        SmoothElement::from_terms(theta, &terms)
    }

    pub fn tensor(rng: &mut impl Rng, theta: f64, radius: i64) -> TensorElement {
        TensorElement::new(smooth(rng, theta, radius), smooth(rng, theta, radius))
    }
}
