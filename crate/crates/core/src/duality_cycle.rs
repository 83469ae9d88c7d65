//! The Schwartz–Bruhat module over `Z × T × R²` representing the duality
//! class: the transforms `χ`, `Γ`, `Ξ = Γ∘χ`, the module structures `𝓡` and
//! `𝓟` that `Ξ` intertwines, the operator `d_𝓡` with its resolvent, and the
//! split operators `D_𝓛`, `D_𝓗` on the factors.
//!
//! A function is stored as `F(k, [x], r, s) = Σ_m e^{2πimx} f_{k,m}(r, s)`
//! with each `f_{k,m}` a closure. Substitutions compose closures exactly;
//! the Fourier transforms in the last variable are evaluated lazily by
//! composite Gauss–Legendre quadrature.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bimodules::descended::{lg_right_act, mch_left};
use crate::bimodules::{TensorElement, TRFunction, ZTRFunction};
use crate::error::{Error, Result};
use crate::nc_torus::{e, lambda_pow, SmoothElement};
use crate::operator::c;
use crate::profile::{GaussTerm, Profile};
use crate::quadrature::{derivative, Quadrature};

pub type Slice = Arc<dyn Fn(f64, f64) -> Complex64 + Send + Sync>;

/// Step of the eighth-order difference used for `r`/`s` derivatives.
pub const DIFF_STEP: f64 = 0.02;

/// Conservative support radii and frequency bounds in the two real
/// variables.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Extent {
    pub reach_r: f64,
    pub reach_s: f64,
    pub band_r: f64,
    pub band_s: f64,
}

impl Extent {
    fn join(self, o: Self) -> Self {
        Self {
            reach_r: self.reach_r.max(o.reach_r),
            reach_s: self.reach_s.max(o.reach_s),
            band_r: self.band_r.max(o.band_r),
            band_s: self.band_s.max(o.band_s),
        }
    }
}

/// A Schwartz–Bruhat function on `Z × T × R²`.
#[derive(Clone, Default)]
pub struct SB2Function {
    slices: BTreeMap<(i64, i64), Vec<Slice>>,
    pub extent: Extent,
}

impl fmt::Debug for SB2Function {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SB2Function")
            .field("keys", &self.slices.keys().collect::<Vec<_>>())
            .field("extent", &self.extent)
            .finish()
    }
}

impl SB2Function {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn push(&mut self, k: i64, m: i64, f: Slice) {
        self.slices.entry((k, m)).or_default().push(f);
    }

    /// `F(k, [x], r, s) = Φ(k, [x], r) ψ(s)`.
    pub fn product(phi: &ZTRFunction, psi: &Profile) -> Self {
        let mut out = Self::zero();
        for (&k, tr) in &phi.slots {
            for (&m, p) in &tr.modes {
                let (p, q) = (p.clone(), psi.clone());
                out.push(k, m, Arc::new(move |r, s| p.eval(r) * q.eval(s)));
            }
        }
        out.extent = Extent {
            reach_r: phi.support_bound(),
            reach_s: psi.support_bound(),
            band_r: phi.band(),
            band_s: psi.band(),
        };
        out
    }

    pub fn eval(&self, k: i64, x: f64, r: f64, s: f64) -> Complex64 {
        self.slices
            .range((k, i64::MIN)..=(k, i64::MAX))
            .map(|(&(_, m), fs)| e(m as f64 * x) * fs.iter().map(|f| f(r, s)).sum::<Complex64>())
            .sum()
    }

    /// The mode-`m` coefficient `f_{k,m}(r, s)`.
    pub fn coefficient(&self, k: i64, m: i64, r: f64, s: f64) -> Complex64 {
        self.slices.get(&(k, m)).map_or(c(0.0, 0.0), |fs| fs.iter().map(|f| f(r, s)).sum())
    }

    pub fn slot_indices(&self) -> Vec<i64> {
        let mut ks: Vec<i64> = self.slices.keys().map(|&(k, _)| k).collect();
        ks.dedup();
        ks
    }

    pub fn modes(&self, k: i64) -> Vec<i64> {
        self.slices.range((k, i64::MIN)..=(k, i64::MAX)).map(|(&(_, m), _)| m).collect()
    }

    pub fn max_slot(&self) -> i64 {
        self.slices.keys().map(|&(k, _)| k.abs()).max().unwrap_or(0)
    }

    fn entries(&self) -> impl Iterator<Item = (i64, i64, Slice)> + '_ {
        self.slices.iter().flat_map(|(&(k, m), fs)| fs.iter().map(move |f| (k, m, f.clone())))
    }

    /// Rebuilds every slice through `f(k, m, slice) -> (k′, m′, slice′)`.
    fn remap(&self, extent: Extent, f: impl Fn(i64, i64, Slice) -> (i64, i64, Slice)) -> Self {
        let mut out = Self { extent, ..Self::zero() };
        for (k, m, s) in self.entries() {
            let (k2, m2, s2) = f(k, m, s);
            out.push(k2, m2, s2);
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, m, f) in o.entries() {
            out.push(k, m, f);
        }
        out.extent = self.extent.join(o.extent);
        out
    }

    pub fn scale(&self, z: Complex64) -> Self {
        self.remap(self.extent, |k, m, f| (k, m, Arc::new(move |r, s| z * f(r, s))))
    }

    /// Multiplication by a function `g(k, r, s)` independent of the torus
    /// variable and of polynomial growth, so the extent is unchanged.
    pub fn multiply(&self, g: impl Fn(i64, f64, f64) -> Complex64 + Send + Sync + 'static) -> Self {
        let g = Arc::new(g);
        self.remap(self.extent, move |k, m, f| {
            let g = g.clone();
            (k, m, Arc::new(move |r, s| g(k, r, s) * f(r, s)))
        })
    }
}

/// A sample point `(k, [x], r, s)`.
pub type SamplePoint = (i64, f64, f64, f64);

pub fn sb_distance(a: &SB2Function, b: &SB2Function, points: &[SamplePoint]) -> f64 {
    points.iter().map(|&(k, x, r, s)| (a.eval(k, x, r, s) - b.eval(k, x, r, s)).norm()).fold(0.0, f64::max)
}

/// Points with `k` in the function's slots and `r, s ∈ [−spread, spread]`.
pub fn sample_points(f: &SB2Function, count: usize, spread: f64, rng: &mut impl Rng) -> Vec<SamplePoint> {
    let ks = f.slot_indices();
    (0..count)
        .map(|_| {
            let k = if ks.is_empty() { 0 } else { ks[rng.gen_range(0..ks.len())] };
            (k, rng.gen_range(0.0..1.0), rng.gen_range(-spread..spread), rng.gen_range(-spread..spread))
        })
        .collect()
}

fn check_rule(quad: &Quadrature, reach: f64, band: f64) -> Result<()> {
    if reach > quad.hi.min(-quad.lo) + 1e-12 {
        return Err(Error::TruncationTooSmall(format!(
            "functions reach {reach:.2} but the rule covers [{}, {}]",
            quad.lo, quad.hi
        )));
    }
    if band > quad.nyquist() {
        return Err(Error::AliasingDetected { freq: band, nyquist: quad.nyquist() });
    }
    Ok(())
}

/// Composite rule on `[−reach, reach]` resolving `band`.
pub fn auto_rule(reach: f64, band: f64) -> Quadrature {
    Quadrature::for_band(-reach, reach, band)
}

/// Rule for `χ` or `χ⁻¹` of `f`: it must cover the last variable's support
/// and resolve `e^{∓2πits}` for every `|s|` up to the transform's own reach.
pub fn transform_rule(f: &SB2Function) -> Quadrature {
    auto_rule(f.extent.reach_s, 2.0 * f.extent.band_s)
}

fn fourier(f: &SB2Function, quad: &Quadrature, sign: f64) -> Result<SB2Function> {
    check_rule(quad, f.extent.reach_s, 2.0 * f.extent.band_s)?;
    let nodes: Arc<Vec<(f64, f64)>> = Arc::new(quad.nodes.iter().copied().zip(quad.weights.iter().copied()).collect());
    let x = f.extent;
    let extent = Extent { reach_s: x.band_s, band_s: x.reach_s, ..x };
    Ok(f.remap(extent, |k, m, g| {
        let nodes = nodes.clone();
        (k, m, Arc::new(move |r, s| nodes.iter().map(|&(t, w)| g(r, t) * e(sign * t * s) * w).sum()))
    }))
}

/// `χ(F)(k, [x], r, s) = ∫ F(k, [x], r, t) e^{−2πits} dt`.
pub fn chi(f: &SB2Function, quad: &Quadrature) -> Result<SB2Function> {
    fourier(f, quad, -1.0)
}

/// `χ⁻¹(F)(k, [x], r, s) = ∫ F(k, [x], r, q) e^{2πiqs} dq`.
pub fn chi_inv(f: &SB2Function, quad: &Quadrature) -> Result<SB2Function> {
    fourier(f, quad, 1.0)
}

/// `Γ(F)(k, [x], r, s) = F(k, [x − kθ], b(r + s + k), s)`.
pub fn gamma(f: &SB2Function, b: i64, theta: f64) -> Result<SB2Function> {
    if b == 0 {
        return Err(Error::DivisionByZero);
    }
    let bf = b as f64;
    let x = f.extent;
    let extent = Extent {
        reach_r: x.reach_r / bf.abs() + x.reach_s + f.max_slot() as f64,
        reach_s: x.reach_s,
        band_r: bf.abs() * x.band_r,
        band_s: bf.abs() * x.band_r + x.band_s,
    };
    Ok(f.remap(extent, |k, m, g| {
        let phase = e(-((m * k) as f64) * theta);
        (k, m, Arc::new(move |r, s| phase * g(bf * (r + s + k as f64), s)))
    }))
}

/// `Γ⁻¹(F)(k, [x], r, s) = F(k, [x + kθ], r/b − s − k, s)`.
pub fn gamma_inv(f: &SB2Function, b: i64, theta: f64) -> Result<SB2Function> {
    if b == 0 {
        return Err(Error::DivisionByZero);
    }
    let bf = b as f64;
    let x = f.extent;
    let extent = Extent {
        reach_r: bf.abs() * (x.reach_r + x.reach_s + f.max_slot() as f64),
        reach_s: x.reach_s,
        band_r: x.band_r / bf.abs(),
        band_s: x.band_r + x.band_s,
    };
    Ok(f.remap(extent, |k, m, g| {
        let phase = e((m * k) as f64 * theta);
        (k, m, Arc::new(move |r, s| phase * g(r / bf - s - k as f64, s)))
    }))
}

/// `Ξ = Γ∘χ`, with `χ` on the rule chosen by [`transform_rule`].
pub fn xi(f: &SB2Function, b: i64, theta: f64) -> Result<SB2Function> {
    gamma(&chi(f, &transform_rule(f))?, b, theta)
}

/// `Ξ⁻¹ = χ⁻¹∘Γ⁻¹`.
pub fn xi_inv(f: &SB2Function, b: i64, theta: f64) -> Result<SB2Function> {
    let g = gamma_inv(f, b, theta)?;
    chi_inv(&g, &transform_rule(&g))
}

/// Right action on `𝓡` of `V^{l₁}U^{k₁} ⊗ V^{l₂}U^{k₂}`:
/// `λ^{l₁(k + k₁) + l₂k₂} e^{2πix(l₁ + l₂)} e^{2πi(l₂r − k₂s)} F(k − k₂ + k₁, [x + k₂θ], r, s)`.
pub fn r_act_monomial(f: &SB2Function, l1: i64, k1: i64, l2: i64, k2: i64, theta: f64) -> SB2Function {
    let x = f.extent;
    let extent = Extent { band_r: x.band_r + l2.abs() as f64, band_s: x.band_s + k2.abs() as f64, ..x };
    f.remap(extent, |k_in, m, g| {
        let k = k_in + k2 - k1;
        let phase = lambda_pow(theta, l1 * (k + k1) + l2 * k2) * e((m * k2) as f64 * theta);
        let (l2f, k2f) = (l2 as f64, k2 as f64);
        (k, m + l1 + l2, Arc::new(move |r, s| phase * e(l2f * r - k2f * s) * g(r, s)))
    })
}

pub fn r_act(f: &SB2Function, xi: &TensorElement, theta: f64) -> SB2Function {
    let mut out = SB2Function { extent: f.extent, ..SB2Function::zero() };
    for (l1, k1, l2, k2, z) in xi.monomials() {
        out = out.add(&r_act_monomial(f, l1, k1, l2, k2, theta).scale(z));
    }
    out
}

/// A point `(l₁, [v], l₂, [w])` of `𝒜 = 𝒜_θ × 𝒜_θ`.
pub type APoint = (i64, f64, i64, f64);

/// Rule for `⟨F₁, F₂⟩^𝓡` at arrows with `|l₂| ≤ l2_max`.
pub fn r_inner_rule(f1: &SB2Function, f2: &SB2Function, l2_max: i64) -> Quadrature {
    auto_rule(f1.extent.reach_s.min(f2.extent.reach_s), f1.extent.band_s + f2.extent.band_s + l2_max as f64)
}

/// `⟨F₁, F₂⟩^𝓡(l₁, [v], l₂, [w]) = Σ_{k₁,k₂} ∫ e^{2πitl₂} conj F₁(k₁, [v − k₁θ], A, t)
/// F₂(k₁ + l₂ − l₁, [v − (k₁ + l₂)θ], A, t) dt` with `A = k₂ + k₁θ − v + w`.
pub fn r_inner(f1: &SB2Function, f2: &SB2Function, theta: f64, quad: &Quadrature, p: APoint) -> Result<Complex64> {
    let (l1, v, l2, w) = p;
    check_rule(quad, f1.extent.reach_s.min(f2.extent.reach_s), f1.extent.band_s + f2.extent.band_s + l2.abs() as f64)?;
    let reach = f1.extent.reach_r.min(f2.extent.reach_r);
    let slots2 = f2.slot_indices();
    let mut acc = c(0.0, 0.0);
    for k1 in f1.slot_indices() {
        let target = k1 + l2 - l1;
        if !slots2.contains(&target) {
            continue;
        }
        let base = k1 as f64 * theta - v + w;
        let (x1, x2) = (v - k1 as f64 * theta, v - (k1 + l2) as f64 * theta);
        for k2 in (-reach - base).ceil() as i64..=(reach - base).floor() as i64 {
            let a = k2 as f64 + base;
            for (&t, &wt) in quad.nodes.iter().zip(&quad.weights) {
                let z = f1.eval(k1, x1, a, t).conj() * f2.eval(target, x2, a, t);
                acc += z * e(t * l2 as f64) * wt;
            }
        }
    }
    Ok(acc)
}

/// Right action on `𝓟` of `V^{l₁}U^{k₁} ⊗ V^{l₂}U^{k₂}`:
/// `F(k − k₂ + k₁, [v + k₁θ], r − k₁, s + k₂) e^{2πil₁(v + k₁θ)} e^{2πil₂(v + b(r + s) + (k₂ − k)θ)}`.
#[allow(clippy::too_many_arguments)]
pub fn p_act_monomial(f: &SB2Function, l1: i64, k1: i64, l2: i64, k2: i64, b: i64, theta: f64) -> SB2Function {
    let x = f.extent;
    let shift = (l2 * b).abs() as f64;
    let extent = Extent {
        reach_r: x.reach_r + k1.abs() as f64,
        reach_s: x.reach_s + k2.abs() as f64,
        band_r: x.band_r + shift,
        band_s: x.band_s + shift,
    };
    f.remap(extent, |k_in, m, g| {
        let k = k_in + k2 - k1;
        let phase = e(((m + l1) * k1 + l2 * (k2 - k)) as f64 * theta);
        let (k1f, k2f, lb) = (k1 as f64, k2 as f64, (l2 * b) as f64);
        (k, m + l1 + l2, Arc::new(move |r, s| phase * e(lb * (r + s)) * g(r - k1f, s + k2f)))
    })
}

pub fn p_act(f: &SB2Function, xi: &TensorElement, b: i64, theta: f64) -> SB2Function {
    let mut out = SB2Function { extent: f.extent, ..SB2Function::zero() };
    for (l1, k1, l2, k2, z) in xi.monomials() {
        out = out.add(&p_act_monomial(f, l1, k1, l2, k2, b, theta).scale(z));
    }
    out
}

/// Rule for `⟨F₁, F₂⟩^𝓟` at arrows with `|l₂| ≤ l2_max`.
pub fn p_inner_rule(f1: &SB2Function, f2: &SB2Function, l2_max: i64) -> Quadrature {
    let (x1, x2) = (f1.extent, f2.extent);
    auto_rule(x1.reach_s.min(x2.reach_s + l2_max as f64), x1.band_r + x1.band_s + x2.band_r + x2.band_s)
}

/// `⟨F₁, F₂⟩^𝓟(l₁, [v], l₂, [w]) = Σ_{k₁,k₂} ∫ conj F₁(k₁, [v], A/b − r, r)
/// F₂(k₁ + l₂ − l₁, [v − l₁θ], A/b − r + l₁, r − l₂) dr` with `A = k₂ + k₁θ − v + w`.
pub fn p_inner(f1: &SB2Function, f2: &SB2Function, b: i64, theta: f64, quad: &Quadrature, p: APoint) -> Result<Complex64> {
    if b == 0 {
        return Err(Error::DivisionByZero);
    }
    let (l1, v, l2, w) = p;
    let (x1, x2) = (f1.extent, f2.extent);
    check_rule(quad, x1.reach_s.min(x2.reach_s + l2.abs() as f64), x1.band_r + x1.band_s + x2.band_r + x2.band_s)?;
    let bf = b as f64;
    // conj F₁ vanishes unless |A/b| ≤ reach_r + reach_s
    let reach = bf.abs() * (x1.reach_r + x1.reach_s);
    let slots2 = f2.slot_indices();
    let mut acc = c(0.0, 0.0);
    for k1 in f1.slot_indices() {
        let target = k1 + l2 - l1;
        if !slots2.contains(&target) {
            continue;
        }
        let base = k1 as f64 * theta - v + w;
        for k2 in (-reach - base).ceil() as i64..=(reach - base).floor() as i64 {
            let a = (k2 as f64 + base) / bf;
            for (&r, &wt) in quad.nodes.iter().zip(&quad.weights) {
                let z = f1.eval(k1, v, a - r, r).conj() * f2.eval(target, v - l1 as f64 * theta, a - r + l1 as f64, r - l2 as f64);
                acc += z * wt;
            }
        }
    }
    Ok(acc)
}

/// Rules `(t, r)` used by [`p_inner_of_xi`]: `t` for the transform, `r` for
/// the inner product's integral.
pub fn xi_inner_rules(f1: &SB2Function, f2: &SB2Function, b: i64, l2_max: i64) -> (Quadrature, Quadrature) {
    let x = f1.extent.join(f2.extent);
    let t = auto_rule(x.reach_s, 2.0 * x.band_s);
    // ΞF has s-reach band_s and s-band |b|·band_r + reach_s
    let band = 2.0 * ((b.abs() as f64) * x.band_r + x.reach_s) + l2_max as f64;
    (t, auto_rule(x.band_s, band))
}

/// `⟨ΞF₁, ΞF₂⟩^𝓟` at one arrow.
///
/// At the points where the `𝓟` inner product evaluates `ΞF₁` and `ΞF₂`, the
/// first real argument of `Γ` is `A + bk₁` for every `r`, so each `(k₁, k₂)`
/// needs only one slice of `χF` per mode, computed by applying the matrix
/// `w_j e^{−2πit_jr_i}` to the samples `F(·, A + bk₁, t_j)`.
#[allow(clippy::too_many_arguments)]
pub fn p_inner_of_xi(
    f1: &SB2Function,
    f2: &SB2Function,
    b: i64,
    theta: f64,
    t_rule: &Quadrature,
    r_rule: &Quadrature,
    p: APoint,
) -> Result<Complex64> {
    if b == 0 {
        return Err(Error::DivisionByZero);
    }
    let (l1, v, l2, w) = p;
    let x = f1.extent.join(f2.extent);
    check_rule(t_rule, x.reach_s, 2.0 * x.band_s)?;
    check_rule(r_rule, x.band_s, 2.0 * ((b.abs() as f64) * x.band_r + x.reach_s) + l2.abs() as f64)?;
    let (nt, nr) = (t_rule.len(), r_rule.len());
    let kernel: Vec<Complex64> = r_rule
        .nodes
        .iter()
        .flat_map(|&r| t_rule.nodes.iter().zip(&t_rule.weights).map(move |(&t, &wt)| e(-t * r) * wt))
        .collect();
    let apply = |samples: &[Complex64], out: &mut [Complex64], scale: Complex64| {
        for (i, o) in out.iter_mut().enumerate() {
            let row = &kernel[i * nt..(i + 1) * nt];
            *o += scale * row.iter().zip(samples).map(|(k, s)| k * s).sum::<Complex64>();
        }
    };
    let slice = |f: &SB2Function, k: i64, rho: f64, twist: f64, torus: f64, out: &mut [Complex64]| -> bool {
        let mut any = false;
        for m in f.modes(k) {
            let samples: Vec<Complex64> =
                t_rule.nodes.iter().map(|&t| f.coefficient(k, m, rho, t) * e(t * twist)).collect();
            if samples.iter().all(|z| z.norm() < 1e-18) {
                continue;
            }
            any = true;
            apply(&samples, out, e(m as f64 * torus));
        }
        any
    };
    let bf = b as f64;
    let reach = f1.extent.reach_r.min(f2.extent.reach_r);
    let slots2 = f2.slot_indices();
    let mut acc = c(0.0, 0.0);
    let mut col1 = vec![c(0.0, 0.0); nr];
    let mut col2 = vec![c(0.0, 0.0); nr];
    for k1 in f1.slot_indices() {
        let target = k1 + l2 - l1;
        if !slots2.contains(&target) {
            continue;
        }
        let base = k1 as f64 * theta - v + w + bf * k1 as f64;
        for k2 in (-reach - base).ceil() as i64..=(reach - base).floor() as i64 {
            let rho = k2 as f64 + base;
            col1.fill(c(0.0, 0.0));
            col2.fill(c(0.0, 0.0));
            if !slice(f1, k1, rho, 0.0, v - k1 as f64 * theta, &mut col1) {
                continue;
            }
            if !slice(f2, target, rho, l2 as f64, v - (l1 + target) as f64 * theta, &mut col2) {
                continue;
            }
            acc += col1.iter().zip(&col2).zip(&r_rule.weights).map(|((a, b), w)| a.conj() * b * w).sum::<Complex64>();
        }
    }
    Ok(acc)
}

/// `d_{𝓡,±} = M₁ ∓ iM₂`: multiplication by `r ∓ is`.
pub fn d_r_apply(f: &SB2Function, plus: bool) -> SB2Function {
    let sgn = if plus { -1.0 } else { 1.0 };
    f.multiply(move |_, r, s| c(r, sgn * s))
}

/// Solves `(d_𝓡 ± i)(φ₁ ⊕ φ₂) = ψ₁ ⊕ ψ₂` for the graded operator
/// `d_𝓡(φ₁ ⊕ φ₂) = d_{𝓡,−}φ₂ ⊕ d_{𝓡,+}φ₁`:
/// `φ₁ = ((r + is)ψ₂ ∓ iψ₁)/(1 + r² + s²)`, `φ₂ = ((r − is)ψ₁ ∓ iψ₂)/(1 + r² + s²)`.
pub fn resolvent_solve(psi1: &SB2Function, psi2: &SB2Function, plus: bool) -> (SB2Function, SB2Function) {
    let sg = if plus { 1.0 } else { -1.0 };
    let phi1 = psi2
        .multiply(|_, r, s| c(r, s) / (1.0 + r * r + s * s))
        .add(&psi1.multiply(move |_, r, s| c(0.0, -sg) / (1.0 + r * r + s * s)));
    let phi2 = psi1
        .multiply(|_, r, s| c(r, -s) / (1.0 + r * r + s * s))
        .add(&psi2.multiply(move |_, r, s| c(0.0, -sg) / (1.0 + r * r + s * s)));
    (phi1, phi2)
}

/// `(d_𝓡 ± i)(φ₁ ⊕ φ₂)`.
pub fn d_r_shifted(phi1: &SB2Function, phi2: &SB2Function, plus: bool) -> (SB2Function, SB2Function) {
    let i = c(0.0, if plus { 1.0 } else { -1.0 });
    (d_r_apply(phi2, false).add(&phi1.scale(i)), d_r_apply(phi1, true).add(&phi2.scale(i)))
}

fn partial_r(f: &SB2Function, k: i64, x: f64, r: f64, s: f64) -> Complex64 {
    derivative(|y| f.eval(k, x, y, s), r, DIFF_STEP)
}

fn partial_s(f: &SB2Function, k: i64, x: f64, r: f64, s: f64) -> Complex64 {
    derivative(|y| f.eval(k, x, r, y), s, DIFF_STEP)
}

/// `d_{𝓟,±}F = [b(M₁ + M^Z) ∓ ∂₁/2π]F + [bM₂ ± ∂₂/2π]F` at one point, with
/// the derivatives by finite differences.
pub fn d_p_at(f: &SB2Function, plus: bool, b: i64, p: SamplePoint) -> Complex64 {
    let (k, x, r, s) = p;
    let sg = if plus { 1.0 } else { -1.0 };
    let bf = b as f64;
    f.eval(k, x, r, s) * (bf * (r + k as f64 + s)) + (partial_s(f, k, x, r, s) - partial_r(f, k, x, r, s)) * (sg / (2.0 * PI))
}

/// Residuals of the conjugation identities for `g`: `Ξ M₁ Ξ⁻¹ = b(M₁ + M^Z + M₂)`,
/// `Ξ M₂ Ξ⁻¹ = (i/2π)(∂₂ − ∂₁)`, and `Ξ d_{𝓡,±} Ξ⁻¹ = d_{𝓟,±}` for both signs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConjugationResiduals {
    pub m1: f64,
    pub m2: f64,
    pub d_p: f64,
}

pub fn conjugation_residuals(g: &SB2Function, b: i64, theta: f64, points: &[SamplePoint]) -> Result<ConjugationResiduals> {
    let h = xi_inv(g, b, theta)?;
    let lhs1 = xi(&h.multiply(|_, r, _| c(r, 0.0)), b, theta)?;
    let lhs2 = xi(&h.multiply(|_, _, s| c(s, 0.0)), b, theta)?;
    let bf = b as f64;
    let mut out = ConjugationResiduals { m1: 0.0, m2: 0.0, d_p: 0.0 };
    for &(k, x, r, s) in points {
        let v1 = lhs1.eval(k, x, r, s);
        let v2 = lhs2.eval(k, x, r, s);
        let want1 = g.eval(k, x, r, s) * (bf * (r + k as f64 + s));
        let want2 = (partial_s(g, k, x, r, s) - partial_r(g, k, x, r, s)) * c(0.0, 1.0 / (2.0 * PI));
        out.m1 = out.m1.max((v1 - want1).norm());
        out.m2 = out.m2.max((v2 - want2).norm());
        for plus in [true, false] {
            let i = c(0.0, if plus { 1.0 } else { -1.0 });
            let conj = v1 - i * v2;
            out.d_p = out.d_p.max((conj - d_p_at(g, plus, b, (k, x, r, s))).norm());
        }
    }
    Ok(out)
}

fn map_profiles(phi: &ZTRFunction, f: impl Fn(i64, &Profile) -> Profile) -> ZTRFunction {
    ZTRFunction {
        slots: phi.slots.iter().map(|(&k, tr)| (k, tr.map(|m, p| (m, f(k, p))))).collect(),
    }
}

/// `D_{𝓛,±} = b(M^R + M^Z) ∓ (1/2π)∂_r` on `𝓛_b`.
pub fn d_l_apply(phi: &ZTRFunction, plus: bool, b: i64) -> ZTRFunction {
    let sg = if plus { -1.0 } else { 1.0 };
    let bf = b as f64;
    map_profiles(phi, |k, p| {
        p.mul_r()
            .add(&p.scale(c(k as f64, 0.0)))
            .scale(c(bf, 0.0))
            .add(&p.derivative().scale(c(sg / (2.0 * PI), 0.0)))
    })
}

/// `D_{𝓗,±} = bM ± (1/2π)∂_r` on a profile.
pub fn d_h_profile(psi: &Profile, plus: bool, b: i64) -> Profile {
    let sg = if plus { 1.0 } else { -1.0 };
    psi.mul_r().scale(c(b as f64, 0.0)).add(&psi.derivative().scale(c(sg / (2.0 * PI), 0.0)))
}

/// `D_{𝓗,±}` on `𝓗_{−b}`.
pub fn d_h_apply(psi: &ZTRFunction, plus: bool, b: i64) -> ZTRFunction {
    map_profiles(psi, |_, p| d_h_profile(p, plus, b))
}

/// `(M^Z ∓ (1/2π)∂_Θ)a`.
pub fn leibniz_symbol(a: &SmoothElement, plus: bool) -> SmoothElement {
    let sg = if plus { -1.0 } else { 1.0 };
    a.number_z().add(&a.d_theta().scale(c(sg / (2.0 * PI), 0.0)))
}

/// `D_𝓛(Φ·(1⊗a)) − [D_𝓛Φ]·(1⊗a) − bΦ·(1⊗(M^Z ∓ ∂_Θ/2π)a)` as a sup-norm
/// over sample points.
pub fn leibniz_l_residual(phi: &ZTRFunction, a: &SmoothElement, b: i64, plus: bool) -> f64 {
    let theta = a.theta();
    let one = SmoothElement::one(theta);
    let act = |f: &ZTRFunction, x: &SmoothElement| lg_right_act(f, &TensorElement::new(one.clone(), x.clone()), b, theta);
    let lhs = d_l_apply(&act(phi, a), plus, b);
    let rhs = act(&d_l_apply(phi, plus, b), a).add(&act(phi, &leibniz_symbol(a, plus)).scale(c(b as f64, 0.0)));
    crate::bimodules::ztr_distance(&lhs, &rhs)
}

/// `D_𝓗(a.Ψ) − a.D_𝓗Ψ − b((M^Z ∓ ∂_Θ/2π)a).Ψ` on `𝓗_{−b}`.
pub fn leibniz_h_residual(psi: &ZTRFunction, a: &SmoothElement, b: i64, plus: bool) -> f64 {
    let lhs = d_h_apply(&mch_left(a, psi, b), plus, b);
    let rhs = mch_left(a, &d_h_apply(psi, plus, b), b).add(&mch_left(&leibniz_symbol(a, plus), psi, b).scale(c(b as f64, 0.0)));
    crate::bimodules::ztr_distance(&lhs, &rhs)
}

/// The element of `𝓟` representing `Φ ⊗ (a ⊗ V^lU^k ⊗ ψ)`:
/// `[Φ·(a ⊗ V^lU^k)](k′, [x], r) · e^{2πilbs} ψ(s + k)`.
#[allow(clippy::too_many_arguments)]
pub fn creation_field(phi: &ZTRFunction, a: &SmoothElement, l: i64, k: i64, psi: &Profile, b: i64, theta: f64) -> SB2Function {
    let xi = TensorElement::new(a.clone(), SmoothElement::monomial(theta, l, k, c(1.0, 0.0)));
    let moved = lg_right_act(phi, &xi, b, theta);
    SB2Function::product(&moved, &psi.shift(-(k as f64)).modulate((l * b) as f64))
}

/// `sup |d_𝓟 T_Φη − T_Φ(1 ⊗ D_𝓗)η − T_{D_𝓛Φ}η|` over the points, for the
/// elementary `η = a ⊗ V^lU^k ⊗ ψ`. The left side uses finite differences on
/// the assembled field, the right side closed-form derivatives of the
/// factors.
#[allow(clippy::too_many_arguments)]
pub fn creation_residual(
    phi: &ZTRFunction,
    a: &SmoothElement,
    l: i64,
    k: i64,
    psi: &Profile,
    b: i64,
    plus: bool,
    points: &[SamplePoint],
) -> f64 {
    let theta = a.theta();
    let field = creation_field(phi, a, l, k, psi, b, theta);
    let via_h = creation_field(phi, a, l, k, &d_h_profile(psi, plus, b), b, theta);
    let via_l = creation_field(&d_l_apply(phi, plus, b), a, l, k, psi, b, theta);
    points
        .iter()
        .map(|&p| {
            let (kk, x, r, s) = p;
            let lhs = d_p_at(&field, plus, b, p) - via_h.eval(kk, x, r, s);
            (lhs - via_l.eval(kk, x, r, s)).norm()
        })
        .fold(0.0, f64::max)
}

/// I-norm of a function on `𝒜`: the larger of the suprema over sampled
/// units `([v], [w])` of the absolute sums along range fibres and along
/// source fibres, with `|l₁|, |l₂| ≤ window`.
pub fn i_norm(h: impl Fn(i64, f64, i64, f64) -> f64, theta: f64, window: i64, units: usize) -> f64 {
    let mut best: f64 = 0.0;
    for i in 0..units {
        for j in 0..units {
            let (v, w) = (i as f64 / units as f64, j as f64 / units as f64);
            let mut range = 0.0;
            let mut source = 0.0;
            for l1 in -window..=window {
                for l2 in -window..=window {
                    range += h(l1, v, l2, w);
                    source += h(l1, v + l1 as f64 * theta, l2, w + l2 as f64 * theta);
                }
            }
            best = best.max(range).max(source);
        }
    }
    best
}

/// Sampling grid for [`sb_seminorm`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeminormGrid {
    pub radius: f64,
    pub step: f64,
    pub torus: usize,
}

impl Default for SeminormGrid {
    fn default() -> Self {
        Self { radius: 8.0, step: 0.25, torus: 4 }
    }
}

fn partial(f: &(dyn Fn(f64, f64) -> Complex64 + Sync), ar: u32, as_: u32, r: f64, s: f64) -> Complex64 {
    if ar > 0 {
        derivative(|y| partial(f, ar - 1, as_, y, s), r, DIFF_STEP)
    } else if as_ > 0 {
        derivative(|y| partial(f, 0, as_ - 1, r, y), s, DIFF_STEP)
    } else {
        f(r, s)
    }
}

/// `sup (|k|^N + |r|^N + |s|^N + 1)|∂^α F|` over the grid; for `N = 0` the
/// weight is `1`.
pub fn sb_seminorm(f: &SB2Function, n: u32, alpha: (u32, u32), grid: &SeminormGrid) -> f64 {
    let steps = (grid.radius / grid.step).round() as i64;
    let mut best: f64 = 0.0;
    for k in f.slot_indices() {
        for ix in 0..grid.torus {
            let x = ix as f64 / grid.torus as f64;
            let g = |r: f64, s: f64| f.eval(k, x, r, s);
            for i in -steps..=steps {
                for j in -steps..=steps {
                    let (r, s) = (i as f64 * grid.step, j as f64 * grid.step);
                    let weight = if n == 0 {
                        1.0
                    } else {
                        (k.unsigned_abs() as f64).powi(n as i32) + r.abs().powi(n as i32) + s.abs().powi(n as i32) + 1.0
                    };
                    best = best.max(weight * partial(&g, alpha.0, alpha.1, r, s).norm());
                }
            }
        }
    }
    best
}

/// Largest `|F|` on the boundary of the box `|r|, |s| ≤ radius` relative to
/// its largest value inside, on a grid of the given step.
pub fn decay_ratio(f: &SB2Function, radius: f64, step: f64) -> f64 {
    let steps = (radius / step).round() as i64;
    let mut inside: f64 = 0.0;
    let mut edge: f64 = 0.0;
    for k in f.slot_indices() {
        for ix in 0..4 {
            let x = ix as f64 / 4.0;
            for i in -steps..=steps {
                for j in -steps..=steps {
                    let v = f.eval(k, x, i as f64 * step, j as f64 * step).norm();
                    inside = inside.max(v);
                    if i.abs() == steps || j.abs() == steps {
                        edge = edge.max(v);
                    }
                }
            }
        }
    }
    if inside == 0.0 {
        0.0
    } else {
        edge / inside
    }
}

fn test_profile(rng: &mut impl Rng) -> Profile {
    Profile::term(GaussTerm {
        coeff: c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
        center: rng.gen_range(-0.5..0.5),
        alpha: rng.gen_range(1.0..2.0),
        power: rng.gen_range(0..=1),
        freq: rng.gen_range(-0.3..0.3),
    })
}

/// A random `𝓛_b`/`𝓗_{−b}` element with slots and modes in `[−1, 1]`.
pub fn test_ztr(rng: &mut impl Rng) -> ZTRFunction {
    let mut f = ZTRFunction::zero();
    for _ in 0..rng.gen_range(1..=2) {
        let mut tr = TRFunction::zero();
        for _ in 0..rng.gen_range(1..=2) {
            tr.add_mode(rng.gen_range(-1..=1), test_profile(rng));
        }
        f.add_slot(rng.gen_range(-1..=1), tr);
    }
    f
}

/// The twelve-element test set: products `Φ(k, [x], r) ψ(s)` of Gaussian
/// profiles times trigonometric polynomials on small slot windows, every
/// third one a sum of two such products.
pub fn standard_set(seed: u64) -> Vec<SB2Function> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..12)
        .map(|i| {
            let f = SB2Function::product(&test_ztr(&mut rng), &test_profile(&mut rng));
            if i % 3 == 2 {
                f.add(&SB2Function::product(&test_ztr(&mut rng), &test_profile(&mut rng)))
            } else {
                f
            }
        })
        .collect()
}

/// `sup ∫ |F|²(k, [v], s − r, r) dr` lower bound side, at one `(k, v, s)`.
pub fn lower_bound_rhs(f: &SB2Function, k: i64, v: f64, s: f64, quad: &Quadrature) -> f64 {
    quad.integrate_real(|r| f.eval(k, v, s - r, r).norm_sqr())
}

/// The unit `([v], [w])` at which `⟨F, F⟩^𝓟` dominates the integral in
/// [`lower_bound_rhs`]: `w = bs + v − kθ`.
pub fn lower_bound_unit(k: i64, v: f64, s: f64, b: i64, theta: f64) -> APoint {
    (0, v, 0, b as f64 * s + v - k as f64 * theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodules::{a_convolve, a_involution};
    use crate::nc_torus::nct_multiply;

    const THETA: f64 = 0.618_033_988_749_894_9;

    fn gaussian_t() -> SB2Function {
        let phi = ZTRFunction::single(0, TRFunction::single(0, Profile::gaussian(c(1.0, 0.0), 0.0, 1.0)));
        SB2Function::product(&phi, &Profile::gaussian(c(1.0, 0.0), 0.0, PI))
    }

    #[test]
    fn chi_of_unit_gaussian_is_self_dual() {
        let f = gaussian_t();
        let g = chi(&f, &transform_rule(&f)).unwrap();
        for &(r, s) in &[(0.0f64, 0.0f64), (0.3, 0.7), (-1.0, -1.2)] {
            let want = (-r * r).exp() * (-PI * s * s).exp();
            assert!((g.eval(0, 0.2, r, s) - want).norm() < 1e-12);
        }
    }

    #[test]
    fn coarse_rule_is_rejected() {
        let f = gaussian_t();
        let coarse = Quadrature::composite(-10.0, 10.0, 1, 16);
        assert!(matches!(chi(&f, &coarse), Err(Error::AliasingDetected { .. })));
        let short = Quadrature::composite(-1.0, 1.0, 8, 16);
        assert!(matches!(chi(&f, &short), Err(Error::TruncationTooSmall(_))));
    }

    #[test]
    fn gamma_roundtrip_is_exact() {
        let set = standard_set(1);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for f in &set[..4] {
            let back = gamma_inv(&gamma(f, 2, THETA).unwrap(), 2, THETA).unwrap();
            let pts = sample_points(f, 10, 2.0, &mut rng);
            assert!(sb_distance(&back, f, &pts) < 1e-13);
        }
    }

    #[test]
    fn xi_roundtrip() {
        let set = standard_set(3);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for f in &set[..3] {
            let back = xi_inv(&xi(f, 2, THETA).unwrap(), 2, THETA).unwrap();
            let pts = sample_points(f, 3, 1.5, &mut rng);
            assert!(sb_distance(&back, f, &pts) < 1e-6);
        }
    }

    #[test]
    fn r_module_axioms() {
        let set = standard_set(5);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let (f1, f2) = (&set[0], &set[1]);
        let xi1 = crate::bimodules::samples::tensor(&mut rng, THETA, 1);
        let xi2 = crate::bimodules::samples::tensor(&mut rng, THETA, 1);
        let pts = sample_points(f1, 6, 1.5, &mut rng);
        let lhs = r_act(&r_act(f1, &xi1, THETA), &xi2, THETA);
        let rhs = r_act(f1, &xi1.mul(&xi2), THETA);
        assert!(sb_distance(&lhs, &rhs, &pts) < 1e-12);
        let acted = r_act(f2, &xi1, THETA);
        let q = r_inner_rule(f1, &acted, 3);
        for &p in &[(0, 0.2, 0, 0.5), (1, 0.7, -1, 0.1)] {
            let lhs = r_inner(f1, &acted, THETA, &q, p).unwrap();
            let h = |l1, v, l2, w| r_inner(f1, f2, THETA, &q, (l1, v, l2, w)).unwrap();
            let rhs = a_convolve(h, &xi1, THETA, p.0, p.1, p.2, p.3);
            assert!((lhs - rhs).norm() < 1e-8, "{lhs} {rhs}");
            let swapped = r_inner(f2, f1, THETA, &q, p).unwrap();
            let star = a_involution(|l1, v, l2, w| r_inner(f1, f2, THETA, &q, (l1, v, l2, w)).unwrap(), THETA, p.0, p.1, p.2, p.3);
            assert!((swapped - star).norm() < 1e-8);
        }
        let diag = r_inner(f1, f1, THETA, &r_inner_rule(f1, f1, 0), (0, 0.3, 0, 0.3)).unwrap();
        assert!(diag.im.abs() < 1e-12 && diag.re >= 0.0);
    }

    #[test]
    fn r_act_by_u_in_second_factor() {
        let f = &standard_set(7)[0];
        let out = r_act(f, &TensorElement::monomial(THETA, 0, 0, 0, 1), THETA);
        for &(k, x, r, s) in &[(0, 0.1, 0.2, 0.3), (1, 0.5, -0.4, 0.9)] {
            let want = e(-s) * f.eval(k - 1, x + THETA, r, s);
            assert!((out.eval(k, x, r, s) - want).norm() < 1e-13);
        }
    }

    #[test]
    fn p_module_axioms() {
        let set = standard_set(8);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let b = 1;
        let (f1, f2) = (&set[0], &set[1]);
        let xi1 = crate::bimodules::samples::tensor(&mut rng, THETA, 1);
        let xi2 = crate::bimodules::samples::tensor(&mut rng, THETA, 1);
        let pts = sample_points(f1, 6, 1.5, &mut rng);
        let lhs = p_act(&p_act(f1, &xi1, b, THETA), &xi2, b, THETA);
        let rhs = p_act(f1, &xi1.mul(&xi2), b, THETA);
        assert!(sb_distance(&lhs, &rhs, &pts) < 1e-12);
        let one = TensorElement::one(THETA);
        assert!(sb_distance(&p_act(f1, &one, b, THETA), f1, &pts) < 1e-15);
        let acted = p_act(f2, &xi1, b, THETA);
        let q = p_inner_rule(f1, &acted, 2);
        let p = (1, 0.35, 0, 0.8);
        let lhs = p_inner(f1, &acted, b, THETA, &q, p).unwrap();
        let h = |l1, v, l2, w| p_inner(f1, f2, b, THETA, &q, (l1, v, l2, w)).unwrap();
        let rhs = a_convolve(h, &xi1, THETA, p.0, p.1, p.2, p.3);
        assert!((lhs - rhs).norm() < 1e-8, "{lhs} {rhs}");
    }

    #[test]
    fn xi_intertwines_actions() {
        let f = &standard_set(10)[0];
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let b = 2;
        let xi_el = TensorElement::monomial(THETA, 1, -1, 1, 1);
        let lhs = xi(&r_act(f, &xi_el, THETA), b, THETA).unwrap();
        let rhs = p_act(&xi(f, b, THETA).unwrap(), &xi_el, b, THETA);
        let pts = sample_points(&rhs, 4, 1.0, &mut rng);
        assert!(sb_distance(&lhs, &rhs, &pts) < 1e-8);
    }

    #[test]
    fn xi_is_unitary_fast_path() {
        let set = standard_set(12);
        let b = 2;
        let (f1, f2) = (&set[0], &set[1]);
        let (t, r) = xi_inner_rules(f1, f2, b, 1);
        let qr = r_inner_rule(f1, f2, 1);
        for &p in &[(0, 0.25, 0, 0.6), (1, 0.1, -1, 0.45)] {
            let lhs = p_inner_of_xi(f1, f2, b, THETA, &t, &r, p).unwrap();
            let rhs = r_inner(f1, f2, THETA, &qr, p).unwrap();
            assert!((lhs - rhs).norm() < 1e-6, "{lhs} {rhs}");
        }
    }

    #[test]
    fn fast_path_matches_generic_inner_on_transforms() {
        let f = &standard_set(13)[0];
        let b = 1;
        let (t, r) = xi_inner_rules(f, f, b, 0);
        let g = xi(f, b, THETA).unwrap();
        let p = (0, 0.3, 0, 0.55);
        let fast = p_inner_of_xi(f, f, b, THETA, &t, &r, p).unwrap();
        let generic = p_inner(&g, &g, b, THETA, &p_inner_rule(&g, &g, 0), p).unwrap();
        assert!((fast - generic).norm() < 1e-8, "{fast} {generic}");
    }

    #[test]
    fn d_r_symmetry_and_resolvent() {
        let set = standard_set(14);
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let (f, g) = (&set[0], &set[1]);
        let q = r_inner_rule(f, g, 1);
        let p = (0, 0.4, 1, 0.2);
        let lhs = r_inner(&d_r_apply(f, true), g, THETA, &q, p).unwrap();
        let rhs = r_inner(f, &d_r_apply(g, false), THETA, &q, p).unwrap();
        assert!((lhs - rhs).norm() < 1e-10);
        let pts = sample_points(f, 8, 3.0, &mut rng);
        for plus in [true, false] {
            let (p1, p2) = resolvent_solve(f, g, plus);
            let (a, b) = d_r_shifted(&p1, &p2, plus);
            assert!(sb_distance(&a, f, &pts) < 1e-12 && sb_distance(&b, g, &pts) < 1e-12);
        }
        for &(k, x, r, s) in &pts {
            let sq = d_r_apply(&d_r_apply(f, true), false).eval(k, x, r, s);
            assert!((sq - f.eval(k, x, r, s) * (r * r + s * s)).norm() < 1e-12);
        }
    }

    #[test]
    fn conjugation_identities_hold() {
        let f = &standard_set(16)[0];
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let pts = sample_points(f, 2, 1.0, &mut rng);
        let res = conjugation_residuals(f, 2, THETA, &pts).unwrap();
        assert!(res.m1 < 1e-6 && res.m2 < 1e-6 && res.d_p < 1e-6, "{res:?}");
    }

    #[test]
    fn leibniz_and_creation() {
        let mut rng = ChaCha8Rng::seed_from_u64(18);
        let phi = test_ztr(&mut rng);
        let a = crate::bimodules::samples::smooth(&mut rng, THETA, 1);
        for plus in [true, false] {
            assert!(leibniz_l_residual(&phi, &a, 2, plus) < 1e-10);
            assert!(leibniz_h_residual(&phi, &a, 2, plus) < 1e-10);
        }
        let one = SmoothElement::one(THETA);
        assert!(leibniz_symbol(&one, true).distance(&SmoothElement::zero(THETA, 0)) == 0.0);
        let u = SmoothElement::u(THETA);
        assert!(leibniz_symbol(&u, true).distance(&u) < 1e-15);
        let psi = test_profile(&mut rng);
        let field = creation_field(&phi, &a, 1, -1, &psi, 2, THETA);
        let pts = sample_points(&field, 6, 1.5, &mut rng);
        for plus in [true, false] {
            assert!(creation_residual(&phi, &a, 1, -1, &psi, 2, plus, &pts) < 1e-6);
        }
    }

    #[test]
    fn seminorms() {
        let f = &standard_set(19)[0];
        let grid = SeminormGrid { radius: 6.0, step: 0.5, torus: 3 };
        let base = sb_seminorm(f, 0, (0, 0), &grid);
        assert!((sb_seminorm(&f.scale(c(2.0, 0.0)), 0, (0, 0), &grid) - 2.0 * base).abs() < 1e-12);
        assert!(sb_seminorm(f, 2, (0, 0), &grid) >= base);
        let narrow = gaussian_t();
        let phi = ZTRFunction::single(0, TRFunction::single(0, Profile::gaussian(c(1.0, 0.0), 0.0, 0.3)));
        let wide = SB2Function::product(&phi, &Profile::gaussian(c(1.0, 0.0), 0.0, 0.3));
        assert!(sb_seminorm(&wide, 6, (0, 0), &grid) > sb_seminorm(&narrow, 6, (0, 0), &grid));
        assert!(decay_ratio(f, 8.0, 0.5) < 1e-12);
    }

    #[test]
    fn i_norm_basics() {
        let delta = |l1: i64, v: f64, l2: i64, w: f64| if l1 == 0 && l2 == 0 && v == 0.0 && w == 0.0 { 0.5 } else { 0.0 };
        assert_eq!(i_norm(delta, THETA, 2, 4), 0.5);
        let f = |l1: i64, v: f64, _: i64, _: f64| (-((l1 * l1) as f64)).exp() * (1.0 + v);
        let g = |_: i64, _: f64, l2: i64, w: f64| (-((l2 * l2) as f64)).exp() * w;
        let sum = i_norm(|a, b, c2, d| f(a, b, c2, d) + g(a, b, c2, d), THETA, 2, 4);
        assert!(sum <= i_norm(f, THETA, 2, 4) + i_norm(g, THETA, 2, 4) + 1e-12);
    }

    #[test]
    fn lower_bound() {
        let f = &standard_set(20)[0];
        let b = 2;
        let q = p_inner_rule(f, f, 0);
        let k = f.slot_indices()[0];
        for &(v, s) in &[(0.1, 0.0), (0.6, 0.8)] {
            let lhs = p_inner(f, f, b, THETA, &q, lower_bound_unit(k, v, s, b, THETA)).unwrap().re;
            let rhs = lower_bound_rhs(f, k, v, s, &q);
            assert!(lhs >= rhs - 1e-6, "{lhs} {rhs}");
        }
    }

    #[test]
    fn multiplication_check_against_nct() {
        // the tensor product used by the module actions multiplies factorwise
        let a = SmoothElement::u(THETA);
        let v = SmoothElement::v(THETA);
        let t = TensorElement::new(a.clone(), v.clone()).mul(&TensorElement::new(v.clone(), a.clone()));
        assert_eq!(t.terms[0].0, nct_multiply(&a, &v));
    }
}
