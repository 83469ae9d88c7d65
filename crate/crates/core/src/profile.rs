//! Closed-form one-dimensional profiles and trigonometric polynomials.
//!
//! A profile is a finite sum of terms `c (r − r₀)^p e^{−α(r − r₀)²} e^{2πiνr}`.
//! Translation, reflection, modulation, multiplication by `r` and
//! differentiation all stay inside this class, so the module formulas that
//! only move arguments around can be evaluated exactly, without
//! interpolating sampled data.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::nc_torus::e;
use crate::operator::c;
use crate::quadrature::Quadrature;

const DECAY: f64 = 30.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaussTerm {
    pub coeff: Complex64,
    pub center: f64,
    pub alpha: f64,
    pub power: u32,
    pub freq: f64,
}

impl GaussTerm {
    pub fn eval(&self, r: f64) -> Complex64 {
        let d = r - self.center;
        self.coeff * d.powi(self.power as i32) * (-self.alpha * d * d).exp() * e(self.freq * r)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Profile {
    pub terms: Vec<GaussTerm>,
}

impl Profile {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `coeff · e^{−α(r − center)²}`.
    pub fn gaussian(coeff: Complex64, center: f64, alpha: f64) -> Self {
        Self { terms: vec![GaussTerm { coeff, center, alpha, power: 0, freq: 0.0 }] }
    }

    pub fn term(t: GaussTerm) -> Self {
        Self { terms: vec![t] }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.coeff == c(0.0, 0.0))
    }

    pub fn eval(&self, r: f64) -> Complex64 {
        self.terms.iter().map(|t| t.eval(r)).sum()
    }

    fn map(&self, f: impl Fn(&GaussTerm) -> GaussTerm) -> Self {
        Self { terms: self.terms.iter().map(f).collect() }
    }

    pub fn scale(&self, z: Complex64) -> Self {
        self.map(|t| GaussTerm { coeff: t.coeff * z, ..*t })
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&o.terms);
        Self { terms }
    }

    /// `r ↦ p(r − τ)`.
    pub fn shift(&self, tau: f64) -> Self {
        self.map(|t| GaussTerm { coeff: t.coeff * e(-t.freq * tau), center: t.center + tau, ..*t })
    }

    /// `r ↦ p(−r)`.
    pub fn reflect(&self) -> Self {
        self.map(|t| {
            let sign = if t.power % 2 == 0 { 1.0 } else { -1.0 };
            GaussTerm { coeff: t.coeff * sign, center: -t.center, freq: -t.freq, ..*t }
        })
    }

    /// `r ↦ e^{2πiνr} p(r)`.
    pub fn modulate(&self, nu: f64) -> Self {
        self.map(|t| GaussTerm { freq: t.freq + nu, ..*t })
    }

    /// `r ↦ r p(r)`.
    pub fn mul_r(&self) -> Self {
        let mut terms = Vec::with_capacity(2 * self.terms.len());
        for t in &self.terms {
            terms.push(GaussTerm { power: t.power + 1, ..*t });
            if t.center != 0.0 {
                terms.push(GaussTerm { coeff: t.coeff * t.center, ..*t });
            }
        }
        Self { terms }
    }

    pub fn derivative(&self) -> Self {
        let mut terms = Vec::with_capacity(3 * self.terms.len());
        for t in &self.terms {
            if t.power > 0 {
                terms.push(GaussTerm { coeff: t.coeff * t.power as f64, power: t.power - 1, ..*t });
            }
            terms.push(GaussTerm { coeff: t.coeff * (-2.0 * t.alpha), power: t.power + 1, ..*t });
            if t.freq != 0.0 {
                terms.push(GaussTerm { coeff: t.coeff * c(0.0, 2.0 * PI * t.freq), ..*t });
            }
        }
        Self { terms }
    }

    /// Radius outside which every term is below `e^{−30}` (about `1e-13`)
    /// of its coefficient.
    pub fn support_bound(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                // d^p e^{−αd²} ≤ e^{−αd²/2} once d is past the polynomial's hump
                let hump = (t.power as f64 / t.alpha).sqrt();
                t.center.abs() + hump + (2.0 * DECAY / t.alpha).sqrt()
            })
            .fold(0.0, f64::max)
    }

    /// Largest frequency present, including the Gaussian envelope's own
    /// effective bandwidth (where its transform drops below `e^{−30}`).
    pub fn band(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| t.freq.abs() + (DECAY * t.alpha).sqrt() / PI + t.power as f64)
            .fold(0.0, f64::max)
    }
}

/// A trigonometric polynomial `Σ c_m e^{2πimx}`, the representation used for
/// elements of `C(T)` and for `C(T)`-valued inner products.
pub type Trig = BTreeMap<i64, Complex64>;

pub fn trig(terms: &[(i64, Complex64)]) -> Trig {
    let mut t = Trig::new();
    for &(m, z) in terms {
        *t.entry(m).or_default() += z;
    }
    t
}

pub fn trig_eval(f: &Trig, x: f64) -> Complex64 {
    f.iter().map(|(&m, &z)| z * e(m as f64 * x)).sum()
}

pub fn trig_mul(f: &Trig, g: &Trig) -> Trig {
    let mut out = Trig::new();
    for (&m, &a) in f {
        for (&n, &b) in g {
            *out.entry(m + n).or_default() += a * b;
        }
    }
    out
}

/// Pointwise complex conjugate.
pub fn trig_conj(f: &Trig) -> Trig {
    f.iter().map(|(&m, &z)| (-m, z.conj())).collect()
}

/// `x ↦ f(x − a)`.
pub fn trig_translate(f: &Trig, a: f64) -> Trig {
    f.iter().map(|(&m, &z)| (m, z * e(-(m as f64) * a))).collect()
}

pub fn trig_distance(f: &Trig, g: &Trig) -> f64 {
    let mut keys: Vec<i64> = f.keys().chain(g.keys()).copied().collect();
    keys.sort_unstable();
    keys.dedup();
    keys.iter()
        .map(|k| (f.get(k).copied().unwrap_or_default() - g.get(k).copied().unwrap_or_default()).norm())
        .fold(0.0, f64::max)
}

/// `∫ conj(p) q` over the rule's interval.
pub fn profile_pairing(p: &Profile, q: &Profile, quad: &Quadrature) -> Complex64 {
    quad.integrate(|r| p.eval(r).conj() * q.eval(r))
}
