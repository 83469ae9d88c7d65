//! The smooth noncommutative torus as finitely supported coefficient arrays
//! `a = Σ a_{n,m} V^n U^m` with `VU = λUV`, `λ = e^{2πiθ}`.
//!
//! `V` generates `C(T)` and `U` the `Z`-action; read as a function on the
//! transformation groupoid, `V^n U^m` is `([x], k) ↦ δ_{k,m} e^{2πinx}`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator::{c, lattice_coords, lattice_index, Basis, CMatrix, Grading, OperatorMatrix};

/// `λ^k = e^{2πiθk}`, reduced mod 1 before exponentiating so large powers
/// keep full precision.
pub fn lambda_pow(theta: f64, k: i64) -> Complex64 {
    let t = (theta * k as f64).rem_euclid(1.0);
    Complex64::from_polar(1.0, 2.0 * PI * t)
}

/// `e(x) = e^{2πix}`.
pub fn e(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * x.rem_euclid(1.0))
}

/// Coefficients on the box `[-N, N]²`; index `(n, m)` is the power of
/// `V` then `U`.
#[derive(Clone, Debug, PartialEq)]
pub struct SmoothElement {
    radius: usize,
    theta: f64,
    coeffs: Vec<Complex64>,
}

impl SmoothElement {
    pub fn zero(theta: f64, radius: usize) -> Self {
        let w = 2 * radius + 1;
        Self { radius, theta, coeffs: vec![c(0.0, 0.0); w * w] }
    }

    pub fn monomial(theta: f64, n: i64, m: i64, coeff: Complex64) -> Self {
        let mut a = Self::zero(theta, n.unsigned_abs().max(m.unsigned_abs()) as usize);
        a.set(n, m, coeff);
        a
    }

    pub fn one(theta: f64) -> Self {
        Self::monomial(theta, 0, 0, c(1.0, 0.0))
    }

    pub fn v(theta: f64) -> Self {
        Self::monomial(theta, 1, 0, c(1.0, 0.0))
    }

    pub fn u(theta: f64) -> Self {
        Self::monomial(theta, 0, 1, c(1.0, 0.0))
    }

    pub fn from_terms(theta: f64, terms: &[(i64, i64, Complex64)]) -> Self {
        let radius = terms.iter().map(|&(n, m, _)| n.unsigned_abs().max(m.unsigned_abs())).max().unwrap_or(0);
        let mut a = Self::zero(theta, radius as usize);
        for &(n, m, z) in terms {
            a.add_at(n, m, z);
        }
        a
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    fn index(&self, n: i64, m: i64) -> Option<usize> {
        let r = self.radius as i64;
        if n.abs() > r || m.abs() > r {
            return None;
        }
        Some(((n + r) * (2 * r + 1) + (m + r)) as usize)
    }

    pub fn get(&self, n: i64, m: i64) -> Complex64 {
        self.index(n, m).map_or(c(0.0, 0.0), |i| self.coeffs[i])
    }

    /// Panics outside the window.
    pub fn set(&mut self, n: i64, m: i64, z: Complex64) {
        let i = self.index(n, m).expect("coefficient outside window");
        self.coeffs[i] = z;
    }

    pub fn add_at(&mut self, n: i64, m: i64, z: Complex64) {
        let i = self.index(n, m).expect("coefficient outside window");
        self.coeffs[i] += z;
    }

    /// Nonzero terms `(n, m, a_{n,m})` in index order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64, Complex64)> + '_ {
        let r = self.radius as i64;
        let w = 2 * r + 1;
        self.coeffs.iter().enumerate().filter(|(_, z)| **z != c(0.0, 0.0)).map(move |(i, z)| {
            let i = i as i64;
            (i / w - r, i % w - r, *z)
        })
    }

    /// Smallest radius containing the support.
    pub fn support_radius(&self) -> usize {
        self.terms().map(|(n, m, _)| n.unsigned_abs().max(m.unsigned_abs()) as usize).max().unwrap_or(0)
    }

    pub fn map_coeffs(&self, f: impl Fn(i64, i64, Complex64) -> Complex64) -> Self {
        let mut out = Self::zero(self.theta, self.radius);
        for (n, m, z) in self.terms() {
            out.set(n, m, f(n, m, z));
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Self {
        self.map_coeffs(|_, _, z| z * s)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.theta, self.radius.max(o.radius));
        for (n, m, z) in self.terms().chain(o.terms()) {
            out.add_at(n, m, z);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(c(-1.0, 0.0)))
    }

    /// Largest coefficient of `self − o`.
    pub fn distance(&self, o: &Self) -> f64 {
        self.sub(o).coeffs.iter().fold(0.0, |a, z| a.max(z.norm()))
    }

    /// Value of the corresponding function on the groupoid at `([x], m)`.
    pub fn eval(&self, x: f64, m: i64) -> Complex64 {
        let r = self.radius as i64;
        if m.abs() > r {
            return c(0.0, 0.0);
        }
        (-r..=r).map(|n| self.get(n, m) * e(n as f64 * x)).sum()
    }

    /// The number derivation `V^n U^m ↦ m V^n U^m`.
    pub fn number_z(&self) -> Self {
        self.map_coeffs(|_, m, z| z * m as f64)
    }

    /// The circle derivation `V^n U^m ↦ 2πin V^n U^m`.
    pub fn d_theta(&self) -> Self {
        self.map_coeffs(|n, _, z| z * c(0.0, 2.0 * PI * n as f64))
    }
}

/// Product in the rotation algebra.
pub fn nct_multiply(a: &SmoothElement, b: &SmoothElement) -> SmoothElement {
    let theta = a.theta;
    let mut out = SmoothElement::zero(theta, a.radius + b.radius);
    for (n, m, x) in a.terms() {
        for (p, q, y) in b.terms() {
            // U^m V^p = λ^{-mp} V^p U^m
            out.add_at(n + p, m + q, x * y * lambda_pow(theta, -m * p));
        }
    }
    out
}

pub fn nct_adjoint(a: &SmoothElement) -> SmoothElement {
    let mut out = SmoothElement::zero(a.theta, a.radius);
    for (n, m, z) in a.terms() {
        out.set(-n, -m, z.conj() * lambda_pow(a.theta, -n * m));
    }
    out
}

pub fn nct_trace(a: &SmoothElement) -> Complex64 {
    a.get(0, 0)
}

/// `sup (|n|^k + |m|^k)|a_{n,m}|` over the support.
pub fn nct_seminorm(a: &SmoothElement, k: u32) -> f64 {
    a.terms()
        .map(|(n, m, z)| ((n.unsigned_abs() as f64).powi(k as i32) + (m.unsigned_abs() as f64).powi(k as i32)) * z.norm())
        .fold(0.0, f64::max)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `ω₁ ⋊ u`.
    Left,
    /// `ω₂ ⋊ v`.
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Edge {
    /// Fail if any basis vector is pushed out of the truncation.
    Strict,
    /// Drop components that leave the truncation.
    Interior,
}

/// `α_j(z^p) = z^p ∘ α_{-j}` with `α_j([x]) = [x + jθ]`; returns the
/// scalar `c` with `α_j(z^p) = c z^p`.
fn alpha_on_mode(theta: f64, j: i64, p: i64) -> Complex64 {
    // z^p(x - jθ) = e^{-2πipjθ} z^p(x)
    lambda_pow(theta, -p * j)
}

/// `k.z^l = z^l ∘ α_{-k}`.
fn translate_mode(theta: f64, k: i64, l: i64) -> Complex64 {
    alpha_on_mode(theta, k, l)
}

/// One generator term applied to `z^l ⊗ ε_n`: returns the phase and the
/// target basis vector.
fn apply_term(theta: f64, side: Side, p: i64, q: i64, l: i64, n: i64) -> (Complex64, i64, i64) {
    match side {
        Side::Left => {
            // u_q: ξ⊗e_n ↦ ξ⊗e_{n+q}; then ω₁(z^p)(ξ⊗e_j) = α_{-j}(z^p)ξ⊗e_j.
            let j = n + q;
            (alpha_on_mode(theta, -j, p), l + p, j)
        }
        Side::Right => {
            // v_q: ξ⊗e_n ↦ (q.ξ)⊗e_{n-q}; then ω₂(z^p) is multiplication.
            (translate_mode(theta, q, l), l + p, n - q)
        }
    }
}

/// Matrix of `π(a)` on `span{z^l ⊗ ε_k : |l| ≤ L, |k| ≤ K}`.
pub fn nct_represent(a: &SmoothElement, side: Side, l_max: usize, k_max: usize, edge: Edge) -> Result<OperatorMatrix> {
    let basis = Basis::Lattice { l_max, k_max };
    let dim = basis.dim();
    let mut m = CMatrix::zeros(dim, dim);
    for col in 0..dim {
        let (l, n) = lattice_coords(col, l_max, k_max);
        for (p, q, z) in a.terms() {
            let (phase, l2, n2) = apply_term(a.theta, side, p, q, l, n);
            match lattice_index(l2, n2, l_max, k_max) {
                Some(row) => m[(row, col)] += z * phase,
                None if edge == Edge::Strict => {
                    return Err(Error::TruncationTooSmall(format!(
                        "V^{p}U^{q} maps z^{l}⊗e_{n} to z^{l2}⊗e_{n2}"
                    )))
                }
                None => {}
            }
        }
    }
    Ok(OperatorMatrix::new(basis, Grading::None, m))
}

/// Indices of basis vectors at distance at least `margin` from the edge of
/// the truncation; operators of window `≤ margin` act exactly on them.
pub fn interior_indices(l_max: usize, k_max: usize, margin: usize) -> Vec<usize> {
    let dim = Basis::Lattice { l_max, k_max }.dim();
    (0..dim)
        .filter(|&i| {
            let (l, k) = lattice_coords(i, l_max, k_max);
            l.unsigned_abs() as usize + margin <= l_max && k.unsigned_abs() as usize + margin <= k_max
        })
        .collect()
}

/// Restricts columns to `cols` (rows are kept in full).
pub fn columns(m: &CMatrix, cols: &[usize]) -> CMatrix {
    CMatrix::from_fn(m.nrows(), cols.len(), |i, j| m[(i, cols[j])])
}

/// Odd operator `[[0, D_Z − iD_T], [D_Z + iD_T, 0]]` with `D_Z = 2πn` and
/// `D_T = 2πm` on `z^m ⊗ ε_n`.
pub fn nct_dolbeault(l_max: usize, k_max: usize) -> OperatorMatrix {
    let half = Basis::Lattice { l_max, k_max };
    let dim = half.dim();
    let plus = CMatrix::from_fn(dim, dim, |i, j| {
        if i != j {
            return c(0.0, 0.0);
        }
        let (m, n) = lattice_coords(i, l_max, k_max);
        c(2.0 * PI * n as f64, 2.0 * PI * m as f64)
    });
    let minus = plus.adjoint();
    OperatorMatrix::new(
        Basis::Sum(Box::new(half.clone()), Box::new(half)),
        Grading::EvenOdd { even: dim },
        crate::operator::odd_block(&plus, &minus),
    )
}
