//! Exact arrows of the rotation groupoids and the equivalence space
//! between `F_g` and `A_θ × A_θ`.
//!
//! All arrows store their range and derive their source, so an arrow can
//! never carry inconsistent endpoints.

use rand::Rng;

use crate::error::{Error, Result};
use crate::scalars::{int, mu, rat, torus_reduce, IntMatrix2, Rational, ThetaScalar, TorusPoint};

fn theta_times(s: ThetaScalar) -> Result<ThetaScalar> {
    s.checked_mul(&ThetaScalar::theta())
}

/// `([x], n)` in `T ⋊ Z`: range `[x]`, source `[x − nθ]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AThetaArrow {
    pub x: TorusPoint,
    pub n: i64,
}

impl AThetaArrow {
    pub fn new(x: TorusPoint, n: i64) -> Self {
        Self { x, n }
    }

    pub fn unit(x: TorusPoint) -> Self {
        Self { x, n: 0 }
    }

    pub fn range(&self) -> TorusPoint {
        self.x
    }

    pub fn source(&self) -> TorusPoint {
        self.x.shift(-(ThetaScalar::theta() * self.n))
    }

    pub fn inverse(&self) -> Self {
        Self { x: self.source(), n: -self.n }
    }
}

pub fn atheta_compose(f: &AThetaArrow, h: &AThetaArrow) -> Result<AThetaArrow> {
    if f.source() != h.range() {
        return Err(Error::NotComposable);
    }
    Ok(AThetaArrow { x: f.x, n: f.n + h.n })
}

/// An arrow of the Kronecker-flow groupoid `B_{M(θ)}` on `T²`.
///
/// `disp` is the displacement `range − source`; for `B_θ` itself
/// (`frame = 1`) it is `t·(θ, 1)`. Storing the displacement rather than
/// the time keeps `φ^M` exact: the image of `t(θ, 1)` is `t·M(θ, 1)`,
/// which is in `Q + Qθ + Qθ²` even though `M(θ)` is not.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BThetaArrow {
    pub x: TorusPoint,
    pub y: TorusPoint,
    disp: [ThetaScalar; 2],
    frame: IntMatrix2,
}

/// `M` and `−M` define the same flow; pick the sign with `(p, q) > 0`.
fn normalise_frame(m: IntMatrix2) -> IntMatrix2 {
    if m.c < 0 || (m.c == 0 && m.d < 0) {
        m.neg()
    } else {
        m
    }
}

impl BThetaArrow {
    /// `([x; y], t)` in `B_θ`; `t` must have θ-degree at most one.
    pub fn new(x: TorusPoint, y: TorusPoint, t: ThetaScalar) -> Result<Self> {
        Ok(Self { x, y, disp: [theta_times(t)?, t], frame: IntMatrix2::identity() })
    }

    pub fn unit(x: TorusPoint, y: TorusPoint) -> Self {
        Self { x, y, disp: [ThetaScalar::zero(); 2], frame: IntMatrix2::identity() }
    }

    /// Flow time: the second displacement component.
    pub fn t(&self) -> ThetaScalar {
        self.disp[1]
    }

    pub fn displacement(&self) -> [ThetaScalar; 2] {
        self.disp
    }

    /// The matrix `M` with this arrow in `B_{M(θ)}` (up to sign).
    pub fn frame(&self) -> IntMatrix2 {
        self.frame
    }

    pub fn range(&self) -> (TorusPoint, TorusPoint) {
        (self.x, self.y)
    }

    pub fn source(&self) -> (TorusPoint, TorusPoint) {
        (self.x.shift(-self.disp[0]), self.y.shift(-self.disp[1]))
    }

    pub fn inverse(&self) -> Self {
        let (x, y) = self.source();
        Self { x, y, disp: [-self.disp[0], -self.disp[1]], frame: self.frame }
    }
}

pub fn btheta_compose(f: &BThetaArrow, h: &BThetaArrow) -> Result<BThetaArrow> {
    if normalise_frame(f.frame) != normalise_frame(h.frame) || f.source() != h.range() {
        return Err(Error::NotComposable);
    }
    Ok(BThetaArrow { disp: [f.disp[0] + h.disp[0], f.disp[1] + h.disp[1]], ..*f })
}

/// `φ^M([x; y], t) = (M[x; y], t(pθ + q))` for `M = [[m, n], [p, q]]`.
pub fn phi_m(arrow: &BThetaArrow, m: &IntMatrix2) -> Result<BThetaArrow> {
    if m.det().abs() != 1 {
        return Err(Error::UnsupportedMatrix("phi_M needs a unimodular matrix".into()));
    }
    let (x, y) = m.apply(&arrow.x, &arrow.y);
    Ok(BThetaArrow { x, y, disp: m.apply_vec(&arrow.disp), frame: normalise_frame(m.mul(&arrow.frame)) })
}

/// `((x, 0), s) ↦ ([x], s)` on the reduction of `B_θ` to `T × {0}`.
pub fn reduction_iso(arrow: &BThetaArrow) -> Result<AThetaArrow> {
    if normalise_frame(arrow.frame) != IntMatrix2::identity() || arrow.y != TorusPoint::zero() {
        return Err(Error::NotInReduction);
    }
    let s = arrow.t().as_integer().ok_or(Error::NotInReduction)?;
    Ok(AThetaArrow { x: arrow.x, n: s })
}

pub fn reduction_embed(arrow: &AThetaArrow) -> BThetaArrow {
    BThetaArrow::new(arrow.x, TorusPoint::zero(), ThetaScalar::integer(arrow.n)).expect("integer time")
}

/// `μ(g)` as a rational, when it is one (exactly when `c = 0`, `a = d`).
fn rational_mu(g: &IntMatrix2) -> Result<Rational> {
    let m = mu(g);
    if m.is_zero() {
        return Err(Error::InvalidMu);
    }
    if m.degree() > 0 {
        return Err(Error::UnsupportedMatrix("exact engine needs c = 0 and a = d".into()));
    }
    Ok(m.p)
}

/// `((x, y), k, l)` in `T² ⋊ Z²` with `(x, y)·(k, l) = (x, y) + (k + lθ)/μ(g)·(θ, 1)`.
/// Range is `(x, y)`; source is the range minus the offset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FgArrow {
    pub x: TorusPoint,
    pub y: TorusPoint,
    pub k: i64,
    pub l: i64,
    pub g: IntMatrix2,
}

impl FgArrow {
    pub fn new(x: TorusPoint, y: TorusPoint, k: i64, l: i64, g: IntMatrix2) -> Result<Self> {
        rational_mu(&g)?;
        Ok(Self { x, y, k, l, g })
    }

    pub fn unit(x: TorusPoint, y: TorusPoint, g: IntMatrix2) -> Result<Self> {
        Self::new(x, y, 0, 0, g)
    }

    /// The arrow `(k, l)` starting at `source`.
    pub fn from_source(source: (TorusPoint, TorusPoint), k: i64, l: i64, g: IntMatrix2) -> Result<Self> {
        let probe = Self::new(source.0, source.1, k, l, g)?;
        let t = probe.time();
        Ok(Self { x: source.0.shift(theta_times(t)?), y: source.1.shift(t), ..probe })
    }

    /// `(k + lθ)/μ(g)`.
    pub fn time(&self) -> ThetaScalar {
        let m = rational_mu(&self.g).expect("validated on construction");
        ThetaScalar::lattice(self.k, self.l).scale(m.recip())
    }

    pub fn range(&self) -> (TorusPoint, TorusPoint) {
        (self.x, self.y)
    }

    pub fn source(&self) -> (TorusPoint, TorusPoint) {
        let t = self.time();
        (self.x.shift(-theta_times(t).expect("linear time")), self.y.shift(-t))
    }

    pub fn inverse(&self) -> Self {
        let (x, y) = self.source();
        Self { x, y, k: -self.k, l: -self.l, g: self.g }
    }
}

pub fn fg_compose(f: &FgArrow, h: &FgArrow) -> Result<FgArrow> {
    if f.g != h.g || f.source() != h.range() {
        return Err(Error::NotComposable);
    }
    Ok(FgArrow { k: f.k + h.k, l: f.l + h.l, ..*f })
}

/// An arrow of `B_θ × B_θ`: `([p], t1)` paired with `([q], t2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FgQuadruple {
    pub p: (TorusPoint, TorusPoint),
    pub t1: ThetaScalar,
    pub q: (TorusPoint, TorusPoint),
    pub t2: ThetaScalar,
    pub g: IntMatrix2,
}

/// Recognises an arrow of `F_g ⊂ B_θ × B_θ` and returns its
/// transformation-groupoid coordinates.
pub fn fg_iso_transformation(quad: &FgQuadruple) -> Result<FgArrow> {
    let g = quad.g;
    let m = rational_mu(&g)?;
    if g.apply(&quad.p.0, &quad.p.1) != quad.q {
        return Err(Error::NotInFg);
    }
    let kl = quad.t1.scale(m);
    if kl.r != int(0) || !kl.p.is_integer() || !kl.q.is_integer() {
        return Err(Error::NotInFg);
    }
    let (k, l) = (kl.p.to_integer() as i64, kl.q.to_integer() as i64);
    let expected_t2 = fg_second_time(k, l, &g)?;
    if expected_t2 != quad.t2 {
        return Err(Error::NotInFg);
    }
    FgArrow::new(quad.p.0, quad.p.1, k, l, g)
}

/// `(k(cθ + d) + l(aθ + b))/μ(g)`.
fn fg_second_time(k: i64, l: i64, g: &IntMatrix2) -> Result<ThetaScalar> {
    let m = rational_mu(g)?;
    let s = ThetaScalar::lattice(k * g.d + l * g.b, k * g.c + l * g.a);
    Ok(s.scale(m.recip()))
}

pub fn fg_to_quadruple(arrow: &FgArrow) -> FgQuadruple {
    FgQuadruple {
        p: (arrow.x, arrow.y),
        t1: arrow.time(),
        q: arrow.g.apply(&arrow.x, &arrow.y),
        t2: fg_second_time(arrow.k, arrow.l, &arrow.g).expect("validated on construction"),
        g: arrow.g,
    }
}

/// Floating-point membership test for arbitrary `g`: solves for `(k, l)`
/// and accepts when both are within `tol` of integers and `q ≡ g p`.
pub fn fg_membership_f64(
    p: (f64, f64),
    t1: f64,
    q: (f64, f64),
    t2: f64,
    g: &IntMatrix2,
    theta: f64,
    tol: f64,
) -> Result<(i64, i64)> {
    let (a, b, c, d) = (g.a as f64, g.b as f64, g.c as f64, g.d as f64);
    let m = mu(g).eval(theta);
    if m.abs() < tol {
        return Err(Error::InvalidMu);
    }
    // [[1, θ], [cθ + d, aθ + b]] (k, l)ᵀ = μ (t1, t2)ᵀ, determinant μ.
    let (r1, r2) = (m * t1, m * t2);
    let k = ((a * theta + b) * r1 - theta * r2) / m;
    let l = (r2 - (c * theta + d) * r1) / m;
    let (kr, lr) = (k.round(), l.round());
    let wrap = |x: f64| (x - x.round()).abs();
    let gp = (a * p.0 + b * p.1, c * p.0 + d * p.1);
    if (k - kr).abs() > tol || (l - lr).abs() > tol || wrap(gp.0 - q.0) > tol || wrap(gp.1 - q.1) > tol {
        return Err(Error::NotInFg);
    }
    Ok((kr as i64, lr as i64))
}

/// A point of the linking space `T × R × Z` for `g = [[a, b], [0, a]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ZgPoint {
    pub v: TorusPoint,
    pub r: ThetaScalar,
    pub k: i64,
    pub g: IntMatrix2,
}

fn check_triangular(g: &IntMatrix2) -> Result<()> {
    rational_mu(g)?;
    if g.c != 0 || g.a != g.d || g.a.abs() != 1 {
        return Err(Error::UnsupportedMatrix("expected [[a, b], [0, a]] with a = ±1".into()));
    }
    Ok(())
}

impl ZgPoint {
    /// The point of `T²` over which `F_g` acts: `[v, 0] + r(θ, 1)`.
    pub fn left_anchor(&self) -> Result<(TorusPoint, TorusPoint)> {
        Ok((self.v.shift(theta_times(self.r)?), torus_reduce(self.r)))
    }

    /// The unit of `A_θ × A_θ` over which the right action happens:
    /// `([v], [av + br − kθ])`.
    pub fn right_anchor(&self) -> (TorusPoint, TorusPoint) {
        let w = self.v.rep() * self.g.a + self.r * self.g.b - ThetaScalar::theta() * self.k;
        (self.v, torus_reduce(w))
    }
}

/// `(arrow)·([v], r, k) = ([v], r + (l₁ + l₂θ)/b, k + l₂)`.
pub fn fg_act_on_zg(arrow: &FgArrow, z: &ZgPoint) -> Result<ZgPoint> {
    check_triangular(&z.g)?;
    if arrow.g != z.g || arrow.source() != z.left_anchor()? {
        return Err(Error::NotComposable);
    }
    Ok(ZgPoint { r: z.r + arrow.time(), k: z.k + arrow.l, ..*z })
}

/// `([v], r, k)·(([v], k₁), ([w], k₂)) = ([v − k₁θ], r + k₁, k + k₂ − ak₁)`.
pub fn atheta2_act_on_zg(z: &ZgPoint, a1: &AThetaArrow, a2: &AThetaArrow) -> Result<ZgPoint> {
    check_triangular(&z.g)?;
    if (a1.range(), a2.range()) != z.right_anchor() {
        return Err(Error::NotComposable);
    }
    Ok(ZgPoint {
        v: a1.source(),
        r: z.r + ThetaScalar::integer(a1.n),
        k: z.k + a2.n - z.g.a * a1.n,
        g: z.g,
    })
}

/// `([x], s)` in `T × R`, the arrows of `B_θ` with source on `T × {0}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct XThetaPoint {
    pub x: TorusPoint,
    pub s: ThetaScalar,
}

impl XThetaPoint {
    /// Range in `T²`: `[x, 0] + s(θ, 1)`.
    pub fn range(&self) -> Result<(TorusPoint, TorusPoint)> {
        Ok((self.x.shift(theta_times(self.s)?), torus_reduce(self.s)))
    }
}

/// `(r₁, r₂, [v; w])` with `g([v; 0] + r₁(θ, 1)) = [w; 0] + r₂(θ, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ZgTriple {
    pub r1: ThetaScalar,
    pub r2: ThetaScalar,
    pub v: TorusPoint,
    pub w: TorusPoint,
    pub g: IntMatrix2,
}

impl ZgTriple {
    pub fn validate(&self) -> Result<()> {
        let x0 = XThetaPoint { x: self.v, s: self.r1 }.range()?;
        let lhs = self.g.apply(&x0.0, &x0.1);
        let rhs = XThetaPoint { x: self.w, s: self.r2 }.range()?;
        if lhs != rhs {
            return Err(Error::NotComposable);
        }
        Ok(())
    }
}

/// An element `[t₁, t₂, [x, y], [v], s₁, [w], s₂]` of `Y_g ∗ X` before
/// balancing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct YgXPoint {
    pub t1: ThetaScalar,
    pub t2: ThetaScalar,
    pub p: (TorusPoint, TorusPoint),
    pub x1: XThetaPoint,
    pub x2: XThetaPoint,
    pub g: IntMatrix2,
}

impl YgXPoint {
    /// Checks that the source of the `Y_g` part is the range of the `X` part.
    pub fn validate(&self) -> Result<()> {
        let first = (self.p.0.shift(-theta_times(self.t1)?), self.p.1.shift(-self.t1));
        let gp = self.g.apply(&self.p.0, &self.p.1);
        let second = (gp.0.shift(-theta_times(self.t2)?), gp.1.shift(-self.t2));
        if first != self.x1.range()? || second != self.x2.range()? {
            return Err(Error::NotComposable);
        }
        Ok(())
    }

    /// Representative with all flow time moved onto the `Y_g` factor.
    pub fn canonical(&self) -> Self {
        Self {
            t1: self.t1 + self.x1.s,
            t2: self.t2 + self.x2.s,
            x1: XThetaPoint { s: ThetaScalar::zero(), ..self.x1 },
            x2: XThetaPoint { s: ThetaScalar::zero(), ..self.x2 },
            ..*self
        }
    }
}

pub fn yx_to_zg(y: &YgXPoint) -> Result<ZgTriple> {
    y.validate()?;
    Ok(ZgTriple { r1: y.t1 + y.x1.s, r2: y.t2 + y.x2.s, v: y.x1.x, w: y.x2.x, g: y.g })
}

pub fn zg_to_yx(z: &ZgTriple) -> Result<YgXPoint> {
    if mu(&z.g).is_zero() {
        return Err(Error::InvalidMu);
    }
    z.validate()?;
    let p = XThetaPoint { x: z.v, s: z.r1 }.range()?;
    Ok(YgXPoint {
        t1: z.r1,
        t2: z.r2,
        p,
        x1: XThetaPoint { x: z.v, s: ThetaScalar::zero() },
        x2: XThetaPoint { x: z.w, s: ThetaScalar::zero() },
        g: z.g,
    })
}

pub fn zpoint_to_triple(z: &ZgPoint) -> Result<ZgTriple> {
    check_triangular(&z.g)?;
    let (v, w) = z.right_anchor();
    Ok(ZgTriple { r1: z.r, r2: z.r * z.g.a + ThetaScalar::integer(z.k), v, w, g: z.g })
}

pub fn triple_to_zpoint(t: &ZgTriple) -> Result<ZgPoint> {
    check_triangular(&t.g)?;
    t.validate()?;
    let k = (t.r2 - t.r1 * t.g.a).as_integer().ok_or(Error::NotComposable)?;
    Ok(ZgPoint { v: t.v, r: t.r1, k, g: t.g })
}

/// `Z_g → Y_g ∗ X → Z_g`; the identity when the two maps are mutually
/// inverse.
pub fn zg_roundtrip(z: &ZgPoint) -> Result<ZgPoint> {
    if mu(&z.g).is_zero() {
        return Err(Error::InvalidMu);
    }
    let triple = zpoint_to_triple(z)?;
    let yx = zg_to_yx(&triple)?;
    triple_to_zpoint(&yx_to_zg(&yx)?)
}

/// Random generators over small integers and rationals with denominators
/// at most 12.
pub mod sample {
    use super::*;

    pub fn small_int(rng: &mut impl Rng) -> i64 {
        rng.gen_range(-5..=5)
    }

    pub fn rational(rng: &mut impl Rng) -> Rational {
        rat(rng.gen_range(-60..=60), rng.gen_range(1..=12))
    }

    /// `p + qθ` with rational `p, q`.
    pub fn linear(rng: &mut impl Rng) -> ThetaScalar {
        ThetaScalar::new(rational(rng), rational(rng), int(0))
    }

    pub fn torus(rng: &mut impl Rng) -> TorusPoint {
        torus_reduce(linear(rng))
    }

    pub fn unimodular(rng: &mut impl Rng) -> IntMatrix2 {
        loop {
            let m = IntMatrix2::new(small_int(rng), small_int(rng), small_int(rng), small_int(rng));
            if m.det() == 1 {
                return m;
            }
        }
    }

    pub fn a_arrow(rng: &mut impl Rng) -> AThetaArrow {
        AThetaArrow::new(torus(rng), small_int(rng))
    }

    /// A random arrow whose range is `at`.
    pub fn a_arrow_at(rng: &mut impl Rng, at: TorusPoint) -> AThetaArrow {
        AThetaArrow::new(at, small_int(rng))
    }

    pub fn b_arrow(rng: &mut impl Rng) -> BThetaArrow {
        BThetaArrow::new(torus(rng), torus(rng), linear(rng)).expect("linear time")
    }

    pub fn b_arrow_at(rng: &mut impl Rng, at: (TorusPoint, TorusPoint)) -> BThetaArrow {
        BThetaArrow::new(at.0, at.1, linear(rng)).expect("linear time")
    }

    pub fn fg_arrow(rng: &mut impl Rng, g: IntMatrix2) -> FgArrow {
        FgArrow::new(torus(rng), torus(rng), small_int(rng), small_int(rng), g).expect("valid g")
    }

    pub fn fg_arrow_at(rng: &mut impl Rng, at: (TorusPoint, TorusPoint), g: IntMatrix2) -> FgArrow {
        FgArrow::new(at.0, at.1, small_int(rng), small_int(rng), g).expect("valid g")
    }

    pub fn zg_point(rng: &mut impl Rng, g: IntMatrix2) -> ZgPoint {
        ZgPoint { v: torus(rng), r: linear(rng), k: small_int(rng), g }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pt(p: i128, q: i128, num_theta: i128) -> TorusPoint {
        torus_reduce(ThetaScalar::new(rat(p, q), int(num_theta as i64), int(0)))
    }

    #[test]
    fn atheta_composition_examples() {
        let x = pt(1, 3, 0);
        let f = AThetaArrow::new(x, 2);
        let h = AThetaArrow::new(x.shift(ThetaScalar::theta() * -2), 3);
        assert_eq!(atheta_compose(&f, &h), Ok(AThetaArrow::new(x, 5)));
        assert_eq!(atheta_compose(&f, &f.inverse()), Ok(AThetaArrow::unit(x)));
        assert_eq!(atheta_compose(&f, &f), Err(Error::NotComposable));
    }

    #[test]
    fn btheta_composition_examples() {
        let f = BThetaArrow::new(pt(1, 5, 0), pt(1, 2, 0), ThetaScalar::one()).unwrap();
        let (sx, sy) = f.source();
        let h = BThetaArrow::new(sx, sy, ThetaScalar::integer(2)).unwrap();
        assert_eq!(btheta_compose(&f, &h).unwrap().t(), ThetaScalar::integer(3));
        let unit = BThetaArrow::unit(sx, sy);
        assert_eq!(btheta_compose(&f, &unit), Ok(f));
        assert_eq!(btheta_compose(&f, &f), Err(Error::NotComposable));
    }

    #[test]
    fn phi_identity_and_sign() {
        let f = BThetaArrow::new(pt(1, 5, 1), pt(1, 2, 0), ThetaScalar::lattice(1, 1)).unwrap();
        assert_eq!(phi_m(&f, &IntMatrix2::identity()), Ok(f));
        let m = IntMatrix2::new(2, 1, 1, 1);
        assert_ne!(phi_m(&f, &m).unwrap(), phi_m(&f, &m.neg()).unwrap());
        // time rescaled by pθ + q
        let t = phi_m(&f, &m).unwrap().t();
        assert_eq!(t, f.t().checked_mul(&ThetaScalar::lattice(1, 1)).unwrap());
    }

    #[test]
    fn reduction_examples() {
        let x = pt(1, 7, 1);
        let b = BThetaArrow::new(x, TorusPoint::zero(), ThetaScalar::integer(3)).unwrap();
        assert_eq!(reduction_iso(&b), Ok(AThetaArrow::new(x, 3)));
        assert_eq!(reduction_iso(&BThetaArrow::unit(x, TorusPoint::zero())), Ok(AThetaArrow::unit(x)));
        let off = BThetaArrow::new(x, pt(1, 2, 0), ThetaScalar::integer(3)).unwrap();
        assert_eq!(reduction_iso(&off), Err(Error::NotInReduction));
    }

    #[test]
    fn fg_action_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for b in 1..=3 {
            let g = IntMatrix2::shear(b);
            let z = sample::zg_point(&mut rng, g);
            let anchor = z.left_anchor().unwrap();
            let act = |l1: i64, l2: i64| {
                let arrow = FgArrow::from_source(anchor, l1, l2, g).unwrap();
                fg_act_on_zg(&arrow, &z).unwrap()
            };
            assert_eq!(act(0, 0), z);
            assert_eq!(act(b, 0), ZgPoint { r: z.r + ThetaScalar::one(), ..z });
            assert_eq!(act(0, 2).k, z.k + 2);
        }
    }

    #[test]
    fn right_action_examples() {
        let g = IntMatrix2::shear(2);
        let z = ZgPoint { v: pt(1, 3, 0), r: ThetaScalar::lattice(1, 1), k: 1, g };
        let (v, w) = z.right_anchor();
        let id = atheta2_act_on_zg(&z, &AThetaArrow::unit(v), &AThetaArrow::unit(w)).unwrap();
        assert_eq!(id, z);
        let moved = atheta2_act_on_zg(&z, &AThetaArrow::new(v, 1), &AThetaArrow::unit(w)).unwrap();
        assert_eq!(moved, ZgPoint { v: v.shift(-ThetaScalar::theta()), r: z.r + ThetaScalar::one(), k: z.k - 1, g });
        let up = atheta2_act_on_zg(&z, &AThetaArrow::unit(v), &AThetaArrow::new(w, 1)).unwrap();
        assert_eq!(up.k, z.k + 1);
        assert_eq!(atheta2_act_on_zg(&z, &AThetaArrow::unit(w), &AThetaArrow::unit(w)), Err(Error::NotComposable));
    }

    #[test]
    fn roundtrips() {
        let g = IntMatrix2::shear(1);
        let z = ZgPoint { v: pt(2, 5, 1), r: ThetaScalar::lattice(0, 2), k: -3, g };
        assert_eq!(zg_roundtrip(&z), Ok(z));
        let fixed = ZgPoint { r: ThetaScalar::zero(), k: 0, ..z };
        assert_eq!(zg_roundtrip(&fixed), Ok(fixed));
        let bad = ZgPoint { g: IntMatrix2::identity(), ..z };
        assert_eq!(zg_roundtrip(&bad), Err(Error::InvalidMu));
    }

    #[test]
    fn fg_quadruple_examples() {
        let g = IntMatrix2::shear(2);
        let (x, y) = (pt(1, 3, 1), pt(3, 4, 0));
        let unit = fg_to_quadruple(&FgArrow::unit(x, y, g).unwrap());
        assert_eq!(fg_iso_transformation(&unit), Ok(FgArrow::unit(x, y, g).unwrap()));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let a = sample::fg_arrow(&mut rng, g);
            assert_eq!(fg_iso_transformation(&fg_to_quadruple(&a)), Ok(a));
        }
        let mut broken = fg_to_quadruple(&sample::fg_arrow(&mut rng, g));
        broken.t2 = broken.t2 + ThetaScalar::rational(rat(1, 2));
        assert_eq!(fg_iso_transformation(&broken), Err(Error::NotInFg));
    }

    #[test]
    fn float_membership_for_general_g() {
        let theta = 0.618_033_988_749_894_9;
        let g = IntMatrix2::new(2, 1, 1, 1);
        let (k, l) = (3, -2);
        let m = mu(&g).eval(theta);
        let t1 = (k as f64 + l as f64 * theta) / m;
        let t2 = (k as f64 * (theta + 1.0) + l as f64 * (2.0 * theta + 1.0)) / m;
        let p: (f64, f64) = (0.3, 0.7);
        let q = ((2.0 * p.0 + p.1).rem_euclid(1.0), (p.0 + p.1).rem_euclid(1.0));
        assert_eq!(fg_membership_f64(p, t1, q, t2, &g, theta, 1e-9), Ok((k, l)));
        assert_eq!(fg_membership_f64(p, t1 + 0.1, q, t2, &g, theta, 1e-9), Err(Error::NotInFg));
    }
}
