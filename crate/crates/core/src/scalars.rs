//! Exact arithmetic in `Q + Qθ + Qθ²` with θ treated as a formal
//! transcendental, plus torus points and 2×2 integer matrices.
//!
//! Every exact groupoid computation in this crate reduces to comparing
//! elements of this ring, so equality here is structural: two scalars are
//! equal iff all three rational coordinates agree.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rationals with 128-bit numerator and denominator.
pub type Rational = Ratio<i128>;

pub fn rat(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n as i128)
}

/// `p + qθ + rθ²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThetaScalar {
    pub p: Rational,
    pub q: Rational,
    pub r: Rational,
}

impl ThetaScalar {
    pub const fn new(p: Rational, q: Rational, r: Rational) -> Self {
        Self { p, q, r }
    }

    pub fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn integer(n: i64) -> Self {
        Self::new(int(n), Rational::zero(), Rational::zero())
    }

    pub fn rational(p: Rational) -> Self {
        Self::new(p, Rational::zero(), Rational::zero())
    }

    /// The formal symbol θ itself.
    pub fn theta() -> Self {
        Self::new(Rational::zero(), Rational::one(), Rational::zero())
    }

    /// `k + lθ`.
    pub fn lattice(k: i64, l: i64) -> Self {
        Self::new(int(k), int(l), Rational::zero())
    }

    pub fn degree(&self) -> usize {
        if !self.r.is_zero() {
            2
        } else if !self.q.is_zero() {
            1
        } else {
            0
        }
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero() && self.r.is_zero()
    }

    /// True when the scalar is an ordinary integer.
    pub fn as_integer(&self) -> Option<i64> {
        if self.q.is_zero() && self.r.is_zero() && self.p.is_integer() {
            self.p.to_integer().to_i64()
        } else {
            None
        }
    }

    pub fn scale(&self, c: Rational) -> Self {
        Self::new(self.p * c, self.q * c, self.r * c)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        // (p + qθ + rθ²)(p' + q'θ + r'θ²); anything past θ² is an overflow.
        let t3 = self.q * rhs.r + self.r * rhs.q;
        let t4 = self.r * rhs.r;
        if !t3.is_zero() || !t4.is_zero() {
            return Err(Error::DegreeOverflow);
        }
        Ok(Self::new(
            self.p * rhs.p,
            self.p * rhs.q + self.q * rhs.p,
            self.p * rhs.r + self.q * rhs.q + self.r * rhs.p,
        ))
    }

    pub fn checked_div_rational(&self, d: Rational) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.scale(d.recip()))
    }

    pub fn eval(&self, theta: f64) -> f64 {
        let f = |x: Rational| x.to_f64().unwrap_or(f64::NAN);
        f(self.p) + theta * (f(self.q) + theta * f(self.r))
    }
}

impl Add for ThetaScalar {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.p + o.p, self.q + o.q, self.r + o.r)
    }
}

impl Sub for ThetaScalar {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.p - o.p, self.q - o.q, self.r - o.r)
    }
}

impl Neg for ThetaScalar {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.p, -self.q, -self.r)
    }
}

impl Mul<i64> for ThetaScalar {
    type Output = Self;
    fn mul(self, n: i64) -> Self {
        self.scale(int(n))
    }
}

impl fmt::Display for ThetaScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}θ + {}θ²", self.p, self.q, self.r)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn scalar_arith(lhs: &ThetaScalar, op: ArithOp, rhs: &ThetaScalar) -> Result<ThetaScalar> {
    match op {
        ArithOp::Add => Ok(*lhs + *rhs),
        ArithOp::Sub => Ok(*lhs - *rhs),
        ArithOp::Mul => lhs.checked_mul(rhs),
    }
}

/// A point of `R/Z` whose representative lives in `Q + Qθ + Qθ²`.
///
/// The rational part is kept in `[0, 1)`, so derived equality is equality
/// on the circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusPoint {
    x: ThetaScalar,
}

impl TorusPoint {
    pub fn zero() -> Self {
        Self { x: ThetaScalar::zero() }
    }

    pub fn rep(&self) -> ThetaScalar {
        self.x
    }

    pub fn eval(&self, theta: f64) -> f64 {
        self.x.eval(theta).rem_euclid(1.0)
    }

    pub fn shift(&self, by: ThetaScalar) -> Self {
        torus_reduce(self.x + by)
    }
}

impl From<ThetaScalar> for TorusPoint {
    fn from(x: ThetaScalar) -> Self {
        torus_reduce(x)
    }
}

pub fn torus_reduce(x: ThetaScalar) -> TorusPoint {
    let p = x.p - x.p.floor();
    TorusPoint { x: ThetaScalar::new(p, x.q, x.r) }
}

/// Integer 2×2 matrix `[[a, b], [c, d]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl IntMatrix2 {
    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self { a, b, c, d }
    }

    pub const fn identity() -> Self {
        Self::new(1, 0, 0, 1)
    }

    /// `[[1, b], [0, 1]]`.
    pub const fn shear(b: i64) -> Self {
        Self::new(1, b, 0, 1)
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.a, -self.b, -self.c, -self.d)
    }

    /// Inverse of a unimodular matrix.
    pub fn inverse(&self) -> Result<Self> {
        match self.det() {
            1 => Ok(Self::new(self.d, -self.b, -self.c, self.a)),
            -1 => Ok(Self::new(-self.d, self.b, self.c, -self.a)),
            _ => Err(Error::UnsupportedMatrix("not unimodular".into())),
        }
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.c == 0
    }

    /// Applies the matrix to a column of two torus points.
    pub fn apply(&self, x: &TorusPoint, y: &TorusPoint) -> (TorusPoint, TorusPoint) {
        let (x, y) = (x.rep(), y.rep());
        (torus_reduce(x * self.a + y * self.b), torus_reduce(x * self.c + y * self.d))
    }

    /// Applies the matrix to a displacement vector (no reduction).
    pub fn apply_vec(&self, v: &[ThetaScalar; 2]) -> [ThetaScalar; 2] {
        [v[0] * self.a + v[1] * self.b, v[0] * self.c + v[1] * self.d]
    }
}

/// `(aθ + b) − (cθ + d)θ = b + (a − d)θ − cθ²`.
pub fn mu(g: &IntMatrix2) -> ThetaScalar {
    ThetaScalar::new(int(g.b), int(g.a - g.d), int(-g.c))
}

/// Möbius action `(aθ + b) / (cθ + d)`.
pub fn mobius(g: &IntMatrix2, theta: f64) -> Result<f64> {
    let den = g.c as f64 * theta + g.d as f64;
    if den.abs() < 1e-300 {
        return Err(Error::PoleAtTheta);
    }
    Ok((g.a as f64 * theta + g.b as f64) / den)
}

/// Rejects values of θ that are within `1e-9` of a fraction with small
/// denominator; the constructions all assume an irrational rotation.
pub fn check_irrational(theta: f64) -> Result<()> {
    if !theta.is_finite() {
        return Err(Error::ConfigInvalid(format!("theta {theta} is not finite")));
    }
    for q in 1..=64i64 {
        let x = q as f64 * theta;
        if (x - x.round()).abs() < 1e-9 {
            return Err(Error::ConfigInvalid(format!(
                "theta {theta} is numerically rational (denominator {q})"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_times_theta_is_degree_two() {
        let t = ThetaScalar::theta();
        let t2 = t.checked_mul(&t).unwrap();
        assert_eq!(t2, ThetaScalar::new(int(0), int(0), int(1)));
        assert_eq!(t2.checked_mul(&t), Err(Error::DegreeOverflow));
    }

    #[test]
    fn reduction_identifies_integer_translates() {
        let x = ThetaScalar::new(rat(7, 3), int(1), int(0));
        let y = ThetaScalar::new(rat(1, 3), int(1), int(0));
        assert_eq!(torus_reduce(x), torus_reduce(y));
        assert_ne!(torus_reduce(x), torus_reduce(y + ThetaScalar::theta()));
    }

    #[test]
    fn mu_of_shear_is_b() {
        assert_eq!(mu(&IntMatrix2::shear(3)), ThetaScalar::integer(3));
        assert_eq!(mu(&IntMatrix2::identity()), ThetaScalar::zero());
    }

    #[test]
    fn mobius_pole() {
        let g = IntMatrix2::new(0, 1, 1, 0);
        assert_eq!(mobius(&g, 0.0), Err(Error::PoleAtTheta));
        assert!((mobius(&g, 0.5).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn irrational_check() {
        assert!(check_irrational(0.5).is_err());
        assert!(check_irrational(2.0 / 7.0).is_err());
        assert!(check_irrational((5f64.sqrt() - 1.0) / 2.0).is_ok());
    }
}
