//! The odd operator `d_λ = [[0, d_−], [d_+, 0]]` on `L²(R) ⊕ L²(R)`,
//! `d_± = λ(M − t) ± ∂_r`, in its Hermite eigenbasis, together with
//! grid-based oracles that never touch the ladder algebra.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator::{c, hermitian_function, odd_block, singular_values, Basis, CMatrix, Grading, OperatorMatrix};
use crate::quadrature::{gauss_hermite_folded, grid_derivative, tridiagonal_lowest};

/// Singular values below this fraction of the largest count as zero.
pub const RANK_TOL: f64 = 1e-8;

/// Normalised `ψ_l` for `|λ|`, centred at `t`, evaluated at `r`.
pub fn hermite_eval(l: usize, lambda: f64, t: f64, r: f64) -> f64 {
    hermite_all(l + 1, lambda, t, r)[l]
}

/// `ψ_0(r), …, ψ_{n-1}(r)`.
pub fn hermite_all(n: usize, lambda: f64, t: f64, r: f64) -> Vec<f64> {
    let s = lambda.abs().sqrt();
    let x = s * (r - t);
    let mut out = Vec::with_capacity(n);
    let h0 = PI.powf(-0.25) * (-0.5 * x * x).exp() * s.sqrt();
    let (mut prev, mut cur) = (0.0, h0);
    for l in 0..n {
        out.push(cur);
        let k = (l + 1) as f64;
        let next = (2.0 / k).sqrt() * x * cur - ((k - 1.0) / k).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    out
}

/// Matrix of `d_{λ,±}` from `span{ψ_0..ψ_{cols-1}}` into
/// `span{ψ_0..ψ_{rows-1}}`. Components landing outside are dropped.
pub fn ladder(lambda: f64, plus: bool, rows: usize, cols: usize) -> CMatrix {
    let a = lambda.abs();
    let mut m = CMatrix::zeros(rows, cols);
    // λ > 0: d_+ lowers, d_− raises. λ < 0: d_+ = −raise, d_− = −lower.
    let lowers = plus == (lambda > 0.0);
    let sign = if lambda > 0.0 { 1.0 } else { -1.0 };
    for l in 0..cols {
        if lowers {
            if l >= 1 && l - 1 < rows {
                m[(l - 1, l)] = c(sign * (2.0 * a * l as f64).sqrt(), 0.0);
            }
        } else if l + 1 < rows {
            m[(l + 1, l)] = c(sign * (2.0 * a * (l + 1) as f64).sqrt(), 0.0);
        }
    }
    m
}

/// Sizes `(top, bottom)` of the graded truncation used for `d_λ`.
///
/// The lowering half gets one vector fewer, which makes the truncation an
/// invariant subspace of `d_λ`: no component is ever dropped, so spectra
/// and functions of the matrix are exact restrictions.
pub fn graded_sizes(lambda: f64, l: usize) -> (usize, usize) {
    if lambda > 0.0 {
        (l, l - 1)
    } else {
        (l - 1, l)
    }
}

pub fn d_lambda_matrix(lambda: f64, t: f64, l: usize) -> Result<OperatorMatrix> {
    if lambda == 0.0 || l < 2 {
        return Err(Error::ConfigInvalid("d_lambda needs lambda != 0 and L >= 2".into()));
    }
    let (top, bottom) = graded_sizes(lambda, l);
    let plus = ladder(lambda, true, bottom, top);
    let minus = ladder(lambda, false, top, bottom);
    Ok(OperatorMatrix::new(
        Basis::Sum(
            Box::new(Basis::Hermite { len: top, lambda, t }),
            Box::new(Basis::Hermite { len: bottom, lambda, t }),
        ),
        Grading::EvenOdd { even: top },
        odd_block(&plus, &minus),
    ))
}

/// The `d_+` block (`bottom × top`) of a graded odd matrix.
pub fn plus_block(d: &OperatorMatrix) -> CMatrix {
    let Grading::EvenOdd { even } = d.grading else {
        panic!("not a graded operator");
    };
    let n = d.dim();
    d.entries.view((even, 0), (n - even, even)).into_owned()
}

/// Eigenvalues of the two diagonal blocks of `d_λ²` on `span{ψ_0..ψ_{L-1}}`,
/// each sorted ascending. The inner factor acts into a padded space so no
/// truncation error enters.
pub fn d_squared_spectrum(lambda: f64, l: usize) -> (Vec<f64>, Vec<f64>) {
    let block = |first_plus: bool| {
        let first = ladder(lambda, first_plus, l + 1, l);
        let second = ladder(lambda, !first_plus, l + 2, l + 1);
        let sq = second * first;
        let m = sq.view((0, 0), (l, l)).into_owned();
        crate::operator::hermitian_eigenvalues(&m)
    };
    // top block d_− d_+, bottom block d_+ d_−
    (block(true), block(false))
}

fn nullity(m: &CMatrix) -> Result<usize> {
    let s = singular_values(m);
    let top = s.first().copied().unwrap_or(0.0);
    let tol = RANK_TOL * top;
    if s.iter().any(|&x| x > tol / 100.0 && x < tol * 100.0) {
        return Err(Error::RankAmbiguous(RANK_TOL));
    }
    Ok(m.ncols() - s.iter().filter(|&&x| x > tol).count())
}

/// `dim ker d_{λ,+} − dim ker d_{λ,−}`, each operator restricted to
/// `span{ψ_0..ψ_{L-1}}` and mapping into a space large enough to hold its
/// whole image.
pub fn fredholm_index(lambda: f64, l: usize) -> Result<i64> {
    if lambda == 0.0 || l == 0 {
        return Err(Error::ConfigInvalid("fredholm_index needs lambda != 0 and L >= 1".into()));
    }
    let kp = nullity(&ladder(lambda, true, l + 1, l))?;
    let km = nullity(&ladder(lambda, false, l + 1, l))?;
    Ok(kp as i64 - km as i64)
}

pub fn functional_calculus(f: impl Fn(f64) -> f64, lambda: f64, t: f64, l: usize) -> Result<OperatorMatrix> {
    let d = d_lambda_matrix(lambda, t, l)?;
    let entries = hermitian_function(&d.entries, f);
    Ok(OperatorMatrix { entries, ..d })
}

/// Orthogonal projection onto the kernel of `d_λ`: `ψ_0 ⊕ 0` for `λ > 0`
/// and `0 ⊕ ψ_0` for `λ < 0`.
pub fn kernel_projection(lambda: f64, t: f64, l: usize) -> Result<OperatorMatrix> {
    let d = d_lambda_matrix(lambda, t, l)?;
    let (top, _) = graded_sizes(lambda, l);
    let idx = if lambda > 0.0 { 0 } else { top };
    let mut entries = CMatrix::zeros(d.dim(), d.dim());
    entries[(idx, idx)] = c(1.0, 0.0);
    Ok(OperatorMatrix { entries, ..d })
}

/// Samples on a uniform grid with trapezoid weights.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction1D {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub values: Vec<Complex64>,
}

impl GridFunction1D {
    pub fn uniform(lo: f64, hi: f64, n: usize, f: impl Fn(f64) -> Complex64) -> Self {
        let h = (hi - lo) / (n - 1) as f64;
        let nodes: Vec<f64> = (0..n).map(|j| lo + j as f64 * h).collect();
        let mut weights = vec![h; n];
        weights[0] = 0.5 * h;
        weights[n - 1] = 0.5 * h;
        let values = nodes.iter().map(|&r| f(r)).collect();
        Self { nodes, weights, values }
    }

    pub fn spacing(&self) -> f64 {
        self.nodes[1] - self.nodes[0]
    }

    pub fn norm(&self) -> f64 {
        self.values.iter().zip(&self.weights).map(|(v, w)| v.norm_sqr() * w).sum::<f64>().sqrt()
    }
}

/// Half-width of the oracle grid.
pub fn oracle_radius(lambda: f64, t: f64) -> f64 {
    f64::max(8.0, 6.0 / lambda.abs().sqrt() + t.abs())
}

pub const ORACLE_NODES: usize = 1024;

/// Smallest `count` singular values of `d_{λ,+}`, from the lowest
/// eigenvalues of the top block `λ²(M−t)² − ∂² − λ` discretised by
/// three-point central differences on `nodes` interior grid points.
pub fn grid_oracle_singular_values(lambda: f64, t: f64, count: usize, nodes: usize) -> Vec<f64> {
    let big_r = oracle_radius(lambda, t);
    let n = nodes;
    let h = 2.0 * big_r / (n + 1) as f64;
    let d: Vec<f64> = (1..=n)
        .map(|j| {
            let r = -big_r + j as f64 * h;
            lambda * lambda * r * r + 2.0 / (h * h) - lambda
        })
        .collect();
    let e = vec![-1.0 / (h * h); n - 1];
    tridiagonal_lowest(&d, &e, count).into_iter().map(|v| v.max(0.0).sqrt()).collect()
}

/// `‖(λ(M − t) + ∂)ψ_l − √(2λl) ψ_{l−1}‖_{L²}` with the derivative taken
/// by twelfth-order finite differences on the oracle grid (`λ > 0`).
pub fn ladder_residual_grid(lambda: f64, t: f64, l: usize) -> f64 {
    let big_r = oracle_radius(lambda, t);
    let g = GridFunction1D::uniform(t - big_r, t + big_r, ORACLE_NODES, |r| c(hermite_eval(l, lambda, t, r), 0.0));
    let h = g.spacing();
    // Sample ghost nodes past both ends so the stencil sees the true
    // function rather than zeros; high ψ_l are not negligible at the edge.
    let ghost = 6;
    let ext: Vec<f64> = (0..ORACLE_NODES + 2 * ghost)
        .map(|j| hermite_eval(l, lambda, t, g.nodes[0] + (j as f64 - ghost as f64) * h))
        .collect();
    let dv = &grid_derivative(&ext, h)[ghost..ghost + ORACLE_NODES];
    let coeff = (2.0 * lambda * l as f64).sqrt();
    let resid = GridFunction1D {
        values: g
            .nodes
            .iter()
            .enumerate()
            .map(|(j, &r)| {
                let lower = if l == 0 { 0.0 } else { hermite_eval(l - 1, lambda, t, r) };
                c(lambda * (r - t) * g.values[j].re + dv[j] - coeff * lower, 0.0)
            })
            .collect(),
        ..g
    };
    resid.norm()
}

/// Samples per unit length of the grid used for the translation defect;
/// integer translations are exact index shifts.
pub const DEFECT_DENSITY: usize = 16;

/// `d_λ − Ad_l(d_λ)` on a uniform grid of spacing `1/16`, where `Ad_l` is
/// conjugation by the translation `φ ↦ φ(· − l)`. Returned on the
/// `n` central grid nodes of each graded half, far enough from the edge
/// that every shift and stencil stays inside.
pub fn equivariance_defect(lambda: f64, l: i64, n: usize) -> OperatorMatrix {
    let h = 1.0 / DEFECT_DENSITY as f64;
    let shift = l.unsigned_abs() as usize * DEFECT_DENSITY;
    let pad = shift + 8;
    let big = n + 2 * pad;
    let origin = -((big / 2) as f64) * h;
    let r = |j: usize| origin + j as f64 * h;
    // d_± on the big grid as dense matrices: λM ± D with D a central
    // difference.
    let deriv = {
        let mut m = CMatrix::zeros(big, big);
        for j in 0..big {
            let mut e = vec![0.0; big];
            e[j] = 1.0;
            for (i, v) in grid_derivative(&e, h).into_iter().enumerate() {
                m[(i, j)] = c(v, 0.0);
            }
        }
        m
    };
    let mult = CMatrix::from_fn(big, big, |i, j| if i == j { c(lambda * r(i), 0.0) } else { c(0.0, 0.0) });
    let d_plus = &mult + &deriv;
    let d_minus = &mult - &deriv;
    // (Sφ)(r) = φ(r − l), i.e. (Sφ)_i = φ_{i − step}
    let step = l * DEFECT_DENSITY as i64;
    let translate = |by: i64| {
        CMatrix::from_fn(big, big, |i, j| if i as i64 - j as i64 == by { c(1.0, 0.0) } else { c(0.0, 0.0) })
    };
    let (s, s_inv) = (translate(step), translate(-step));
    let defect = |d: &CMatrix| d - &s * d * &s_inv;
    let window = |m: CMatrix| m.view((pad, pad), (n, n)).into_owned();
    let plus = window(defect(&d_plus));
    let minus = window(defect(&d_minus));
    let half = Basis::Grid { len: n, origin: r(pad), h };
    OperatorMatrix::new(
        Basis::Sum(Box::new(half.clone()), Box::new(half)),
        Grading::EvenOdd { even: n },
        odd_block(&plus, &minus),
    )
}

/// Matrix of multiplication by `e^{iωr}` on `span{ψ_0..ψ_{n-1}}`, by
/// weight-folded Gauss–Hermite quadrature.
pub fn phase_matrix(lambda: f64, t: f64, n: usize, omega: f64) -> CMatrix {
    let (x, w) = gauss_hermite_folded(n + 60);
    let s = lambda.abs().sqrt();
    let mut m = CMatrix::zeros(n, n);
    for (xi, wi) in x.iter().zip(&w) {
        let r = t + xi / s;
        let psi = hermite_all(n, lambda, t, r);
        let ph = Complex64::from_polar(wi / s, omega * r);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] += ph * psi[i] * psi[j];
            }
        }
    }
    m
}

/// Operator norm of `[d_λ, f]` on `ℓ²(modes) ⊗ span{ψ_0..ψ_{L-1}}`, where a
/// trigonometric polynomial `f = Σ c_m e^{2πimx}` acts on `C(T) ⊗ L²(R)`
/// as `f([x + rb])`, i.e. mode shift by `m` times multiplication by
/// `e^{2πimbr}`. Returns `(norm, |b|·sup|f′|)`.
pub fn commutator_norm(lambda: f64, b: f64, f: &[(i64, Complex64)], l: usize, modes: usize) -> (f64, f64) {
    let pad = l + 2;
    let dim = (2 * modes + 1) * l;
    let mut worst: f64 = 0.0;
    for plus in [true, false] {
        let d = ladder(lambda, plus, pad, pad);
        let mut big = CMatrix::zeros(dim, dim);
        for &(m, cm) in f {
            let e_mat = phase_matrix(lambda, 0.0, pad, 2.0 * PI * m as f64 * b);
            let comm = &d * &e_mat - &e_mat * &d;
            let block = comm.view((0, 0), (l, l)).into_owned() * cm;
            for src in -(modes as i64)..=modes as i64 {
                let dst = src + m;
                if dst.abs() > modes as i64 {
                    continue;
                }
                let (ri, ci) = ((dst + modes as i64) as usize * l, (src + modes as i64) as usize * l);
                let mut v = big.view_mut((ri, ci), (l, l));
                v += &block;
            }
        }
        worst = worst.max(crate::operator::spectral_norm(&big));
    }
    let fprime = (0..512)
        .map(|i| {
            let x = i as f64 / 512.0;
            f.iter().map(|&(m, cm)| cm * c(0.0, 2.0 * PI * m as f64) * crate::nc_torus::e(m as f64 * x)).sum::<Complex64>().norm()
        })
        .fold(0.0, f64::max);
    (worst, b.abs() * fprime)
}
