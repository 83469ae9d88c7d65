//! Scalars and the rotation algebra.

use std::f64::consts::PI;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{job, params, Job, Outcome, RunConfig};
use crate::bimodules::samples;
use crate::error::{Error, Result};
use crate::groupoids::sample;
use crate::nc_torus::{
    columns, interior_indices, lambda_pow, nct_dolbeault, nct_multiply, nct_represent, nct_trace, Edge, Side,
    SmoothElement,
};
use crate::operator::{c, hermitian_eigenvalues, lattice_coords, max_abs, CMatrix};
use crate::scalars::{mobius, mu, torus_reduce, IntMatrix2, ThetaScalar};

pub(super) fn jobs() -> Vec<Job> {
    vec![
        job("algebra.mobius_composition", "Möbius action of GL2(Z) on the rotation number", mobius_composition),
        job("algebra.mu_fixed_points", "mu(g) vanishes exactly at Möbius fixed points", mu_fixed_points),
        job("algebra.torus_reduce", "reduction modulo Z of p + qθ + rθ²", torus_reduce_laws),
        job("algebra.commutation_relation", "VU = λUV in the smooth rotation algebra", commutation),
        job("algebra.trace_cyclic", "canonical trace on the rotation algebra", trace_cyclic),
        job("algebra.representations_commute", "left and right representations on L²(T) ⊗ l²(Z) commute", commute),
        job("algebra.representation_multiplicative", "left and right representations are multiplicative", multiplicative),
        job("algebra.dolbeault_spectrum", "Dirac–Dolbeault operator on the torus: odd, symmetric, square is the Laplacian", dolbeault),
    ]
}

fn gl2(rng: &mut ChaCha8Rng) -> IntMatrix2 {
    loop {
        let m = IntMatrix2::new(
            rng.gen_range(-5..=5),
            rng.gen_range(-5..=5),
            rng.gen_range(-5..=5),
            rng.gen_range(-5..=5),
        );
        if m.det().abs() == 1 {
            return m;
        }
    }
}

/// Extra rotation numbers for the θ-sweeps besides the configured one.
const THETAS: [f64; 4] = [std::f64::consts::SQRT_2 - 1.0, PI - 3.0, std::f64::consts::E - 2.0, 0.381_966_011_250_105_1];

fn mobius_composition(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    let mut used = 0;
    for _ in 0..100 {
        let (m, n) = (gl2(rng), gl2(rng));
        let nm = n.mul(&m);
        let theta = cfg.theta;
        // skip near-poles, where the comparison measures conditioning
        let near_pole = |g: &IntMatrix2, x: f64| (g.c as f64 * x + g.d as f64).abs() < 1e-3;
        let Ok(inner) = mobius(&m, theta) else { continue };
        if near_pole(&m, theta) || near_pole(&n, inner) || near_pole(&nm, theta) {
            continue;
        }
        let lhs = mobius(&n, inner)?;
        let rhs = mobius(&nm, theta)?;
        worst = worst.max((lhs - rhs).abs() / rhs.abs().max(1.0));
        used += 1;
    }
    Ok(Outcome::within(worst, 1e-12, params(&[("pairs", json!(used)), ("theta", json!(cfg.theta))])))
}

fn mu_fixed_points(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let mut failures = 0;
    let thetas: Vec<f64> = std::iter::once(cfg.theta).chain(THETAS).collect();
    for i in 0..100 {
        // every tenth matrix is scalar, the only kind with μ = 0
        let g = if i % 10 == 0 {
            let a = if rng.gen_bool(0.5) { 1 } else { -1 } * rng.gen_range(1..=5);
            IntMatrix2::new(a, 0, 0, a)
        } else {
            IntMatrix2::new(rng.gen_range(-5..=5), rng.gen_range(-5..=5), rng.gen_range(-5..=5), rng.gen_range(-5..=5))
        };
        for &theta in &thetas {
            let fixed = mobius(&g, theta).map(|x| (x - theta).abs() < 1e-9).unwrap_or(false);
            if mu(&g).is_zero() != fixed {
                failures += 1;
            }
        }
    }
    Ok(Outcome::exact(failures, params(&[("matrices", json!(100)), ("thetas", json!(thetas.len()))])))
}

fn torus_reduce_laws(_: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let mut failures = 0;
    for _ in 0..1000 {
        let x = sample::linear(rng) + ThetaScalar::theta().checked_mul(&ThetaScalar::theta())?.scale(sample::rational(rng));
        let once = torus_reduce(x);
        if torus_reduce(once.rep()) != once {
            failures += 1;
        }
        if torus_reduce(x + ThetaScalar::integer(sample::small_int(rng))) != once {
            failures += 1;
        }
    }
    Ok(Outcome::exact(failures, params(&[("samples", json!(1000))])))
}

fn commutation(cfg: &RunConfig, _: &mut ChaCha8Rng) -> Result<Outcome> {
    let (v, u) = (SmoothElement::v(cfg.theta), SmoothElement::u(cfg.theta));
    let lhs = nct_multiply(&v, &u);
    let rhs = nct_multiply(&u, &v).scale(lambda_pow(cfg.theta, 1));
    Ok(Outcome::within(lhs.distance(&rhs), cfg.tol.exact, params(&[("theta", json!(cfg.theta))])))
}

fn trace_cyclic(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let a = samples::smooth(rng, cfg.theta, 3);
        let b = samples::smooth(rng, cfg.theta, 3);
        worst = worst.max((nct_trace(&nct_multiply(&a, &b)) - nct_trace(&nct_multiply(&b, &a))).norm());
    }
    Ok(Outcome::within(worst, cfg.tol.exact, params(&[("pairs", json!(50))])))
}

const WINDOW: usize = 3;

/// Generators and five random elements of window `≤ 3`.
fn test_elements(theta: f64, rng: &mut ChaCha8Rng) -> Vec<SmoothElement> {
    let mut out = vec![SmoothElement::u(theta), SmoothElement::v(theta)];
    out.extend((0..5).map(|_| samples::smooth(rng, theta, WINDOW as i64)));
    out
}

/// Lattice half-width and interior columns on which two operators of window
/// `≤ 3` compose without touching the edge.
fn interior(cfg: &RunConfig) -> Result<(usize, Vec<usize>)> {
    let k = cfg.trunc.k.max(2 * WINDOW + 1);
    let cols = interior_indices(k, k, 2 * WINDOW);
    if cols.is_empty() {
        return Err(Error::TruncationTooSmall("no interior block".into()));
    }
    Ok((k, cols))
}

fn rep(a: &SmoothElement, side: Side, k: usize) -> Result<CMatrix> {
    Ok(nct_represent(a, side, k, k, Edge::Interior)?.entries)
}

fn commute(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let (k, cols) = interior(cfg)?;
    let elems = test_elements(cfg.theta, rng);
    let lefts: Vec<CMatrix> = elems.iter().map(|a| rep(a, Side::Left, k)).collect::<Result<_>>()?;
    let rights: Vec<CMatrix> = elems.iter().map(|a| rep(a, Side::Right, k)).collect::<Result<_>>()?;
    let mut worst: f64 = 0.0;
    for l in &lefts {
        for r in &rights {
            let comm = l * columns(r, &cols) - r * columns(l, &cols);
            worst = worst.max(crate::operator::spectral_norm(&comm));
        }
    }
    Ok(Outcome::within(
        worst,
        cfg.tol.exact,
        params(&[("K", json!(k)), ("elements", json!(elems.len())), ("interior", json!(cols.len()))]),
    ))
}

fn multiplicative(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let (k, cols) = interior(cfg)?;
    let elems = test_elements(cfg.theta, rng);
    let mut worst: f64 = 0.0;
    for side in [Side::Left, Side::Right] {
        for a in &elems {
            for b in elems.iter().take(4) {
                let ab = columns(&rep(&nct_multiply(a, b), side, k)?, &cols);
                let prod = rep(a, side, k)? * columns(&rep(b, side, k)?, &cols);
                worst = worst.max(max_abs(&(ab - prod)));
            }
        }
    }
    Ok(Outcome::within(worst, cfg.tol.exact, params(&[("K", json!(k))])))
}

fn dolbeault(cfg: &RunConfig, _: &mut ChaCha8Rng) -> Result<Outcome> {
    let k = cfg.trunc.k;
    let d = nct_dolbeault(k, k);
    let sq = &d.entries * &d.entries;
    let half = d.dim() / 2;
    let scale = (2.0 * PI).powi(2);
    let want = |i: usize| {
        let (m, n) = lattice_coords(i % half, k, k);
        scale * (m * m + n * n) as f64
    };
    let target = CMatrix::from_fn(d.dim(), d.dim(), |i, j| if i == j { c(want(i), 0.0) } else { c(0.0, 0.0) });
    let top = scale * (2 * k * k) as f64;
    let diag_err = max_abs(&(&sq - &target)) / top;
    let mut expected: Vec<f64> = (0..d.dim()).map(want).collect();
    expected.sort_by(f64::total_cmp);
    let eig = hermitian_eigenvalues(&sq);
    let eig_err = eig.iter().zip(&expected).map(|(a, b)| (a - b).abs() / top).fold(0.0, f64::max);
    let symmetry = d.hermitian_defect();
    let parity = d.parity_defect();
    Ok(Outcome::within(
        diag_err.max(eig_err),
        cfg.tol.exact,
        params(&[
            ("L", json!(k)),
            ("K", json!(k)),
            ("hermitian_defect", json!(symmetry)),
            ("parity_defect", json!(parity)),
        ]),
    )
    .and(symmetry < 1e-12 && parity == 0.0))
}
