//! The Dirac–Schrödinger operator `d_λ`.

use std::f64::consts::PI;

use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{job, params, Job, Outcome, RunConfig};
use crate::error::Result;
use crate::operator::{c, max_abs, singular_values, spectral_norm, CMatrix};
use crate::oscillator::{
    commutator_norm, d_lambda_matrix, d_squared_spectrum, equivariance_defect, fredholm_index, functional_calculus,
    grid_oracle_singular_values, kernel_projection, ladder_residual_grid, plus_block,
};

pub(super) fn jobs() -> Vec<Job> {
    vec![
        job("oscillator.singular_values", "singular values of λ(M − t) + ∂ on the Hermite basis", singular),
        job("oscillator.grid_oracle", "finite-difference oracle for the low singular values", grid_oracle),
        job("oscillator.fredholm_index", "index of d_λ is 1 for λ > 0, −1 for λ < 0", index),
        job("oscillator.ladder_identity", "ladder relation for normalised Hermite functions", ladder),
        job("oscillator.spectral_symmetry", "spectrum of d_λ symmetric apart from the kernel", symmetry),
        job("oscillator.d_squared_spectrum", "d_λ² is the harmonic oscillator pair", d_squared),
        job("oscillator.functional_calculus_trend", "f(d_λ) − f(0)pr_λ tends to zero as λ grows", trend),
        job("oscillator.commutator_bound", "bounded commutators with lifted trigonometric polynomials", commutator),
        job("oscillator.equivariance_defect", "translation covariance of d_λ up to a bounded defect", defect),
    ]
}

/// Singular values compared: `l = 1..L−5`, the rest kept back as a margin.
fn compared(l: usize) -> usize {
    l.saturating_sub(5).max(1)
}

fn singular(cfg: &RunConfig, _: &mut ChaCha8Rng) -> Result<Outcome> {
    let (lambda, l) = (cfg.lambda, cfg.trunc.l);
    let d = d_lambda_matrix(lambda, 0.0, l)?;
    let mut s = singular_values(&plus_block(&d));
    s.sort_by(f64::total_cmp);
    let upto = compared(l).min(s.len());
    let worst = (1..=upto)
        .map(|n| {
            let want = (2.0 * lambda.abs() * n as f64).sqrt();
            (s[n - 1] - want).abs() / want
        })
        .fold(0.0, f64::max);
    Ok(Outcome::within(worst, cfg.tol.exact, params(&[("lambda", json!(lambda)), ("L", json!(l)), ("compared", json!(upto))])))
}

fn grid_oracle(cfg: &RunConfig, _: &mut ChaCha8Rng) -> Result<Outcome> {
    let lambda = cfg.lambda.abs();
    let nodes = cfg.trunc.grid_nodes;
    let sv = grid_oracle_singular_values(lambda, 0.0, 10, nodes);
    let worst = sv.iter().enumerate().map(|(n, s)| (s - (2.0 * lambda * n as f64).sqrt()).abs()).fold(0.0, f64::max);
    Ok(Outcome::within(worst, 1e-3, params(&[("lambda", json!(lambda)), ("nodes", json!(nodes)), ("count", json!(10))])))
}

fn index(cfg: &RunConfig, _: &mut ChaCha8Rng) -> Result<Outcome> {
    let l = cfg.trunc.l;
    let mut failures = 0;
    let mut lambdas = vec![0.5, 1.0, 2.0 * PI, cfg.lambda.abs()];
    lambdas.extend(lambdas.clone().into_iter().map(|x| -x));
    for &lambda in &lambdas {
        let want = if lambda > 0.0 { 1 } else { -1 };
        if fredholm_index(lambda, l)? != want {
            failures += 1;
        }
    }
    Ok(Outcome::exact(failures, params(&[("lambdas", json!(lambdas)), ("L", json!(l))])))
}

fn ladder(cfg: &RunConfig, _: &mut ChaCha8Rng) -> Result<Outcome> {
    let lambda = cfg.lambda.abs();
    let worst = (0..=10).map(|l| ladder_residual_grid(lambda, 0.0, l)).fold(0.0, f64::max);
    Ok(Outcome::within(worst, 1e-8, params(&[("lambda", json!(lambda)), ("max_level", json!(10))])))
}

fn symmetry(cfg: &RunConfig, _: &mut ChaCha8Rng) -> Result<Outcome> {
    let d = d_lambda_matrix(cfg.lambda, 0.0, cfg.trunc.l)?;
    let ev = d.eigenvalues();
    let n = ev.len();
    // odd dimension: the middle eigenvalue is the kernel, the rest pair up
    let mid = n / 2;
    let mut worst = ev[mid].abs();
    for i in 0..mid {
        worst = worst.max((ev[i] + ev[n - 1 - i]).abs());
    }
    let scale = ev[n - 1].abs().max(1.0);
    Ok(Outcome::within(worst / scale, cfg.tol.exact, params(&[("lambda", json!(cfg.lambda)), ("dim", json!(n))])))
}

fn d_squared(cfg: &RunConfig, _: &mut ChaCha8Rng) -> Result<Outcome> {
    let (lambda, l) = (cfg.lambda.abs(), cfg.trunc.l);
    let (top, bottom) = d_squared_spectrum(lambda, l);
    let worst = top
        .iter()
        .enumerate()
        .map(|(n, v)| (v - 2.0 * lambda * n as f64).abs())
        .chain(bottom.iter().enumerate().map(|(n, v)| (v - 2.0 * lambda * (n + 1) as f64).abs()))
        .fold(0.0, f64::max);
    let scale = 2.0 * lambda * l as f64;
    Ok(Outcome::within(worst / scale, cfg.tol.exact, params(&[("lambda", json!(lambda)), ("L", json!(l))])))
}

const TREND: [f64; 4] = [1.0, 4.0, 16.0, 64.0];

fn trend(cfg: &RunConfig, _: &mut ChaCha8Rng) -> Result<Outcome> {
    let l = cfg.trunc.l;
    let f = |x: f64| (-x * x).exp();
    let norms: Vec<f64> = TREND
        .iter()
        .map(|&lambda| {
            let fd = functional_calculus(f, lambda, 0.0, l)?;
            let pr = kernel_projection(lambda, 0.0, l)?;
            Ok(spectral_norm(&(&fd.entries - &pr.entries * c(f(0.0), 0.0))))
        })
        .collect::<Result<_>>()?;
    let decreasing = norms.windows(2).all(|w| w[1] < w[0]);
    Ok(Outcome::within(
        norms[3],
        0.05,
        params(&[("lambdas", json!(TREND)), ("norms", json!(norms)), ("strictly_decreasing", json!(decreasing))]),
    )
    .and(decreasing))
}

fn commutator(cfg: &RunConfig, _: &mut ChaCha8Rng) -> Result<Outcome> {
    let f = [(1, c(0.5, 0.0)), (-2, c(0.0, 0.25)), (3, c(0.1, -0.1))];
    let b = cfg.b as f64;
    let (norm, bound) = commutator_norm(cfg.lambda.abs(), b, &f, 16, 3);
    let ratio = if bound == 0.0 { norm } else { norm / bound };
    Ok(Outcome::within(ratio, 1.1, params(&[("b", json!(b)), ("norm", json!(norm)), ("bound", json!(bound)), ("L", json!(16))])))
}

fn defect(cfg: &RunConfig, _: &mut ChaCha8Rng) -> Result<Outcome> {
    let lambda = cfg.lambda;
    let mut worst: f64 = 0.0;
    for l in [-2, 1, 3] {
        let d = equivariance_defect(lambda, l, 32);
        let target = CMatrix::identity(32, 32) * c(lambda * l as f64, 0.0);
        worst = worst.max(max_abs(&(plus_block(&d) - target))).max(d.parity_defect());
    }
    Ok(Outcome::within(worst, 1e-9, params(&[("lambda", json!(lambda)), ("shifts", json!([-2, 1, 3]))])))
}
