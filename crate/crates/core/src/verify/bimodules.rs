//! The line modules `H_b`, `N_b` and the descended bimodules over `A_θ`.

use std::f64::consts::PI;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{job, params, Job, Outcome, RunConfig};
use crate::bimodules::descended::{
    lg_inner, lg_right_act, mch_inner, mch_left, mch_right, ng0_inner, ng0_inner_integrated, ng0_left, ng0_left_via_lg,
    ng0_right, ng0_right_via_lg,
};
use crate::bimodules::line::{
    d_lambda_apply, dn_apply, hb_inner, hb_right, hb_z_act, nb_inner, nb_right, rule_for, w_forward, w_inverse,
};
use crate::bimodules::{a_convolve, a_involution, samples, tr_distance, ztr_distance, TRFunction, ZTRFunction};
use crate::error::Result;
use crate::nc_torus::{nct_adjoint, nct_multiply};
use crate::operator::c;
use crate::profile::{trig_conj, trig_distance, trig_mul, trig_translate};
use crate::quadrature::Quadrature;

pub(super) fn jobs() -> Vec<Job> {
    vec![
        job("bimodules.w_unitarity", "W: H_b → N_b preserves the C(T)-valued inner products", w_unitarity),
        job("bimodules.w_conjugation", "W⁻¹ b d_N W equals 2πb M + ∂_r", w_conjugation),
        job("bimodules.dn_adjoint", "d_{N,+} and d_{N,−} are formally adjoint on N_b", dn_adjoint),
        job("bimodules.hb_axioms", "right C(T)-module axioms for H_b", hb_axioms),
        job("bimodules.hb_covariance", "Z acts on H_b covariantly for the C(T)-valued inner product", hb_covariance),
        job("bimodules.nb_axioms", "right C(T)-module axioms for N_b", nb_axioms),
        job("bimodules.mch_axioms", "right A_θ-module axioms for the descended module H_{−b}", mch_axioms),
        job("bimodules.lg_axioms", "right A_θ ⊗ A_θ-module axioms for L_g", lg_axioms),
        job("bimodules.ng0_axioms", "A_θ-bimodule axioms for N_g⁰", ng0_axioms),
        job("bimodules.ng0_routes", "N_g⁰ actions and inner product agree with their L_g descriptions", ng0_routes),
    ]
}

const PAIRS: usize = 12;

/// Tolerance for identities that only rearrange phases and shifts.
const EXACT: f64 = 1e-10;

/// Tolerance for identities that go through a quadrature rule.
const MODULE: f64 = 1e-8;

/// Rule on `[−R, R]` resolving every inner product among `fs` under shear `b`.
fn rule(cfg: &RunConfig, fs: &[&TRFunction], b: i64) -> Quadrature {
    let band = fs.iter().map(|f| f.band()).fold(0.0, f64::max);
    let modes = fs.iter().map(|f| f.max_mode()).max().unwrap_or(0);
    rule_for(cfg.trunc.radius, 2.0 * band + (2 * modes * b.abs()) as f64)
}

fn rule_z(cfg: &RunConfig, fs: &[&ZTRFunction], b: i64) -> Quadrature {
    let band = fs.iter().map(|f| f.band()).fold(0.0, f64::max);
    let modes = fs.iter().map(|f| f.max_mode()).max().unwrap_or(0);
    rule_for(cfg.trunc.radius, 2.0 * band + (2 * modes * b.abs()) as f64)
}

fn w_unitarity(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let b = cfg.b;
    let (mut inner, mut roundtrip): (f64, f64) = (0.0, 0.0);
    for _ in 0..PAIRS {
        let phi = samples::tr(rng, cfg.trunc.modes);
        let psi = samples::tr(rng, cfg.trunc.modes);
        let (wphi, wpsi) = (w_forward(&phi, b), w_forward(&psi, b));
        let q = rule(cfg, &[&phi, &psi, &wphi, &wpsi], b);
        inner = inner.max(trig_distance(&nb_inner(&wphi, &wpsi, b, &q)?, &hb_inner(&phi, &psi, &q)?));
        roundtrip = roundtrip.max(tr_distance(&w_inverse(&wphi, b), &phi));
    }
    Ok(Outcome::within(
        inner,
        cfg.tol.quadrature,
        params(&[("b", json!(b)), ("pairs", json!(PAIRS)), ("roundtrip_error", json!(roundtrip))]),
    )
    .and(roundtrip < EXACT))
}

fn w_conjugation(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let mut shears = vec![1, 2];
    if !shears.contains(&cfg.b) {
        shears.push(cfg.b);
    }
    let mut worst: f64 = 0.0;
    for &b in &shears {
        for _ in 0..PAIRS {
            let phi = samples::tr(rng, cfg.trunc.modes);
            let lhs = w_inverse(&dn_apply(&w_forward(&phi, b), true, b), b).scale(c(b as f64, 0.0));
            let rhs = d_lambda_apply(&phi, true, 2.0 * PI * b as f64);
            worst = worst.max(tr_distance(&lhs, &rhs));
        }
    }
    Ok(Outcome::within(worst, cfg.tol.quadrature, params(&[("shears", json!(shears)), ("samples_per_b", json!(PAIRS))])))
}

fn dn_adjoint(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for b in [1, cfg.b] {
        for _ in 0..4 {
            let phi = samples::tr(rng, 1);
            let psi = samples::tr(rng, 1);
            let (dphi, dpsi) = (dn_apply(&phi, true, b), dn_apply(&psi, false, b));
            let q = rule(cfg, &[&phi, &psi, &dphi, &dpsi], b);
            worst = worst.max(trig_distance(&nb_inner(&dphi, &psi, b, &q)?, &nb_inner(&phi, &dpsi, b, &q)?));
        }
    }
    Ok(Outcome::within(worst, cfg.tol.quadrature, params(&[("shears", json!([1, cfg.b]))])))
}

/// Shared shape of the `C(T)`-module checks: `(action, inner)` errors.
fn line_axioms(
    cfg: &RunConfig,
    rng: &mut ChaCha8Rng,
    b: i64,
    right: impl Fn(&TRFunction, &crate::profile::Trig) -> TRFunction,
    inner: impl Fn(&TRFunction, &TRFunction, &Quadrature) -> Result<crate::profile::Trig>,
) -> Result<Outcome> {
    let (mut action, mut ip): (f64, f64) = (0.0, 0.0);
    for _ in 0..PAIRS {
        let phi = samples::tr(rng, cfg.trunc.modes);
        let psi = samples::tr(rng, cfg.trunc.modes);
        let f = samples::trig_poly(rng, 2);
        let g = samples::trig_poly(rng, 2);
        action = action.max(tr_distance(&right(&right(&phi, &f), &g), &right(&phi, &trig_mul(&f, &g))));
        let acted = right(&psi, &f);
        let q = rule(cfg, &[&phi, &psi, &acted], b);
        let base = inner(&phi, &psi, &q)?;
        ip = ip.max(trig_distance(&inner(&phi, &acted, &q)?, &trig_mul(&base, &f)));
        ip = ip.max(trig_distance(&inner(&psi, &phi, &q)?, &trig_conj(&base)));
    }
    Ok(Outcome::within(ip, MODULE, params(&[("b", json!(b)), ("pairs", json!(PAIRS)), ("action_error", json!(action))]))
        .and(action < EXACT))
}

fn hb_axioms(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    line_axioms(cfg, rng, 0, hb_right, hb_inner)
}

fn hb_covariance(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let theta = cfg.theta;
    let mut worst: f64 = 0.0;
    for _ in 0..PAIRS {
        let phi = samples::tr(rng, cfg.trunc.modes);
        let psi = samples::tr(rng, cfg.trunc.modes);
        let l = rng.gen_range(-3..=3);
        let (lphi, lpsi) = (hb_z_act(l, &phi, theta), hb_z_act(l, &psi, theta));
        let q = rule(cfg, &[&phi, &psi, &lphi, &lpsi], 0);
        let moved = hb_inner(&lphi, &lpsi, &q)?;
        worst = worst.max(trig_distance(&moved, &trig_translate(&hb_inner(&phi, &psi, &q)?, l as f64 * theta)));
    }
    Ok(Outcome::within(worst, MODULE, params(&[("pairs", json!(PAIRS)), ("shifts", json!("-3..=3"))])))
}

fn nb_axioms(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let b = cfg.b;
    line_axioms(cfg, rng, b, |phi, f| nb_right(phi, f, b), |p, q, quad| nb_inner(p, q, b, quad))
}

const DESCENDED: usize = 4;

fn mch_axioms(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let (theta, b) = (cfg.theta, -cfg.b);
    let (mut action, mut ip): (f64, f64) = (0.0, 0.0);
    for _ in 0..DESCENDED {
        let p1 = samples::ztr(rng, cfg.trunc.z_window, cfg.trunc.modes);
        let p2 = samples::ztr(rng, cfg.trunc.z_window, cfg.trunc.modes);
        let a = samples::smooth(rng, theta, 2);
        let a2 = samples::smooth(rng, theta, 2);
        action = action
            .max(ztr_distance(&mch_right(&mch_right(&p1, &a), &a2), &mch_right(&p1, &nct_multiply(&a, &a2))))
            .max(ztr_distance(&mch_left(&a, &mch_left(&a2, &p1, b), b), &mch_left(&nct_multiply(&a, &a2), &p1, b)));
        let acted = mch_right(&p2, &a);
        let q = rule_z(cfg, &[&p1, &p2, &acted], 0);
        let base = mch_inner(&p1, &p2, theta, &q)?;
        ip = ip.max(mch_inner(&p1, &acted, theta, &q)?.distance(&nct_multiply(&base, &a)));
        ip = ip.max(nct_adjoint(&base).distance(&mch_inner(&p2, &p1, theta, &q)?));
    }
    Ok(Outcome::within(ip, MODULE, params(&[("b", json!(b)), ("samples", json!(DESCENDED)), ("action_error", json!(action))]))
        .and(action < EXACT))
}

fn lg_axioms(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let (theta, b) = (cfg.theta, cfg.b);
    let (mut action, mut ip): (f64, f64) = (0.0, 0.0);
    for _ in 0..DESCENDED {
        let phi = samples::ztr(rng, 1, 1);
        let psi = samples::ztr(rng, 1, 1);
        let f = samples::tensor(rng, theta, 1);
        let f2 = samples::tensor(rng, theta, 1);
        let twice = lg_right_act(&lg_right_act(&phi, &f, b, theta), &f2, b, theta);
        action = action.max(ztr_distance(&twice, &lg_right_act(&phi, &f.mul(&f2), b, theta)));
        let acted = lg_right_act(&psi, &f, b, theta);
        for _ in 0..3 {
            let (l1, v, l2, w) = (rng.gen_range(-2..=2), rng.gen(), rng.gen_range(-2..=2), rng.gen());
            let h = |m1, v, m2, w| lg_inner(&phi, &psi, b, theta, m1, v, m2, w);
            let lhs = lg_inner(&phi, &acted, b, theta, l1, v, l2, w);
            ip = ip.max((lhs - a_convolve(h, &f, theta, l1, v, l2, w)).norm());
            let swapped = lg_inner(&psi, &phi, b, theta, l1, v, l2, w);
            ip = ip.max((swapped - a_involution(h, theta, l1, v, l2, w)).norm());
        }
    }
    Ok(Outcome::within(ip, MODULE, params(&[("b", json!(b)), ("samples", json!(DESCENDED)), ("action_error", json!(action))]))
        .and(action < EXACT))
}

fn ng0_axioms(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let (theta, b) = (cfg.theta, cfg.b);
    let (mut action, mut ip): (f64, f64) = (0.0, 0.0);
    for _ in 0..DESCENDED {
        let phi = samples::ztr(rng, 1, 1);
        let psi = samples::ztr(rng, 1, 1);
        let a = samples::smooth(rng, theta, 1);
        let a2 = samples::smooth(rng, theta, 1);
        let aa = nct_multiply(&a, &a2);
        action = action
            .max(ztr_distance(&ng0_right(&ng0_right(&phi, &a, b), &a2, b), &ng0_right(&phi, &aa, b)))
            .max(ztr_distance(&ng0_left(&a, &ng0_left(&a2, &phi)), &ng0_left(&aa, &phi)))
            .max(ztr_distance(&ng0_right(&ng0_left(&a, &phi), &a2, b), &ng0_left(&a, &ng0_right(&phi, &a2, b))));
        let acted = ng0_right(&psi, &a, b);
        let q = rule_z(cfg, &[&phi, &psi, &acted], b);
        let base = ng0_inner(&phi, &psi, b, theta, &q)?;
        ip = ip.max(ng0_inner(&phi, &acted, b, theta, &q)?.distance(&nct_multiply(&base, &a)));
        ip = ip.max(nct_adjoint(&base).distance(&ng0_inner(&psi, &phi, b, theta, &q)?));
    }
    Ok(Outcome::within(ip, MODULE, params(&[("b", json!(b)), ("samples", json!(DESCENDED)), ("action_error", json!(action))]))
        .and(action < EXACT))
}

fn ng0_routes(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let theta = cfg.theta;
    let mut shears = vec![1, 3];
    if !shears.contains(&cfg.b) {
        shears.push(cfg.b);
    }
    let (mut action, mut ip): (f64, f64) = (0.0, 0.0);
    for &b in &shears {
        let phi = samples::ztr(rng, 1, 1);
        let psi = samples::ztr(rng, 1, 1);
        let a = samples::smooth(rng, theta, 2);
        action = action
            .max(ztr_distance(&ng0_left(&a, &phi), &ng0_left_via_lg(&a, &phi, b)))
            .max(ztr_distance(&ng0_right(&phi, &a, b), &ng0_right_via_lg(&phi, &a, b)));
        let q = rule_z(cfg, &[&phi, &psi], b);
        let descended = ng0_inner(&phi, &psi, b, theta, &q)?;
        for _ in 0..3 {
            let (x, l) = (rng.gen::<f64>(), rng.gen_range(-1..=1));
            ip = ip.max((descended.eval(x, l) - ng0_inner_integrated(&phi, &psi, b, theta, x, l, 128)).norm());
        }
    }
    Ok(Outcome::within(ip, MODULE, params(&[("shears", json!(shears)), ("torus_nodes", json!(128)), ("action_error", json!(action))]))
        .and(action < EXACT))
}
