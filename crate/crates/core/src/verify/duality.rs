//! The unbounded cycle on `𝓡` and its transform to `𝓟`.

use std::f64::consts::PI;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{job, params, Job, Outcome, RunConfig};
use crate::bimodules::{a_convolve, a_involution, samples, TRFunction, TensorElement, ZTRFunction};
use crate::duality_cycle::{
    chi, chi_inv, conjugation_residuals, creation_field, creation_residual, d_r_apply, d_r_shifted, decay_ratio, i_norm,
    leibniz_l_residual, leibniz_h_residual, lower_bound_rhs, lower_bound_unit, p_act, p_inner, p_inner_of_xi, p_inner_rule,
    r_act, r_inner, r_inner_rule, resolvent_solve, sample_points, sb_distance, sb_seminorm, standard_set, test_ztr,
    transform_rule, xi, xi_inner_rules, xi_inv, APoint, SB2Function, SeminormGrid,
};
use crate::error::Result;
use crate::operator::c;
use crate::profile::Profile;

pub(super) fn jobs() -> Vec<Job> {
    vec![
        job("duality.chi_gaussian", "partial Fourier transform fixes the unit Gaussian and inverts", chi_gaussian),
        job("duality.xi_roundtrip", "Ξ⁻¹Ξ = id on the standard twelve-element set", xi_roundtrip),
        job("duality.conjugation", "Ξ conjugates M₁, M₂ and d_𝓟 to their 𝓡-side forms", conjugation),
        job("duality.xi_unitarity", "Ξ carries the 𝓡 inner product to the 𝓟 inner product", xi_unitarity),
        job("duality.intertwining", "Ξ intertwines the right A_θ ⊗ A_θ actions on 𝓡 and 𝓟", intertwining),
        job("duality.resolvent", "(d_𝓡 ± i) applied to the resolvent formulas is the identity", resolvent),
        job("duality.d_r_symmetric", "d_𝓡 is symmetric for the 𝓡 inner product", d_r_symmetric),
        job("duality.r_module_axioms", "right A_θ ⊗ A_θ-module axioms for 𝓡", r_module),
        job("duality.p_module_axioms", "right A_θ ⊗ A_θ-module axioms for 𝓟", p_module),
        job("duality.leibniz", "Leibniz rules for D_𝓛 and D_𝓗 against the left A_θ action", leibniz),
        job("duality.creation", "D_ℰ T_Φ − T_Φ(1 ⊗ D_𝓗) = T_{D_𝓛Φ} on elementary tensors", creation),
        job("duality.lower_bound", "mode-zero 𝓟 norm dominates the integral of |F|² along anti-diagonals", lower_bound),
        job("duality.i_norm_bound", "I-norm of ⟨F₁, F₂⟩ bounded by a multiple of a Schwartz seminorm of F₁", i_norm_bound),
        job("duality.seminorm_monotone", "Schwartz seminorms grow with the weight exponent", seminorm_monotone),
        job("duality.decay_witness", "standard set decays to below 1e-12 of its maximum at the grid edge", decay_witness),
    ]
}

/// Tolerance for identities that only rearrange phases and shifts.
const EXACT: f64 = 1e-10;

/// Tolerance for module identities that go through a quadrature rule.
const MODULE: f64 = 1e-8;

fn set(cfg: &RunConfig) -> Vec<SB2Function> {
    standard_set(cfg.seed)
}

fn chi_gaussian(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let phi = ZTRFunction::single(0, TRFunction::single(0, Profile::gaussian(c(1.0, 0.0), 0.0, 1.0)));
    let f = SB2Function::product(&phi, &Profile::gaussian(c(1.0, 0.0), 0.0, PI));
    let g = chi(&f, &transform_rule(&f))?;
    let mut self_dual: f64 = 0.0;
    for _ in 0..8 {
        let (x, r, s): (f64, f64, f64) = (rng.gen(), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let want = (-r * r).exp() * (-PI * s * s).exp();
        self_dual = self_dual.max((g.eval(0, x, r, s) - want).norm());
    }
    let mut roundtrip: f64 = 0.0;
    for f in set(cfg).iter().take(3) {
        let forward = chi(f, &transform_rule(f))?;
        let back = chi_inv(&forward, &transform_rule(&forward))?;
        roundtrip = roundtrip.max(sb_distance(&back, f, &sample_points(f, 3, 1.5, rng)));
    }
    Ok(Outcome::within(self_dual, 1e-12, params(&[("roundtrip_error", json!(roundtrip))])).and(roundtrip < cfg.tol.quadrature))
}

fn xi_roundtrip(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    let elements = set(cfg);
    for f in &elements {
        let back = xi_inv(&xi(f, cfg.b, cfg.theta)?, cfg.b, cfg.theta)?;
        worst = worst.max(sb_distance(&back, f, &sample_points(f, 3, 1.5, rng)));
    }
    Ok(Outcome::within(worst, cfg.tol.quadrature, params(&[("b", json!(cfg.b)), ("elements", json!(elements.len())), ("points", json!(3))])))
}

fn conjugation(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let (mut m1, mut m2, mut d_p): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for f in set(cfg).iter().take(4) {
        let res = conjugation_residuals(f, cfg.b, cfg.theta, &sample_points(f, 2, 1.0, rng))?;
        m1 = m1.max(res.m1);
        m2 = m2.max(res.m2);
        d_p = d_p.max(res.d_p);
    }
    Ok(Outcome::within(
        m1.max(m2).max(d_p),
        cfg.tol.quadrature,
        params(&[("b", json!(cfg.b)), ("m1", json!(m1)), ("m2", json!(m2)), ("d_p", json!(d_p))]),
    ))
}

/// Arrow with `l₁ = l₂`, where single-slot elements pair nontrivially.
fn diagonal_arrow(rng: &mut ChaCha8Rng) -> APoint {
    let l = rng.gen_range(-1..=1);
    (l, rng.gen(), l, rng.gen())
}

/// Smallest value a check's largest compared quantity may take before the
/// comparison counts as vacuous.
const NONTRIVIAL: f64 = 1e-6;

fn xi_unitarity(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let (b, theta) = (cfg.b, cfg.theta);
    let elements = set(cfg);
    let (mut worst, mut largest): (f64, f64) = (0.0, 0.0);
    for pair in elements.chunks(2) {
        let (f1, f2) = (&pair[0], &pair[1]);
        let (t, r) = xi_inner_rules(f1, f2, b, 1);
        let q = r_inner_rule(f1, f2, 1);
        for _ in 0..2 {
            let p = diagonal_arrow(rng);
            let on_r = r_inner(f1, f2, theta, &q, p)?;
            worst = worst.max((p_inner_of_xi(f1, f2, b, theta, &t, &r, p)? - on_r).norm());
            largest = largest.max(on_r.norm());
        }
    }
    // the fast path against the generic 𝓟 inner product of the transforms
    let f = &elements[0];
    let (t, r) = xi_inner_rules(f, f, b, 0);
    let g = xi(f, b, theta)?;
    let p = (0, rng.gen(), 0, rng.gen());
    let fast = p_inner_of_xi(f, f, b, theta, &t, &r, p)?;
    let generic = p_inner(&g, &g, b, theta, &p_inner_rule(&g, &g, 0), p)?;
    let routes = (fast - generic).norm();
    Ok(Outcome::within(
        worst.max(routes),
        cfg.tol.quadrature,
        params(&[
            ("b", json!(b)),
            ("pairs", json!(elements.len() / 2)),
            ("route_difference", json!(routes)),
            ("largest_value", json!(largest)),
        ]),
    )
    .and(largest > NONTRIVIAL))
}

fn intertwining(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let (b, theta) = (cfg.b, cfg.theta);
    let mut worst: f64 = 0.0;
    for f in set(cfg).iter().take(3) {
        let el = TensorElement::monomial(theta, rng.gen_range(-1..=1), rng.gen_range(-1..=1), rng.gen_range(-1..=1), rng.gen_range(-1..=1));
        let lhs = xi(&r_act(f, &el, theta), b, theta)?;
        let rhs = p_act(&xi(f, b, theta)?, &el, b, theta);
        worst = worst.max(sb_distance(&lhs, &rhs, &sample_points(&rhs, 3, 1.0, rng)));
    }
    Ok(Outcome::within(worst, cfg.tol.quadrature, params(&[("b", json!(b)), ("elements", json!(3))])))
}

fn resolvent(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let elements = set(cfg);
    let mut worst: f64 = 0.0;
    for pair in elements.chunks(2) {
        let (f, g) = (&pair[0], &pair[1]);
        let pts = sample_points(f, 8, 3.0, rng);
        for plus in [true, false] {
            let (p1, p2) = resolvent_solve(f, g, plus);
            let (a, b) = d_r_shifted(&p1, &p2, plus);
            worst = worst.max(sb_distance(&a, f, &pts)).max(sb_distance(&b, g, &pts));
        }
    }
    Ok(Outcome::within(worst, 1e-12, params(&[("pairs", json!(elements.len() / 2)), ("points", json!(8))])))
}

fn d_r_symmetric(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let elements = set(cfg);
    let (mut worst, mut largest): (f64, f64) = (0.0, 0.0);
    for pair in elements.chunks(2).take(3) {
        let (f, g) = (&pair[0], &pair[1]);
        let (df, dg) = (d_r_apply(f, true), d_r_apply(g, false));
        let q = r_inner_rule(&df, &dg, 1);
        let p = diagonal_arrow(rng);
        let lhs = r_inner(&df, g, cfg.theta, &q, p)?;
        worst = worst.max((lhs - r_inner(f, &dg, cfg.theta, &q, p)?).norm());
        largest = largest.max(lhs.norm());
    }
    Ok(Outcome::within(worst, cfg.tol.quadrature, params(&[("pairs", json!(3)), ("largest_value", json!(largest))]))
        .and(largest > NONTRIVIAL))
}

/// Action and inner-product errors of a right module over `A_θ ⊗ A_θ`, and
/// the largest inner product compared, over every arrow with `|l₁|, |l₂| ≤ 1`.
fn module_axioms(
    cfg: &RunConfig,
    rng: &mut ChaCha8Rng,
    act: impl Fn(&SB2Function, &TensorElement) -> SB2Function,
    rule: impl Fn(&SB2Function, &SB2Function, i64) -> crate::quadrature::Quadrature,
    inner: impl Fn(&SB2Function, &SB2Function, &crate::quadrature::Quadrature, APoint) -> Result<num_complex::Complex64>,
) -> Result<(f64, f64, f64)> {
    let theta = cfg.theta;
    let elements = set(cfg);
    let (f1, f2) = (&elements[0], &elements[1]);
    let xi1 = samples::tensor(rng, theta, 1);
    let xi2 = samples::tensor(rng, theta, 1);
    let pts = sample_points(f1, 6, 1.5, rng);
    let mut action = sb_distance(&act(&act(f1, &xi1), &xi2), &act(f1, &xi1.mul(&xi2)), &pts);
    action = action.max(sb_distance(&act(f1, &TensorElement::one(theta)), f1, &pts));
    let acted = act(f2, &xi1);
    // each pairing gets its own rule, wide enough for shifts up to |l₂| = 3
    let (q_acted, q_base, q_swapped) = (rule(f1, &acted, 3), rule(f1, f2, 3), rule(f2, f1, 3));
    let (mut ip, mut largest): (f64, f64) = (0.0, 0.0);
    for (l1, l2) in (-1..=1).flat_map(|l1| (-1..=1).map(move |l2| (l1, l2))) {
        let p = (l1, rng.gen(), l2, rng.gen());
        let h = |l1, v, l2, w| inner(f1, f2, &q_base, (l1, v, l2, w)).unwrap_or(c(f64::NAN, 0.0));
        let lhs = inner(f1, &acted, &q_acted, p)?;
        ip = ip.max((lhs - a_convolve(h, &xi1, theta, p.0, p.1, p.2, p.3)).norm());
        let swapped = inner(f2, f1, &q_swapped, p)?;
        ip = ip.max((swapped - a_involution(h, theta, p.0, p.1, p.2, p.3)).norm());
        largest = largest.max(lhs.norm()).max(swapped.norm());
    }
    // NaN from a failed inner evaluation must not pass
    if ip.is_nan() {
        ip = f64::INFINITY;
    }
    Ok((action, ip, largest))
}

fn r_module(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let theta = cfg.theta;
    let (action, ip, largest) =
        module_axioms(cfg, rng, |f, x| r_act(f, x, theta), r_inner_rule, |f, g, q, p| r_inner(f, g, theta, q, p))?;
    Ok(Outcome::within(ip, MODULE, params(&[("action_error", json!(action)), ("largest_value", json!(largest))]))
        .and(action < EXACT && largest > NONTRIVIAL))
}

fn p_module(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let (theta, b) = (cfg.theta, cfg.b);
    let (action, ip, largest) =
        module_axioms(cfg, rng, |f, x| p_act(f, x, b, theta), p_inner_rule, |f, g, q, p| p_inner(f, g, b, theta, q, p))?;
    Ok(Outcome::within(
        ip,
        MODULE,
        params(&[("b", json!(b)), ("action_error", json!(action)), ("largest_value", json!(largest))]),
    )
    .and(action < EXACT && largest > NONTRIVIAL))
}

fn leibniz(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let (mut l_side, mut h_side): (f64, f64) = (0.0, 0.0);
    for _ in 0..4 {
        let phi = test_ztr(rng);
        let a = samples::smooth(rng, cfg.theta, 1);
        for plus in [true, false] {
            l_side = l_side.max(leibniz_l_residual(&phi, &a, cfg.b, plus));
            h_side = h_side.max(leibniz_h_residual(&phi, &a, cfg.b, plus));
        }
    }
    Ok(Outcome::within(l_side.max(h_side), cfg.tol.quadrature, params(&[("b", json!(cfg.b)), ("l_side", json!(l_side)), ("h_side", json!(h_side))])))
}

fn creation(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for _ in 0..3 {
        let phi = test_ztr(rng);
        let a = samples::smooth(rng, cfg.theta, 1);
        let psi = Profile::gaussian(c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)), rng.gen_range(-0.5..0.5), rng.gen_range(1.0..2.0));
        let (l, k) = (rng.gen_range(-1..=1), rng.gen_range(-1..=1));
        let field = creation_field(&phi, &a, l, k, &psi, cfg.b, cfg.theta);
        let pts = sample_points(&field, 4, 1.5, rng);
        for plus in [true, false] {
            worst = worst.max(creation_residual(&phi, &a, l, k, &psi, cfg.b, plus, &pts));
        }
    }
    Ok(Outcome::within(worst, cfg.tol.quadrature, params(&[("b", json!(cfg.b)), ("tensors", json!(3))])))
}

fn lower_bound(cfg: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let (b, theta) = (cfg.b, cfg.theta);
    let elements = set(cfg);
    let mut worst: f64 = 0.0;
    for f in &elements {
        let q = p_inner_rule(f, f, 0);
        for &k in &f.slot_indices() {
            let (v, s) = (rng.gen::<f64>(), rng.gen_range(-1.0..1.0));
            let lhs = p_inner(f, f, b, theta, &q, lower_bound_unit(k, v, s, b, theta))?.re;
            worst = worst.max(lower_bound_rhs(f, k, v, s, &q) - lhs);
        }
    }
    Ok(Outcome::within(worst.max(0.0), cfg.tol.quadrature, params(&[("b", json!(b)), ("elements", json!(elements.len()))])))
}

/// Members of the family used to fit the constant; the rest test it.
const FIT: usize = 5;

fn i_norm_bound(cfg: &RunConfig, _: &mut ChaCha8Rng) -> Result<Outcome> {
    let theta = cfg.theta;
    let elements = set(cfg);
    let f2 = &elements[11];
    let grid = SeminormGrid::default();
    let ratios: Vec<f64> = elements[..10]
        .iter()
        .map(|f1| {
            let q = r_inner_rule(f1, f2, 2);
            let h = |l1, v, l2, w| r_inner(f1, f2, theta, &q, (l1, v, l2, w)).map(|z| z.norm()).unwrap_or(f64::INFINITY);
            i_norm(h, theta, 2, 3) / sb_seminorm(f1, 6, (0, 0), &grid)
        })
        .collect();
    let constant = 2.0 * ratios[..FIT].iter().copied().fold(0.0, f64::max);
    let worst = ratios[FIT..].iter().copied().fold(0.0, f64::max);
    Ok(Outcome::within(
        worst / constant,
        1.0,
        params(&[("fitted_constant", json!(constant)), ("ratios", json!(ratios)), ("seminorm", json!("N=6, alpha=(0,0)"))]),
    )
    .and(ratios.iter().all(|r| r.is_finite())))
}

/// Gaussian in all three real-or-integer directions, centred at distance
/// at least 2.5 from the origin. Away from the unit box the weights
/// `|k|^N + |r|^N + |s|^N + 1` grow with `N` pointwise, and these functions
/// are negligible inside it, so their seminorms grow with `N`.
fn off_centre(rng: &mut ChaCha8Rng) -> SB2Function {
    let mut centre = || {
        let x: f64 = rng.gen_range(2.5..4.0);
        if rng.gen_bool(0.5) {
            x
        } else {
            -x
        }
    };
    let (r, s) = (centre(), centre());
    let k = if rng.gen_bool(0.5) { 2 } else { -2 };
    let phi = ZTRFunction::single(k, TRFunction::single(1, Profile::gaussian(c(1.0, 0.0), r, 2.0)));
    SB2Function::product(&phi, &Profile::gaussian(c(0.0, 1.0), s, 2.0))
}

fn seminorm_monotone(_: &RunConfig, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let grid = SeminormGrid { radius: 6.0, step: 0.25, torus: 3 };
    let mut failures = 0;
    let mut checked = 0;
    for _ in 0..4 {
        let f = off_centre(rng);
        for alpha in [(0, 0), (1, 0), (0, 1)] {
            let seq: Vec<f64> = [0, 2, 4, 6].iter().map(|&n| sb_seminorm(&f, n, alpha, &grid)).collect();
            failures += seq.windows(2).filter(|w| w[1] < w[0]).count();
            checked += seq.len() - 1;
        }
    }
    Ok(Outcome::exact(failures, params(&[("comparisons", json!(checked)), ("exponents", json!([0, 2, 4, 6]))])))
}

fn decay_witness(cfg: &RunConfig, _: &mut ChaCha8Rng) -> Result<Outcome> {
    let worst = set(cfg).iter().map(|f| decay_ratio(f, 8.0, 0.5)).fold(0.0, f64::max);
    Ok(Outcome::within(worst, 1e-12, params(&[("radius", json!(8.0)), ("step", json!(0.5))])))
}

