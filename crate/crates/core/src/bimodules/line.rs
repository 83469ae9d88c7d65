//! The two `C(T)`-modules over `T × R`: `H_b` and `N_b`, the unitary `W`
//! between them, and the operators `d_λ` on `H_b` and `d_N` on `N_b`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{check_rule, mode_products, TRFunction};
use crate::error::{Error, Result};
use crate::operator::c;
use crate::profile::Trig;
use crate::quadrature::Quadrature;

/// `C(T)`-valued inner product, stored by Fourier coefficient.
pub type CTValued = Trig;

/// Composite rule on `[−radius, radius]` fine enough for `band`.
pub fn rule_for(radius: f64, band: f64) -> Quadrature {
    Quadrature::for_band(-radius, radius, band)
}

/// `⟨φ, ψ⟩([x]) = ∫ conj(φ)ψ([x], r) dr`.
pub fn hb_inner(phi: &TRFunction, psi: &TRFunction, quad: &Quadrature) -> Result<CTValued> {
    check_rule(quad, phi.support_bound().min(psi.support_bound()), phi.band() + psi.band())?;
    Ok(mode_products(phi, psi, quad)
        .into_iter()
        .map(|(m, v)| (m, v.iter().zip(&quad.weights).map(|(z, w)| z * w).sum()))
        .collect())
}

/// `(l•φ)([x], r) = φ([x − lθ], r − l)`.
pub fn hb_z_act(l: i64, phi: &TRFunction, theta: f64) -> TRFunction {
    phi.translate_x(l as f64 * theta).shift_r(l as f64)
}

/// `(f·φ)([x], r) = f([x + rb]) φ([x], r)`.
pub fn hb_left(f: &Trig, phi: &TRFunction, b: i64) -> TRFunction {
    phi.mul_trig(f, b as f64)
}

/// `(φ·f)([x], r) = φ([x], r) f([x])`.
pub fn hb_right(phi: &TRFunction, f: &Trig) -> TRFunction {
    phi.mul_trig(f, 0.0)
}

/// Rejects a function whose modes leave `[−window, window]`.
pub fn check_window(phi: &TRFunction, window: i64) -> Result<()> {
    if phi.max_mode() > window {
        return Err(Error::TruncationTooSmall(format!("mode {} outside window {window}", phi.max_mode())));
    }
    Ok(())
}

/// `⟨φ, ψ⟩([x]) = ∫ (conj(φ)ψ)([x − r], r/b) dr`.
///
/// With `c_m` the mode-`m` coefficient of `conj(φ)ψ`, substituting `r = bs`
/// gives the mode-`m` coefficient `|b| ∫ c_m(s) e^{−2πimbs} ds`.
pub fn nb_inner(phi: &TRFunction, psi: &TRFunction, b: i64, quad: &Quadrature) -> Result<CTValued> {
    if b == 0 {
        return Err(Error::DivisionByZero);
    }
    let products = mode_products(phi, psi, quad);
    let top = products.keys().map(|m| m.abs()).max().unwrap_or(0);
    check_rule(
        quad,
        phi.support_bound().min(psi.support_bound()),
        phi.band() + psi.band() + (top * b.abs()) as f64,
    )?;
    let bf = b as f64;
    Ok(products
        .into_iter()
        .map(|(m, v)| {
            let z: Complex64 = v
                .iter()
                .zip(quad.nodes.iter().zip(&quad.weights))
                .map(|(z, (&s, &w))| z * crate::nc_torus::e(-(m as f64) * bf * s) * w)
                .sum();
            (m, z * bf.abs())
        })
        .collect())
}

/// `(l•φ)([x], r) = φ([x − lθ], r + l)`.
pub fn nb_z_act(l: i64, phi: &TRFunction, theta: f64) -> TRFunction {
    phi.translate_x(l as f64 * theta).shift_r(-(l as f64))
}

/// `(f·φ)([x], r) = f([x]) φ([x], r)`.
pub fn nb_left(f: &Trig, phi: &TRFunction) -> TRFunction {
    phi.mul_trig(f, 0.0)
}

/// `(φ·f)([x], r) = φ([x], r) f([x + rb])`.
pub fn nb_right(phi: &TRFunction, f: &Trig, b: i64) -> TRFunction {
    phi.mul_trig(f, b as f64)
}

/// `Wφ = |b|^{−1/2} φ∘w` with `w([x], r) = ([x + br], −r)`; per mode the
/// profile is reflected and picks up `e^{2πimbr}`.
pub fn w_forward(phi: &TRFunction, b: i64) -> TRFunction {
    let scale = c(1.0 / (b.abs() as f64).sqrt(), 0.0);
    phi.map(|m, p| (m, p.reflect().modulate((m * b) as f64).scale(scale)))
}

/// `W⁻¹ψ = |b|^{1/2} ψ∘w`, since `w` is an involution.
pub fn w_inverse(psi: &TRFunction, b: i64) -> TRFunction {
    let scale = c((b.abs() as f64).sqrt(), 0.0);
    psi.map(|m, p| (m, p.reflect().modulate((m * b) as f64).scale(scale)))
}

/// `d_{N,±} = ∓(1/b)∂_r ± ∂_Θ − 2πM`, where `∂_Θ` is `2πim` on mode `m`
/// and `M` is multiplication by `r`.
pub fn dn_apply(phi: &TRFunction, plus: bool, b: i64) -> TRFunction {
    let s = if plus { 1.0 } else { -1.0 };
    let bf = b as f64;
    phi.map(|m, p| {
        let q = p
            .derivative()
            .scale(c(-s / bf, 0.0))
            .add(&p.scale(c(0.0, s * 2.0 * PI * m as f64)))
            .add(&p.mul_r().scale(c(-2.0 * PI, 0.0)));
        (m, q)
    })
}

/// `d_{λ,±} = λM ± ∂_r` acting fibrewise on `H_b`.
pub fn d_lambda_apply(phi: &TRFunction, plus: bool, lambda: f64) -> TRFunction {
    let s = if plus { 1.0 } else { -1.0 };
    phi.map(|m, p| (m, p.mul_r().scale(c(lambda, 0.0)).add(&p.derivative().scale(c(s, 0.0)))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodules::{samples, tr_distance};
    use crate::profile::{trig, trig_distance, trig_mul, trig_translate, Profile};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const THETA: f64 = 0.618_033_988_749_894_9;

    fn rule() -> Quadrature {
        rule_for(16.0, 40.0)
    }

    #[test]
    fn hb_gaussian_norm() {
        let phi = TRFunction::single(0, Profile::gaussian(c(1.0, 0.0), 0.0, 1.0));
        let ip = hb_inner(&phi, &phi, &rule()).unwrap();
        assert!((ip[&0].re - (PI / 2.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn hb_inner_is_hermitian_and_covariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let q = rule();
        for _ in 0..10 {
            let phi = samples::tr(&mut rng, 2);
            let psi = samples::tr(&mut rng, 2);
            let a = hb_inner(&phi, &psi, &q).unwrap();
            let b = hb_inner(&psi, &phi, &q).unwrap();
            assert!(trig_distance(&a, &crate::profile::trig_conj(&b)) < 1e-12);
            let l = 2;
            let moved = hb_inner(&hb_z_act(l, &phi, THETA), &hb_z_act(l, &psi, THETA), &q).unwrap();
            assert!(trig_distance(&moved, &trig_translate(&a, l as f64 * THETA)) < 1e-10);
        }
    }

    #[test]
    fn hb_right_action_is_compatible() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let q = rule();
        let phi = samples::tr(&mut rng, 2);
        let psi = samples::tr(&mut rng, 2);
        let f = samples::trig_poly(&mut rng, 2);
        let lhs = hb_inner(&phi, &hb_right(&psi, &f), &q).unwrap();
        let rhs = trig_mul(&hb_inner(&phi, &psi, &q).unwrap(), &f);
        assert!(trig_distance(&lhs, &rhs) < 1e-10);
    }

    #[test]
    fn z_action_law() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let phi = samples::tr(&mut rng, 2);
        let twice = hb_z_act(2, &hb_z_act(-5, &phi, THETA), THETA);
        assert!(tr_distance(&twice, &hb_z_act(-3, &phi, THETA)) < 1e-12);
        let twice = nb_z_act(2, &nb_z_act(-5, &phi, THETA), THETA);
        assert!(tr_distance(&twice, &nb_z_act(-3, &phi, THETA)) < 1e-12);
    }

    #[test]
    fn left_action_by_z_twists_profile() {
        let phi = TRFunction::single(0, Profile::gaussian(c(1.0, 0.0), 0.0, 1.0));
        let z = trig(&[(1, c(1.0, 0.0))]);
        let out = hb_left(&z, &phi, 3);
        assert_eq!(out.modes.keys().copied().collect::<Vec<_>>(), vec![1]);
        for &r in &[-0.7, 0.2, 1.1] {
            let want = crate::nc_torus::e(3.0 * r) * (-r * r).exp();
            assert!((out.modes[&1].eval(r) - want).norm() < 1e-14);
        }
        assert!(check_window(&out, 0).is_err());
    }

    #[test]
    fn w_roundtrip_and_unitarity() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let q = rule();
        for b in [1, -2, 3] {
            let phi = samples::tr(&mut rng, 2);
            let psi = samples::tr(&mut rng, 2);
            assert!(tr_distance(&w_inverse(&w_forward(&phi, b), b), &phi) < 1e-12);
            let nb = nb_inner(&w_forward(&phi, b), &w_forward(&psi, b), b, &q).unwrap();
            let hb = hb_inner(&phi, &psi, &q).unwrap();
            assert!(trig_distance(&nb, &hb) < 1e-8, "b = {b}");
        }
    }

    #[test]
    fn w_on_explicit_mode() {
        let phi = TRFunction::single(1, Profile::gaussian(c(1.0, 0.0), 0.5, 1.0));
        let w = w_forward(&phi, 1);
        for &(x, r) in &[(0.1, 0.3), (0.6, -1.0)] {
            let want = crate::nc_torus::e(x + r) * (-(-r - 0.5f64).powi(2)).exp();
            assert!((w.eval(x, r) - want).norm() < 1e-14);
        }
    }

    #[test]
    fn conjugating_dn_gives_d_lambda() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for b in [1, 2, -3] {
            let phi = samples::tr(&mut rng, 2);
            let lhs = w_inverse(&dn_apply(&w_forward(&phi, b), true, b), b).scale(c(b as f64, 0.0));
            let rhs = d_lambda_apply(&phi, true, 2.0 * PI * b as f64);
            assert!(tr_distance(&lhs, &rhs) < 1e-10, "b = {b}");
        }
    }

    #[test]
    fn dn_adjoint_pairing() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let q = rule();
        for b in [1, 2] {
            let phi = samples::tr(&mut rng, 1);
            let psi = samples::tr(&mut rng, 1);
            let lhs = nb_inner(&dn_apply(&phi, true, b), &psi, b, &q).unwrap();
            let rhs = nb_inner(&phi, &dn_apply(&psi, false, b), b, &q).unwrap();
            assert!(trig_distance(&lhs, &rhs) < 1e-6, "b = {b}");
        }
    }

    #[test]
    fn nb_module_axioms() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let q = rule();
        let phi = samples::tr(&mut rng, 2);
        let psi = samples::tr(&mut rng, 2);
        let f = samples::trig_poly(&mut rng, 2);
        let lhs = nb_inner(&phi, &nb_right(&psi, &f, 2), 2, &q).unwrap();
        let rhs = trig_mul(&nb_inner(&phi, &psi, 2, &q).unwrap(), &f);
        assert!(trig_distance(&lhs, &rhs) < 1e-8);
        let z = trig(&[(1, c(1.0, 0.0))]);
        let zbar = trig(&[(-1, c(1.0, 0.0))]);
        assert!(tr_distance(&nb_right(&nb_right(&phi, &z, 2), &zbar, 2), &phi) < 1e-12);
        assert!(tr_distance(&nb_left(&trig(&[(0, c(1.0, 0.0))]), &phi), &phi) < 1e-15);
    }

    #[test]
    fn nb_gaussian_positive() {
        let phi = TRFunction::single(0, Profile::gaussian(c(1.0, 0.0), 0.0, 4.0));
        let ip = nb_inner(&phi, &phi, 2, &rule()).unwrap();
        assert!(ip[&0].re > 0.0 && ip[&0].im.abs() < 1e-14);
    }
}
