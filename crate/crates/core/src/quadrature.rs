//! Quadrature rules, finite-difference stencils and a tridiagonal
//! eigenvalue solver used by the grid oracles.

use num_complex::Complex64;

/// Gauss–Legendre nodes and weights on `[-1, 1]`, by Newton iteration on
/// the three-term recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, 0.0);
            for j in 0..n {
                let p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) as f64 * z * p1 - j as f64 * p2) / (j + 1) as f64;
            }
            dp = n as f64 * (z * p0 - p1) / (z * z - 1.0);
            let dz = p0 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// A fixed quadrature rule on an interval.
#[derive(Clone, Debug, PartialEq)]
pub struct Quadrature {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub lo: f64,
    pub hi: f64,
    pub panels: usize,
    pub per_panel: usize,
}

impl Quadrature {
    /// Composite Gauss–Legendre: `panels` equal panels, `per_panel` nodes each.
    pub fn composite(lo: f64, hi: f64, panels: usize, per_panel: usize) -> Self {
        let (x, w) = gauss_legendre(per_panel);
        let h = (hi - lo) / panels as f64;
        let mut nodes = Vec::with_capacity(panels * per_panel);
        let mut weights = Vec::with_capacity(panels * per_panel);
        for p in 0..panels {
            let c = lo + (p as f64 + 0.5) * h;
            for (xi, wi) in x.iter().zip(&w) {
                nodes.push(c + 0.5 * h * xi);
                weights.push(0.5 * h * wi);
            }
        }
        Self { nodes, weights, lo, hi, panels, per_panel }
    }

    /// Composite 16-node rule whose Nyquist bound is at least `band`, with
    /// panels no wider than one unit.
    pub fn for_band(lo: f64, hi: f64, band: f64) -> Self {
        let width = hi - lo;
        let panels = (width * band / 6.0).ceil().max(width.ceil()).max(1.0) as usize;
        Self::composite(lo, hi, panels, 16)
    }

    /// Single-panel Gauss–Legendre rule.
    pub fn gauss(lo: f64, hi: f64, n: usize) -> Self {
        Self::composite(lo, hi, 1, n)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> Complex64) -> Complex64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| f(x) * w).sum()
    }

    pub fn integrate_real(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| f(x) * w).sum()
    }

    /// Largest frequency `ν` (in cycles per unit) for which `e^{2πiνt}`
    /// times a smooth envelope is still integrated reliably. A Gauss panel
    /// with `n` nodes resolves roughly `n/2` oscillations less a safety
    /// margin, the same way a uniform grid resolves `1/(2Δt)`.
    pub fn nyquist(&self) -> f64 {
        let h = (self.hi - self.lo) / self.panels as f64;
        0.5 * (self.per_panel as f64 - 4.0).max(1.0) / h
    }
}

/// Gauss–Hermite nodes with weight-folded weights `w_i e^{x_i²}`, so that
/// `Σ w_i f(x_i) ≈ ∫ f` for integrands that already carry a Gaussian.
pub fn gauss_hermite_folded(n: usize) -> (Vec<f64>, Vec<f64>) {
    let pim4 = std::f64::consts::PI.powf(-0.25);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    let nf = n as f64;
    let mut z = 0.0f64;
    for i in 0..m {
        z = match i {
            0 => (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-1.0 / 6.0),
            1 => z - 1.14 * nf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * x[0],
            3 => 1.91 * z - 0.91 * x[1],
            _ => 2.0 * z - x[i - 2],
        };
        let mut pp = 0.0;
        for _ in 0..100 {
            // Normalised Hermite functions h_j(z), Gaussian factor included,
            // so that 2/pp² below is already the folded weight.
            let (mut p1, mut p2) = (pim4 * (-0.5 * z * z).exp(), 0.0);
            for j in 1..=n {
                let p3 = p2;
                p2 = p1;
                p1 = z * (2.0 / j as f64).sqrt() * p2 - ((j - 1) as f64 / j as f64).sqrt() * p3;
            }
            pp = (2.0 * nf).sqrt() * p2;
            let dz = p1 / pp;
            z -= dz;
            if dz.abs() < 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[n - 1 - i] = w[i];
    }
    x.reverse();
    w.reverse();
    (x, w)
}

const CENTRAL8: [f64; 4] = [4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0];

/// Eighth-order central difference of `f` at `x`.
pub fn derivative(f: impl Fn(f64) -> Complex64, x: f64, h: f64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (j, c) in CENTRAL8.iter().enumerate() {
        let s = (j + 1) as f64 * h;
        acc += (f(x + s) - f(x - s)) * *c;
    }
    acc / h
}

/// Weights `c_1..c_p` of the order-`2p` central first difference,
/// `f′(x) ≈ Σ c_j (f(x + jh) − f(x − jh)) / h`.
pub fn central_weights(p: usize) -> Vec<f64> {
    // c_j = (−1)^{j+1} (p!)² / (j (p−j)! (p+j)!)
    let fact = |n: usize| (1..=n).map(|k| k as f64).product::<f64>();
    (1..=p)
        .map(|j| {
            let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
            sign * fact(p) * fact(p) / (j as f64 * fact(p - j) * fact(p + j))
        })
        .collect()
}

/// Twelfth-order central difference on a uniform grid, with zero values
/// assumed outside the sampled range.
pub fn grid_derivative(v: &[f64], h: f64) -> Vec<f64> {
    let n = v.len() as isize;
    let at = |i: isize| if (0..n).contains(&i) { v[i as usize] } else { 0.0 };
    let weights = central_weights(6);
    (0..n)
        .map(|i| {
            let mut acc = 0.0;
            for (j, c) in weights.iter().enumerate() {
                let s = (j + 1) as isize;
                acc += c * (at(i + s) - at(i - s));
            }
            acc / h
        })
        .collect()
}

/// The `count` smallest eigenvalues of the symmetric tridiagonal matrix
/// with diagonal `d` and off-diagonal `e`, by Sturm-sequence bisection.
pub fn tridiagonal_lowest(d: &[f64], e: &[f64], count: usize) -> Vec<f64> {
    let n = d.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r = if i > 0 { e[i - 1].abs() } else { 0.0 } + if i + 1 < n { e[i].abs() } else { 0.0 };
        lo = lo.min(d[i] - r);
        hi = hi.max(d[i] + r);
    }
    // Number of eigenvalues strictly below x.
    let below = |x: f64| {
        let mut c = 0;
        let mut q = d[0] - x;
        if q < 0.0 {
            c += 1;
        }
        for i in 1..n {
            let qq = if q == 0.0 { f64::EPSILON } else { q };
            q = d[i] - x - e[i - 1] * e[i - 1] / qq;
            if q < 0.0 {
                c += 1;
            }
        }
        c
    };
    (0..count.min(n))
        .map(|k| {
            let (mut a, mut b) = (lo, hi);
            for _ in 0..200 {
                let m = 0.5 * (a + b);
                if below(m) > k {
                    b = m;
                } else {
                    a = m;
                }
                if b - a < 1e-14 * (1.0 + a.abs().max(b.abs())) {
                    break;
                }
            }
            0.5 * (a + b)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_integrates_polynomials_exactly() {
        let q = Quadrature::gauss(-1.0, 2.0, 8);
        // degree 15 is the limit for 8 nodes
        let v = q.integrate_real(|x| x.powi(15));
        let exact = (2f64.powi(16) - 1.0) / 16.0;
        assert!((v - exact).abs() < 1e-9 * exact);
    }

    #[test]
    fn composite_gaussian_integral() {
        let q = Quadrature::composite(-10.0, 10.0, 40, 16);
        let v = q.integrate_real(|x| (-x * x).exp());
        assert!((v - std::f64::consts::PI.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn hermite_rule_integrates_gaussian_moments() {
        let (x, w) = gauss_hermite_folded(40);
        let m2: f64 = x.iter().zip(&w).map(|(x, w)| w * x * x * (-x * x).exp()).sum();
        assert!((m2 - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-13);
    }

    #[test]
    fn central_weights_match_tabulated_eighth_order() {
        for (a, b) in central_weights(4).iter().zip(CENTRAL8) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn derivative_of_exponential() {
        let f = |x: f64| Complex64::new(0.0, 3.0 * x).exp();
        let d = derivative(f, 0.4, 1e-2);
        assert!((d - Complex64::new(0.0, 3.0) * f(0.4)).norm() < 1e-11);
    }

    #[test]
    fn sturm_bisection_on_laplacian() {
        // -u'' on (0, π) with Dirichlet ends: eigenvalues k².
        let n = 2000;
        let h = std::f64::consts::PI / (n + 1) as f64;
        let d = vec![2.0 / (h * h); n];
        let e = vec![-1.0 / (h * h); n - 1];
        let ev = tridiagonal_lowest(&d, &e, 3);
        for (k, v) in ev.iter().enumerate() {
            let exact = ((k + 1) * (k + 1)) as f64;
            assert!((v - exact).abs() < 1e-4 * exact, "{v} vs {exact}");
        }
    }
}
