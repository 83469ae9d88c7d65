//! Dense matrices of truncated operators together with a description of
//! the basis they act on.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

pub type CMatrix = DMatrix<Complex64>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Basis of a truncated Hilbert space.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Basis {
    /// `z^l ⊗ ε_k`, `|l| ≤ l_max`, `|k| ≤ k_max`, ordered with `k` fastest.
    Lattice { l_max: usize, k_max: usize },
    /// Oscillator eigenfunctions `ψ_0 … ψ_{len-1}` centred at `t`.
    Hermite { len: usize, lambda: f64, t: f64 },
    /// Point values on the uniform grid `origin + j·h`.
    Grid { len: usize, origin: f64, h: f64 },
    /// Graded direct sum `even ⊕ odd`.
    Sum(Box<Basis>, Box<Basis>),
}

impl Basis {
    pub fn dim(&self) -> usize {
        match self {
            Basis::Lattice { l_max, k_max } => (2 * l_max + 1) * (2 * k_max + 1),
            Basis::Hermite { len, .. } | Basis::Grid { len, .. } => *len,
            Basis::Sum(a, b) => a.dim() + b.dim(),
        }
    }

    pub fn label(&self, i: usize) -> String {
        match self {
            Basis::Lattice { l_max, k_max } => {
                let (l, k) = lattice_coords(i, *l_max, *k_max);
                format!("z^{l}⊗e_{k}")
            }
            Basis::Hermite { .. } => format!("psi_{i}"),
            Basis::Grid { origin, h, .. } => format!("r={:.6}", origin + i as f64 * h),
            Basis::Sum(a, b) => {
                if i < a.dim() {
                    format!("+:{}", a.label(i))
                } else {
                    format!("-:{}", b.label(i - a.dim()))
                }
            }
        }
    }
}

pub fn lattice_index(l: i64, k: i64, l_max: usize, k_max: usize) -> Option<usize> {
    let (lm, km) = (l_max as i64, k_max as i64);
    if l.abs() > lm || k.abs() > km {
        return None;
    }
    Some(((l + lm) * (2 * km + 1) + (k + km)) as usize)
}

pub fn lattice_coords(i: usize, l_max: usize, k_max: usize) -> (i64, i64) {
    let w = 2 * k_max + 1;
    ((i / w) as i64 - l_max as i64, (i % w) as i64 - k_max as i64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Grading {
    None,
    /// First `even` basis vectors are even, the rest odd.
    EvenOdd { even: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    pub basis: Basis,
    pub grading: Grading,
    pub entries: CMatrix,
}

impl OperatorMatrix {
    pub fn new(basis: Basis, grading: Grading, entries: CMatrix) -> Self {
        assert_eq!(entries.nrows(), basis.dim());
        assert_eq!(entries.ncols(), basis.dim());
        Self { basis, grading, entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    /// Spectral norm.
    pub fn norm(&self) -> f64 {
        spectral_norm(&self.entries)
    }

    /// Largest deviation from self-adjointness, entrywise.
    pub fn hermitian_defect(&self) -> f64 {
        max_abs(&(&self.entries - self.entries.adjoint()))
    }

    /// Largest entry in the even–even and odd–odd blocks.
    pub fn parity_defect(&self) -> f64 {
        match self.grading {
            Grading::None => 0.0,
            Grading::EvenOdd { even } => {
                let n = self.dim();
                let mut worst: f64 = 0.0;
                for i in 0..n {
                    for j in 0..n {
                        if (i < even) == (j < even) {
                            worst = worst.max(self.entries[(i, j)].norm());
                        }
                    }
                }
                worst
            }
        }
    }

    /// Eigenvalues, sorted ascending; the matrix must be Hermitian.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.entries)
    }
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |a, z| a.max(z.norm()))
}

pub fn spectral_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Singular values, sorted descending.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    let mut s: Vec<f64> = m.clone().svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let mut v: Vec<f64> = m.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Applies `f` to a Hermitian matrix through its eigendecomposition.
pub fn hermitian_function(m: &CMatrix, f: impl Fn(f64) -> f64) -> CMatrix {
    let eig = m.clone().symmetric_eigen();
    let q = &eig.eigenvectors;
    let d = CMatrix::from_diagonal(&eig.eigenvalues.map(|x| c(f(x), 0.0)));
    q * d * q.adjoint()
}

/// Odd operator `[[0, minus], [plus, 0]]` on `top ⊕ bottom`, where
/// `plus: top → bottom` and `minus: bottom → top`.
pub fn odd_block(plus: &CMatrix, minus: &CMatrix) -> CMatrix {
    let (nb, nt) = plus.shape();
    assert_eq!(minus.shape(), (nt, nb));
    let mut m = CMatrix::zeros(nt + nb, nt + nb);
    m.view_mut((0, nt), (nt, nb)).copy_from(minus);
    m.view_mut((nt, 0), (nb, nt)).copy_from(plus);
    m
}
