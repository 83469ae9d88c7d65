//! Numerical and exact verification of the self-duality constructions for
//! the irrational rotation algebra: the noncommutative torus and its
//! spectral data, the harmonic-oscillator family, the groupoids and
//! equivalences behind the Morita bimodules, and the unbounded cycle
//! realising the duality class.

pub mod bimodules;
pub mod duality_cycle;
pub mod error;
pub mod groupoids;
pub mod ktheory;
pub mod nc_torus;
pub mod operator;
pub mod oscillator;
pub mod profile;
pub mod quadrature;
pub mod scalars;
pub mod verify;

pub use error::{Error, Result};
