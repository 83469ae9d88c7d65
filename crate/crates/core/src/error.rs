use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("theta-degree overflow: result leaves Q + Qθ + Qθ²")]
    DegreeOverflow,
    #[error("division by zero")]
    DivisionByZero,
    #[error("Möbius action has a pole at theta")]
    PoleAtTheta,
    #[error("arrows are not composable")]
    NotComposable,
    #[error("arrow does not lie in the reduction")]
    NotInReduction,
    #[error("unsupported matrix: {0}")]
    UnsupportedMatrix(String),
    #[error("mu(g) vanishes")]
    InvalidMu,
    #[error("quadruple is not an arrow of F_g")]
    NotInFg,
    #[error("truncation too small: {0}")]
    TruncationTooSmall(String),
    #[error("numerical rank is ambiguous at tolerance {0:e}")]
    RankAmbiguous(f64),
    #[error("sampling grids do not match")]
    GridMismatch,
    #[error("aliasing: frequency {freq} exceeds Nyquist bound {nyquist}")]
    AliasingDetected { freq: f64, nyquist: f64 },
    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
