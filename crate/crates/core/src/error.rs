use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown particle species `{0}`")]
    UnknownSpecies(String),

    #[error("zeta({0}) diverges: argument must exceed 1")]
    DivergentZeta(f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("no Bose-Einstein condensation at finite temperature in d = {0}")]
    NoFiniteCondensation(u32),

    #[error("T = {temperature:e} K is not above the condensation temperature {critical:e} K")]
    Phase { temperature: f64, critical: f64 },

    #[error("mode cutoff too small: omitted-level Boltzmann weight {weight:e} exceeds 1e-16")]
    CutoffTooSmall { weight: f64 },

    #[error("eigen-solve did not converge: residual {residual:e}")]
    ConvergenceFailure { residual: f64 },

    #[error("subset has {points} grid points, at least 16 are required")]
    TooCoarse { points: usize },

    #[error("no crossing of U(T) = E_lowest within [{lo:e}, {hi:e}] K")]
    NoCrossing { lo: f64, hi: f64 },
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
