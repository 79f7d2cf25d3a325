use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{func}: argument {arg} is outside the domain")]
    Domain { func: &'static str, arg: f64 },

    #[error("mean width coefficient a0 = {0} must be positive")]
    NonPositiveWidth(f64),

    #[error("support function is not convex: p + p'' = {value:e} at phi = {phi}")]
    NotConvex { phi: f64, value: f64 },

    #[error("expected at least {need} equispaced samples, got {got}")]
    TooFewSamples { need: usize, got: usize },

    #[error("sample angles are not equispaced on [0, 2pi) (index {index})")]
    IrregularSamples { index: usize },

    #[error("origin is not guaranteed interior: a0 = {a0} <= sum |c_k| = {radius_sum}")]
    OriginNotInterior { a0: f64, radius_sum: f64 },

    #[error("f is not O(w^3) at 0 (measured growth exponent {exponent:.3})")]
    GrowthGate { exponent: f64 },

    #[error("quadrature did not converge: best estimate {value} with error {error:e}")]
    NoConvergence { value: f64, error: f64 },

    #[error("body is not of constant width (max even harmonic {max_even:e})")]
    NotConstantWidth { max_even: f64 },

    #[error("invalid quadrature spec: {0}")]
    InvalidSpec(&'static str),
}
