use crate::geometry::Point2;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("degenerate triangle: {0}")]
    Degenerate(&'static str),

    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("direction undefined: point coincides with vertex A{0}")]
    UndefinedDirection(usize),

    #[error("weight w2 = {0} < 1/2: no interior equilibrium, the knot is absorbed at A1")]
    AngleDomain(f64),

    #[error(
        "phi0 = {phi0} rad is not below the equilibrium angle {alpha} rad; \
         the Fermat-Torricelli point is not interior to the axis"
    )]
    OutOfRegime { phi0: f64, alpha: f64 },

    #[error("configuration is absorbed at vertex A{0}; the knot does not oscillate")]
    Absorbed(usize),

    #[error("cotangent singular at phi = {0}")]
    Singular(f64),

    #[error("no convergence after {iterations} iterations (last iterate {last:?})")]
    NoConvergence { iterations: usize, last: Point2 },

    #[error("fit did not converge after {iterations} iterations (best rmse {rmse})")]
    FitNoConvergence { iterations: usize, rmse: f64 },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("internal: {0}")]
    Internal(&'static str),
}
