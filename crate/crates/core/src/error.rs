use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{function}: argument {x} outside the domain (0, inf)")]
    Domain { function: &'static str, x: f64 },

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("numeric overflow while computing {0}")]
    Overflow(&'static str),

    #[error("quadrature did not converge: value {value}, error estimate {estimate:e} > tolerance {tolerance:e}")]
    QuadratureNonConvergence { value: f64, estimate: f64, tolerance: f64 },

    #[error("integrand returned NaN at x = {0}")]
    IntegrandNan(f64),

    #[error("kato bound not established: a(lambda) = {a} >= 1")]
    KatoInvalid { a: f64 },

    #[error("solution overflowed after {rescales} rescalings (grid misconfigured?)")]
    SolutionOverflow { rescales: usize },

    #[error("grid too coarse: phase advance {advance} per step exceeds pi/4 at s = {s}")]
    GridResolution { advance: f64, s: f64 },

    #[error("bracketing failed: {0}")]
    BracketFailure(String),

    #[error("degenerate trial function (zero norm)")]
    DegenerateTrial,

    #[error("configuration error: {0}")]
    Config(String),
}
