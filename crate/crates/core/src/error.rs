use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Input lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A parameter violates its stated constraints.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// A query time falls outside the span a solution was computed on.
    #[error("time {t} outside solution span [{t0}, {t1}]")]
    Span { t: f64, t0: f64, t1: f64 },

    /// An iterative scheme could not reach the requested tolerance.
    #[error("convergence failure: {0}")]
    Convergence(String),

    /// The solution approached a singular point of the equation.
    #[error("singularity: {0}")]
    Singularity(String),

    /// Composition constants violate the Wronskian constraint.
    #[error("composition constants: {0}")]
    Constants(String),

    /// Inputs that should be mutually consistent are not.
    #[error("internal consistency: {0}")]
    Inconsistent(String),

    /// The call itself is malformed (mismatched grids, wrong variant, ...).
    #[error("usage error: {0}")]
    Usage(String),

    /// A numeric operation produced non-finite values.
    #[error("numeric failure: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;
