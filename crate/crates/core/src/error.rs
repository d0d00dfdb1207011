use thiserror::Error;

/// Errors raised by kernel construction, evaluation, certification and sampling.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument {value} outside the domain {domain}")]
    Domain { value: f64, domain: &'static str },

    #[error("invalid basis: {0}")]
    InvalidBasis(String),

    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("coefficient a_{index} = {value} is negative")]
    NegativeCoefficient { index: usize, value: f64 },

    #[error("coefficient a_({row},{col}) = {value} is negative")]
    NegativeMatrixEntry { row: usize, col: usize, value: f64 },

    #[error("all coefficients are zero")]
    ZeroMass,

    #[error("coefficient matrix is identically zero")]
    DegenerateZero,

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("function evaluation failed at node x = {node} (returned {value})")]
    Evaluation { node: f64, value: f64 },

    #[error("Newton iteration for root {root} of the order-{order} rule (lambda = {lambda}) did not converge; last step {last_step:e}")]
    QuadratureConvergence {
        lambda: f64,
        order: usize,
        root: usize,
        last_step: f64,
    },

    #[error("geometry mismatch: {0}")]
    GeometryMismatch(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("point {index} has norm {norm}, expected 1")]
    NotUnitVector { index: usize, norm: f64 },

    #[error("matrix is not symmetric: |a_ij - a_ji| = {deviation:e} at ({row},{col})")]
    NotSymmetric {
        row: usize,
        col: usize,
        deviation: f64,
    },

    #[error("covariance factorization failed; minimum eigenvalue {min_eigenvalue:e}")]
    Factorization { min_eigenvalue: f64 },

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("degree cap {cap} is below the kernel truncation degree {needed}")]
    DegreeCapTooSmall { cap: usize, needed: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid kernel spec: {0}")]
    Spec(String),

    #[error("invalid table: {0}")]
    Table(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_unit_interval(x: f64) -> Result<()> {
    if x.is_nan() || x.abs() > 1.0 {
        Err(Error::Domain {
            value: x,
            domain: "[-1, 1]",
        })
    } else {
        Ok(())
    }
}
