//! Error type shared by all modules, with the exit-code taxonomy used by the CLI.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid partition arguments: n = {n}, k = {k} (need 1 <= k <= n)")]
    InvalidPartitionArgs { n: usize, k: usize },

    #[error("n = {n} exceeds the cap {cap}; the partition count grows too fast beyond it")]
    SizeOverCap { n: usize, cap: usize },

    #[error("argument length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("series is not invertible: constant term must be zero and the linear term nonzero")]
    NonInvertibleSeries,

    #[error("order must be at least {min}, got {got}")]
    OrderTooSmall { min: usize, got: usize },

    #[error("evaluation point {x} outside [-1, 1]; the series is only certified on the closed unit disc")]
    EvalOutOfDomain { x: f64 },

    #[error("f(1) = {f_at_one} < 1: no level-1 root in (0, 1]")]
    NoRootInUnitInterval { f_at_one: f64 },

    #[error("hypergeometric series diverges for these parameters at |z| = 1 (parameter excess {excess})")]
    HypergeomDivergent { excess: f64 },

    #[error("hypergeometric series did not converge within {terms} terms (partial sum {partial_sum})")]
    HypergeomNoConvergence { partial_sum: f64, terms: usize },

    #[error("quadrature did not stabilize (residual {residual} after {doublings} node doublings)")]
    QuadratureNoConvergence { residual: f64, doublings: usize },

    #[error("degenerate concept: |mean|^2 = {alpha0} leaves no correlation signal to normalize")]
    DegenerateConcept { alpha0: f64 },

    #[error("matrix is not Hermitian within tolerance {tol} (max asymmetry {max_asym})")]
    NonHermitian { max_asym: f64, tol: f64 },

    #[error("matrix shape mismatch: {left} vs {right}")]
    ShapeMismatch { left: String, right: String },

    #[error("diagonal entry {value} at index {index} is not 1 within tolerance")]
    NotUnitDiagonal { index: usize, value: f64 },

    #[error("matrix of size {size} is not positive semidefinite: min eigenvalue {min_eig}")]
    NotPsd { size: usize, min_eig: f64 },

    #[error("exact (infinity,1)-norm needs m + n <= {cap}; got {size}")]
    NormSizeOverCap { size: usize, cap: usize },

    #[error("entry {value} outside the domain [-1, 1] of the entrywise map")]
    EntryOutOfDomain { value: f64 },

    #[error("{0}")]
    Domain(String),

    #[error("workflow conditions not met: {0}")]
    WorkflowPrecondition(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// CLI exit code. Domain errors (bad inputs) map to 1; convergence and
    /// diagnostic failures map to 2 so scripts can tell them apart.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::HypergeomNoConvergence { .. }
            | Error::QuadratureNoConvergence { .. }
            | Error::NoRootInUnitInterval { .. } => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
