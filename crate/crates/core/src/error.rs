use thiserror::Error;

/// Errors raised while building, validating or evaluating operators,
/// measurements, entropies and bounds.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension must be at least 2, got {0}")]
    InvalidDimension(usize),

    #[error("not Hermitian (relative anti-Hermitian part {0:.3e})")]
    NotHermitian(f64),

    #[error("trace is not 1 (got {0})")]
    BadTrace(f64),

    #[error("not positive semidefinite (minimum eigenvalue {0:.3e})")]
    NonPositive(f64),

    #[error("Schatten order must satisfy q >= 1, got {0}")]
    InvalidSchattenOrder(f64),

    #[error("rank {rank} out of range 1..={dim}")]
    InvalidRank { rank: usize, dim: usize },

    #[error("Bloch vector for d={dim} needs {expected} components, found {found}")]
    BlochLength {
        dim: usize,
        expected: usize,
        found: usize,
    },

    #[error("vector is not normalized (norm {0})")]
    NonUnitVector(f64),

    #[error("POVM element {index} is not positive semidefinite (minimum eigenvalue {min_eig:.3e})")]
    ElementNotPsd { index: usize, min_eig: f64 },

    #[error("POVM elements do not sum to the identity (Frobenius residual {residual:.3e})")]
    Incomplete { residual: f64 },

    #[error("expected {expected} POVM elements, found {found}")]
    WrongCount { expected: usize, found: usize },

    #[error("Gram matrix is not symmetric: diagonal spread {diag_spread:.3e}, off-diagonal spread {off_spread:.3e}")]
    NotSymmetric { diag_spread: f64, off_spread: f64 },

    #[error("element {index} has trace {trace}, expected 1/d")]
    BadElementTrace { index: usize, trace: f64 },

    #[error("off-diagonal overlap b = {b} does not match (1-ad)/(d(d^2-1)) = {expected}")]
    InconsistentOverlap { b: f64, expected: f64 },

    #[error("parameter a = {a} outside ({lower}, {upper}]")]
    OutOfRange { a: f64, lower: f64, upper: f64 },

    #[error("no built-in rank-one SIC for dimension {0}")]
    UnsupportedDimension(usize),

    #[error("family with a = {a} is singular (a d^3 - 1 = {gap:.3e}), cannot dualize")]
    SingularFamily { a: f64, gap: f64 },

    #[error("mixing parameter must lie in (0, 1], got {0}")]
    InvalidLambda(f64),

    #[error("detector efficiency must lie in [0, 1], got {0}")]
    InvalidEta(f64),

    #[error("entropy order must be positive, got {0}")]
    InvalidOrder(f64),

    #[error("order {order} not supported here: {reason}")]
    UnsupportedOrder { order: String, reason: &'static str },

    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(String),

    #[error("argument out of range: {0}")]
    ArgumentOutOfRange(String),

    #[error("orders {alpha} and {beta} violate 1/alpha + 1/beta = 2")]
    ConjugacyViolated { alpha: f64, beta: f64 },

    #[error("symmetrization parameter must lie in [0, 1), got {0}")]
    InvalidSymmetrization(f64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
