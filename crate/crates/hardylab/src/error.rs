//! Crate-wide error type.

/// Errors reported by constructors, evaluators, and solvers.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("entries must be finite (no NaN or infinity)")]
    NonFinite,
    #[error("vector is not normalized: |norm - 1| = {0:.3e}")]
    NotNormalized(f64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not a projector (residual {0:.3e})")]
    NotProjector(f64),
    #[error("behavior does not fit the expected scenario: {0}")]
    ScenarioMismatch(String),
    #[error("role labels out of range: {0}")]
    BadRoleLabels(String),
    #[error("observables on one side commute (commutator norm {0:.3e})")]
    CommutingObservables(f64),
    #[error("family amplitudes must all be nonzero (smallest modulus {0:.3e})")]
    DegenerateFamily(f64),
    #[error("spin must be a positive half-integer, got {0}")]
    BadSpin(f64),
    #[error("direction must be a unit 3-vector (norm {0})")]
    BadDirection(f64),
    #[error("{count} deterministic strategies exceed the cap of {cap}")]
    SizeLimit { count: u128, cap: u64 },
    #[error("linear program infeasible: {0}")]
    Infeasible(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
