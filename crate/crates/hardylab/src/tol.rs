//! Numerical tolerances.
//!
//! Exact statements ("this probability is zero", "these vectors are
//! orthonormal") become threshold comparisons in floating point. Every
//! comparison in the crate goes through the constants below or through a
//! [`Tolerances`] value supplied by the caller, so certificates always record
//! the thresholds they were judged against.

/// Norm deviation allowed for a vector declared normalized.
pub const TOL_NORM: f64 = 1e-10;
/// Residual allowed when checking Hermiticity or idempotence.
pub const TOL_HERM: f64 = 1e-10;
/// Inner-product residual allowed for orthonormality checks.
pub const TOL_ORTH: f64 = 1e-10;
/// Pivot threshold for rank decisions in Gram-Schmidt.
pub const PIVOT: f64 = 1e-10;
/// Off-diagonal Frobenius norm at which the Jacobi eigensolver stops.
pub const TOL_EIGEN: f64 = 1e-12;
/// A probability below this counts as a satisfied zero clause.
pub const TOL_ZERO: f64 = 1e-9;
/// A success probability above this counts as genuinely nonzero.
pub const TOL_SUCCESS: f64 = 1e-6;
/// Feasibility tolerance of the simplex solver.
pub const TOL_FEAS: f64 = 1e-9;
/// Row-sum deviation allowed for a probability table.
pub const TOL_ROW_SUM: f64 = 1e-9;

/// Thresholds used when judging certificates and polytope membership.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Zero-clause threshold.
    pub zero: f64,
    /// Nonzero-clause (success) threshold.
    pub success: f64,
    /// LP feasibility threshold.
    pub feas: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            zero: TOL_ZERO,
            success: TOL_SUCCESS,
            feas: TOL_FEAS,
        }
    }
}
