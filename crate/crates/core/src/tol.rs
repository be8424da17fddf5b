//! Numerical tolerances shared across the crate.

/// Hermiticity, relative to the Frobenius norm.
pub const HERM: f64 = 1e-12;
/// Unit-trace check for density matrices.
pub const TRACE: f64 = 1e-12;
/// Allowed negative eigenvalue for positive semidefinite operators.
pub const PSD: f64 = 1e-10;
/// Frobenius residual of the completeness relation.
pub const COMPLETE: f64 = 1e-10;
/// Gram-matrix symmetry and parameter checks for general SICs.
pub const SIC: f64 = 1e-9;
/// Bound satisfaction: a report passes when `slack >= -BOUND`.
pub const BOUND: f64 = 1e-10;
/// A report is saturated when `|slack| < SATURATION`.
pub const SATURATION: f64 = 1e-9;
/// Probabilities below this are treated as zero in pair quantities.
pub const PROB_FLOOR: f64 = 1e-14;
/// Orders with `|alpha - 1|` below this use the Shannon branch.
pub const SHANNON_BRANCH: f64 = 1e-8;
