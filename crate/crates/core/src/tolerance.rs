//! Numerical tolerances shared by every module.

/// Maximum entrywise deviation `|M - M†|` for a matrix to count as Hermitian.
pub const HERMITIAN: f64 = 1e-12;

/// Slack allowed below zero on the smallest eigenvalue of a PSD matrix.
pub const PSD: f64 = 1e-10;

/// Allowed deviation of a density-matrix trace from one.
pub const TRACE: f64 = 1e-10;

/// Eigendecomposition reconstruction residual.
pub const EIG_RESIDUAL: f64 = 1e-10;

/// Margin above the right-hand side before a separability inequality is
/// reported as violated.
pub const CRITERION_MARGIN: f64 = 1e-9;

/// Target duality gap of the SDP solver.
pub const SDP_GAP: f64 = 1e-7;

/// Target primal/dual infeasibility of the SDP solver.
pub const SDP_FEASIBILITY: f64 = 1e-8;

/// Genuine negativity values below this are reported as exactly zero.
pub const GME_ZERO: f64 = 1e-6;
