//! Numeric tolerances used across the crate.
//!
//! Angle comparisons default to [`ANGLE`] absolute tolerance; dot products are
//! clamped to `[-1, 1]` before inverse trigonometry so rounding never produces
//! NaN.

/// Default absolute tolerance for angle and length comparisons.
pub const ANGLE: f64 = 1e-9;

/// Tolerance for cross-checking the two spherical cosine laws.
pub const COSINE_LAW: f64 = 1e-10;

/// Unit-vector normalization tolerance.
pub const UNIT: f64 = 1e-12;

/// |Delta| at or below this classifies parameters onto the degeneracy curve
/// (double root).
pub const DOUBLE_ROOT: f64 = 1e-10;

/// Delta below minus this counts as "no real root".
pub const NEGATIVE_DELTA: f64 = 1e-9;

/// Roots with |cos a| in `[1 - REJECT_COS, 1]` are degenerate (a = 0 or pi).
pub const REJECT_COS: f64 = 1e-12;

/// Residual bound on the tile quadratic accepted by the geometric
/// construction.
pub const F_RESIDUAL: f64 = 1e-8;

/// Closure and diagonal tolerance of the brute-force edge-length oracle.
pub const ORACLE: f64 = 1e-6;

/// Grid step of the brute-force edge-length oracle.
pub const ORACLE_STEP: f64 = 1e-4;

/// Vertex-matching tolerance for rotation-axis detection.
pub const AXIS: f64 = 1e-7;

/// Accumulated placement error that prunes a layout-search branch.
pub const LAYOUT_PRUNE: f64 = 1e-6;

/// Guard band around the singular parameter values pi/2 and pi.
pub const SINGULAR_GUARD: f64 = 1e-9;
