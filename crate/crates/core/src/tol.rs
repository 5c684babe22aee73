//! Numerical tolerances shared by every module.

/// `ad - bc = 1` is enforced to this accuracy.
pub const NORMALIZATION: f64 = 1e-12;

/// Geometric predicates: tangency, incidence, image-is-a-line.
pub const GEOMETRIC: f64 = 1e-9;

/// Width of the band around trace boundaries (`tr² ∈ {0, 4}`) that resolves to
/// the boundary class.
pub const CLASSIFICATION: f64 = 1e-10;

/// Chordal tolerance for deduplicating accumulation points.
pub const DEDUP: f64 = 1e-9;

/// Inversive distances below `1 + INVERSIVE_SLACK` count as tangent or overlapping.
pub const INVERSIVE_SLACK: f64 = 1e-12;
