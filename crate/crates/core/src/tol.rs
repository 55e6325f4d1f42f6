//! Floating-point tolerances used across the crate.
//!
//! Every inexact comparison in `weyl` and `randmat` goes through one of
//! these constants so the numeric contract of the library is visible in a
//! single place. `combinatorics` is exact and needs none of them.

/// Relative agreement required between the two closed forms of the limit
/// Weyl function. Both are short rational expressions in `sqrt(z^2-4)`, so
/// anything beyond a few ulps indicates a branch mistake.
pub const Q_LIMIT_FORM_REL: f64 = 1e-13;

/// Relative agreement required between the two closed forms of the
/// `pi`-sequence generating function.
pub const GF_FORM_REL: f64 = 1e-12;

/// Denominator magnitude below which the generating function is treated as
/// at a pole.
pub const GF_POLE_ABS: f64 = 1e-12;

/// Residual bound for the closed-form outlier roots of the limit Weyl
/// function.
pub const LIMIT_ROOT_RESIDUAL: f64 = 1e-12;

/// Absolute truncation error allowed when a Laurent partial sum is compared
/// against the closed form it expands.
pub const SERIES_TRUNCATION_ABS: f64 = 1e-8;

/// Head-coefficient consistency check in `invert_series`: the product of
/// the two leading coefficients must be +-1.
pub const SERIES_HEAD_REL: f64 = 1e-6;

/// Minimal distance from a secular-model pole at which the finite-size Weyl
/// function may be evaluated.
pub const SECULAR_POLE_DISTANCE: f64 = 1e-13;

/// Residual at which the damped Newton iteration for the nonreal outlier is
/// declared converged.
pub const NEWTON_RESIDUAL: f64 = 1e-11;

/// Imaginary part below which the Newton iterate is considered to have
/// collapsed onto the real axis (no nonreal outlier).
pub const NEWTON_REAL_COLLAPSE: f64 = 1e-10;

/// Relative width at which outlier bisection stops.
pub const BISECTION_REL: f64 = 1e-12;

/// Relative tolerance for the weight-sum identity `sum w_j = ||b||^2` of a
/// secular model.
pub const WEIGHT_SUM_REL: f64 = 1e-10;

/// Relative reconstruction error allowed for the symmetric
/// eigendecomposition, `||C - V L V^T|| <= tol * ||C||`.
pub const EIGEN_RECONSTRUCT_REL: f64 = 1e-10;

/// Relative tolerance on log-magnitude and phase when two determinants are
/// compared in the permutation-similarity check.
pub const DET_MATCH_REL: f64 = 1e-6;

/// Pivot magnitude (relative to `|z|`) treated as a breakdown of the
/// continued-fraction recursion.
pub const CONTINUED_FRACTION_PIVOT: f64 = 1e-14;

/// A found real root counts as an outlier only if it clears the bulk edge
/// by this multiple of the outermost eigenvalue spacing; closer roots are
/// reported as merged into the bulk.
pub const BULK_MERGE_SPACING_FACTOR: f64 = 3.0;
