//! Schur-complement secular model of one sampled matrix.
//!
//! Splitting `X = H_d W` along the first row and column gives
//! `Q(z) = z/d - a + sum_j w_j / (lambda_j - z)` with `a = W(0,0)`, the
//! `lambda_j` the bulk eigenvalues and `w_j` the squared couplings of the
//! first column onto the bulk eigenvectors. Zeros of `Q` are eigenvalues of
//! `X`, which reduces outlier hunting to one-dimensional root finding with
//! per-root residual certificates.

use num_complex::Complex64;

use super::eigen::eigen_project;
use super::{RandmatError, WignerSample};
use crate::tol;

/// `(a, {lambda_j}, {w_j})` summary of one sample: the scalar corner, the
/// sorted bulk spectrum and the nonnegative coupling weights.
#[derive(Debug, Clone, PartialEq)]
pub struct SecularModel {
    corner: f64,
    lambdas: Vec<f64>,
    weights: Vec<f64>,
}

impl SecularModel {
    /// Assemble a model directly; used by tests with synthetic spectra.
    pub fn from_parts(
        corner: f64,
        lambdas: Vec<f64>,
        weights: Vec<f64>,
    ) -> Result<Self, RandmatError> {
        if lambdas.len() != weights.len() {
            return Err(RandmatError::InvalidConfig(
                "lambdas and weights must have equal length".into(),
            ));
        }
        if lambdas.windows(2).any(|w| w[0] > w[1]) {
            return Err(RandmatError::InvalidConfig(
                "lambdas must be nondecreasing".into(),
            ));
        }
        if weights.iter().any(|&w| w < 0.0) {
            return Err(RandmatError::InvalidConfig(
                "weights must be nonnegative".into(),
            ));
        }
        Ok(SecularModel {
            corner,
            lambdas,
            weights,
        })
    }

    pub fn corner(&self) -> f64 {
        self.corner
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn bulk_size(&self) -> usize {
        self.lambdas.len()
    }
}

/// Build the secular model of a sample: corner `a = W(0,0)`, eigenvalues of
/// the bulk block `C = W[1.., 1..]` and weights `w_j = (V^T b)_j^2` for the
/// coupling column `b = W[1.., 0]`. The weight sum is checked against
/// `||b||^2`, which the orthogonal projection must preserve.
pub fn build_secular(w: &WignerSample) -> Result<SecularModel, RandmatError> {
    let dim = w.dim();
    let n = dim - 1;
    let corner = w.entry(0, 0);
    let b: Vec<f64> = (1..dim).map(|i| w.entry(i, 0)).collect();
    let mut bulk = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            bulk[i * n + j] = w.entry(i + 1, j + 1);
        }
    }
    let (lambdas, projection) = eigen_project(bulk, n, &b)?;
    let weights: Vec<f64> = projection.iter().map(|f| f * f).collect();

    let got: f64 = weights.iter().sum();
    let expected: f64 = b.iter().map(|x| x * x).sum();
    if (got - expected).abs() > tol::WEIGHT_SUM_REL * expected.max(f64::MIN_POSITIVE) {
        return Err(RandmatError::WeightSumMismatch { got, expected });
    }
    Ok(SecularModel {
        corner,
        lambdas,
        weights,
    })
}

/// Finite-size Weyl function `Q(z) = z/d - a + sum_j w_j / (lambda_j - z)`.
pub fn eval_weyl_n(m: &SecularModel, d: f64, z: Complex64) -> Result<Complex64, RandmatError> {
    if d == 0.0 {
        return Err(RandmatError::InvalidConfig("d must be nonzero".into()));
    }
    let too_close = m
        .lambdas
        .iter()
        .any(|&l| (z - Complex64::new(l, 0.0)).norm() <= tol::SECULAR_POLE_DISTANCE);
    if too_close {
        return Err(RandmatError::PoleProximity(tol::SECULAR_POLE_DISTANCE));
    }
    let mut sum = Complex64::new(0.0, 0.0);
    for (&l, &w) in m.lambdas.iter().zip(&m.weights) {
        sum += w / (Complex64::new(l, 0.0) - z);
    }
    Ok(z / d - m.corner + sum)
}

fn eval_real(m: &SecularModel, d: f64, x: f64) -> f64 {
    let mut sum = 0.0;
    for (&l, &w) in m.lambdas.iter().zip(&m.weights) {
        sum += w / (l - x);
    }
    x / d - m.corner + sum
}

/// `n`-th moment of the coupling measure, `sum_j w_j lambda_j^n`.
pub fn measure_moments(m: &SecularModel, n: usize) -> f64 {
    m.lambdas
        .iter()
        .zip(&m.weights)
        .map(|(&l, &w)| w * l.powi(n as i32))
        .sum()
}

/// Real zeros of the secular function beyond each end of the bulk.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RealOutliers {
    /// Root below the smallest bulk eigenvalue, when separated from it.
    pub lower: Option<f64>,
    /// Root above the largest bulk eigenvalue, when separated from it.
    pub upper: Option<f64>,
}

/// Locate the real outlier roots for `d > 0`.
///
/// On each side of the bulk the secular function is strictly increasing
/// (derivative `1/d + sum w_j/(lambda_j - x)^2`), so a sign change brackets
/// a unique root, refined by bisection. The bracket starts a hair off the
/// extreme eigenvalue and its far end doubles geometrically up to
/// `max(10, 2|d|)` away. A root that fails to clear the bulk edge by
/// [`tol::BULK_MERGE_SPACING_FACTOR`] outermost spacings is reported as
/// absent: it is an ordinary edge eigenvalue, not an outlier.
pub fn real_outliers(m: &SecularModel, d: f64) -> Result<RealOutliers, RandmatError> {
    if d <= 0.0 {
        return Err(RandmatError::ParameterSign("positive for real outliers"));
    }
    if m.lambdas.is_empty() {
        return Err(RandmatError::InvalidConfig("empty secular model".into()));
    }
    let lambda_max = *m.lambdas.last().unwrap();
    let lambda_min = m.lambdas[0];
    let reach = 10f64.max(2.0 * d.abs());

    let upper = bracket_and_bisect(m, d, lambda_max, 1.0, reach);
    let lower = bracket_and_bisect(m, d, lambda_min, -1.0, reach);

    let n = m.lambdas.len();
    // typical spacing at each edge, averaged over a few gaps to tame the
    // fluctuation of the single outermost one
    let gaps = n.saturating_sub(1).min(5);
    let (upper_spacing, lower_spacing) = if gaps == 0 {
        (0.0, 0.0)
    } else {
        (
            (lambda_max - m.lambdas[n - 1 - gaps]) / gaps as f64,
            (m.lambdas[gaps] - lambda_min) / gaps as f64,
        )
    };
    let margin = tol::BULK_MERGE_SPACING_FACTOR;
    Ok(RealOutliers {
        upper: upper.filter(|root| root - lambda_max > margin * upper_spacing),
        lower: lower.filter(|root| lambda_min - root > margin * lower_spacing),
    })
}

/// Bracket a sign change on one side of the bulk (`direction = +-1`) and
/// bisect it down to relative width [`tol::BISECTION_REL`].
fn bracket_and_bisect(
    m: &SecularModel,
    d: f64,
    edge: f64,
    direction: f64,
    reach: f64,
) -> Option<f64> {
    let near = edge + direction * 1e-8;
    let f_near = eval_real(m, d, near);
    let mut offset = 1.0;
    let mut far = None;
    while offset <= reach {
        let candidate = edge + direction * offset;
        if eval_real(m, d, candidate) * f_near < 0.0 {
            far = Some(candidate);
            break;
        }
        offset *= 2.0;
    }
    let far = far?;
    let (mut lo, mut hi) = if direction > 0.0 { (near, far) } else { (far, near) };
    let mut f_lo = eval_real(m, d, lo);
    loop {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol::BISECTION_REL * mid.abs().max(1.0) {
            return Some(mid);
        }
        let f_mid = eval_real(m, d, mid);
        if f_mid == 0.0 {
            return Some(mid);
        }
        if f_lo * f_mid < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
    }
}

/// Result of the nonreal outlier search for `d < 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ComplexOutlierOutcome {
    /// Upper-half-plane root with residual at most [`tol::NEWTON_RESIDUAL`].
    Converged(Complex64),
    /// The iterate collapsed onto the real axis: no nonreal outlier at this
    /// size.
    MergedIntoReal,
    /// Newton failed to converge within the iteration budget.
    NoConvergence,
}

impl ComplexOutlierOutcome {
    pub fn root(&self) -> Option<Complex64> {
        match self {
            ComplexOutlierOutcome::Converged(z) => Some(*z),
            _ => None,
        }
    }
}

const NEWTON_MAX_ITER: usize = 200;
const NEWTON_MAX_HALVINGS: usize = 40;

/// Damped Newton iteration for the upper-half-plane zero of the secular
/// function, started from the limit root of the same `d < 0`.
pub fn complex_outlier(m: &SecularModel, d: f64) -> Result<ComplexOutlierOutcome, RandmatError> {
    if d >= 0.0 {
        return Err(RandmatError::ParameterSign("negative for complex outliers"));
    }
    let start = match crate::weyl::limit_outliers(d) {
        Ok(crate::weyl::OutlierSet::ComplexPair { upper, .. }) => upper,
        _ => unreachable!("d < 0 always yields a complex pair"),
    };
    let mut z = start;
    let mut residual = eval_weyl_n(m, d, z)?;
    for _ in 0..NEWTON_MAX_ITER {
        if residual.norm() <= tol::NEWTON_RESIDUAL {
            return Ok(ComplexOutlierOutcome::Converged(z));
        }
        let mut derivative = Complex64::new(1.0 / d, 0.0);
        for (&l, &w) in m.lambdas.iter().zip(&m.weights) {
            let delta = Complex64::new(l, 0.0) - z;
            derivative += w / (delta * delta);
        }
        if derivative.norm() == 0.0 {
            return Ok(ComplexOutlierOutcome::NoConvergence);
        }
        let mut step = residual / derivative;
        let mut accepted = false;
        for _ in 0..NEWTON_MAX_HALVINGS {
            let candidate = z - step;
            match eval_weyl_n(m, d, candidate) {
                Ok(next) if next.norm() < residual.norm() => {
                    z = candidate;
                    residual = next;
                    accepted = true;
                    break;
                }
                // worse residual or a pole graze: damp and retry
                _ => step *= 0.5,
            }
        }
        if !accepted {
            return Ok(ComplexOutlierOutcome::NoConvergence);
        }
        if z.im < tol::NEWTON_REAL_COLLAPSE {
            return Ok(ComplexOutlierOutcome::MergedIntoReal);
        }
    }
    Ok(ComplexOutlierOutcome::NoConvergence)
}
