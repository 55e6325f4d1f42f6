//! Resolvent-side verification tools: the continued-fraction `(0,0)`
//! resolvent entry of the one-sided Jacobi operator, and the determinant
//! check behind the permutation-similarity identity for the position of
//! the scaled diagonal entry.

use num_complex::Complex64;

use super::{RandmatError, WignerSample};
use crate::tol;
use crate::weyl::{sqrt_branch, WeylError};

/// Weighted `(0,0)` resolvent entry of the depth-`M` truncation of the
/// tridiagonal operator with zero diagonal and off-diagonals
/// `sqrt(d), 1, 1, ...`: the backward continued fraction
/// `g_M = -1/z`, `g_k = 1/(-z - beta_k^2 g_{k+1})` scaled by `d`.
///
/// The scaling puts the entry in the same normalization as the Weyl
/// function (`-1/Q_d` carries total mass `d`, the plain resolvent entry
/// mass one), so the result converges to `-1/Q_d(z)` as the depth grows.
/// A near-zero pivot triggers one retry at reduced depth before giving up.
pub fn jacobi_resolvent(d: f64, z: Complex64, depth: usize) -> Result<Complex64, RandmatError> {
    if d <= 0.0 {
        return Err(RandmatError::ParameterSign(
            "positive for the Jacobi operator",
        ));
    }
    if depth < 2 {
        return Err(RandmatError::InvalidConfig("depth must be at least 2".into()));
    }
    if let Err(WeylError::OnCut(_)) = sqrt_branch(z) {
        return Err(RandmatError::InvalidConfig(
            "z must lie off the spectral cut [-2, 2]".into(),
        ));
    }
    for attempt_depth in [depth, depth - 1] {
        if let Some(g) = continued_fraction(d, z, attempt_depth) {
            return Ok(d * g);
        }
    }
    Err(RandmatError::NearZeroPivot)
}

fn continued_fraction(d: f64, z: Complex64, depth: usize) -> Option<Complex64> {
    let pivot_floor = tol::CONTINUED_FRACTION_PIVOT * z.norm().max(1.0);
    let mut g = -z.inv();
    for k in (1..depth).rev() {
        let beta_sq = if k == 1 { d } else { 1.0 };
        let denominator = -z - beta_sq * g;
        if denominator.norm() < pivot_floor {
            return None;
        }
        g = denominator.inv();
    }
    Some(g)
}

/// Verify `det(H_{d,k} W - z) = det(H_d U_k W U_k - z)` at each sample
/// point, where `U_k` swaps coordinates `0` and `k` and `H_{d,k}` places
/// `d` at diagonal position `k`. Determinants are compared through LU
/// factorizations as (log-magnitude, phase) pairs at relative tolerance
/// [`tol::DET_MATCH_REL`]. Singular sample points are skipped; if every
/// point is singular the check fails with an error.
pub fn permutation_similarity_check(
    w: &WignerSample,
    d: f64,
    k: usize,
    zs: &[Complex64],
) -> Result<bool, RandmatError> {
    let dim = w.dim();
    if k >= dim {
        return Err(RandmatError::PositionOutOfRange { k, n: dim - 1 });
    }
    if zs.is_empty() {
        return Err(RandmatError::InvalidConfig("no sample points".into()));
    }
    let mut compared = 0usize;
    for &z in zs {
        let mut shifted = build_shifted(w, d, k, z, false);
        let mut conjugated = build_shifted(w, d, k, z, true);
        let det_a = lu_log_det(&mut shifted, dim);
        let det_b = lu_log_det(&mut conjugated, dim);
        let (Some(a), Some(b)) = (det_a, det_b) else {
            continue; // singular at this z; skip the point
        };
        compared += 1;
        let log_scale = a.0.abs().max(1.0);
        if (a.0 - b.0).abs() > tol::DET_MATCH_REL * log_scale {
            return Ok(false);
        }
        let mut phase_diff = (a.1 - b.1).rem_euclid(std::f64::consts::TAU);
        if phase_diff > std::f64::consts::PI {
            phase_diff -= std::f64::consts::TAU;
        }
        if phase_diff.abs() > tol::DET_MATCH_REL * std::f64::consts::TAU {
            return Ok(false);
        }
    }
    if compared == 0 {
        return Err(RandmatError::AllPointsSkipped);
    }
    Ok(true)
}

/// Either `H_{d,k} W - z` (`conjugated = false`) or
/// `H_d (U_k W U_k) - z` (`conjugated = true`) as a dense complex matrix.
fn build_shifted(
    w: &WignerSample,
    d: f64,
    k: usize,
    z: Complex64,
    conjugated: bool,
) -> Vec<Complex64> {
    let dim = w.dim();
    let mut a = vec![Complex64::new(0.0, 0.0); dim * dim];
    let swap = |i: usize| -> usize {
        if i == 0 {
            k
        } else if i == k {
            0
        } else {
            i
        }
    };
    for i in 0..dim {
        let scale = if conjugated {
            if i == 0 {
                d
            } else {
                1.0
            }
        } else if i == k {
            d
        } else {
            1.0
        };
        for j in 0..dim {
            let entry = if conjugated {
                w.entry(swap(i), swap(j))
            } else {
                w.entry(i, j)
            };
            a[i * dim + j] = Complex64::new(scale * entry, 0.0);
        }
        a[i * dim + i] -= z;
    }
    a
}

/// LU with partial pivoting; returns the determinant as
/// `(log-magnitude, phase)` or `None` when a pivot vanishes.
fn lu_log_det(a: &mut [Complex64], n: usize) -> Option<(f64, f64)> {
    let mut log_mag = 0.0;
    let mut phase = 0.0;
    let mut sign_flips = 0usize;
    for col in 0..n {
        let (pivot_row, pivot_norm) = (col..n)
            .map(|r| (r, a[r * n + col].norm()))
            .max_by(|x, y| x.1.total_cmp(&y.1))?;
        if pivot_norm == 0.0 {
            return None;
        }
        if pivot_row != col {
            for j in 0..n {
                a.swap(col * n + j, pivot_row * n + j);
            }
            sign_flips += 1;
        }
        let pivot = a[col * n + col];
        log_mag += pivot.norm().ln();
        phase += pivot.arg();
        for r in (col + 1)..n {
            let factor = a[r * n + col] / pivot;
            if factor.norm() == 0.0 {
                continue;
            }
            for j in (col + 1)..n {
                let sub = factor * a[col * n + j];
                a[r * n + j] -= sub;
            }
            a[r * n + col] = Complex64::new(0.0, 0.0);
        }
    }
    if sign_flips % 2 == 1 {
        phase += std::f64::consts::PI;
    }
    Some((log_mag, phase.rem_euclid(std::f64::consts::TAU)))
}
