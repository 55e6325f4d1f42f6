//! The limit Weyl function `Q_d(z)`, the semicircle Stieltjes transform,
//! generating functions, outlier roots and Laurent-series utilities.
//!
//! All functions work in double precision on points off the spectral cut
//! `[-2, 2]`; points on the cut are hard errors rather than boundary
//! values. The square root of `z^2 - 4` is realized as
//! `sqrt(z - 2) * sqrt(z + 2)` with principal factors, the unique branch
//! analytic off the cut that behaves like `z` at infinity.

use num_complex::Complex64;
use thiserror::Error;

use crate::combinatorics::pi_convolution;
use crate::tol;

#[derive(Debug, Error, PartialEq)]
pub enum WeylError {
    #[error("z = {0} lies on the spectral cut [-2, 2]")]
    OnCut(Complex64),
    #[error("z = {0} lies on the branch ray [1/4, inf)")]
    OnBranchRay(Complex64),
    #[error("parameter d must be nonzero")]
    ZeroParameter,
    #[error("generating-function denominator vanishes near z = {0}")]
    NearPole(Complex64),
    #[error("leading series coefficient is zero")]
    ZeroLeadingCoefficient,
    #[error("head coefficient {head} is inconsistent with leading term {leading}")]
    HeadMismatch { head: f64, leading: f64 },
    #[error("non-finite input")]
    NonFinite,
}

fn check_finite(z: Complex64) -> Result<(), WeylError> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(WeylError::NonFinite)
    }
}

fn on_cut(z: Complex64) -> bool {
    z.im == 0.0 && (-2.0..=2.0).contains(&z.re)
}

/// `sqrt(z^2 - 4)` as `sqrt(z - 2) * sqrt(z + 2)` with principal square
/// roots per factor: analytic off `[-2, 2]` and asymptotic to `z` at
/// infinity.
pub fn sqrt_branch(z: Complex64) -> Result<Complex64, WeylError> {
    check_finite(z)?;
    if on_cut(z) {
        return Err(WeylError::OnCut(z));
    }
    Ok((z - 2.0).sqrt() * (z + 2.0).sqrt())
}

/// Stieltjes transform of the Wigner semicircle measure,
/// `(-z + sqrt(z^2 - 4)) / 2`: maps the upper half-plane to itself and
/// behaves like `-1/z` at infinity.
pub fn semicircle_stieltjes(z: Complex64) -> Result<Complex64, WeylError> {
    Ok((-z + sqrt_branch(z)?) / 2.0)
}

/// Limit Weyl function `Q_d(z) = stieltjes(z) + z/d`, cross-evaluated
/// against its one-fraction form `((2 - d) z + d sqrt(z^2 - 4)) / (2d)`.
pub fn q_limit(d: f64, z: Complex64) -> Result<Complex64, WeylError> {
    if d == 0.0 {
        return Err(WeylError::ZeroParameter);
    }
    let root = sqrt_branch(z)?;
    let additive = (-z + root) / 2.0 + z / d;
    let fraction = ((2.0 - d) * z + d * root) / (2.0 * d);
    // relative to the evaluation scale: near a root both forms cancel to
    // zero from O(|z|) parts, so |z| belongs in the denominator
    let scale = additive.norm().max(fraction.norm()).max(z.norm()).max(1.0);
    debug_assert!(
        (additive - fraction).norm() <= tol::Q_LIMIT_FORM_REL * scale,
        "Weyl function forms disagree at d = {d}, z = {z}"
    );
    Ok(additive)
}

/// Generating function of the Catalan numbers,
/// `F(z) = (1 - sqrt(1 - 4z)) / (2z)`, with `F(0) = 1` by continuity.
pub fn catalan_gf(z: Complex64) -> Result<Complex64, WeylError> {
    check_finite(z)?;
    if z.im == 0.0 && z.re >= 0.25 {
        return Err(WeylError::OnBranchRay(z));
    }
    if z.norm() == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let root = (Complex64::new(1.0, 0.0) - 4.0 * z).sqrt();
    Ok((Complex64::new(1.0, 0.0) - root) / (2.0 * z))
}

/// Generating function of the `pi_n(d)` sequence, evaluated through both
/// closed forms `1 / (1 - z d F(z))` and `2 / (2 - d + d sqrt(1 - 4z))`,
/// which must agree.
pub fn pi_gf(d: f64, z: Complex64) -> Result<Complex64, WeylError> {
    if d == 0.0 {
        return Err(WeylError::ZeroParameter);
    }
    let f = catalan_gf(z)?;
    let den_product = Complex64::new(1.0, 0.0) - z * d * f;
    let root = (Complex64::new(1.0, 0.0) - 4.0 * z).sqrt();
    let den_closed = Complex64::new(2.0 - d, 0.0) + d * root;
    if den_product.norm() < tol::GF_POLE_ABS || den_closed.norm() < tol::GF_POLE_ABS {
        return Err(WeylError::NearPole(z));
    }
    let via_product = den_product.inv();
    let via_closed = 2.0 * den_closed.inv();
    let scale = via_product.norm().max(1.0);
    debug_assert!(
        (via_product - via_closed).norm() <= tol::GF_FORM_REL * scale,
        "generating-function forms disagree at d = {d}, z = {z}"
    );
    Ok(via_product)
}

/// Odd Laurent coefficients of `-1/Q_d(z)` at infinity: entry `k` is the
/// coefficient of `z^(-(2k+1))`, namely `-d * pi_k(d)`; all even negative
/// powers vanish.
pub fn neg_inv_q_series(d: f64, terms: usize) -> Vec<f64> {
    let pis = pi_convolution(terms.saturating_sub(1));
    pis.iter().take(terms).map(|p| -d * p.eval_f64(d)).collect()
}

/// Partial sum of the series produced by [`neg_inv_q_series`] at `z`.
pub fn neg_inv_q_partial_sum(coeffs: &[f64], z: Complex64) -> Complex64 {
    let inv_z2 = (z * z).inv();
    let mut power = z.inv(); // z^{-(2k+1)}
    let mut sum = Complex64::new(0.0, 0.0);
    for &c in coeffs {
        sum += c * power;
        power *= inv_z2;
    }
    sum
}

/// Zeros of the limit Weyl function outside the cut, as a function of `d`.
#[derive(Debug, Clone, PartialEq)]
pub enum OutlierSet {
    /// `d < 0`: a conjugate pair of purely imaginary roots.
    ComplexPair { upper: Complex64, lower: Complex64 },
    /// `0 < d <= 2`: no roots off the cut.
    None,
    /// `d > 2`: a symmetric pair of real roots of magnitude above 2.
    RealPair { plus: f64, minus: f64 },
}

impl OutlierSet {
    pub fn kind(&self) -> &'static str {
        match self {
            OutlierSet::ComplexPair { .. } => "complex-pair",
            OutlierSet::None => "none",
            OutlierSet::RealPair { .. } => "real-pair",
        }
    }

    /// The roots as complex numbers (empty for `None`), upper/plus first.
    pub fn values(&self) -> Vec<Complex64> {
        match self {
            OutlierSet::ComplexPair { upper, lower } => vec![*upper, *lower],
            OutlierSet::None => Vec::new(),
            OutlierSet::RealPair { plus, minus } => vec![
                Complex64::new(*plus, 0.0),
                Complex64::new(*minus, 0.0),
            ],
        }
    }
}

/// Closed-form outlier roots of `Q_d`: `+-i |d| / sqrt(1 - d)` for `d < 0`,
/// none for `0 < d <= 2`, and `+- d / sqrt(d - 1)` for `d > 2`.
pub fn limit_outliers(d: f64) -> Result<OutlierSet, WeylError> {
    if d == 0.0 {
        return Err(WeylError::ZeroParameter);
    }
    if d < 0.0 {
        let magnitude = d.abs() / (1.0 - d).sqrt();
        let upper = Complex64::new(0.0, magnitude);
        debug_assert!(q_limit(d, upper).unwrap().norm() <= tol::LIMIT_ROOT_RESIDUAL);
        return Ok(OutlierSet::ComplexPair {
            upper,
            lower: upper.conj(),
        });
    }
    if d <= 2.0 {
        return Ok(OutlierSet::None);
    }
    let plus = d / (d - 1.0).sqrt();
    debug_assert!(q_limit(d, Complex64::new(plus, 0.0)).unwrap().norm() <= tol::LIMIT_ROOT_RESIDUAL);
    Ok(OutlierSet::RealPair { plus, minus: -plus })
}

/// Reciprocal of a Laurent series under the Cauchy product rule.
///
/// `gamma[k]` holds the coefficient of `z^(-(k+1))` of a series starting at
/// `z^-1`; the result `alpha` starts at `z^(+1)`, with `alpha[0]` the
/// coefficient of `z`, and satisfies `alpha_{-1} gamma_1 = 1` together with
/// `sum_{i=0..k} alpha_{i-1} gamma_{k-i+1} = 0` for `k >= 1`.
///
/// `alpha_head` is the caller's head coefficient for the series being
/// recovered; its product with `gamma[0]` must be a unit, which catches
/// mismatched scalings before they corrupt the recursion.
pub fn invert_series(alpha_head: f64, gamma: &[f64]) -> Result<Vec<f64>, WeylError> {
    let leading = *gamma.first().ok_or(WeylError::ZeroLeadingCoefficient)?;
    if leading == 0.0 || !leading.is_finite() {
        return Err(WeylError::ZeroLeadingCoefficient);
    }
    if ((alpha_head * leading).abs() - 1.0).abs() > tol::SERIES_HEAD_REL {
        return Err(WeylError::HeadMismatch {
            head: alpha_head,
            leading,
        });
    }
    let mut alpha = Vec::with_capacity(gamma.len());
    alpha.push(1.0 / leading);
    for k in 1..gamma.len() {
        // alpha_{k-1} gamma_1 = - sum_{i=0..k-1} alpha_{i-1} gamma_{k-i+1}
        let mut sum = 0.0;
        for i in 0..k {
            sum += alpha[i] * gamma[k - i];
        }
        alpha.push(-sum / leading);
    }
    Ok(alpha)
}

/// Cauchy-product reconstruction: given `alpha` from [`invert_series`],
/// rebuilds the `gamma` sequence it inverts. Used to close the round-trip
/// check without rerunning the inversion.
pub fn cauchy_reconstruct(alpha: &[f64]) -> Result<Vec<f64>, WeylError> {
    let head = *alpha.first().ok_or(WeylError::ZeroLeadingCoefficient)?;
    if head == 0.0 || !head.is_finite() {
        return Err(WeylError::ZeroLeadingCoefficient);
    }
    let mut gamma = Vec::with_capacity(alpha.len());
    gamma.push(1.0 / head);
    for k in 1..alpha.len() {
        let mut sum = 0.0;
        for i in 0..k {
            sum += gamma[i] * alpha[k - i];
        }
        gamma.push(-sum / head);
    }
    Ok(gamma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{catalan_prefix, pi_convolution};
    use num_traits::ToPrimitive;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn sqrt_branch_examples() {
        assert!((sqrt_branch(c(3.0, 0.0)).unwrap() - c(5f64.sqrt(), 0.0)).norm() < 1e-14);
        assert!((sqrt_branch(c(-3.0, 0.0)).unwrap() - c(-(5f64.sqrt()), 0.0)).norm() < 1e-14);
        let at_2i = sqrt_branch(c(0.0, 2.0)).unwrap();
        assert!((at_2i - c(0.0, 8f64.sqrt())).norm() < 1e-14);
    }

    #[test]
    fn sqrt_branch_rejects_cut_and_nonfinite() {
        assert_eq!(sqrt_branch(c(0.5, 0.0)), Err(WeylError::OnCut(c(0.5, 0.0))));
        assert_eq!(sqrt_branch(c(-2.0, 0.0)), Err(WeylError::OnCut(c(-2.0, 0.0))));
        assert!(sqrt_branch(c(f64::NAN, 0.0)).is_err());
        assert!(sqrt_branch(c(2.5, 0.0)).is_ok());
    }

    #[test]
    fn stieltjes_closed_form_and_series() {
        let at_3 = semicircle_stieltjes(c(3.0, 0.0)).unwrap();
        assert!((at_3 - c((-3.0 + 5f64.sqrt()) / 2.0, 0.0)).norm() < 1e-14);

        // independent oracle: -sum c_k / z^(2k+1) at z = 3
        let catalans = catalan_prefix(40);
        let mut series = 0.0;
        for (k, ck) in catalans.iter().enumerate() {
            series -= ck.to_f64().unwrap() / 3f64.powi(2 * k as i32 + 1);
        }
        assert!((at_3.re - series).abs() < 1e-12);

        let at_10i = semicircle_stieltjes(c(0.0, 10.0)).unwrap();
        assert!((at_10i - c(0.0, (104f64.sqrt() - 10.0) / 2.0)).norm() < 1e-14);
        assert!((at_10i - c(0.0, 0.0990195)).norm() < 1e-6);

        // z * stieltjes(z) -> -1 along the reals
        let far = semicircle_stieltjes(c(1e4, 0.0)).unwrap();
        assert!((far.re * 1e4 + 1.0).abs() < 1e-7);
    }

    #[test]
    fn q_limit_examples() {
        let d = 3.0;
        let root = 3.0 / 2f64.sqrt();
        assert!(q_limit(d, c(root, 0.0)).unwrap().norm() <= 1e-12);
        assert!(q_limit(-1.0, c(0.0, 1.0 / 2f64.sqrt())).unwrap().norm() <= 1e-12);
        let q13 = q_limit(1.0, c(3.0, 0.0)).unwrap();
        assert!((q13 - c((3.0 + 5f64.sqrt()) / 2.0, 0.0)).norm() < 1e-13);
        assert_eq!(q_limit(0.0, c(3.0, 0.0)), Err(WeylError::ZeroParameter));
    }

    #[test]
    fn catalan_gf_examples() {
        assert_eq!(catalan_gf(c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
        let at_01 = catalan_gf(c(0.1, 0.0)).unwrap();
        assert!((at_01 - c((1.0 - 0.6f64.sqrt()) / 0.2, 0.0)).norm() < 1e-14);
        let at_02 = catalan_gf(c(0.2, 0.0)).unwrap();
        assert!((at_02.re - (1.0 - 0.2f64.sqrt()) / 0.4).abs() < 1e-14);
        assert!(catalan_gf(c(0.25, 0.0)).is_err());
        assert!(catalan_gf(c(0.3, 0.0)).is_err());

        // series oracle: sum c_k z^k at z = 0.1
        let catalans = catalan_prefix(40);
        let mut series = 0.0;
        for (k, ck) in catalans.iter().enumerate() {
            series += ck.to_f64().unwrap() * 0.1f64.powi(k as i32);
        }
        assert!((at_01.re - series).abs() < 1e-10);
    }

    #[test]
    fn pi_gf_examples() {
        assert_eq!(pi_gf(1.0, c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
        let g1 = pi_gf(1.0, c(0.1, 0.0)).unwrap();
        assert!((g1 - catalan_gf(c(0.1, 0.0)).unwrap()).norm() < 1e-13);
        let gm1 = pi_gf(-1.0, c(0.1, 0.0)).unwrap();
        assert!((gm1.re - 2.0 / (3.0 - 0.6f64.sqrt())).abs() < 1e-13);

        // series oracle at d = -1: sum pi_k(-1) z^k
        let pis = pi_convolution(39);
        let mut series = 0.0;
        for (k, pi) in pis.iter().enumerate() {
            series += pi.eval_f64(-1.0) * 0.1f64.powi(k as i32);
        }
        assert!((gm1.re - series).abs() < 1e-10);
    }

    #[test]
    fn pi_gf_rejects_poles() {
        // at d = -1 the denominator 2 - d + d sqrt(1 - 4z) vanishes at z = -2
        assert_eq!(
            pi_gf(-1.0, c(-2.0, 0.0)),
            Err(WeylError::NearPole(c(-2.0, 0.0)))
        );
        assert_eq!(pi_gf(0.0, c(0.1, 0.0)), Err(WeylError::ZeroParameter));
    }

    #[test]
    fn neg_inv_q_series_coefficients() {
        assert_eq!(neg_inv_q_series(1.0, 3), vec![-1.0, -1.0, -2.0]);
        assert_eq!(neg_inv_q_series(-1.0, 2), vec![1.0, -1.0]);
    }

    #[test]
    fn neg_inv_q_series_partial_sums_match_closed_form() {
        let z = c(5.0, 0.0);
        for &d in &[-1.0, 0.5, 3.0] {
            let coeffs = neg_inv_q_series(d, 40);
            let partial = neg_inv_q_partial_sum(&coeffs, z);
            let closed = -q_limit(d, z).unwrap().inv();
            assert!(
                (partial - closed).norm() < 1e-8,
                "d = {d}: {partial} vs {closed}"
            );
        }
    }

    #[test]
    fn limit_outlier_examples() {
        match limit_outliers(-1.0).unwrap() {
            OutlierSet::ComplexPair { upper, lower } => {
                assert!((upper - c(0.0, std::f64::consts::FRAC_1_SQRT_2)).norm() < 1e-15);
                assert_eq!(lower, upper.conj());
            }
            other => panic!("expected complex pair, got {other:?}"),
        }
        assert_eq!(limit_outliers(1.5).unwrap(), OutlierSet::None);
        assert_eq!(limit_outliers(2.0).unwrap(), OutlierSet::None);
        match limit_outliers(3.0).unwrap() {
            OutlierSet::RealPair { plus, minus } => {
                assert!((plus - 2.1213203435596424).abs() < 1e-15);
                assert_eq!(minus, -plus);
            }
            other => panic!("expected real pair, got {other:?}"),
        }
        assert!(limit_outliers(0.0).is_err());
    }

    #[test]
    fn limit_outlier_residuals() {
        for &d in &[-4.0, -1.0, -0.25, 2.5, 3.0, 10.0] {
            for root in limit_outliers(d).unwrap().values() {
                assert!(
                    q_limit(d, root).unwrap().norm() <= 1e-12,
                    "residual too large for d = {d}"
                );
            }
        }
    }

    #[test]
    fn invert_series_identity() {
        let gamma = vec![1.0, 0.0, 0.0, 0.0];
        let alpha = invert_series(1.0, &gamma).unwrap();
        assert_eq!(alpha, vec![1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn invert_series_recovers_semicircle_moments() {
        for &d in &[1.0, -1.0] {
            let odd = neg_inv_q_series(d, 6);
            // interleave with the vanishing even coefficients
            let mut gamma = Vec::new();
            for &g in &odd {
                gamma.push(g);
                gamma.push(0.0);
            }
            let alpha = invert_series(1.0 / d, &gamma).unwrap();
            assert!((alpha[0] - 1.0 / odd[0]).abs() < 1e-15);
            let catalans = [1.0, 1.0, 2.0, 5.0, 14.0];
            for (k, ck) in catalans.iter().enumerate() {
                let idx = 2 + 2 * k; // alpha_{2k+1}
                if idx < alpha.len() {
                    assert!(
                        (alpha[idx] - ck).abs() < 1e-12,
                        "d = {d}, alpha_{} = {}",
                        2 * k + 1,
                        alpha[idx]
                    );
                }
                let even_idx = 1 + 2 * k; // alpha_{2k}
                if even_idx < alpha.len() {
                    assert!(alpha[even_idx].abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn invert_series_round_trip() {
        let gamma = vec![-2.0, 0.3, -0.7, 1.1, 0.05, -0.4];
        let alpha = invert_series(-0.5, &gamma).unwrap();
        let back = cauchy_reconstruct(&alpha).unwrap();
        for (g, b) in gamma.iter().zip(&back) {
            assert!((g - b).abs() < 1e-12);
        }
    }

    #[test]
    fn invert_series_rejects_bad_heads() {
        assert_eq!(
            invert_series(1.0, &[]),
            Err(WeylError::ZeroLeadingCoefficient)
        );
        assert_eq!(
            invert_series(1.0, &[0.0, 1.0]),
            Err(WeylError::ZeroLeadingCoefficient)
        );
        assert!(matches!(
            invert_series(0.25, &[-1.0, 0.0]),
            Err(WeylError::HeadMismatch { .. })
        ));
    }

    #[test]
    fn conjugate_symmetry_and_herglotz() {
        let points = [
            c(3.0, 1.0),
            c(-4.0, 0.5),
            c(0.3, 2.0),
            c(2.5, -0.0001),
            c(-1.0, 5.0),
        ];
        for &z in &points {
            for &d in &[-1.5, 0.7, 3.0] {
                let f = q_limit(d, z).unwrap();
                let fc = q_limit(d, z.conj()).unwrap();
                assert!((f.conj() - fc).norm() <= 1e-13 * f.norm().max(1.0));
            }
            let s = semicircle_stieltjes(z).unwrap();
            if z.im > 0.0 {
                assert!(s.im > 0.0, "Herglotz violated at {z}");
            }
        }
    }

}
