//! Dense univariate polynomials in `d` with arbitrary-precision integer
//! coefficients.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::CombinatoricsError;

/// Polynomial in the formal variable `d`, coefficient of `d^k` stored at
/// index `k`. The representation is canonical: the last stored coefficient
/// is nonzero, and the zero polynomial stores nothing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial {
            coeffs: vec![BigInt::one()],
        }
    }

    /// The monomial `c * d^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPolynomial { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    /// Convenience constructor used throughout the tests.
    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `d^k` (zero beyond the stored length).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn eval(&self, d: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * d + c;
        }
        acc
    }

    /// Horner evaluation after rounding each coefficient to `f64`.
    pub fn eval_f64(&self, d: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * d + big_to_f64(c);
        }
        acc
    }

    /// Coefficient reversal relative to the degree bound `n`:
    /// `sum a_i d^i` becomes `sum a_i d^(n-i)`.
    pub fn reversed(&self, n: usize) -> Result<IntPolynomial, CombinatoricsError> {
        if let Some(deg) = self.degree() {
            if deg > n {
                return Err(CombinatoricsError::DegreeExceedsBound { degree: deg, bound: n });
            }
        }
        let mut coeffs = vec![BigInt::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[n - i] = c.clone();
        }
        Ok(IntPolynomial::from_coeffs(coeffs))
    }

    /// Long division; the quotient coefficient must divide exactly at every
    /// step, which holds whenever the divisor's leading coefficient is a
    /// unit.
    pub fn div_rem(
        &self,
        rhs: &IntPolynomial,
    ) -> Result<(IntPolynomial, IntPolynomial), CombinatoricsError> {
        let rhs_deg = match rhs.degree() {
            Some(deg) => deg,
            None => return Err(CombinatoricsError::DivisionByZeroPolynomial),
        };
        let lead = &rhs.coeffs[rhs_deg];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); self.coeffs.len().saturating_sub(rhs_deg)];
        while rem.len() > rhs_deg {
            let k = rem.len() - 1;
            let (q, r) = num_integer::Integer::div_rem(&rem[k], lead);
            if !r.is_zero() {
                return Err(CombinatoricsError::InexactDivision);
            }
            quot[k - rhs_deg] = q.clone();
            for j in 0..=rhs_deg {
                let sub = &q * &rhs.coeffs[j];
                rem[k - rhs_deg + j] -= sub;
            }
            debug_assert!(rem[k].is_zero());
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        Ok((
            IntPolynomial::from_coeffs(quot),
            IntPolynomial::from_coeffs(rem),
        ))
    }
}

fn big_to_f64(c: &BigInt) -> f64 {
    num_traits::ToPrimitive::to_f64(c).expect("BigInt magnitude out of f64 range")
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (k, slot) in coeffs.iter_mut().enumerate() {
            *slot = self.coeff(k) + rhs.coeff(k);
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (k, slot) in coeffs.iter_mut().enumerate() {
            *slot = self.coeff(k) - rhs.coeff(k);
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if k == 1 {
                        write!(f, "d")?;
                    } else {
                        write!(f, "d^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
