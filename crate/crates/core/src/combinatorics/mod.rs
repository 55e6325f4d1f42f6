//! Exact combinatorics: Catalan numbers, the Catalan triangle, Dyck-path
//! and non-crossing-pair-partition enumeration, and the generalized Catalan
//! polynomials `pi_n(d)` computed by four mutually independent methods.
//!
//! Everything here uses arbitrary-precision integers or rationals; floating
//! point is confined to the analytic modules so these values can serve as
//! oracles for them.

mod dyck;
mod partition;
mod poly;

pub use dyck::{enumerate_dyck_paths, touch_count, DyckPath, DyckPathIter};
pub use partition::{enumerate_nc_pair_partitions, NcPairPartitionIter, PairPartition};
pub use poly::IntPolynomial;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Largest order accepted by the exhaustive enumerations. Catalan growth is
/// exponential; order 16 (~35M paths) is the most that stays interactive.
pub const ENUMERATION_CAP: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CombinatoricsError {
    #[error("order {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("polynomial degree {degree} exceeds reversal bound {bound}")]
    DegreeExceedsBound { degree: usize, bound: usize },
    #[error("polynomial division left a nonzero remainder")]
    InexactDivision,
    #[error("division by the zero polynomial")]
    DivisionByZeroPolynomial,
    #[error("steps do not form a Dyck path")]
    InvalidDyckPath,
    #[error("blocks do not form a pair partition of {{1,...,2n}}")]
    InvalidPairPartition,
    #[error("pair partition has crossing blocks")]
    CrossingBlocks,
}

/// `n`-th Catalan number, `C(2n, n) / (n + 1)`.
pub fn catalan(n: usize) -> BigInt {
    let binom = num_integer::binomial(BigInt::from(2 * n), BigInt::from(n));
    binom / BigInt::from(n + 1)
}

/// First `len` Catalan numbers.
pub fn catalan_prefix(len: usize) -> Vec<BigInt> {
    (0..len).map(catalan).collect()
}

/// Row `n` of the Catalan triangle, entries `t[n][0..=n]`.
///
/// Row zero is `[1]`; each later row is the prefix-sum of the previous one,
/// extended by repeating its last value (the partial sums run out of
/// earlier entries at that point).
pub fn catalan_triangle_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for _ in 1..=n {
        let mut next = Vec::with_capacity(row.len() + 1);
        let mut acc = BigInt::zero();
        for value in &row {
            acc += value;
            next.push(acc.clone());
        }
        next.push(acc);
        row = next;
    }
    row
}

/// Catalan triangle entry `t[n][k]`.
///
/// For `n >= 1` and `k <= n` the prefix-sum recursion and the ballot-number
/// closed form `C(n+k, k) - C(n+k, k-1)` are both evaluated and must agree;
/// entries right of the triangle are zero, and row zero is the Kronecker
/// delta.
pub fn catalan_triangle(n: usize, k: usize) -> BigInt {
    if n == 0 {
        return if k == 0 { BigInt::one() } else { BigInt::zero() };
    }
    if k > n {
        return BigInt::zero();
    }
    let recursive = catalan_triangle_row(n)[k].clone();
    let nk = BigInt::from(n + k);
    let mut closed = num_integer::binomial(nk.clone(), BigInt::from(k));
    if k > 0 {
        closed -= num_integer::binomial(nk, BigInt::from(k - 1));
    }
    assert_eq!(
        recursive, closed,
        "catalan triangle routes disagree at ({n}, {k})"
    );
    recursive
}

/// `pi_n(d)` by exhaustive Dyck-path enumeration: the coefficient of `d^j`
/// counts order-`n` paths with exactly `j` axis contacts.
pub fn pi_enumerate(n: usize) -> Result<IntPolynomial, CombinatoricsError> {
    if n == 0 {
        return Ok(IntPolynomial::one());
    }
    let mut counts = vec![BigInt::zero(); n + 1];
    for path in enumerate_dyck_paths(n)? {
        counts[touch_count(&path)] += 1;
    }
    Ok(IntPolynomial::from_coeffs(counts))
}

/// `pi_0, ..., pi_n_max` via the first-return convolution
/// `pi_n = d * sum_{k=1..n} c_{k-1} pi_{n-k}`.
pub fn pi_convolution(n_max: usize) -> Vec<IntPolynomial> {
    let catalans = catalan_prefix(n_max.max(1));
    let mut pis = Vec::with_capacity(n_max + 1);
    pis.push(IntPolynomial::one());
    for n in 1..=n_max {
        let mut sum = IntPolynomial::zero();
        for k in 1..=n {
            let scaled = &IntPolynomial::monomial(catalans[k - 1].clone(), 0) * &pis[n - k];
            sum = &sum + &scaled;
        }
        pis.push(&IntPolynomial::monomial(BigInt::one(), 1) * &sum);
    }
    pis
}

/// One step of the short linear recurrence: given `prev = pi_{n-1}`,
/// computes `pi_n = (-d^2 * pi_{n-1} + d * c_{n-1}) / (1 - d)`.
///
/// The division is carried out exactly in the integer-polynomial ring; a
/// nonzero remainder cannot occur for a genuine `pi_{n-1}` and is reported
/// as an internal-consistency error.
pub fn pi_linear_step(prev: &IntPolynomial, n: usize) -> Result<IntPolynomial, CombinatoricsError> {
    assert!(n >= 1, "pi_linear_step needs n >= 1");
    let minus_d2 = IntPolynomial::monomial(BigInt::from(-1), 2);
    let d_cat = IntPolynomial::monomial(catalan(n - 1), 1);
    let numerator = &(&minus_d2 * prev) + &d_cat;
    let one_minus_d = IntPolynomial::from_i64_coeffs(&[1, -1]);
    let (quotient, remainder) = numerator.div_rem(&one_minus_d)?;
    if !remainder.is_zero() {
        return Err(CombinatoricsError::InexactDivision);
    }
    Ok(quotient)
}

/// `pi_n(d)` from the Catalan-triangle closed form
/// `pi_n = sum_{k=1..n} t[n-1][n-k] d^k` (and `pi_0 = 1`).
pub fn pi_closed_form(n: usize) -> IntPolynomial {
    if n == 0 {
        return IntPolynomial::one();
    }
    let row = catalan_triangle_row(n - 1);
    let mut coeffs = vec![BigInt::zero(); n + 1];
    for k in 1..=n {
        coeffs[k] = row[n - k].clone();
    }
    IntPolynomial::from_coeffs(coeffs)
}

/// `C_n(d) = sum over NC2(2n) of d^(#inner blocks)`, by enumeration.
pub fn c_poly(n: usize) -> Result<IntPolynomial, CombinatoricsError> {
    let mut counts = vec![BigInt::zero(); n + 1];
    for partition in enumerate_nc_pair_partitions(n)? {
        counts[partition.inner_count()] += 1;
    }
    Ok(IntPolynomial::from_coeffs(counts))
}

/// Coefficient reversal `rev(sum a_i d^i) = sum a_i d^(n-i)` relative to the
/// degree bound `n`.
pub fn rev(p: &IntPolynomial, n: usize) -> Result<IntPolynomial, CombinatoricsError> {
    p.reversed(n)
}

/// Generalized Catalan number
/// `a_n = (1/2)^n * (1 + sum_{k=0..n-1} c_k (-2)^k)` in exact rational
/// arithmetic. The result is always an integer (asserted), and satisfies
/// `pi_n(-1) = (-1)^n a_n`.
pub fn generalized_catalan_neg1(n: usize) -> BigRational {
    let mut sum = BigInt::one();
    let mut power = BigInt::one(); // (-2)^k
    for k in 0..n {
        sum += catalan(k) * &power;
        power *= BigInt::from(-2);
    }
    let value = BigRational::new(sum, BigInt::from(2).pow(n as u32));
    assert!(
        value.is_integer(),
        "generalized Catalan number a_{n} must reduce to an integer"
    );
    value
}
