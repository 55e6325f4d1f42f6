//! Python extension module exposing the main types and operations of the
//! `gencat` crate: exact generalized Catalan combinatorics, the limit Weyl
//! function, and the Wigner-product Monte Carlo layer.
//!
//! Build with `cargo build --release -p gencat-python`; the resulting
//! `libgencat_py.so` imports as the module `gencat_py` (see
//! `python/smoke_test.py` at the workspace root).

use num_bigint::BigInt;
use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use gencat::combinatorics::{self, CombinatoricsError, DyckPath, IntPolynomial};
use gencat::randmat::{self, EnsembleConfig, EntryDistribution, RandmatError};
use gencat::weyl::{self, WeylError};

fn comb_err(e: CombinatoricsError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn weyl_err(e: WeylError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn randmat_err(e: RandmatError) -> PyErr {
    match e {
        RandmatError::InvalidConfig(_)
        | RandmatError::ParameterSign(_)
        | RandmatError::PositionOutOfRange { .. } => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn parse_dist(name: &str) -> PyResult<EntryDistribution> {
    EntryDistribution::parse(name)
        .ok_or_else(|| PyValueError::new_err(format!("unknown distribution `{name}`")))
}

fn poly_coeffs(p: &IntPolynomial) -> Vec<BigInt> {
    p.coeffs().to_vec()
}

/// n-th Catalan number.
#[pyfunction]
fn catalan(n: usize) -> BigInt {
    combinatorics::catalan(n)
}

/// Catalan triangle entry t[n][k] (ballot number).
#[pyfunction]
fn catalan_triangle(n: usize, k: usize) -> BigInt {
    combinatorics::catalan_triangle(n, k)
}

/// Coefficient list of pi_n(d), lowest power first.
/// Methods: "enum", "conv", "linear", "closed".
#[pyfunction]
#[pyo3(signature = (n, method = "closed"))]
fn pi_coeffs(n: usize, method: &str) -> PyResult<Vec<BigInt>> {
    let p = match method {
        "enum" => combinatorics::pi_enumerate(n).map_err(comb_err)?,
        "conv" => combinatorics::pi_convolution(n).pop().unwrap(),
        "linear" => {
            let mut pi = IntPolynomial::one();
            for step in 1..=n {
                pi = combinatorics::pi_linear_step(&pi, step).map_err(comb_err)?;
            }
            pi
        }
        "closed" => combinatorics::pi_closed_form(n),
        other => return Err(PyValueError::new_err(format!("unknown method `{other}`"))),
    };
    Ok(poly_coeffs(&p))
}

/// Exact evaluation of pi_n at an integer point.
#[pyfunction]
fn pi_eval(n: usize, d: BigInt) -> BigInt {
    combinatorics::pi_closed_form(n).eval(&d)
}

/// Generalized Catalan number a_n with pi_n(-1) = (-1)^n a_n.
#[pyfunction]
fn generalized_catalan_neg1(n: usize) -> BigInt {
    combinatorics::generalized_catalan_neg1(n).to_integer()
}

/// All Dyck paths of order n as strings over `+`/`-`.
#[pyfunction]
fn dyck_paths(n: usize) -> PyResult<Vec<String>> {
    Ok(combinatorics::enumerate_dyck_paths(n)
        .map_err(comb_err)?
        .map(|p| p.to_string())
        .collect())
}

/// Number of axis contacts of a Dyck path given as a `+`/`-` string.
#[pyfunction]
fn touch_count(path: &str) -> PyResult<usize> {
    let p = DyckPath::parse(path).map_err(comb_err)?;
    Ok(combinatorics::touch_count(&p))
}

/// All non-crossing pair partitions of {1, ..., 2n} as block lists.
#[pyfunction]
fn nc_pair_partitions(n: usize) -> PyResult<Vec<Vec<(usize, usize)>>> {
    Ok(combinatorics::enumerate_nc_pair_partitions(n)
        .map_err(comb_err)?
        .map(|p| p.blocks().to_vec())
        .collect())
}

/// Coefficient list of C_n(d) (inner-block statistic), lowest power first.
#[pyfunction]
fn c_poly_coeffs(n: usize) -> PyResult<Vec<BigInt>> {
    Ok(poly_coeffs(&combinatorics::c_poly(n).map_err(comb_err)?))
}

/// Branch of sqrt(z^2 - 4) analytic off [-2, 2], asymptotic to z.
#[pyfunction]
fn sqrt_branch(z: Complex64) -> PyResult<Complex64> {
    weyl::sqrt_branch(z).map_err(weyl_err)
}

/// Stieltjes transform of the semicircle measure.
#[pyfunction]
fn semicircle_stieltjes(z: Complex64) -> PyResult<Complex64> {
    weyl::semicircle_stieltjes(z).map_err(weyl_err)
}

/// Limit Weyl function Q_d(z).
#[pyfunction]
fn q_limit(d: f64, z: Complex64) -> PyResult<Complex64> {
    weyl::q_limit(d, z).map_err(weyl_err)
}

/// Catalan generating function F(z).
#[pyfunction]
fn catalan_gf(z: Complex64) -> PyResult<Complex64> {
    weyl::catalan_gf(z).map_err(weyl_err)
}

/// Generating function of the pi_n(d) sequence.
#[pyfunction]
fn pi_gf(d: f64, z: Complex64) -> PyResult<Complex64> {
    weyl::pi_gf(d, z).map_err(weyl_err)
}

/// Odd Laurent coefficients of -1/Q_d at infinity (k-th entry is the
/// coefficient of z^-(2k+1)).
#[pyfunction]
fn neg_inv_q_series(d: f64, terms: usize) -> Vec<f64> {
    weyl::neg_inv_q_series(d, terms)
}

/// Outlier roots of Q_d as (kind, values) with kind one of
/// "complex-pair", "none", "real-pair".
#[pyfunction]
fn limit_outliers(d: f64) -> PyResult<(String, Vec<Complex64>)> {
    let set = weyl::limit_outliers(d).map_err(weyl_err)?;
    Ok((set.kind().to_string(), set.values()))
}

/// Reciprocal Laurent series under the Cauchy product rule; returns
/// [alpha_-1, alpha_0, alpha_1, ...].
#[pyfunction]
fn invert_series(alpha_head: f64, gamma: Vec<f64>) -> PyResult<Vec<f64>> {
    weyl::invert_series(alpha_head, &gamma).map_err(weyl_err)
}

/// Depth-truncated continued fraction for the weighted (0,0) resolvent
/// entry of the Jacobi operator; converges to -1/Q_d(z).
#[pyfunction]
#[pyo3(signature = (d, z, depth = 400))]
fn jacobi_resolvent(d: f64, z: Complex64, depth: usize) -> PyResult<Complex64> {
    randmat::jacobi_resolvent(d, z, depth).map_err(randmat_err)
}

/// Monte Carlo moment table: rows (n, mean, std_error) for n = 1..=n_max.
#[pyfunction]
#[pyo3(signature = (size, d, dist = "rademacher", seed = 0, n_max = 6, trials = 10))]
fn monte_carlo_moments(
    size: usize,
    d: f64,
    dist: &str,
    seed: u64,
    n_max: usize,
    trials: u64,
) -> PyResult<Vec<(usize, f64, f64)>> {
    if n_max < 1 {
        return Err(PyValueError::new_err("n_max must be at least 1"));
    }
    if trials < 2 {
        return Err(PyValueError::new_err("need at least 2 trials"));
    }
    let cfg = EnsembleConfig::new(size, d, parse_dist(dist)?, seed).map_err(randmat_err)?;
    Ok(randmat::monte_carlo_moments(&cfg, n_max, trials)
        .into_iter()
        .map(|row| (row.n, row.mean, row.std_error))
        .collect())
}

/// One sampled Wigner matrix W = [x_ij] / sqrt(N).
#[pyclass]
struct WignerSample {
    inner: randmat::WignerSample,
}

#[pymethods]
impl WignerSample {
    /// Draw the sample for (seed, trial); deterministic.
    #[new]
    #[pyo3(signature = (size, dist = "rademacher", seed = 0, trial = 0))]
    fn new(size: usize, dist: &str, seed: u64, trial: u64) -> PyResult<Self> {
        let cfg = EnsembleConfig::new(size, 1.0, parse_dist(dist)?, seed).map_err(randmat_err)?;
        Ok(WignerSample {
            inner: randmat::sample_wigner(&cfg, trial),
        })
    }

    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn entry(&self, i: usize, j: usize) -> PyResult<f64> {
        if i >= self.inner.dim() || j >= self.inner.dim() {
            return Err(PyValueError::new_err("index out of range"));
        }
        Ok(self.inner.entry(i, j))
    }

    /// e_0^T (H_d W)^n e_0.
    fn moment_e0(&self, d: f64, n: usize) -> f64 {
        randmat::moment_e0(&self.inner, d, n)
    }

    /// All moments up to n_max from one sweep.
    fn moments(&self, d: f64, n_max: usize) -> Vec<f64> {
        randmat::moment_e0_prefix(&self.inner, d, n_max)
    }

    /// Determinant identity check for the scaled entry at position k.
    fn permutation_similarity(&self, d: f64, k: usize, zs: Vec<Complex64>) -> PyResult<bool> {
        randmat::permutation_similarity_check(&self.inner, d, k, &zs).map_err(randmat_err)
    }

    /// Schur-complement secular model of this sample.
    fn secular(&self) -> PyResult<SecularModel> {
        Ok(SecularModel {
            inner: randmat::build_secular(&self.inner).map_err(randmat_err)?,
        })
    }
}

/// Secular model (a, lambdas, weights) with Q(z) = z/d - a + sum w/(l - z).
#[pyclass]
struct SecularModel {
    inner: randmat::SecularModel,
}

#[pymethods]
impl SecularModel {
    /// Assemble a synthetic model from parts.
    #[new]
    fn new(a: f64, lambdas: Vec<f64>, weights: Vec<f64>) -> PyResult<Self> {
        Ok(SecularModel {
            inner: randmat::SecularModel::from_parts(a, lambdas, weights).map_err(randmat_err)?,
        })
    }

    #[getter]
    fn a(&self) -> f64 {
        self.inner.corner()
    }

    fn lambdas(&self) -> Vec<f64> {
        self.inner.lambdas().to_vec()
    }

    fn weights(&self) -> Vec<f64> {
        self.inner.weights().to_vec()
    }

    fn eval_weyl(&self, d: f64, z: Complex64) -> PyResult<Complex64> {
        randmat::eval_weyl_n(&self.inner, d, z).map_err(randmat_err)
    }

    fn measure_moment(&self, n: usize) -> f64 {
        randmat::measure_moments(&self.inner, n)
    }

    /// (lower, upper) real outlier roots for d > 0; None when merged into
    /// the bulk.
    fn real_outliers(&self, d: f64) -> PyResult<(Option<f64>, Option<f64>)> {
        let roots = randmat::real_outliers(&self.inner, d).map_err(randmat_err)?;
        Ok((roots.lower, roots.upper))
    }

    /// Upper-half-plane outlier root for d < 0, or None.
    fn complex_outlier(&self, d: f64) -> PyResult<Option<Complex64>> {
        Ok(randmat::complex_outlier(&self.inner, d)
            .map_err(randmat_err)?
            .root())
    }
}

#[pymodule]
fn gencat_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(catalan, m)?)?;
    m.add_function(wrap_pyfunction!(catalan_triangle, m)?)?;
    m.add_function(wrap_pyfunction!(pi_coeffs, m)?)?;
    m.add_function(wrap_pyfunction!(pi_eval, m)?)?;
    m.add_function(wrap_pyfunction!(generalized_catalan_neg1, m)?)?;
    m.add_function(wrap_pyfunction!(dyck_paths, m)?)?;
    m.add_function(wrap_pyfunction!(touch_count, m)?)?;
    m.add_function(wrap_pyfunction!(nc_pair_partitions, m)?)?;
    m.add_function(wrap_pyfunction!(c_poly_coeffs, m)?)?;
    m.add_function(wrap_pyfunction!(sqrt_branch, m)?)?;
    m.add_function(wrap_pyfunction!(semicircle_stieltjes, m)?)?;
    m.add_function(wrap_pyfunction!(q_limit, m)?)?;
    m.add_function(wrap_pyfunction!(catalan_gf, m)?)?;
    m.add_function(wrap_pyfunction!(pi_gf, m)?)?;
    m.add_function(wrap_pyfunction!(neg_inv_q_series, m)?)?;
    m.add_function(wrap_pyfunction!(limit_outliers, m)?)?;
    m.add_function(wrap_pyfunction!(invert_series, m)?)?;
    m.add_function(wrap_pyfunction!(jacobi_resolvent, m)?)?;
    m.add_function(wrap_pyfunction!(monte_carlo_moments, m)?)?;
    m.add_class::<WignerSample>()?;
    m.add_class::<SecularModel>()?;
    Ok(())
}
