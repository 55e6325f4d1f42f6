//! Monte Carlo layer: Wigner-matrix sampling, moments of `X = H_d W`, the
//! Schur-complement secular model, finite-size outlier localization, the
//! Jacobi continued-fraction resolvent and the permutation-similarity
//! determinant check.

pub mod eigen;
mod resolvent;
pub mod rng;
mod secular;

pub use resolvent::{jacobi_resolvent, permutation_similarity_check};
pub use secular::{
    build_secular, complex_outlier, eval_weyl_n, measure_moments, real_outliers,
    ComplexOutlierOutcome, RealOutliers, SecularModel,
};

use rayon::prelude::*;
use thiserror::Error;

use rng::TrialRng;

#[derive(Debug, Error, PartialEq)]
pub enum RandmatError {
    #[error("invalid ensemble configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Eigen(#[from] eigen::EigenError),
    #[error("secular weights sum {got} differs from ||b||^2 = {expected}")]
    WeightSumMismatch { got: f64, expected: f64 },
    #[error("z is within {0} of a secular pole")]
    PoleProximity(f64),
    #[error("parameter d must be {0}")]
    ParameterSign(&'static str),
    #[error("continued fraction hit a near-zero pivot even after depth reduction")]
    NearZeroPivot,
    #[error("all determinant sample points were singular")]
    AllPointsSkipped,
    #[error("position k = {k} outside 0..={n}")]
    PositionOutOfRange { k: usize, n: usize },
}

/// Entry law for the Wigner ensemble. All three are zero-mean with unit
/// variance, so they satisfy the finite-moment growth assumptions by
/// construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntryDistribution {
    Rademacher,
    Gaussian,
    Uniform,
}

impl EntryDistribution {
    pub fn draw(self, rng: &mut TrialRng) -> f64 {
        match self {
            EntryDistribution::Rademacher => rng.rademacher(),
            EntryDistribution::Gaussian => rng.gaussian(),
            EntryDistribution::Uniform => rng.uniform_unit_variance(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            EntryDistribution::Rademacher => "rademacher",
            EntryDistribution::Gaussian => "gaussian",
            EntryDistribution::Uniform => "uniform",
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        match text {
            "rademacher" => Some(EntryDistribution::Rademacher),
            "gaussian" => Some(EntryDistribution::Gaussian),
            "uniform" => Some(EntryDistribution::Uniform),
            _ => None,
        }
    }
}

/// One Monte Carlo ensemble: the matrix is `(size + 1) x (size + 1)` with
/// indices `0..=size`, `d` scales row zero, and `seed` is the master seed
/// from which per-trial streams are derived.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleConfig {
    pub size: usize,
    pub d: f64,
    pub dist: EntryDistribution,
    pub seed: u64,
}

impl EnsembleConfig {
    pub fn new(
        size: usize,
        d: f64,
        dist: EntryDistribution,
        seed: u64,
    ) -> Result<Self, RandmatError> {
        if size < 1 {
            return Err(RandmatError::InvalidConfig(
                "bulk size must be at least 1".into(),
            ));
        }
        if d == 0.0 || !d.is_finite() {
            return Err(RandmatError::InvalidConfig(
                "parameter d must be finite and nonzero".into(),
            ));
        }
        Ok(EnsembleConfig { size, d, dist, seed })
    }
}

/// A sampled Wigner matrix `W = [x_ij] / sqrt(N)`, stored dense with exact
/// symmetry (each independent entry is drawn once and mirrored).
#[derive(Debug, Clone)]
pub struct WignerSample {
    dim: usize,
    data: Vec<f64>,
}

impl WignerSample {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Bulk size `N` (the matrix is `(N + 1) x (N + 1)`).
    pub fn bulk_size(&self) -> usize {
        self.dim - 1
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    /// `y = W x` by dense row dot products.
    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        for (row, out) in self.data.chunks_exact(self.dim).zip(y.iter_mut()) {
            *out = row.iter().zip(x.iter()).map(|(a, b)| a * b).sum();
        }
    }
}

/// Draw the Wigner sample for one trial: entries `x_ij` for `i <= j` are
/// i.i.d. from `cfg.dist`, mirrored, and scaled by `1/sqrt(N)`. The result
/// is a pure function of `(cfg.seed, trial)`.
pub fn sample_wigner(cfg: &EnsembleConfig, trial: u64) -> WignerSample {
    let dim = cfg.size + 1;
    let scale = 1.0 / (cfg.size as f64).sqrt();
    let mut rng = TrialRng::new(cfg.seed, trial);
    let mut data = vec![0.0; dim * dim];
    for i in 0..dim {
        for j in i..dim {
            let x = cfg.dist.draw(&mut rng) * scale;
            data[i * dim + j] = x;
            data[j * dim + i] = x;
        }
    }
    WignerSample { dim, data }
}

/// `e_0^T (H_d W)^n e_0` by `n` successive matrix-vector products; applying
/// `H_d` scales coordinate zero by `d`. No matrix powers are materialized.
pub fn moment_e0(w: &WignerSample, d: f64, n: usize) -> f64 {
    moment_e0_prefix(w, d, n)[n]
}

/// All moments `e_0^T (H_d W)^k e_0` for `k = 0..=n_max` from a single
/// sweep of matrix-vector products.
pub fn moment_e0_prefix(w: &WignerSample, d: f64, n_max: usize) -> Vec<f64> {
    let dim = w.dim();
    let mut moments = Vec::with_capacity(n_max + 1);
    moments.push(1.0);
    let mut v = vec![0.0; dim];
    v[0] = 1.0;
    let mut y = vec![0.0; dim];
    for _ in 1..=n_max {
        w.matvec(&v, &mut y);
        y[0] *= d;
        std::mem::swap(&mut v, &mut y);
        moments.push(v[0]);
    }
    moments
}

/// Sample mean and standard error of `e_0^T X^n e_0` for each `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentRow {
    pub n: usize,
    pub mean: f64,
    pub std_error: f64,
}

/// Monte Carlo table of the first `n_max` moments over independent trials.
/// Trials run in parallel on per-trial derived seeds; aggregation follows
/// ascending trial order, so the output is deterministic.
pub fn monte_carlo_moments(cfg: &EnsembleConfig, n_max: usize, trials: u64) -> Vec<MomentRow> {
    assert!(n_max >= 1, "n_max must be at least 1");
    assert!(trials >= 2, "need at least two trials for a standard error");
    let per_trial: Vec<Vec<f64>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let w = sample_wigner(cfg, trial);
            moment_e0_prefix(&w, cfg.d, n_max)
        })
        .collect();
    (1..=n_max)
        .map(|n| {
            let values: Vec<f64> = per_trial.iter().map(|m| m[n]).collect();
            let count = values.len() as f64;
            let mean = values.iter().sum::<f64>() / count;
            let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (count - 1.0);
            MomentRow {
                n,
                mean,
                std_error: (var / count).sqrt(),
            }
        })
        .collect()
}
