//! Deterministic per-trial random streams.
//!
//! Each trial gets its own ChaCha8 stream keyed by a 64-bit mix of the
//! master seed and the trial index, so trials are independent and can be
//! evaluated in any order (or in parallel) with identical results.

use rand_chacha::rand_core::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// SplitMix64 finalizer; a full-avalanche 64-bit mixing function.
fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

/// Derive the stream seed for one trial from the master seed.
pub fn trial_seed(master_seed: u64, trial: u64) -> u64 {
    splitmix64(master_seed.wrapping_add(splitmix64(trial)))
}

pub struct TrialRng {
    inner: ChaCha8Rng,
}

impl TrialRng {
    pub fn new(master_seed: u64, trial: u64) -> Self {
        TrialRng {
            inner: ChaCha8Rng::seed_from_u64(trial_seed(master_seed, trial)),
        }
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.inner.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[-sqrt(3), sqrt(3))`: zero mean, unit variance.
    pub fn uniform_unit_variance(&mut self) -> f64 {
        let half_width = 3f64.sqrt();
        (2.0 * self.uniform() - 1.0) * half_width
    }

    /// `+1` or `-1` with equal probability.
    pub fn rademacher(&mut self) -> f64 {
        if self.inner.next_u64() & 1 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Standard normal via Box-Muller (cosine half; the sine partner is
    /// discarded to keep the draw count per entry fixed).
    pub fn gaussian(&mut self) -> f64 {
        let u1 = 1.0 - self.uniform(); // (0, 1]
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }
}
