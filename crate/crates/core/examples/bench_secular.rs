use std::time::Instant;

use gencat::randmat::{build_secular, real_outliers, sample_wigner, EnsembleConfig, EntryDistribution};

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2000);
    let cfg = EnsembleConfig::new(n, 3.0, EntryDistribution::Gaussian, 1).unwrap();
    let t0 = Instant::now();
    let w = sample_wigner(&cfg, 0);
    let t_sample = t0.elapsed();
    let t1 = Instant::now();
    let m = build_secular(&w).unwrap();
    let t_secular = t1.elapsed();
    let t2 = Instant::now();
    let roots = real_outliers(&m, 3.0).unwrap();
    let t_roots = t2.elapsed();
    println!(
        "n={n} sample={:?} secular={:?} roots={:?} upper={:?} lower={:?}",
        t_sample, t_secular, t_roots, roots.upper, roots.lower
    );
}
