//! Reference check against the classical limiting law for Gaussian square
//! matrices: n * sigma_min^2 converges to the distribution with CDF
//! 1 - exp(-x/2 - sqrt(x)). The Kolmogorov-Smirnov distance at n = 100 is
//! already small.
//!
//! Run: `cargo run --example limiting_law` (a minute or two; pass a smaller
//! sample count as the first argument to go faster)

use singmin_lab::ensembles::{EnsembleKind, EnsembleSpec};
use singmin_lab::linalg;
use singmin_lab::rng::Seed;
use singmin_lab::stats::ks_distance;

fn main() -> singmin_lab::Result<()> {
    let n_samples: u64 = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(4_000);
    let dim = 100usize;
    let spec = EnsembleSpec::new(EnsembleKind::GaussianIid, dim)?;

    let mut scaled = Vec::with_capacity(n_samples as usize);
    for i in 0..n_samples {
        let m = spec.sample_matrix(Seed(42), i);
        let s = linalg::sigma_min(&m)?;
        scaled.push(dim as f64 * s * s);
    }
    let cdf = |x: f64| {
        if x <= 0.0 {
            0.0
        } else {
            1.0 - (-x / 2.0 - x.sqrt()).exp()
        }
    };
    let ks = ks_distance(&scaled, cdf);

    println!("gaussian n={dim}, N={n_samples}: KS distance of n*sigma_min^2 = {ks:.4}");
    println!("\n  {:>6} {:>10} {:>10}", "x", "empirical", "limit");
    let mut sorted = scaled.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    for q in [0.1, 0.25, 0.5, 0.75, 0.9] {
        let x = sorted[(q * n_samples as f64) as usize];
        let emp = sorted.iter().filter(|&&v| v <= x).count() as f64 / n_samples as f64;
        println!("  {x:>6.3} {emp:>10.3} {:>10.3}", cdf(x));
    }
    Ok(())
}
