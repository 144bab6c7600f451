//! Mould membership turns into divergent reciprocal moments: when x sits in
//! the order-m mould of X, E[1/|X - x|^m] is infinite. At the center of the
//! unit square the order-2 running mean grows logarithmically forever while
//! the order-1 mean converges. The scaled-survival check shows the same
//! dichotomy on raw positive samples.
//!
//! Run: `cargo run --example reciprocal_moments`

use singmin_lab::laws::{UniformBox, VectorLaw};
use singmin_lab::linalg::RVec;
use singmin_lab::moulds::{expectation_lemma_check, reciprocal_moment_divergence};
use singmin_lab::rng::Seed;

fn main() -> singmin_lab::Result<()> {
    let square = UniformBox {
        dim: 2,
        lo: 0.0,
        hi: 1.0,
    };
    let center = RVec::new(vec![0.5, 0.5])?;
    let schedule = [10_000, 100_000, 1_000_000];

    for order in [1, 2] {
        let rep =
            reciprocal_moment_divergence(&square, &center, order, &schedule, 1.5, Seed(42), 2)?;
        println!("E[1/|X - center|^{order}], uniform unit square:");
        for &(n, mean) in &rep.checkpoints {
            println!("  N={n:>9}  running mean {mean:.4}");
        }
        println!(
            "  growth x{:.3} -> divergence evidence: {}\n",
            rep.growth, rep.divergence_evidence
        );
    }

    // Scaled-survival view on W = 1/U: t(1 - F(t)) = 1 for t >= 1.
    let line = UniformBox {
        dim: 1,
        lo: 0.0,
        hi: 1.0,
    };
    let samples: Vec<f64> = (0..200_000)
        .map(|i| 1.0 / line.sample(Seed(42), i).get(0).max(1e-300))
        .collect();
    let ts: Vec<f64> = (0..=10).map(|j| 2f64.powi(j)).collect();
    let rep = expectation_lemma_check(&samples, &ts, 0.5)?;
    println!("W = 1/U scaled survival t * (1 - F(t)):");
    for e in rep.entries.iter().skip(5) {
        println!(
            "  t={:>6.0}  {:.4} [{:.4}, {:.4}]",
            e.t, e.value, e.ci_lo, e.ci_hi
        );
    }
    println!(
        "  tail bounded below: {}, mean grows: {} -> divergence flag: {}",
        rep.tail_bounded_below, rep.mean_grows, rep.divergence_flag
    );
    Ok(())
}
