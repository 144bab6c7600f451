//! Pushing a law through a dilation (a map that cannot shrink distances by
//! more than the factor c) transports small-ball lower bounds: the event
//! `|d(X) - d(x)| < c eps` is contained in `|X - x| < eps`. For a law on
//! the diagonal segment of R^3, projecting to the first coordinate is a
//! dilation with c = 1/sqrt(3), which certifies order-1 mould membership in
//! the ambient space.
//!
//! Run: `cargo run --example dilation_check`

use singmin_lab::laws::DiagonalSegment;
use singmin_lab::linalg::RVec;
use singmin_lab::moulds::dilation_pushforward_check;
use singmin_lab::rng::Seed;

fn main() -> singmin_lab::Result<()> {
    let law = DiagonalSegment { dim: 3 };
    let x = RVec::new(vec![0.5, 0.5, 0.5])?;
    let project = |v: &RVec| RVec::new(vec![v.get(0)]).expect("finite");

    let c_valid = 1.0 / 3f64.sqrt();
    let rep = dilation_pushforward_check(&law, &project, c_valid, &x, 100_000, Seed(42), 2)?;
    println!("projection to coordinate 1, c = 1/sqrt(3):");
    println!(
        "  checked {} draws, violations: {}",
        rep.checked, rep.violations
    );
    println!("  order-1 ratios at the segment midpoint (bounded below):");
    for e in rep.ratio_seq.entries.iter().rev().take(3) {
        println!(
            "    k={:>4}  ratio {:.4} [{:.4}, {:.4}]",
            e.k, e.ratio, e.ci_lo, e.ci_hi
        );
    }

    // Contract falsification: an overstated c must produce violations.
    let rep = dilation_pushforward_check(&law, &project, 1.0, &x, 10_000, Seed(42), 2)?;
    println!("\nsame map with the false claim c = 1:");
    println!(
        "  violations: {} (expected: all draws violate)",
        rep.violations
    );
    if let Some((idx, dx, dd)) = rep.violating_samples.first() {
        println!("  first: draw {idx}: |X-x| = {dx:.4} but |d(X)-d(x)| = {dd:.4}");
    }
    Ok(())
}
