//! Small-ball growth classification: the order-m ratio k^m P(|X - x| < 1/k)
//! stays bounded below exactly when x sits in the order-m mould of the law.
//! Scalar uniform at an interior point: member at order 1 (ratio -> 2),
//! non-member at order 0 (no atom); an atom dominates every order.
//!
//! Run: `cargo run --example mould_membership`

use singmin_lab::laws::{AtomMixture, UniformBox};
use singmin_lab::linalg::RVec;
use singmin_lab::moulds::{membership_verdict, mould_ratio_sequence};
use singmin_lab::rng::Seed;

fn show(
    label: &str,
    law: &dyn singmin_lab::laws::VectorLaw,
    x: &RVec,
    order: u32,
    threshold: f64,
) -> singmin_lab::Result<()> {
    let ks = [16, 32, 64, 128, 256];
    let seq = mould_ratio_sequence(law, x, order, &ks, 400_000, Seed(42), 2)?;
    let verdict = membership_verdict(&seq, threshold)?;
    println!("{label} (order {order}, threshold {threshold})");
    println!("  {:>5} {:>8} {:>12} {:>24}", "k", "count", "k^m * p", "ci");
    for e in &seq.entries {
        println!(
            "  {:>5} {:>8} {:>12.4} [{:>9.4}, {:>9.4}]",
            e.k, e.count, e.ratio, e.ci_lo, e.ci_hi
        );
    }
    println!("  verdict: {verdict}\n");
    Ok(())
}

fn main() -> singmin_lab::Result<()> {
    let line = UniformBox {
        dim: 1,
        lo: 0.0,
        hi: 1.0,
    };
    let mid = RVec::new(vec![0.5])?;
    show("uniform [0,1] at x=0.5", &line, &mid, 1, 0.5)?;
    show("uniform [0,1] at x=0.5", &line, &mid, 0, 0.5)?;

    let atom = RVec::new(vec![0.25, 0.75])?;
    let mixed = AtomMixture {
        atom: atom.clone(),
        weight: 0.2,
        background: UniformBox {
            dim: 2,
            lo: 0.0,
            hi: 1.0,
        },
    };
    show(
        "20% atom in the unit square, at the atom",
        &mixed,
        &atom,
        2,
        1.0,
    )?;

    let square = UniformBox {
        dim: 2,
        lo: 0.0,
        hi: 1.0,
    };
    let outside = RVec::new(vec![2.0, 2.0])?;
    show(
        "uniform square at an outside point",
        &square,
        &outside,
        2,
        0.1,
    )?;
    Ok(())
}
