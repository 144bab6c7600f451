//! For i.i.d. rows and a fixed direction y, the chance that one row lands in
//! a slab equals the (n-1)-th root of the chance that n-1 rows all do. Both
//! sides are estimated from disjoint streams and compared at 4 sigma.
//!
//! Run: `cargo run --example power_identity`

use singmin_lab::ensembles::{EnsembleKind, EnsembleSpec};
use singmin_lab::linalg::RVec;
use singmin_lab::rng::Seed;
use singmin_lab::theorems::power_identity_check;

fn main() -> singmin_lab::Result<()> {
    let spec = EnsembleSpec::new(EnsembleKind::GaussianIid, 3)?;
    let y = RVec::basis(3, 0);
    for eps in [0.02, 0.05, 0.2] {
        let rep = power_identity_check(&spec, &y, eps, 400_000, Seed(42), 2)?;
        println!("gaussian n=3, y=e1, eps={eps}");
        println!(
            "  single-row side  P(|X.y| < eps)      = {:.6}",
            rep.p_single
        );
        println!(
            "  joint side       P(both rows in slab) = {:.6}",
            rep.p_joint
        );
        println!(
            "  single^2                              = {:.6}",
            rep.p_single_power
        );
        println!(
            "  |diff| = {:.2e} vs 4-sigma tolerance {:.2e} -> {}\n",
            rep.diff,
            rep.tolerance,
            if rep.pass { "agree" } else { "DISAGREE" }
        );
    }
    Ok(())
}
