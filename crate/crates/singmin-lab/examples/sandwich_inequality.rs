//! The per-sample sandwich behind the lower bound: with Y the cross product
//! of the first n-1 rows normalized to unit infinity norm, |Y|_2 >= 1 makes
//! `sigma_min <= |X_n . Y|` a deterministic inequality, and small-ball mass
//! of the scalar |X_n . Y| transfers to sigma_min.
//!
//! Run: `cargo run --example sandwich_inequality`

use singmin_lab::ensembles::{EnsembleKind, EnsembleSpec};
use singmin_lab::rng::Seed;
use singmin_lab::theorems::sandwich_check;

fn main() -> singmin_lab::Result<()> {
    let grid = [1e-3, 3e-3, 1e-2, 3e-2, 1e-1];
    for (kind, n) in [(EnsembleKind::GaussianIid, 3), (EnsembleKind::SphereRow, 4)] {
        let spec = EnsembleSpec::new(kind, n)?;
        let rep = sandwich_check(&spec, &grid, 50_000, Seed(42), 2)?;
        println!("{} n={n}, N={}", spec.kind().label(), rep.n);
        println!(
            "  per-sample violations of sigma_min <= |X_n . Y| + 1e-10*scale: {}",
            rep.violations
        );
        println!(
            "  {:>9} {:>16} {:>16}",
            "eps", "P(sigma_min<eps)", "P(|X_n.Y|<eps)"
        );
        for (i, &eps) in rep.eps_grid.iter().enumerate() {
            println!(
                "  {eps:>9.1e} {:>16.5e} {:>16.5e}",
                rep.count_sigma[i] as f64 / rep.n as f64,
                rep.count_dot[i] as f64 / rep.n as f64,
            );
        }
        println!();
    }
    Ok(())
}
