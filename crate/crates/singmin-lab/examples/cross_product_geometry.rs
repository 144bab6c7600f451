//! The generalized cross product of n-1 rows: orthogonal to every row,
//! zero exactly on dependent rows, and after unit-infinity normalization it
//! gives the Y direction along which a matrix-vector product collapses to a
//! single scalar row dot.
//!
//! Run: `cargo run --example cross_product_geometry`

use singmin_lab::ensembles::{EnsembleKind, EnsembleSpec};
use singmin_lab::linalg::{cross_product, y_vector, Mat, RVec};
use singmin_lab::rng::Seed;

fn main() -> singmin_lab::Result<()> {
    // Hand-checkable cases.
    let perp = cross_product(&Mat::new(1, 2, vec![3.0, 4.0])?)?;
    println!("n=2: row (3,4)            -> {:?}", perp.as_slice());
    let e3 = cross_product(&Mat::new(2, 3, vec![1.0, 0.0, 0.0, 0.0, 1.0, 0.0])?)?;
    println!("n=3: rows e1, e2          -> {:?}", e3.as_slice());
    let y = y_vector(&Mat::new(1, 2, vec![3.0, 4.0])?)?;
    println!(
        "n=2: Y of row (3,4)       -> {:?} (|Y|_inf = 1)",
        y.as_slice()
    );
    let dependent = cross_product(&Mat::new(2, 3, vec![1.0, 2.0, 3.0, 2.0, 4.0, 6.0])?)?;
    println!("n=3: proportional rows    -> {:?}", dependent.as_slice());

    // Orthogonality residuals across dimensions.
    println!("\nmax |X_j . wedge| / (|X_j| |wedge|) over 200 gaussian stacks:");
    for n in 2..=8usize {
        let spec = EnsembleSpec::new(EnsembleKind::GaussianIid, n)?;
        let mut worst: f64 = 0.0;
        for index in 0..200u64 {
            let rows: Vec<RVec> = (0..n as u64 - 1)
                .map(|j| spec.sample_row(Seed(7), index, j).expect("in range"))
                .collect();
            let stack = Mat::from_rows(&rows)?;
            let wedge = cross_product(&stack)?;
            for row in &rows {
                let resid = row.dot(&wedge).abs() / (row.norm_l2() * wedge.norm_l2());
                worst = worst.max(resid);
            }
        }
        println!("  n={n}: {worst:.2e}");
    }
    Ok(())
}
