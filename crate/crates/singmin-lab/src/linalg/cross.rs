//! Generalized cross product of n-1 vectors in R^n and its normalization.

use super::lu::LuFactors;
use super::mat::{Mat, RVec};
use crate::error::{Error, Result};

/// Relative floor under which the cross product counts as degenerate.
const DEGENERACY_TOL: f64 = 1e-12;

/// Generalized cross product of the `n-1` rows of an `(n-1) x n` stack.
///
/// Component `i` (1-based) is `(-1)^(i+1)` times the determinant of the
/// minor with column `i` deleted, i.e. the cofactor expansion along a formal
/// basis-vector row placed on top of the stack. The result is orthogonal to
/// every input row and vanishes exactly when the rows are dependent.
pub fn cross_product(rows: &Mat) -> Result<RVec> {
    let n = rows.cols();
    if n < 2 || rows.rows() != n - 1 {
        return Err(Error::dim(
            "cross_product",
            format!(
                "expected an (n-1) x n stack with n >= 2, got {}x{}",
                rows.rows(),
                rows.cols()
            ),
        ));
    }
    let mut out = Vec::with_capacity(n);
    let mut minor = vec![0.0; (n - 1) * (n - 1)];
    for dropped in 0..n {
        for r in 0..n - 1 {
            let row = rows.row(r);
            let mut c = 0;
            for (j, &v) in row.iter().enumerate() {
                if j != dropped {
                    minor[r * (n - 1) + c] = v;
                    c += 1;
                }
            }
        }
        let det = if n == 2 {
            minor[0]
        } else {
            LuFactors::new(&Mat::from_raw(n - 1, n - 1, minor.clone())).det()
        };
        let sign = if dropped % 2 == 0 { 1.0 } else { -1.0 };
        out.push(sign * det);
    }
    RVec::new(out)
}

/// Cross product normalized to unit infinity norm.
///
/// The degeneracy gate compares the cross product against the product of the
/// row norms (the Hadamard bound on its magnitude), so the test is scale
/// invariant.
pub fn y_vector(rows: &Mat) -> Result<RVec> {
    let wedge = cross_product(rows)?;
    let scale: f64 = (0..rows.rows())
        .map(|i| rows.row(i).iter().map(|v| v * v).sum::<f64>().sqrt())
        .product();
    let max = wedge.norm_inf();
    if max <= DEGENERACY_TOL * scale {
        return Err(Error::DegenerateRows);
    }
    // Dividing by the max-magnitude entry maps it to exactly +/-1.
    Ok(RVec::from_raw(
        wedge.as_slice().iter().map(|v| v / max).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn stack(rows: usize, cols: usize, data: &[f64]) -> Mat {
        Mat::new(rows, cols, data.to_vec()).unwrap()
    }

    #[test]
    fn two_dimensional_perp() {
        let w = cross_product(&stack(1, 2, &[3.0, 4.0])).unwrap();
        assert_eq!(w.as_slice(), &[4.0, -3.0]);
    }

    #[test]
    fn canonical_basis_gives_e3() {
        let w = cross_product(&stack(2, 3, &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0])).unwrap();
        assert_eq!(w.as_slice(), &[0.0, 0.0, 1.0]);
    }

    #[test]
    fn matches_r3_cross_product() {
        let w = cross_product(&stack(2, 3, &[1.0, 2.0, 3.0, -4.0, 0.5, 2.0])).unwrap();
        // (1,2,3) x (-4,0.5,2) = (2*2-3*0.5, 3*(-4)-1*2, 1*0.5-2*(-4))
        assert_relative_eq!(w.get(0), 2.5, max_relative = 1e-14);
        assert_relative_eq!(w.get(1), -14.0, max_relative = 1e-14);
        assert_relative_eq!(w.get(2), 8.5, max_relative = 1e-14);
    }

    #[test]
    fn proportional_rows_vanish() {
        let w = cross_product(&stack(2, 3, &[1.0, 2.0, 3.0, 2.0, 4.0, 6.0])).unwrap();
        let scale = 14.0; // product of row norm squares order of magnitude
        assert!(w.norm_inf() <= 1e-12 * scale);
    }

    #[test]
    fn wrong_shape_rejected() {
        assert!(cross_product(&stack(2, 2, &[1.0; 4])).is_err());
        assert!(cross_product(&stack(1, 3, &[1.0; 3])).is_err());
    }

    #[test]
    fn y_vector_examples() {
        let y = y_vector(&stack(1, 2, &[3.0, 4.0])).unwrap();
        assert_eq!(y.as_slice(), &[1.0, -0.75]);
        let y = y_vector(&stack(2, 3, &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0])).unwrap();
        assert_eq!(y.as_slice(), &[0.0, 0.0, 1.0]);
    }

    #[test]
    fn y_vector_degenerate_rows() {
        let r = y_vector(&stack(2, 3, &[1.0, 1.0, 0.0, 1.0, 1.0, 0.0]));
        assert!(matches!(r, Err(Error::DegenerateRows)));
    }

    #[test]
    fn y_vector_unit_inf_norm() {
        let y = y_vector(&stack(2, 3, &[0.3, -1.2, 2.0, 0.9, 0.1, -0.4])).unwrap();
        assert_eq!(y.norm_inf(), 1.0);
        assert!(y.norm_l2() >= 1.0);
    }
}
