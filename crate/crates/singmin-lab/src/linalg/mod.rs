//! Exact small-dense linear algebra: determinants, singular values, p-norms,
//! condition numbers, the generalized cross product, and its unit-infinity
//! normalization.
//!
//! Everything here is a pure function of its inputs; values are freely
//! shareable across threads.

mod cross;
mod jacobi;
mod lu;
mod mat;

pub use cross::{cross_product, y_vector};
pub use jacobi::{sigma_max, sigma_min, svd_values, JACOBI_MAX_N};
pub use mat::{Mat, RVec, SvdValues};

pub(crate) use jacobi::jacobi_singular_values;
pub(crate) use lu::LuFactors;

use crate::error::{Error, Result};

/// Operator norm selector. The three norms with closed evaluation rules:
/// max column sum, spectral norm, max row sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PNorm {
    One,
    Two,
    Inf,
}

impl PNorm {
    pub fn label(self) -> &'static str {
        match self {
            PNorm::One => "1",
            PNorm::Two => "2",
            PNorm::Inf => "inf",
        }
    }
}

impl std::fmt::Display for PNorm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Determinant via partially pivoted LU with the swap sign tracked exactly.
pub fn det(a: &Mat) -> Result<f64> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    Ok(LuFactors::new(a).det())
}

/// Operator p-norm for p in {1, 2, inf}.
pub fn op_norm(a: &Mat, p: PNorm) -> Result<f64> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    match p {
        PNorm::One => Ok(a.col_sum_norm()),
        PNorm::Inf => Ok(a.row_sum_norm()),
        PNorm::Two => sigma_max(a),
    }
}

/// Numerical invertibility gate: `sigma_min > n * 2^-52 * sigma_max`.
fn invertibility_gate(a: &Mat) -> Result<Option<(f64, f64)>> {
    let n = a.rows();
    let (lo, hi) = if n <= JACOBI_MAX_N {
        let sv = jacobi_singular_values(a);
        (sv.sigma_min(), sv.sigma_max())
    } else {
        (sigma_min(a)?, sigma_max(a)?)
    };
    if lo > (n as f64) * f64::EPSILON * hi {
        Ok(Some((lo, hi)))
    } else {
        Ok(None)
    }
}

/// Matrix inverse behind the invertibility gate.
pub fn inverse(a: &Mat) -> Result<Mat> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if invertibility_gate(a)?.is_none() {
        return Err(Error::SingularMatrix);
    }
    inverse_gated(a).ok_or(Error::SingularMatrix)
}

/// LU inversion; the caller has already passed the invertibility gate.
/// `None` when the inverse overflows f64 (subnormal-scale input), which is
/// singularity for working purposes.
fn inverse_gated(a: &Mat) -> Option<Mat> {
    let n = a.rows();
    let lu = LuFactors::new(a);
    let mut data = vec![0.0; n * n];
    let mut e = vec![0.0; n];
    for j in 0..n {
        e[j] = 1.0;
        let col = lu.solve(&e);
        e[j] = 0.0;
        for (i, v) in col.into_iter().enumerate() {
            if !v.is_finite() {
                return None;
            }
            data[i * n + j] = v;
        }
    }
    Some(Mat::from_raw(n, n, data))
}

/// Condition number in the chosen norm; `+inf` for gate failures, by
/// definition rather than as an error.
pub fn condition_number(a: &Mat, p: PNorm) -> Result<f64> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let Some((sig_min, sig_max)) = invertibility_gate(a)? else {
        return Ok(f64::INFINITY);
    };
    match p {
        PNorm::Two => Ok(sig_max / sig_min),
        _ => match inverse_gated(a) {
            Some(inv) => Ok(op_norm(a, p)? * op_norm(&inv, p)?),
            None => Ok(f64::INFINITY),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn mat(n: usize, data: &[f64]) -> Mat {
        Mat::new(n, n, data.to_vec()).unwrap()
    }

    #[test]
    fn det_examples() {
        assert_eq!(det(&Mat::identity(3)).unwrap(), 1.0);
        assert_relative_eq!(det(&mat(2, &[3.0, 4.0, 4.0, 3.0])).unwrap(), -7.0);
        let dependent = mat(2, &[2.0, 5.0, 2.0, 5.0]);
        assert!(det(&dependent).unwrap().abs() <= 1e-12 * 10.0);
    }

    #[test]
    fn op_norm_examples() {
        let shear = mat(2, &[1.0, 1.0, 0.0, 1.0]);
        assert_eq!(op_norm(&Mat::identity(3), PNorm::One).unwrap(), 1.0);
        assert_eq!(op_norm(&Mat::identity(3), PNorm::Inf).unwrap(), 1.0);
        assert_eq!(op_norm(&Mat::identity(3), PNorm::Two).unwrap(), 1.0);
        assert_eq!(op_norm(&shear, PNorm::Inf).unwrap(), 2.0);
        assert_eq!(op_norm(&shear, PNorm::One).unwrap(), 2.0);
        assert_relative_eq!(
            op_norm(&shear, PNorm::Two).unwrap(),
            1.618033988749895,
            max_relative = 1e-12
        );
    }

    #[test]
    fn inverse_examples() {
        let inv = inverse(&Mat::identity(3)).unwrap();
        assert_eq!(inv, Mat::identity(3));

        let shear = mat(2, &[1.0, 1.0, 0.0, 1.0]);
        let inv = inverse(&shear).unwrap();
        assert_relative_eq!(inv.get(0, 0), 1.0, max_relative = 1e-14);
        assert_relative_eq!(inv.get(0, 1), -1.0, max_relative = 1e-14);
        assert_relative_eq!(inv.get(1, 0), 0.0, epsilon = 1e-14);
        assert_relative_eq!(inv.get(1, 1), 1.0, max_relative = 1e-14);

        let singular = mat(2, &[1.0, 1.0, 1.0, 1.0]);
        assert!(matches!(inverse(&singular), Err(Error::SingularMatrix)));
    }

    #[test]
    fn condition_number_examples() {
        for p in [PNorm::One, PNorm::Two, PNorm::Inf] {
            assert_eq!(condition_number(&Mat::identity(4), p).unwrap(), 1.0);
            let singular = mat(2, &[1.0, 1.0, 1.0, 1.0]);
            assert_eq!(condition_number(&singular, p).unwrap(), f64::INFINITY);
        }
        let shear = mat(2, &[1.0, 1.0, 0.0, 1.0]);
        assert_relative_eq!(condition_number(&shear, PNorm::Inf).unwrap(), 4.0);
        assert_relative_eq!(
            condition_number(&shear, PNorm::Two).unwrap(),
            2.618033988749895,
            max_relative = 1e-12
        );
    }

    #[test]
    fn sigma_min_duality() {
        let a = mat(3, &[2.0, -1.0, 0.5, 0.3, 1.5, -0.7, -0.2, 0.9, 1.1]);
        let s = sigma_min(&a).unwrap();
        let inv = inverse(&a).unwrap();
        let dual = 1.0 / op_norm(&inv, PNorm::Two).unwrap();
        assert_relative_eq!(s, dual, max_relative = 1e-9);
    }
}
