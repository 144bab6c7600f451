//! LU factorization with partial pivoting: determinants, solves, inversion.

use super::mat::Mat;

/// Packed LU factors of a square matrix with partial pivoting.
///
/// Logically `L * U = P * A` where row `i` of `P * A` is row `perm[i]` of `A`.
/// A zero pivot marks the matrix as exactly singular; solves are only valid
/// for non-singular factorizations.
pub(crate) struct LuFactors {
    n: usize,
    lu: Vec<f64>,
    perm: Vec<usize>,
    sign: f64,
    singular: bool,
}

impl LuFactors {
    pub fn new(a: &Mat) -> Self {
        assert!(a.is_square());
        let n = a.rows();
        let mut lu = a.as_slice().to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        let mut singular = false;

        for k in 0..n {
            // Pivot: largest absolute value in column k at or below the diagonal.
            let mut p = k;
            let mut best = lu[k * n + k].abs();
            for i in (k + 1)..n {
                let v = lu[i * n + k].abs();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if best == 0.0 {
                singular = true;
                continue;
            }
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let pivot = lu[k * n + k];
            for i in (k + 1)..n {
                let m = lu[i * n + k] / pivot;
                lu[i * n + k] = m;
                for j in (k + 1)..n {
                    lu[i * n + j] -= m * lu[k * n + j];
                }
            }
        }

        LuFactors {
            n,
            lu,
            perm,
            sign,
            singular,
        }
    }

    pub fn is_singular(&self) -> bool {
        self.singular
    }

    /// Determinant with the pivoting sign tracked exactly.
    pub fn det(&self) -> f64 {
        if self.singular {
            return 0.0;
        }
        let mut d = self.sign;
        for k in 0..self.n {
            d *= self.lu[k * self.n + k];
        }
        d
    }

    /// Solve `A x = b`.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        debug_assert!(!self.singular);
        let n = self.n;
        // Forward: L y = P b (L has unit diagonal).
        let mut x: Vec<f64> = (0..n).map(|i| b[self.perm[i]]).collect();
        for i in 1..n {
            let mut s = x[i];
            for j in 0..i {
                s -= self.lu[i * n + j] * x[j];
            }
            x[i] = s;
        }
        // Backward: U x = y.
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in (i + 1)..n {
                s -= self.lu[i * n + j] * x[j];
            }
            x[i] = s / self.lu[i * n + i];
        }
        x
    }

    /// Solve `A^T x = b` using the same factors: `A^T = U^T L^T P`.
    pub fn solve_transpose(&self, b: &[f64]) -> Vec<f64> {
        debug_assert!(!self.singular);
        let n = self.n;
        // Forward: U^T z = b (U^T is lower triangular with U's diagonal).
        let mut z = b.to_vec();
        for i in 0..n {
            let mut s = z[i];
            for j in 0..i {
                s -= self.lu[j * n + i] * z[j];
            }
            z[i] = s / self.lu[i * n + i];
        }
        // Backward: L^T w = z (unit diagonal).
        for i in (0..n).rev() {
            let mut s = z[i];
            for j in (i + 1)..n {
                s -= self.lu[j * n + i] * z[j];
            }
            z[i] = s;
        }
        // P x = w  =>  x[perm[i]] = w[i].
        let mut x = vec![0.0; n];
        for i in 0..n {
            x[self.perm[i]] = z[i];
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn mat(rows: usize, cols: usize, data: &[f64]) -> Mat {
        Mat::new(rows, cols, data.to_vec()).unwrap()
    }

    #[test]
    fn det_2x2_by_hand() {
        let a = mat(2, 2, &[3.0, 4.0, 4.0, 3.0]);
        assert_relative_eq!(LuFactors::new(&a).det(), -7.0, max_relative = 1e-14);
    }

    #[test]
    fn det_identity() {
        assert_eq!(LuFactors::new(&Mat::identity(3)).det(), 1.0);
    }

    #[test]
    fn det_equal_rows_is_zero() {
        let a = mat(3, 3, &[1.0, 2.0, 3.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        assert!(LuFactors::new(&a).det().abs() <= 1e-12 * 6.0);
    }

    #[test]
    fn solve_and_solve_transpose() {
        let a = mat(3, 3, &[2.0, 1.0, -1.0, -3.0, -1.0, 2.0, -2.0, 1.0, 2.0]);
        let lu = LuFactors::new(&a);
        let x_true = [1.0, -2.0, 3.0];
        let b = a.matvec(&x_true);
        let x = lu.solve(&b);
        for (xi, ti) in x.iter().zip(&x_true) {
            assert_relative_eq!(xi, ti, max_relative = 1e-12);
        }
        let bt = a.matvec_transpose(&x_true);
        let xt = lu.solve_transpose(&bt);
        for (xi, ti) in xt.iter().zip(&x_true) {
            assert_relative_eq!(xi, ti, max_relative = 1e-12);
        }
    }

    #[test]
    fn singular_flag() {
        let a = mat(2, 2, &[1.0, 1.0, 1.0, 1.0]);
        let lu = LuFactors::new(&a);
        assert!(lu.is_singular());
        assert_eq!(lu.det(), 0.0);
    }
}
