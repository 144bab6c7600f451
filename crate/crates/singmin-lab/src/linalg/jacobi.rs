//! Singular values of small dense square matrices.
//!
//! The workhorse is one-sided Jacobi: plane rotations are applied on the
//! right until all column pairs are orthogonal, after which the column norms
//! are the singular values. Jacobi keeps high relative accuracy for the
//! small singular values, which is exactly what the near-singularity
//! experiments need. Above `JACOBI_MAX_N` only the extreme singular values
//! are available, via LU-based inverse power iteration.

use super::lu::LuFactors;
use super::mat::{dot, Mat, SvdValues};
use crate::error::{Error, Result};

/// Largest dimension accepted by the full-spectrum Jacobi path.
pub const JACOBI_MAX_N: usize = 64;

/// Relative threshold for a Gram rotation to count as converged.
const JACOBI_TOL: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 64;

/// All singular values of a square matrix, descending.
pub fn svd_values(a: &Mat) -> Result<SvdValues> {
    let n = require_square(a)?;
    if n > JACOBI_MAX_N {
        return Err(Error::dim(
            "svd_values",
            format!("dimension {n} exceeds the desk-scale limit {JACOBI_MAX_N}"),
        ));
    }
    Ok(jacobi_singular_values(a))
}

/// Smallest singular value. Falls back to inverse power iteration above the
/// Jacobi size limit; returns a zero-adjacent value for singular input.
pub fn sigma_min(a: &Mat) -> Result<f64> {
    let n = require_square(a)?;
    if n <= JACOBI_MAX_N {
        Ok(jacobi_singular_values(a).sigma_min())
    } else {
        Ok(sigma_min_inverse_power(a))
    }
}

/// Largest singular value (spectral norm).
pub fn sigma_max(a: &Mat) -> Result<f64> {
    let n = require_square(a)?;
    if n <= JACOBI_MAX_N {
        Ok(jacobi_singular_values(a).sigma_max())
    } else {
        Ok(sigma_max_power(a))
    }
}

fn require_square(a: &Mat) -> Result<usize> {
    if !a.is_square() {
        return Err(Error::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    Ok(a.rows())
}

/// One-sided Jacobi on the columns of `a`.
pub(crate) fn jacobi_singular_values(a: &Mat) -> SvdValues {
    let n = a.rows();
    // Column-major working copy: col[j] is contiguous.
    let mut cols: Vec<Vec<f64>> = (0..n)
        .map(|j| (0..n).map(|i| a.get(i, j)).collect())
        .collect();

    for _sweep in 0..JACOBI_MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..n {
            for j in (i + 1)..n {
                let (ci, cj) = pair_mut(&mut cols, i, j);
                let aii = dot(ci, ci);
                let ajj = dot(cj, cj);
                let g = dot(ci, cj);
                if g == 0.0 || g.abs() <= JACOBI_TOL * (aii * ajj).sqrt() {
                    continue;
                }
                rotated = true;
                // Rotation zeroing the (i, j) Gram entry.
                let zeta = (ajj - aii) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for (x, y) in ci.iter_mut().zip(cj.iter_mut()) {
                    let xi = *x;
                    let yj = *y;
                    *x = c * xi - s * yj;
                    *y = s * xi + c * yj;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let values: Vec<f64> = cols.iter().map(|c| dot(c, c).sqrt()).collect();
    SvdValues::from_unsorted(values)
}

fn pair_mut(cols: &mut [Vec<f64>], i: usize, j: usize) -> (&mut [f64], &mut [f64]) {
    debug_assert!(i < j);
    let (a, b) = cols.split_at_mut(j);
    (&mut a[i], &mut b[0])
}

/// Deterministic pseudo-random unit start vector for the power iterations.
fn start_vector(n: usize) -> Vec<f64> {
    let mut state = 0x9e3779b97f4a7c15u64 ^ (n as u64);
    let mut v: Vec<f64> = (0..n)
        .map(|_| {
            state = splitmix64(state);
            // Uniform in [-1, 1), never all-zero.
            (state >> 11) as f64 / (1u64 << 52) as f64 - 1.0
        })
        .collect();
    let norm = dot(&v, &v).sqrt();
    for x in &mut v {
        *x /= norm;
    }
    v
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

const POWER_TOL: f64 = 1e-13;

/// Power iteration on `(A^T A)^{-1}` via LU solves; the dominant eigenvalue
/// is `1 / sigma_min^2`. The Rayleigh quotient stays accurate even when the
/// two smallest singular values are nearly equal (the iterate then mixes the
/// corresponding directions, whose values agree).
pub(crate) fn sigma_min_inverse_power(a: &Mat) -> f64 {
    let lu = LuFactors::new(a);
    if lu.is_singular() {
        return 0.0;
    }
    let n = a.rows();
    let mut v = start_vector(n);
    let mut lambda_prev = 0.0;
    for _ in 0..512 {
        let y = lu.solve_transpose(&v);
        let u = lu.solve(&y);
        let lambda = dot(&v, &u);
        let norm = dot(&u, &u).sqrt();
        if !norm.is_finite() || norm == 0.0 || !lambda.is_finite() {
            // Effectively singular: the solves blew up.
            return 0.0;
        }
        for (vi, ui) in v.iter_mut().zip(&u) {
            *vi = ui / norm;
        }
        if (lambda - lambda_prev).abs() <= POWER_TOL * lambda.abs() {
            lambda_prev = lambda;
            break;
        }
        lambda_prev = lambda;
    }
    if lambda_prev <= 0.0 {
        return 0.0;
    }
    1.0 / lambda_prev.sqrt()
}

/// Power iteration on `A^T A`; the dominant eigenvalue is `sigma_max^2`.
pub(crate) fn sigma_max_power(a: &Mat) -> f64 {
    let n = a.rows();
    let mut v = start_vector(n);
    let mut lambda_prev = 0.0;
    for _ in 0..4096 {
        let u = a.matvec_transpose(&a.matvec(&v));
        let lambda = dot(&v, &u);
        let norm = dot(&u, &u).sqrt();
        if norm == 0.0 {
            return 0.0;
        }
        for (vi, ui) in v.iter_mut().zip(&u) {
            *vi = ui / norm;
        }
        if (lambda - lambda_prev).abs() <= POWER_TOL * lambda.abs() {
            lambda_prev = lambda;
            break;
        }
        lambda_prev = lambda;
    }
    lambda_prev.max(0.0).sqrt()
}
