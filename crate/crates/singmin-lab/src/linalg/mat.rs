//! Dense matrix and vector value types.

use crate::error::{Error, Result};

/// Dense real matrix, row-major storage. All entries are finite.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Mat {
    /// Build a matrix from row-major entries, validating shape and finiteness.
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::dim("Mat::new", format!("empty shape {rows}x{cols}")));
        }
        if data.len() != rows * cols {
            return Err(Error::dim(
                "Mat::new",
                format!(
                    "{rows}x{cols} needs {} entries, got {}",
                    rows * cols,
                    data.len()
                ),
            ));
        }
        if let Some(bad) = data.iter().find(|v| !v.is_finite()) {
            return Err(Error::dim("Mat::new", format!("non-finite entry {bad}")));
        }
        Ok(Mat { rows, cols, data })
    }

    /// Build from a list of equal-length rows.
    pub fn from_rows(rows: &[RVec]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::dim("Mat::from_rows", "no rows".to_string()));
        }
        let cols = rows[0].dim();
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.dim() != cols {
                return Err(Error::dim(
                    "Mat::from_rows",
                    format!("row length {} != {}", r.dim(), cols),
                ));
            }
            data.extend_from_slice(r.as_slice());
        }
        Mat::new(rows.len(), cols, data)
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        Mat {
            rows: n,
            cols: n,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn transpose(&self) -> Mat {
        let mut data = vec![0.0; self.data.len()];
        for i in 0..self.rows {
            for j in 0..self.cols {
                data[j * self.rows + i] = self.get(i, j);
            }
        }
        Mat {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// y = A x
    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows).map(|i| dot(self.row(i), x)).collect()
    }

    /// y = A^T x
    pub fn matvec_transpose(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.rows);
        let mut y = vec![0.0; self.cols];
        for i in 0..self.rows {
            let xi = x[i];
            for (j, yj) in y.iter_mut().enumerate() {
                *yj += self.get(i, j) * xi;
            }
        }
        y
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Max column absolute sum.
    pub fn col_sum_norm(&self) -> f64 {
        let mut sums = vec![0.0; self.cols];
        for i in 0..self.rows {
            for (j, s) in sums.iter_mut().enumerate() {
                *s += self.get(i, j).abs();
            }
        }
        sums.into_iter().fold(0.0, f64::max)
    }

    /// Max row absolute sum.
    pub fn row_sum_norm(&self) -> f64 {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Internal constructor for values already known to be finite.
    pub(crate) fn from_raw(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        debug_assert!(data.iter().all(|v| v.is_finite()));
        Mat { rows, cols, data }
    }
}

/// Dense real vector. All entries are finite.
#[derive(Debug, Clone, PartialEq)]
pub struct RVec {
    data: Vec<f64>,
}

impl RVec {
    pub fn new(data: Vec<f64>) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::dim("RVec::new", "empty vector".to_string()));
        }
        if let Some(bad) = data.iter().find(|v| !v.is_finite()) {
            return Err(Error::dim("RVec::new", format!("non-finite entry {bad}")));
        }
        Ok(RVec { data })
    }

    pub fn zeros(dim: usize) -> Self {
        RVec {
            data: vec![0.0; dim],
        }
    }

    /// i-th canonical basis vector of length `dim`.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut data = vec![0.0; dim];
        data[i] = 1.0;
        RVec { data }
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize) -> f64 {
        self.data[i]
    }

    pub fn dot(&self, other: &RVec) -> f64 {
        dot(&self.data, &other.data)
    }

    pub fn norm_l1(&self) -> f64 {
        self.data.iter().map(|v| v.abs()).sum()
    }

    pub fn norm_l2(&self) -> f64 {
        dot(&self.data, &self.data).sqrt()
    }

    pub fn norm_inf(&self) -> f64 {
        self.data.iter().map(|v| v.abs()).fold(0.0, f64::max)
    }

    /// Euclidean distance to another vector of the same length.
    pub fn dist_l2(&self, other: &RVec) -> f64 {
        assert_eq!(self.dim(), other.dim());
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    pub(crate) fn from_raw(data: Vec<f64>) -> Self {
        debug_assert!(data.iter().all(|v| v.is_finite()));
        RVec { data }
    }
}

/// Singular values in descending order, all non-negative.
#[derive(Debug, Clone, PartialEq)]
pub struct SvdValues {
    values: Vec<f64>,
}

impl SvdValues {
    pub(crate) fn from_unsorted(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.partial_cmp(a).expect("singular values are finite"));
        SvdValues { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn sigma_max(&self) -> f64 {
        self.values[0]
    }

    pub fn sigma_min(&self) -> f64 {
        *self.values.last().expect("non-empty")
    }
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_finite_entries() {
        assert!(Mat::new(1, 2, vec![1.0, f64::NAN]).is_err());
        assert!(Mat::new(1, 2, vec![1.0, f64::INFINITY]).is_err());
        assert!(RVec::new(vec![f64::NEG_INFINITY]).is_err());
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(Mat::new(2, 2, vec![1.0; 3]).is_err());
        assert!(Mat::new(0, 2, vec![]).is_err());
        assert!(RVec::new(vec![]).is_err());
    }

    #[test]
    fn transpose_roundtrip() {
        let a = Mat::new(2, 3, vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
        let t = a.transpose();
        assert_eq!(t.get(0, 1), 4.0);
        assert_eq!(t.transpose(), a);
    }

    #[test]
    fn norms() {
        let v = RVec::new(vec![3.0, -4.0]).unwrap();
        assert_eq!(v.norm_l1(), 7.0);
        assert_eq!(v.norm_l2(), 5.0);
        assert_eq!(v.norm_inf(), 4.0);
    }
}
