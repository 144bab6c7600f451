//! Reproducible samplers for the row distributions under study.
//!
//! Rows are drawn from counter-based streams keyed by
//! `(seed, matrix index, row index)`, so a draw is a pure function of its
//! index tuple: identical across runs, process counts, and thread counts,
//! and rows with distinct tuples are independent.

use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::{Mat, RVec};
use crate::rng::{stream, Seed};

/// Stream tag separating ensemble rows from other draw sites.
const ROW_TAG: u64 = 0x524f575f;

/// Row distribution selector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EnsembleKind {
    /// i.i.d. standard normal entries.
    GaussianIid,
    /// i.i.d. uniform on `[-sqrt(3), sqrt(3)]`: mean zero, unit variance,
    /// log-concave density.
    LogConcaveUniformCube,
    /// i.i.d. Laplace entries scaled to unit variance.
    LogConcaveLaplace,
    /// i.i.d. signs, +1 or -1 with equal probability.
    RademacherIid,
    /// i.i.d. standard Cauchy entries (no moments).
    CauchyIid,
    /// Uniform on the unit Euclidean sphere.
    SphereRow,
    /// Standard Gaussian in the first `m` coordinates, zero elsewhere.
    LowDimRow { m: usize },
    /// Row `i` of `shift * I` plus i.i.d. uniform(-1, 1) entries.
    ShiftedUniform { shift: f64 },
}

impl EnsembleKind {
    pub fn label(&self) -> &'static str {
        match self {
            EnsembleKind::GaussianIid => "gaussian",
            EnsembleKind::LogConcaveUniformCube => "uniform-cube",
            EnsembleKind::LogConcaveLaplace => "laplace",
            EnsembleKind::RademacherIid => "rademacher",
            EnsembleKind::CauchyIid => "cauchy",
            EnsembleKind::SphereRow => "sphere",
            EnsembleKind::LowDimRow { .. } => "lowdim",
            EnsembleKind::ShiftedUniform { .. } => "shifted",
        }
    }
}

/// A row distribution together with the matrix dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleSpec {
    kind: EnsembleKind,
    n: usize,
}

impl EnsembleSpec {
    pub fn new(kind: EnsembleKind, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::param(
                "n",
                format!("matrix dimension must be >= 2, got {n}"),
            ));
        }
        match kind {
            EnsembleKind::LowDimRow { m } => {
                if m == 0 || m >= n {
                    return Err(Error::param(
                        "m",
                        format!("lowdim subspace needs 1 <= m < n, got m={m}, n={n}"),
                    ));
                }
            }
            EnsembleKind::ShiftedUniform { shift } if !shift.is_finite() || shift <= 1.0 => {
                return Err(Error::param(
                    "shift",
                    format!("shift must be a finite value > 1, got {shift}"),
                ));
            }
            _ => {}
        }
        Ok(EnsembleSpec { kind, n })
    }

    pub fn kind(&self) -> EnsembleKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Whether sampled matrices are invertible with probability one.
    pub fn almost_surely_invertible(&self) -> bool {
        match self.kind {
            EnsembleKind::GaussianIid
            | EnsembleKind::LogConcaveUniformCube
            | EnsembleKind::LogConcaveLaplace
            | EnsembleKind::CauchyIid
            | EnsembleKind::SphereRow
            | EnsembleKind::ShiftedUniform { .. } => true,
            EnsembleKind::RademacherIid | EnsembleKind::LowDimRow { .. } => false,
        }
    }

    /// Whether the rows are i.i.d. The shifted ensemble is the exception:
    /// the deterministic shift lands on a different coordinate per row, so
    /// its rows share no common distribution (it exists as a counterexample,
    /// not as a theorem instance).
    pub fn iid_rows(&self) -> bool {
        !matches!(self.kind, EnsembleKind::ShiftedUniform { .. })
    }

    /// Whether the rows have an isotropic log-concave density (mean zero,
    /// identity covariance, log-concave).
    pub fn isotropic_log_concave(&self) -> bool {
        matches!(
            self.kind,
            EnsembleKind::GaussianIid
                | EnsembleKind::LogConcaveUniformCube
                | EnsembleKind::LogConcaveLaplace
        )
    }

    /// One row draw, a deterministic function of `(seed, matrix_index, row_index)`.
    pub fn sample_row(&self, seed: Seed, matrix_index: u64, row_index: u64) -> Result<RVec> {
        let n = self.n;
        if row_index >= n as u64 {
            return Err(Error::param(
                "row_index",
                format!("must be < n = {n}, got {row_index}"),
            ));
        }
        let mut rng = stream(seed, ROW_TAG, matrix_index, row_index);
        let entries = match self.kind {
            EnsembleKind::GaussianIid => (0..n).map(|_| StandardNormal.sample(&mut rng)).collect(),
            EnsembleKind::LogConcaveUniformCube => {
                let half = 3f64.sqrt();
                (0..n)
                    .map(|_| (2.0 * rng.random::<f64>() - 1.0) * half)
                    .collect()
            }
            EnsembleKind::LogConcaveLaplace => {
                // |X| ~ Exp(1) scaled by 1/sqrt(2) gives Var(X) = 1.
                let scale = std::f64::consts::FRAC_1_SQRT_2;
                (0..n)
                    .map(|_| {
                        let e: f64 = Exp1.sample(&mut rng);
                        let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
                        sign * scale * e
                    })
                    .collect()
            }
            EnsembleKind::RademacherIid => (0..n)
                .map(|_| if rng.random::<bool>() { 1.0 } else { -1.0 })
                .collect(),
            EnsembleKind::CauchyIid => {
                // tan is finite for every representable argument in (-pi/2, pi/2).
                (0..n)
                    .map(|_| (std::f64::consts::PI * (rng.random::<f64>() - 0.5)).tan())
                    .collect()
            }
            EnsembleKind::SphereRow => loop {
                let g: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
                let norm = g.iter().map(|v| v * v).sum::<f64>().sqrt();
                if norm > 0.0 && norm.is_finite() {
                    break g.into_iter().map(|v| v / norm).collect();
                }
            },
            EnsembleKind::LowDimRow { m } => {
                let mut v: Vec<f64> = (0..m).map(|_| StandardNormal.sample(&mut rng)).collect();
                v.resize(n, 0.0);
                v
            }
            EnsembleKind::ShiftedUniform { shift } => {
                let mut v: Vec<f64> = (0..n).map(|_| 2.0 * rng.random::<f64>() - 1.0).collect();
                v[row_index as usize] += shift;
                v
            }
        };
        Ok(RVec::from_raw(entries))
    }

    /// An `n x n` matrix whose rows are `sample_row(seed, matrix_index, i)`.
    pub fn sample_matrix(&self, seed: Seed, matrix_index: u64) -> Mat {
        let n = self.n;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n as u64 {
            let row = self
                .sample_row(seed, matrix_index, i)
                .expect("row index in range by construction");
            data.extend_from_slice(row.as_slice());
        }
        Mat::from_raw(n, n, data)
    }
}
