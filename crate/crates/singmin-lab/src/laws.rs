//! Vector laws: the sampling abstraction used by the small-ball machinery.
//!
//! A law produces one draw per index from a counter-based stream, so draws
//! are independent across indices and reproducible for any work split. The
//! calibration laws here have known closed-form small-ball behavior; rows of
//! an [`EnsembleSpec`] plug in through [`EnsembleRow`].

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::ensembles::EnsembleSpec;
use crate::linalg::RVec;
use crate::rng::{stream, Seed};

/// A distribution on R^d sampled by draw index.
pub trait VectorLaw: Sync {
    fn dim(&self) -> usize;

    /// The draw with the given index: a pure function of `(seed, index)`.
    fn sample(&self, seed: Seed, index: u64) -> RVec;

    /// Whether the law carries atoms (point masses). Collisions with an
    /// atomic law turn reciprocal moments into exact infinities.
    fn atomic(&self) -> bool {
        false
    }
}

/// i.i.d. coordinates uniform on `[lo, hi]`.
#[derive(Debug, Clone)]
pub struct UniformBox {
    pub dim: usize,
    pub lo: f64,
    pub hi: f64,
}

impl VectorLaw for UniformBox {
    fn dim(&self) -> usize {
        self.dim
    }

    fn sample(&self, seed: Seed, index: u64) -> RVec {
        let mut rng = stream(seed, 0x424f58, index, 0);
        RVec::from_raw(
            (0..self.dim)
                .map(|_| self.lo + (self.hi - self.lo) * rng.random::<f64>())
                .collect(),
        )
    }
}

/// The degenerate law concentrated at one point.
#[derive(Debug, Clone)]
pub struct PointMass {
    pub point: RVec,
}

impl VectorLaw for PointMass {
    fn dim(&self) -> usize {
        self.point.dim()
    }

    fn sample(&self, _seed: Seed, _index: u64) -> RVec {
        self.point.clone()
    }

    fn atomic(&self) -> bool {
        true
    }
}

/// With probability `weight` the fixed atom, otherwise a uniform box draw.
#[derive(Debug, Clone)]
pub struct AtomMixture {
    pub atom: RVec,
    pub weight: f64,
    pub background: UniformBox,
}

impl VectorLaw for AtomMixture {
    fn dim(&self) -> usize {
        self.atom.dim()
    }

    fn sample(&self, seed: Seed, index: u64) -> RVec {
        let mut rng = stream(seed, 0x41544f4d, index, 0);
        if rng.random::<f64>() < self.weight {
            self.atom.clone()
        } else {
            self.background.sample(seed, index)
        }
    }

    fn atomic(&self) -> bool {
        true
    }
}

/// Uniform on the diagonal segment `{(t, ..., t) : t in [0, 1]}`, a
/// one-dimensional subset of R^d.
#[derive(Debug, Clone)]
pub struct DiagonalSegment {
    pub dim: usize,
}

impl VectorLaw for DiagonalSegment {
    fn dim(&self) -> usize {
        self.dim
    }

    fn sample(&self, seed: Seed, index: u64) -> RVec {
        let mut rng = stream(seed, 0x44494147, index, 0);
        let t = rng.random::<f64>();
        RVec::from_raw(vec![t; self.dim])
    }
}

/// Scalar Pareto law with tail `P(X > t) = t^-alpha` for `t >= 1`.
#[derive(Debug, Clone)]
pub struct Pareto {
    pub alpha: f64,
}

impl VectorLaw for Pareto {
    fn dim(&self) -> usize {
        1
    }

    fn sample(&self, seed: Seed, index: u64) -> RVec {
        let mut rng = stream(seed, 0x504152, index, 0);
        // 1 - U in (0, 1] avoids an exact zero under the reciprocal power.
        let u = 1.0 - rng.random::<f64>();
        RVec::from_raw(vec![u.powf(-1.0 / self.alpha)])
    }
}

/// Scalar standard normal law.
#[derive(Debug, Clone)]
pub struct ScalarNormal;

impl VectorLaw for ScalarNormal {
    fn dim(&self) -> usize {
        1
    }

    fn sample(&self, seed: Seed, index: u64) -> RVec {
        let mut rng = stream(seed, 0x4e4f524d, index, 0);
        RVec::from_raw(vec![StandardNormal.sample(&mut rng)])
    }
}

/// The law of one row (row 0) of an ensemble.
#[derive(Debug, Clone)]
pub struct EnsembleRow(pub EnsembleSpec);

impl VectorLaw for EnsembleRow {
    fn dim(&self) -> usize {
        self.0.n()
    }

    fn sample(&self, seed: Seed, index: u64) -> RVec {
        self.0
            .sample_row(seed, index, 0)
            .expect("row 0 always in range")
    }

    fn atomic(&self) -> bool {
        matches!(self.0.kind(), crate::ensembles::EnsembleKind::RademacherIid)
    }
}
