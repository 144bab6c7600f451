//! Desk-scale numerical laboratory for the least singular value and
//! condition number of square random matrices with i.i.d. rows.
//!
//! The crate is organized around six pieces:
//!
//! - [`linalg`]: exact small-dense linear algebra (determinants, one-sided
//!   Jacobi singular values, p-norms, condition numbers, the generalized
//!   cross product and its unit-infinity normalization).
//! - [`ensembles`]: reproducible counter-based samplers for the row
//!   distributions under study.
//! - [`moulds`]: small-ball probability ratios, membership evidence, and
//!   reciprocal-moment divergence checks.
//! - [`theorems`]: Monte Carlo engines for the distributional statements
//!   (CDF estimation, linear-order probes, sandwich and power-identity
//!   checks, divergence diagnostics, the counterexample suite).
//! - [`tails`]: heavy-tail statistics (Hill estimator, running means,
//!   empirical moments).
//! - [`config`] / [`runner`]: the experiment configuration grammar and the
//!   artifact-producing runner behind the `singmin-lab` binary.
//!
//! Every sampler and engine is a deterministic function of its inputs and a
//! 64-bit seed; results are bit-identical for any worker count. See the
//! `examples/` directory for one runnable program per capability.

pub mod config;
pub mod ensembles;
pub mod error;
pub mod exec;
pub mod laws;
pub mod linalg;
pub mod moulds;
pub mod plot;
pub mod rng;
pub mod runner;
pub mod stats;
pub mod tails;
pub mod theorems;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{Mat, PNorm, RVec, SvdValues};
