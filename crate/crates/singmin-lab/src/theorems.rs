//! Monte Carlo engines for the distributional statements: CDF estimation of
//! the least singular value, linear-order probes, the per-sample sandwich,
//! the power identity, divergence diagnostics for reciprocal singular values
//! and condition numbers, the alpha-moment sweep, and the counterexample
//! suite.
//!
//! Sample generation and per-sample statistics are embarrassingly parallel
//! over the matrix index; aggregation uses integer counts and chunked
//! compensated sums folded in a fixed chunk order, so every report is a
//! deterministic function of `(inputs, seed)` whatever the worker count.

use crate::ensembles::{EnsembleKind, EnsembleSpec};
use crate::error::{Error, Result};
use crate::exec::{chunk_ranges, run_chunked};
use crate::linalg::{self, Mat, PNorm, RVec};
use crate::rng::Seed;
use crate::runner::fmt_f64;
use crate::stats::{wilson_interval, z_for_level, KahanSum};
use crate::tails::{default_hill_k, hill_estimator, TailIndexEstimate};

/// Observed sigma_min below this counts as an exact zero. Nonsingular sign
/// matrices have sigma_min >= 1, so the threshold only needs to clear
/// rounding noise.
pub const SINGULAR_TOL: f64 = 1e-9;

/// Default q0 for the scaled-survival lower bound in divergence diagnostics.
pub const DEFAULT_Q0: f64 = 0.01;

/// Empirical CDF of sigma_min over a nested epsilon grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CdfEstimate {
    pub eps_grid: Vec<f64>,
    /// Hits of `sigma_min < eps` per grid point; non-decreasing.
    pub counts: Vec<u64>,
    pub n: u64,
    pub ci_level: f64,
    /// Per grid point `(p_hat, ci_lo, ci_hi)`.
    pub points: Vec<(f64, f64, f64)>,
}

impl CdfEstimate {
    /// CSV rows: `eps,count,N,p_hat,ci_lo,ci_hi`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("eps,count,N,p_hat,ci_lo,ci_hi\n");
        for ((&eps, &count), &(p, lo, hi)) in
            self.eps_grid.iter().zip(&self.counts).zip(&self.points)
        {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                fmt_f64(eps),
                count,
                self.n,
                fmt_f64(p),
                fmt_f64(lo),
                fmt_f64(hi)
            ));
        }
        out
    }
}

fn check_eps_grid(eps_grid: &[f64]) -> Result<()> {
    if eps_grid.is_empty()
        || eps_grid.iter().any(|e| !e.is_finite() || *e <= 0.0)
        || eps_grid.windows(2).any(|w| w[0] >= w[1])
    {
        return Err(Error::param("eps_grid", "must be ascending and positive"));
    }
    Ok(())
}

/// Estimate `P(sigma_min < eps)` for every `eps` in the grid: each sampled
/// matrix has its sigma_min computed once and binned against the whole grid,
/// so counts nest exactly.
pub fn estimate_sigma_min_cdf(
    spec: &EnsembleSpec,
    eps_grid: &[f64],
    n: u64,
    seed: Seed,
    ci_level: f64,
    workers: usize,
) -> Result<CdfEstimate> {
    check_eps_grid(eps_grid)?;
    if n == 0 {
        return Err(Error::param("N", "need at least one sample"));
    }
    let z = z_for_level(ci_level)?;

    let ranges = chunk_ranges(n, &[]);
    let partials = run_chunked(&ranges, workers, |r| {
        let mut counts = vec![0u64; eps_grid.len()];
        for i in r {
            let m = spec.sample_matrix(seed, i);
            let s = linalg::sigma_min(&m).expect("square by construction");
            for (slot, &eps) in counts.iter_mut().zip(eps_grid) {
                if s < eps {
                    *slot += 1;
                }
            }
        }
        counts
    });
    let mut counts = vec![0u64; eps_grid.len()];
    for partial in partials {
        for (t, c) in counts.iter_mut().zip(partial) {
            *t += c;
        }
    }
    let points = counts
        .iter()
        .map(|&c| {
            let ci = wilson_interval(c, n, z);
            (c as f64 / n as f64, ci.lo, ci.hi)
        })
        .collect();
    Ok(CdfEstimate {
        eps_grid: eps_grid.to_vec(),
        counts,
        n,
        ci_level,
        points,
    })
}

/// Verdict of the linear-order probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeVerdict {
    /// All ratio lower bounds positive and the ratio band is flat enough.
    LinearOrderEvidence,
    /// Ratios blow up toward small eps: mass at zero dominates.
    AtomAtZero,
    /// Every count is zero; nothing to bound.
    NoEvidence,
    Inconclusive,
}

impl std::fmt::Display for ProbeVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ProbeVerdict::LinearOrderEvidence => "LinearOrderEvidence",
            ProbeVerdict::AtomAtZero => "AtomAtZero",
            ProbeVerdict::NoEvidence => "NoEvidence",
            ProbeVerdict::Inconclusive => "Inconclusive",
        })
    }
}

/// Ratio curve `P(sigma_min < eps) / eps` with its verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioProbe {
    pub eps_grid: Vec<f64>,
    pub counts: Vec<u64>,
    pub n: u64,
    /// Per grid point `(ratio, ci_lo, ci_hi)`, all divided by eps.
    pub ratios: Vec<(f64, f64, f64)>,
    pub band: f64,
    pub verdict: ProbeVerdict,
}

impl RatioProbe {
    /// CSV rows: `eps,count,N,ratio,ci_lo,ci_hi`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("eps,count,N,ratio,ci_lo,ci_hi\n");
        for ((&eps, &count), &(r, lo, hi)) in
            self.eps_grid.iter().zip(&self.counts).zip(&self.ratios)
        {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                fmt_f64(eps),
                count,
                self.n,
                fmt_f64(r),
                fmt_f64(lo),
                fmt_f64(hi)
            ));
        }
        out
    }
}

/// Probe the first-order behavior of a CDF estimate: divide by eps and ask
/// whether the curve stays inside a bounded band with positive lower CI.
///
/// `r0` is the floor the lower CI bounds must clear (zero means strictly
/// positive); `bandwidth` caps max/min of the ratio point estimates.
pub fn ratio_lower_bound_probe(cdf: &CdfEstimate, r0: f64, bandwidth: f64) -> Result<RatioProbe> {
    let grid = &cdf.eps_grid;
    if grid.len() < 4 {
        return Err(Error::param(
            "eps_grid",
            "ratio probe needs at least 4 grid points",
        ));
    }
    let decades = (grid[grid.len() - 1] / grid[0]).log10();
    if decades < 1.5 {
        return Err(Error::param(
            "eps_grid",
            format!("ratio probe needs >= 1.5 decades of eps, got {decades:.2}"),
        ));
    }
    let ratios: Vec<(f64, f64, f64)> = grid
        .iter()
        .zip(&cdf.points)
        .map(|(&eps, &(p, lo, hi))| (p / eps, lo / eps, hi / eps))
        .collect();

    let all_zero = cdf.counts.iter().all(|&c| c == 0);
    let lower_ok = ratios.iter().all(|&(_, lo, _)| lo > r0);
    let max = ratios.iter().map(|r| r.0).fold(f64::NEG_INFINITY, f64::max);
    let min_pos = ratios.iter().map(|r| r.0).fold(f64::INFINITY, f64::min);
    let band = if min_pos > 0.0 {
        max / min_pos
    } else {
        f64::INFINITY
    };

    let verdict = if all_zero {
        ProbeVerdict::NoEvidence
    } else if lower_ok && band <= bandwidth {
        ProbeVerdict::LinearOrderEvidence
    } else if lower_ok
        && ratios.first().expect("non-empty").0 > bandwidth * ratios.last().expect("non-empty").0
    {
        // Ratio at the smallest eps dwarfs the rest: p(eps) is flat in eps,
        // i.e. an atom at zero.
        ProbeVerdict::AtomAtZero
    } else {
        ProbeVerdict::Inconclusive
    };
    Ok(RatioProbe {
        eps_grid: grid.clone(),
        counts: cdf.counts.clone(),
        n: cdf.n,
        ratios,
        band,
        verdict,
    })
}

/// Per-epsilon sandwich counts and the per-sample implication tally.
#[derive(Debug, Clone, PartialEq)]
pub struct SandwichReport {
    pub eps_grid: Vec<f64>,
    pub n: u64,
    pub count_sigma: Vec<u64>,
    pub count_dot: Vec<u64>,
    /// Countwise `p_sigma >= p_dot - slack` per grid point (slack: 4 combined
    /// one-sigma Wilson half-widths).
    pub countwise_ok: Vec<bool>,
    /// Violations of `sigma_min <= |X_n . Y| + 1e-10 * scale`.
    pub violations: u64,
    /// Up to eight violating samples `(index, sigma_min, dot)`.
    pub violating_samples: Vec<(u64, f64, f64)>,
    /// Degenerate-row samples (cross product numerically zero), skipped.
    pub degenerate: u64,
}

impl SandwichReport {
    /// CSV rows: `eps,count_sigma,count_dot,N,p_sigma,p_dot,countwise_ok`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("eps,count_sigma,count_dot,N,p_sigma,p_dot,countwise_ok\n");
        for i in 0..self.eps_grid.len() {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                fmt_f64(self.eps_grid[i]),
                self.count_sigma[i],
                self.count_dot[i],
                self.n,
                fmt_f64(self.count_sigma[i] as f64 / self.n as f64),
                fmt_f64(self.count_dot[i] as f64 / self.n as f64),
                self.countwise_ok[i],
            ));
        }
        out
    }
}

/// For each sampled matrix compute both `sigma_min` and `|X_n . Y|` with `Y`
/// the unit-infinity normalized cross product of the first `n - 1` rows, and
/// check the deterministic event inclusion `(|X_n . Y| < eps)` implies
/// `(sigma_min < eps)`, which holds because `|Y|_2 >= 1`.
pub fn sandwich_check(
    spec: &EnsembleSpec,
    eps_grid: &[f64],
    n: u64,
    seed: Seed,
    workers: usize,
) -> Result<SandwichReport> {
    check_eps_grid(eps_grid)?;
    if n == 0 {
        return Err(Error::param("N", "need at least one sample"));
    }
    if !spec.almost_surely_invertible() || !spec.iid_rows() {
        return Err(Error::param(
            "ensemble",
            format!(
                "sandwich check needs an a.s.-invertible ensemble with i.i.d. rows, got {}",
                spec.kind().label()
            ),
        ));
    }

    struct Partial {
        count_sigma: Vec<u64>,
        count_dot: Vec<u64>,
        violations: Vec<(u64, f64, f64)>,
        degenerate: u64,
    }

    let dim = spec.n();
    let ranges = chunk_ranges(n, &[]);
    let partials = run_chunked(&ranges, workers, |r| {
        let mut p = Partial {
            count_sigma: vec![0; eps_grid.len()],
            count_dot: vec![0; eps_grid.len()],
            violations: Vec::new(),
            degenerate: 0,
        };
        for i in r {
            let m = spec.sample_matrix(seed, i);
            let stack = Mat::new(dim - 1, dim, m.as_slice()[..(dim - 1) * dim].to_vec())
                .expect("leading rows form a valid stack");
            let y = match linalg::y_vector(&stack) {
                Ok(y) => y,
                Err(Error::DegenerateRows) => {
                    p.degenerate += 1;
                    continue;
                }
                Err(e) => panic!("unexpected failure: {e}"),
            };
            let last = RVec::new(m.row(dim - 1).to_vec()).expect("finite row");
            let dot = last.dot(&y).abs();
            let sigma = linalg::sigma_min(&m).expect("square by construction");
            let scale = m.frobenius_norm();
            if sigma > dot + 1e-10 * scale {
                p.violations.push((i, sigma, dot));
            }
            for (j, &eps) in eps_grid.iter().enumerate() {
                if sigma < eps {
                    p.count_sigma[j] += 1;
                }
                if dot < eps {
                    p.count_dot[j] += 1;
                }
            }
        }
        p
    });

    let mut count_sigma = vec![0u64; eps_grid.len()];
    let mut count_dot = vec![0u64; eps_grid.len()];
    let mut violations = 0u64;
    let mut violating_samples = Vec::new();
    let mut degenerate = 0u64;
    for p in &partials {
        for (t, c) in count_sigma.iter_mut().zip(&p.count_sigma) {
            *t += c;
        }
        for (t, c) in count_dot.iter_mut().zip(&p.count_dot) {
            *t += c;
        }
        violations += p.violations.len() as u64;
        degenerate += p.degenerate;
        for v in &p.violations {
            if violating_samples.len() < 8 {
                violating_samples.push(*v);
            }
        }
    }

    let countwise_ok = count_sigma
        .iter()
        .zip(&count_dot)
        .map(|(&cs, &cd)| {
            let hw_s = wilson_interval(cs, n, 1.0).half_width();
            let hw_d = wilson_interval(cd, n, 1.0).half_width();
            let slack = 4.0 * (hw_s * hw_s + hw_d * hw_d).sqrt();
            cs as f64 / n as f64 >= cd as f64 / n as f64 - slack
        })
        .collect();

    Ok(SandwichReport {
        eps_grid: eps_grid.to_vec(),
        n,
        count_sigma,
        count_dot,
        countwise_ok,
        violations,
        violating_samples,
        degenerate,
    })
}

/// Two independent estimates of the same probability, linked by the i.i.d.
/// power identity.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerIdentityReport {
    pub eps: f64,
    pub n: u64,
    /// Single-row side: `P(|X . y| < eps)`.
    pub p_single: f64,
    pub single_count: u64,
    /// Joint side: `P(all of n-1 independent rows have |X_j . y| < eps)`.
    pub p_joint: f64,
    pub joint_count: u64,
    /// `p_single ^ (n-1)`, the value the joint side must reproduce.
    pub p_single_power: f64,
    /// `|p_joint - p_single^(n-1)|` against 4 combined one-sigma widths.
    pub diff: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl PowerIdentityReport {
    /// CSV row: `eps,N,p_single,p_joint,p_single_power,diff,tolerance,pass`.
    pub fn to_csv(&self) -> String {
        format!(
            "eps,N,p_single,p_joint,p_single_power,diff,tolerance,pass\n{},{},{},{},{},{},{},{}\n",
            fmt_f64(self.eps),
            self.n,
            fmt_f64(self.p_single),
            fmt_f64(self.p_joint),
            fmt_f64(self.p_single_power),
            fmt_f64(self.diff),
            fmt_f64(self.tolerance),
            self.pass
        )
    }
}

/// Estimate both sides of
/// `P(|X . y| < eps) = P(for all j < n: |X_j . y| < eps) ^ (1/(n-1))`
/// from disjoint row streams and test agreement at 4 combined sigma on the
/// joint scale.
pub fn power_identity_check(
    spec: &EnsembleSpec,
    y: &RVec,
    eps: f64,
    n: u64,
    seed: Seed,
    workers: usize,
) -> Result<PowerIdentityReport> {
    if !eps.is_finite() || eps <= 0.0 {
        return Err(Error::param("eps", format!("must be > 0, got {eps}")));
    }
    if n == 0 {
        return Err(Error::param("N", "need at least one sample"));
    }
    if y.dim() != spec.n() {
        return Err(Error::param(
            "y",
            format!("dimension {} does not match n = {}", y.dim(), spec.n()),
        ));
    }
    if !spec.iid_rows() {
        return Err(Error::param(
            "ensemble",
            format!(
                "the power identity needs i.i.d. rows, got {}",
                spec.kind().label()
            ),
        ));
    }
    let dim = spec.n();
    let ranges = chunk_ranges(n, &[]);

    // Single side: row 0 of each matrix index. Joint side: rows 1..n of the
    // same indices. The streams are disjoint, so the estimates are
    // independent.
    let single_counts = run_chunked(&ranges, workers, |r| {
        r.filter(|&i| {
            let row = spec.sample_row(seed, i, 0).expect("row 0 in range");
            row.dot(y).abs() < eps
        })
        .count() as u64
    });
    let joint_counts = run_chunked(&ranges, workers, |r| {
        r.filter(|&i| {
            (1..dim as u64).all(|j| {
                let row = spec.sample_row(seed, i, j).expect("row in range");
                row.dot(y).abs() < eps
            })
        })
        .count() as u64
    });

    let single_count: u64 = single_counts.iter().sum();
    let joint_count: u64 = joint_counts.iter().sum();
    let p_single = single_count as f64 / n as f64;
    let p_joint = joint_count as f64 / n as f64;
    let power = (dim - 1) as f64;
    let p_single_power = p_single.powf(power);

    let hw_single = wilson_interval(single_count, n, 1.0).half_width();
    let hw_joint = wilson_interval(joint_count, n, 1.0).half_width();
    // Delta method for the transformed single side.
    let hw_single_on_joint_scale = if p_single > 0.0 {
        power * p_single.powf(power - 1.0) * hw_single
    } else {
        hw_single.powf(power)
    };
    let tolerance =
        4.0 * (hw_joint * hw_joint + hw_single_on_joint_scale * hw_single_on_joint_scale).sqrt();
    let diff = (p_joint - p_single_power).abs();

    Ok(PowerIdentityReport {
        eps,
        n,
        p_single,
        single_count,
        p_joint,
        joint_count,
        p_single_power,
        diff,
        tolerance,
        pass: diff <= tolerance,
    })
}

/// Running-mean checkpoint of the divergence diagnostic.
#[derive(Debug, Clone, PartialEq)]
pub struct DivergenceCheckpoint {
    pub n: u64,
    pub kappa_mean: f64,
    pub kappa_infinite: u64,
    pub inv_sigma_mean: f64,
    pub inv_sigma_infinite: u64,
}

/// Divergence diagnostic for the condition number and reciprocal least
/// singular value.
#[derive(Debug, Clone, PartialEq)]
pub struct KappaDivergenceReport {
    pub norm: PNorm,
    pub checkpoints: Vec<DivergenceCheckpoint>,
    /// Relative change of each running mean over the final doubling
    /// `(N/2 -> N)`: `(kappa drift, inv-sigma drift)`.
    pub kappa_drift: f64,
    pub inv_sigma_drift: f64,
    /// Growth of each running mean from first to last checkpoint.
    pub kappa_growth: f64,
    pub inv_sigma_growth: f64,
    /// Hill estimate on the finite `1/sigma_min` samples (default k).
    pub hill: Option<TailIndexEstimate>,
    /// The scaled survival `t(1 - F(t))` of `1/sigma_min` stays bounded
    /// below on the upper quantiles.
    pub survival_bounded_below: bool,
    /// Conjunction of the survival bound and growth of the mean over the
    /// last doubling. Heavy-tail running means wobble, so a pinned stream
    /// can show the bound without the growth leg.
    pub divergence_flag: bool,
}

impl KappaDivergenceReport {
    /// CSV rows: `N,kappa_mean,kappa_infinite,inv_sigma_mean,inv_sigma_infinite`.
    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("N,kappa_mean,kappa_infinite,inv_sigma_mean,inv_sigma_infinite\n");
        for c in &self.checkpoints {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                c.n,
                fmt_f64(c.kappa_mean),
                c.kappa_infinite,
                fmt_f64(c.inv_sigma_mean),
                c.inv_sigma_infinite
            ));
        }
        out
    }
}

fn check_schedule(schedule: &[u64]) -> Result<()> {
    if schedule.is_empty() || schedule.windows(2).any(|w| w[0] >= w[1]) || schedule[0] == 0 {
        return Err(Error::param(
            "N_schedule",
            "must be non-empty, positive, strictly increasing",
        ));
    }
    Ok(())
}

/// Running means of `kappa_p` and `1/sigma_min` along a sample schedule,
/// with a Hill tail summary. Infinite samples (singular draws from atomic
/// ensembles) are excluded from the means and counted separately.
pub fn kappa_divergence_diagnostic(
    spec: &EnsembleSpec,
    p: PNorm,
    schedule: &[u64],
    seed: Seed,
    workers: usize,
) -> Result<KappaDivergenceReport> {
    check_schedule(schedule)?;
    let total = *schedule.last().expect("non-empty");
    let half = (total / 2).max(1);
    let mut marks: Vec<u64> = schedule.to_vec();
    if !marks.contains(&half) {
        marks.push(half);
        marks.sort_unstable();
    }

    struct Partial {
        kappa_sum: KahanSum,
        kappa_n: u64,
        kappa_inf: u64,
        inv_sum: KahanSum,
        inv_n: u64,
        inv_inf: u64,
        inv_samples: Vec<f64>,
    }

    let ranges = chunk_ranges(total, &marks);
    let partials = run_chunked(&ranges, workers, |r| {
        let mut part = Partial {
            kappa_sum: KahanSum::new(),
            kappa_n: 0,
            kappa_inf: 0,
            inv_sum: KahanSum::new(),
            inv_n: 0,
            inv_inf: 0,
            inv_samples: Vec::with_capacity(r.clone().count()),
        };
        for i in r {
            let m = spec.sample_matrix(seed, i);
            let kappa = linalg::condition_number(&m, p).expect("square by construction");
            if kappa.is_finite() {
                part.kappa_sum.add(kappa);
                part.kappa_n += 1;
            } else {
                part.kappa_inf += 1;
            }
            let sigma = linalg::sigma_min(&m).expect("square by construction");
            let inv = 1.0 / sigma;
            if inv.is_finite() {
                part.inv_sum.add(inv);
                part.inv_n += 1;
                part.inv_samples.push(inv);
            } else {
                part.inv_inf += 1;
            }
        }
        part
    });

    let mut kappa_acc = KahanSum::new();
    let mut kappa_n = 0u64;
    let mut kappa_inf = 0u64;
    let mut inv_acc = KahanSum::new();
    let mut inv_n = 0u64;
    let mut inv_inf = 0u64;
    let mut inv_samples: Vec<f64> = Vec::with_capacity(total as usize);
    let mut checkpoints = Vec::new();
    let mut half_means: Option<(f64, f64)> = None;
    let mut iter_marks = marks.iter().copied().peekable();
    for (range, part) in ranges.iter().zip(&partials) {
        kappa_acc.merge(&part.kappa_sum);
        kappa_n += part.kappa_n;
        kappa_inf += part.kappa_inf;
        inv_acc.merge(&part.inv_sum);
        inv_n += part.inv_n;
        inv_inf += part.inv_inf;
        inv_samples.extend_from_slice(&part.inv_samples);
        while let Some(&mark) = iter_marks.peek() {
            if range.end != mark {
                break;
            }
            let kappa_mean = if kappa_n > 0 {
                kappa_acc.value() / kappa_n as f64
            } else {
                0.0
            };
            let inv_mean = if inv_n > 0 {
                inv_acc.value() / inv_n as f64
            } else {
                0.0
            };
            if mark == half {
                half_means = Some((kappa_mean, inv_mean));
            }
            if schedule.contains(&mark) {
                checkpoints.push(DivergenceCheckpoint {
                    n: mark,
                    kappa_mean,
                    kappa_infinite: kappa_inf,
                    inv_sigma_mean: inv_mean,
                    inv_sigma_infinite: inv_inf,
                });
            }
            iter_marks.next();
        }
    }

    let first = checkpoints.first().expect("non-empty schedule");
    let last = checkpoints.last().expect("non-empty schedule");
    let (half_kappa, half_inv) = half_means.expect("half mark always folded");
    let rel = |from: f64, to: f64| {
        if from > 0.0 {
            (to - from).abs() / from
        } else {
            0.0
        }
    };
    let growth = |from: f64, to: f64| if from > 0.0 { to / from } else { 0.0 };

    let hill = if inv_samples.len() >= 20 {
        hill_estimator(&inv_samples, default_hill_k(inv_samples.len())).ok()
    } else {
        None
    };
    let (survival_bounded_below, divergence_flag) = divergence_evidence(&inv_samples);

    Ok(KappaDivergenceReport {
        norm: p,
        kappa_drift: rel(half_kappa, last.kappa_mean),
        inv_sigma_drift: rel(half_inv, last.inv_sigma_mean),
        kappa_growth: growth(first.kappa_mean, last.kappa_mean),
        inv_sigma_growth: growth(first.inv_sigma_mean, last.inv_sigma_mean),
        checkpoints,
        hill,
        survival_bounded_below,
        divergence_flag,
    })
}

/// Scaled-survival divergence evidence on a positive sample set. Thresholds
/// are anchored at upper quantiles (survival 1e-1 down to 1e-4, kept above
/// 20 expected exceedances) so the Wilson lower bounds stay informative.
/// Returns `(survival bounded below, full divergence flag)`.
fn divergence_evidence(samples: &[f64]) -> (bool, bool) {
    if samples.len() < 200 {
        return (false, false);
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite samples"));
    let n = sorted.len();
    let mut ts = Vec::new();
    for j in 1..=4u32 {
        let survivors = (n as f64 * 10f64.powi(-(j as i32))) as usize;
        if survivors < 20 {
            break;
        }
        let t = sorted[n - survivors - 1];
        if t > 0.0 && ts.last().is_none_or(|&prev| t > prev) {
            ts.push(t);
        }
    }
    if ts.len() < 2 {
        return (false, false);
    }
    crate::moulds::expectation_lemma_check(samples, &ts, DEFAULT_Q0)
        .map(|r| (r.tail_bounded_below, r.divergence_flag))
        .unwrap_or((false, false))
}

/// Running means of `kappa^alpha` for one exponent.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaMomentTrack {
    pub alpha: f64,
    /// `(checkpoint N, running mean of kappa^alpha)`.
    pub means: Vec<(u64, f64)>,
    /// Relative change over the final doubling: the stability score.
    pub drift: f64,
    /// Running means strictly increasing along the schedule.
    pub increasing: bool,
}

/// Moment sweep across exponents for an isotropic log-concave ensemble.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaSweepReport {
    pub tracks: Vec<AlphaMomentTrack>,
    pub infinite: u64,
}

impl AlphaSweepReport {
    /// CSV rows: `alpha,N,mean,drift`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("alpha,N,mean,drift\n");
        for t in &self.tracks {
            for &(n, m) in &t.means {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    fmt_f64(t.alpha),
                    n,
                    fmt_f64(m),
                    fmt_f64(t.drift)
                ));
            }
        }
        out
    }

    pub fn track(&self, alpha: f64) -> Option<&AlphaMomentTrack> {
        self.tracks.iter().find(|t| t.alpha == alpha)
    }
}

/// For each alpha, running means of `kappa_2^alpha` along the schedule with
/// the final-doubling stability score. The moment dichotomy is norm
/// independent; the spectral condition number is used because it needs no
/// matrix inversion.
pub fn alpha_moment_sweep(
    spec: &EnsembleSpec,
    alpha_grid: &[f64],
    schedule: &[u64],
    seed: Seed,
    workers: usize,
) -> Result<AlphaSweepReport> {
    if !spec.isotropic_log_concave() {
        return Err(Error::param(
            "ensemble",
            format!(
                "alpha sweep needs an isotropic log-concave ensemble, got {}",
                spec.kind().label()
            ),
        ));
    }
    if alpha_grid.is_empty()
        || alpha_grid
            .iter()
            .any(|a| !a.is_finite() || *a < 0.0 || *a > 1.2)
    {
        return Err(Error::param("alpha_grid", "exponents must lie in [0, 1.2]"));
    }
    check_schedule(schedule)?;

    let total = *schedule.last().expect("non-empty");
    let half = (total / 2).max(1);
    let mut marks: Vec<u64> = schedule.to_vec();
    if !marks.contains(&half) {
        marks.push(half);
        marks.sort_unstable();
    }

    struct Partial {
        sums: Vec<KahanSum>,
        finite: u64,
        infinite: u64,
    }

    let ranges = chunk_ranges(total, &marks);
    let partials = run_chunked(&ranges, workers, |r| {
        let mut part = Partial {
            sums: vec![KahanSum::new(); alpha_grid.len()],
            finite: 0,
            infinite: 0,
        };
        for i in r {
            let m = spec.sample_matrix(seed, i);
            let kappa = linalg::condition_number(&m, PNorm::Two).expect("square by construction");
            if kappa.is_finite() {
                part.finite += 1;
                for (sum, &alpha) in part.sums.iter_mut().zip(alpha_grid) {
                    sum.add(if alpha == 0.0 { 1.0 } else { kappa.powf(alpha) });
                }
            } else {
                part.infinite += 1;
            }
        }
        part
    });

    let mut acc = vec![KahanSum::new(); alpha_grid.len()];
    let mut finite = 0u64;
    let mut infinite = 0u64;
    let mut means_at: Vec<Vec<(u64, f64)>> = vec![Vec::new(); alpha_grid.len()];
    let mut half_means = vec![0.0; alpha_grid.len()];
    let mut iter_marks = marks.iter().copied().peekable();
    for (range, part) in ranges.iter().zip(&partials) {
        for (a, b) in acc.iter_mut().zip(&part.sums) {
            a.merge(b);
        }
        finite += part.finite;
        infinite += part.infinite;
        while let Some(&mark) = iter_marks.peek() {
            if range.end != mark {
                break;
            }
            for (j, a) in acc.iter().enumerate() {
                let mean = if finite > 0 {
                    a.value() / finite as f64
                } else {
                    0.0
                };
                if mark == half {
                    half_means[j] = mean;
                }
                if schedule.contains(&mark) {
                    means_at[j].push((mark, mean));
                }
            }
            iter_marks.next();
        }
    }

    let tracks = alpha_grid
        .iter()
        .zip(means_at)
        .zip(&half_means)
        .map(|((&alpha, means), &half_mean)| {
            let last = means.last().expect("non-empty").1;
            let drift = if half_mean > 0.0 {
                (last - half_mean).abs() / half_mean
            } else {
                0.0
            };
            let increasing = means.windows(2).all(|w| w[0].1 < w[1].1);
            AlphaMomentTrack {
                alpha,
                means,
                drift,
                increasing,
            }
        })
        .collect();
    Ok(AlphaSweepReport { tracks, infinite })
}

/// Finite `1/sigma_min` samples over `n` matrices, in matrix-index order
/// (identical for any worker count). Infinite values (exactly singular
/// draws) are skipped.
pub fn inv_sigma_min_samples(
    spec: &EnsembleSpec,
    n: u64,
    seed: Seed,
    workers: usize,
) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::param("N", "need at least one sample"));
    }
    let ranges = chunk_ranges(n, &[]);
    let chunks = run_chunked(&ranges, workers, |r| {
        let mut out = Vec::with_capacity(r.clone().count());
        for i in r {
            let m = spec.sample_matrix(seed, i);
            let s = linalg::sigma_min(&m).expect("square by construction");
            let inv = 1.0 / s;
            if inv.is_finite() {
                out.push(inv);
            }
        }
        out
    });
    Ok(chunks.concat())
}

/// Exact and Monte Carlo facts for the two introductory counterexamples.
#[derive(Debug, Clone, PartialEq)]
pub struct CounterexampleReport {
    /// Minimum observed sigma_min for the shifted ensemble (n=2, shift=3).
    pub shifted_min_sigma: f64,
    pub shifted_samples: u64,
    pub shifted_pass: bool,
    /// Exact enumeration over all 16 sign matrices.
    pub exact_p_singular: f64,
    pub exact_p_equal_rows: f64,
    pub inequality_pass: bool,
    /// Monte Carlo estimate of `P(sigma_min = 0)` with a 99% Wilson check
    /// against the exact 1/2.
    pub mc_p_singular: f64,
    pub mc_samples: u64,
    pub mc_ci_lo: f64,
    pub mc_ci_hi: f64,
    pub mc_pass: bool,
    pub pass: bool,
}

impl CounterexampleReport {
    /// CSV rows: `check,observed,expected,pass`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("check,observed,expected,pass\n");
        out.push_str(&format!(
            "shifted_min_sigma,{},>1,{}\n",
            fmt_f64(self.shifted_min_sigma),
            self.shifted_pass
        ));
        out.push_str(&format!(
            "exact_p_singular,{},0.5,{}\n",
            fmt_f64(self.exact_p_singular),
            self.exact_p_singular == 0.5
        ));
        out.push_str(&format!(
            "exact_p_equal_rows,{},0.25,{}\n",
            fmt_f64(self.exact_p_equal_rows),
            self.exact_p_equal_rows == 0.25
        ));
        out.push_str(&format!(
            "singular_geq_equal_rows,{},>=0.25,{}\n",
            fmt_f64(self.exact_p_singular),
            self.inequality_pass
        ));
        out.push_str(&format!(
            "mc_p_singular,{},0.5,{}\n",
            fmt_f64(self.mc_p_singular),
            self.mc_pass
        ));
        out
    }
}

/// Number of Monte Carlo samples used by each counterexample leg.
pub const COUNTEREXAMPLE_SAMPLES: u64 = 100_000;

/// Run both introductory counterexamples:
/// (a) the shifted ensemble `3I + uniform(-1,1)` at n=2 keeps
///     `sigma_min > 1` on every draw;
/// (b) sign matrices at n=2: exactly half of the 16 are singular, a quarter
///     have equal rows, the singularity bound holds with those values, and
///     the Monte Carlo estimate agrees with 1/2 at 99%.
pub fn counterexample_suite(seed: Seed, workers: usize) -> Result<CounterexampleReport> {
    let n = COUNTEREXAMPLE_SAMPLES;

    // (a) shifted ensemble.
    let shifted = EnsembleSpec::new(EnsembleKind::ShiftedUniform { shift: 3.0 }, 2)?;
    let ranges = chunk_ranges(n, &[]);
    let mins = run_chunked(&ranges, workers, |r| {
        let mut min = f64::INFINITY;
        for i in r {
            let m = shifted.sample_matrix(seed, i);
            min = min.min(linalg::sigma_min(&m).expect("square"));
        }
        min
    });
    let shifted_min_sigma = mins.into_iter().fold(f64::INFINITY, f64::min);
    let shifted_pass = shifted_min_sigma > 1.0;

    // (b) exact enumeration of 2x2 sign matrices.
    let mut singular = 0u32;
    let mut equal_rows = 0u32;
    for bits in 0u32..16 {
        let e = |b: u32| if bits >> b & 1 == 1 { 1i64 } else { -1 };
        let (a, b, c, d) = (e(0), e(1), e(2), e(3));
        if a * d - b * c == 0 {
            singular += 1;
        }
        if a == c && b == d {
            equal_rows += 1;
        }
    }
    let exact_p_singular = singular as f64 / 16.0;
    let exact_p_equal_rows = equal_rows as f64 / 16.0;
    let inequality_pass = exact_p_singular >= exact_p_equal_rows;

    // (b) Monte Carlo against the exact atom at zero.
    let rademacher = EnsembleSpec::new(EnsembleKind::RademacherIid, 2)?;
    let counts = run_chunked(&ranges, workers, |r| {
        r.filter(|&i| {
            let m = rademacher.sample_matrix(seed, i);
            linalg::sigma_min(&m).expect("square") < SINGULAR_TOL
        })
        .count() as u64
    });
    let mc_count: u64 = counts.iter().sum();
    let mc_p_singular = mc_count as f64 / n as f64;
    let ci = wilson_interval(mc_count, n, z_for_level(0.99)?);
    let mc_pass = ci.lo <= 0.5 && 0.5 <= ci.hi;

    let pass = shifted_pass
        && exact_p_singular == 0.5
        && exact_p_equal_rows == 0.25
        && inequality_pass
        && mc_pass;
    Ok(CounterexampleReport {
        shifted_min_sigma,
        shifted_samples: n,
        shifted_pass,
        exact_p_singular,
        exact_p_equal_rows,
        inequality_pass,
        mc_p_singular,
        mc_samples: n,
        mc_ci_lo: ci.lo,
        mc_ci_hi: ci.hi,
        mc_pass,
        pass,
    })
}
