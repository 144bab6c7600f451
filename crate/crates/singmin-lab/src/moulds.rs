//! Small-ball probability ratios and membership evidence.
//!
//! For a law `X` and a point `x`, the order-`m` ratio at scale `k` is
//! `k^m * P(|X - x| < 1/k)`. A point belongs to the order-`m` mould of the
//! law when the liminf of these ratios is positive. Finitely many `k` can
//! only provide evidence, never proof, so verdicts are three-valued and
//! driven by confidence-interval dominance.

use crate::error::{Error, Result};
use crate::exec::{chunk_ranges, run_chunked};
use crate::laws::VectorLaw;
use crate::linalg::RVec;
use crate::rng::Seed;
use crate::stats::{wilson_interval, KahanSum, WilsonCi};

/// Wilson quantile used throughout the small-ball machinery (95%).
pub const Z95: f64 = 1.959963984540054;

/// Default scale grid: geometric, chosen so that the expected ball counts
/// stay useful; entries with too few hits simply produce wide intervals and
/// inconclusive verdicts.
pub const DEFAULT_K_LIST: [u64; 7] = [4, 8, 16, 32, 64, 128, 256];

/// Default factor by which the running mean must grow for divergence
/// evidence in reciprocal-moment checks.
pub const DEFAULT_GROWTH_FACTOR: f64 = 1.5;

/// Empirical small-ball probability with a Wilson 95% interval.
#[derive(Debug, Clone, PartialEq)]
pub struct BallEstimate {
    pub count: u64,
    pub n: u64,
    pub p_hat: f64,
    pub ci: WilsonCi,
}

/// Fraction of `n` draws falling in the open Euclidean ball of radius `eps`
/// around `x`.
pub fn small_ball_estimate(
    law: &dyn VectorLaw,
    x: &RVec,
    eps: f64,
    n: u64,
    seed: Seed,
    workers: usize,
) -> Result<BallEstimate> {
    if !eps.is_finite() || eps <= 0.0 {
        return Err(Error::param("eps", format!("must be > 0, got {eps}")));
    }
    if n == 0 {
        return Err(Error::param("N", "need at least one draw"));
    }
    check_point(law, x)?;
    let ranges = chunk_ranges(n, &[]);
    let counts = run_chunked(&ranges, workers, |r| {
        r.filter(|&i| law.sample(seed, i).dist_l2(x) < eps).count() as u64
    });
    let count = counts.iter().sum();
    Ok(BallEstimate {
        count,
        n,
        p_hat: count as f64 / n as f64,
        ci: wilson_interval(count, n, Z95),
    })
}

/// One scale of a mould ratio sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct MouldRatioEntry {
    pub k: u64,
    /// Ball hits among the draws at radius `1/k`.
    pub count: u64,
    /// `k^m * p_hat`.
    pub ratio: f64,
    /// `k^m *` Wilson bounds.
    pub ci_lo: f64,
    pub ci_hi: f64,
}

impl MouldRatioEntry {
    pub fn half_width(&self) -> f64 {
        (self.ci_hi - self.ci_lo) / 2.0
    }
}

/// Scaled small-ball ratios of one point over a grid of `k` values, all
/// computed from the same draw set (so counts are nested across `k`).
#[derive(Debug, Clone, PartialEq)]
pub struct MouldRatioSeq {
    pub point: RVec,
    pub order: u32,
    pub entries: Vec<MouldRatioEntry>,
    pub sample_count: u64,
}

impl MouldRatioSeq {
    /// CSV rows: `k,eps,count,N,ratio,ci_lo,ci_hi`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,eps,count,N,ratio,ci_lo,ci_hi\n");
        for e in &self.entries {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                e.k,
                crate::runner::fmt_f64(1.0 / e.k as f64),
                e.count,
                self.sample_count,
                crate::runner::fmt_f64(e.ratio),
                crate::runner::fmt_f64(e.ci_lo),
                crate::runner::fmt_f64(e.ci_hi),
            ));
        }
        out
    }
}

/// Ratios `k^m * P(|X - x| < 1/k)` for every `k` in `k_list`.
pub fn mould_ratio_sequence(
    law: &dyn VectorLaw,
    x: &RVec,
    order: u32,
    k_list: &[u64],
    n: u64,
    seed: Seed,
    workers: usize,
) -> Result<MouldRatioSeq> {
    if k_list.is_empty() || k_list.windows(2).any(|w| w[0] >= w[1]) || k_list[0] == 0 {
        return Err(Error::param(
            "k_list",
            "must be non-empty and strictly increasing",
        ));
    }
    if n == 0 {
        return Err(Error::param("N", "need at least one draw"));
    }
    check_point(law, x)?;
    check_order(law, order)?;

    let radii: Vec<f64> = k_list.iter().map(|&k| 1.0 / k as f64).collect();
    let ranges = chunk_ranges(n, &[]);
    let partials = run_chunked(&ranges, workers, |r| {
        let mut counts = vec![0u64; radii.len()];
        for i in r {
            let d = law.sample(seed, i).dist_l2(x);
            for (slot, &radius) in counts.iter_mut().zip(&radii) {
                if d < radius {
                    *slot += 1;
                }
            }
        }
        counts
    });
    let mut counts = vec![0u64; radii.len()];
    for partial in partials {
        for (total, c) in counts.iter_mut().zip(partial) {
            *total += c;
        }
    }

    let entries = k_list
        .iter()
        .zip(&counts)
        .map(|(&k, &count)| {
            let scale = (k as f64).powi(order as i32);
            let ci = wilson_interval(count, n, Z95);
            MouldRatioEntry {
                k,
                count,
                ratio: scale * count as f64 / n as f64,
                ci_lo: scale * ci.lo,
                ci_hi: scale * ci.hi,
            }
        })
        .collect();
    Ok(MouldRatioSeq {
        point: x.clone(),
        order,
        entries,
        sample_count: n,
    })
}

/// Three-valued mould membership evidence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MouldVerdict {
    MemberEvidence,
    NonMemberEvidence,
    Inconclusive,
}

impl std::fmt::Display for MouldVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            MouldVerdict::MemberEvidence => "MemberEvidence",
            MouldVerdict::NonMemberEvidence => "NonMemberEvidence",
            MouldVerdict::Inconclusive => "Inconclusive",
        })
    }
}

/// Last-three-scales rule with interval dominance: evidence for membership
/// when the last three lower bounds clear the threshold, evidence against
/// when the last three upper bounds fall below it, inconclusive otherwise.
pub fn membership_verdict(seq: &MouldRatioSeq, threshold: f64) -> Result<MouldVerdict> {
    if seq.entries.len() < 3 {
        return Err(Error::param(
            "seq",
            format!("need at least 3 scales, got {}", seq.entries.len()),
        ));
    }
    let last = &seq.entries[seq.entries.len() - 3..];
    if last.iter().all(|e| e.ci_lo > threshold) {
        Ok(MouldVerdict::MemberEvidence)
    } else if last.iter().all(|e| e.ci_hi < threshold) {
        Ok(MouldVerdict::NonMemberEvidence)
    } else {
        Ok(MouldVerdict::Inconclusive)
    }
}

/// One scale of a scaled-survival report: `t * (1 - F_hat(t))` with CI.
#[derive(Debug, Clone, PartialEq)]
pub struct SurvivalEntry {
    pub t: f64,
    pub count: u64,
    pub value: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
}

/// Evidence that a positive variable has a divergent mean: its scaled
/// survival function stays bounded away from zero while the running mean
/// keeps growing.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpectationLemmaReport {
    pub entries: Vec<SurvivalEntry>,
    pub n: u64,
    /// Prefix means at N/4, N/2, 3N/4, N in sample order.
    pub running_means: Vec<(u64, f64)>,
    /// Lower CI of `t (1 - F(t))` cleared `q0` on the top decade of `t`.
    pub tail_bounded_below: bool,
    /// Prefix mean grew over the last sample-count doubling.
    pub mean_grows: bool,
    pub divergence_flag: bool,
}

/// Empirical check of the scaled-survival divergence test: flags evidence
/// when `t(1 - F_hat(t))` clears `q0` across the top decade of `t_list` and
/// the running mean still grows over the last doubling.
pub fn expectation_lemma_check(
    samples: &[f64],
    t_list: &[f64],
    q0: f64,
) -> Result<ExpectationLemmaReport> {
    if samples.is_empty() {
        return Err(Error::param("samples", "need at least one sample"));
    }
    if let Some(bad) = samples.iter().find(|v| !v.is_finite() || **v <= 0.0) {
        return Err(Error::param(
            "samples",
            format!("must be positive and finite, got {bad}"),
        ));
    }
    if t_list.is_empty() || t_list.iter().any(|t| !t.is_finite() || *t <= 0.0) {
        return Err(Error::param("t_list", "must be non-empty and positive"));
    }
    if !q0.is_finite() || q0 <= 0.0 {
        return Err(Error::param("q0", "must be > 0"));
    }
    let n = samples.len() as u64;
    let mut ts = t_list.to_vec();
    ts.sort_by(|a, b| a.partial_cmp(b).expect("finite"));

    let entries: Vec<SurvivalEntry> = ts
        .iter()
        .map(|&t| {
            let count = samples.iter().filter(|&&w| w > t).count() as u64;
            let ci = wilson_interval(count, n, Z95);
            SurvivalEntry {
                t,
                count,
                value: t * count as f64 / n as f64,
                ci_lo: t * ci.lo,
                ci_hi: t * ci.hi,
            }
        })
        .collect();

    let t_max = *ts.last().expect("non-empty");
    let tail_bounded_below = entries
        .iter()
        .filter(|e| e.t >= t_max / 10.0)
        .all(|e| e.ci_lo >= q0);

    let quarter = (samples.len() / 4).max(1);
    let mut running_means = Vec::new();
    let mut acc = KahanSum::new();
    let mut next_mark = quarter;
    for (i, &w) in samples.iter().enumerate() {
        acc.add(w);
        if i + 1 == next_mark || i + 1 == samples.len() {
            running_means.push(((i + 1) as u64, acc.value() / (i + 1) as f64));
            if i + 1 == samples.len() {
                break;
            }
            next_mark = (next_mark + quarter).min(samples.len());
        }
    }
    let half_mean = running_means
        .iter()
        .rev()
        .find(|(m, _)| *m <= n / 2)
        .map(|&(_, v)| v);
    let full_mean = running_means.last().expect("non-empty").1;
    let mean_grows = half_mean.map(|h| full_mean > h).unwrap_or(false);

    Ok(ExpectationLemmaReport {
        entries,
        n,
        running_means,
        tail_bounded_below,
        mean_grows,
        divergence_flag: tail_bounded_below && mean_grows,
    })
}

/// Running means of `1 / |X - x|^m` along a sample-count schedule.
#[derive(Debug, Clone, PartialEq)]
pub struct ReciprocalMomentReport {
    pub order: u32,
    /// `(checkpoint N, mean over included samples up to N)`. Means are
    /// `+inf` past a collision with an atomic law.
    pub checkpoints: Vec<(u64, f64)>,
    /// Exact collisions `X = x`, excluded from the means for continuous laws.
    pub collisions: u64,
    /// A collision turned the means into the infinity sentinel.
    pub poisoned: bool,
    /// Ratio of last to first checkpoint mean.
    pub growth: f64,
    pub divergence_evidence: bool,
}

/// Estimate `E[1 / |X - x|^m]` along `schedule`, flagging divergence when
/// the running mean grows by `growth_factor` from the first checkpoint to
/// the last (atomic collisions flag immediately).
pub fn reciprocal_moment_divergence(
    law: &dyn VectorLaw,
    x: &RVec,
    order: u32,
    schedule: &[u64],
    growth_factor: f64,
    seed: Seed,
    workers: usize,
) -> Result<ReciprocalMomentReport> {
    if schedule.is_empty() || schedule.windows(2).any(|w| w[0] >= w[1]) || schedule[0] == 0 {
        return Err(Error::param(
            "N_schedule",
            "must be non-empty, positive, strictly increasing",
        ));
    }
    check_point(law, x)?;
    check_order(law, order)?;
    let total = *schedule.last().expect("non-empty");

    struct Partial {
        sum: KahanSum,
        included: u64,
        collisions: u64,
        first_collision: Option<u64>,
    }

    let ranges = chunk_ranges(total, schedule);
    let partials = run_chunked(&ranges, workers, |r| {
        let mut p = Partial {
            sum: KahanSum::new(),
            included: 0,
            collisions: 0,
            first_collision: None,
        };
        for i in r {
            let d = law.sample(seed, i).dist_l2(x);
            let value = if d > 0.0 {
                d.powi(-(order as i32))
            } else {
                f64::INFINITY
            };
            if value.is_finite() {
                p.sum.add(value);
                p.included += 1;
            } else {
                p.collisions += 1;
                p.first_collision.get_or_insert(i);
            }
        }
        p
    });

    let atomic = law.atomic();
    let mut acc = KahanSum::new();
    let mut included = 0u64;
    let mut collisions = 0u64;
    let mut poisoned_from: Option<u64> = None;
    let mut checkpoints = Vec::with_capacity(schedule.len());
    let mut next = schedule.iter().copied().peekable();
    for (range, p) in ranges.iter().zip(&partials) {
        acc.merge(&p.sum);
        included += p.included;
        collisions += p.collisions;
        if atomic {
            if let Some(first) = p.first_collision {
                poisoned_from.get_or_insert(first);
            }
        }
        while let Some(&mark) = next.peek() {
            if range.end == mark {
                let mean = if poisoned_from.is_some_and(|f| f < mark) {
                    f64::INFINITY
                } else if included > 0 {
                    acc.value() / included as f64
                } else {
                    0.0
                };
                checkpoints.push((mark, mean));
                next.next();
            } else {
                break;
            }
        }
    }

    let first = checkpoints.first().expect("non-empty").1;
    let last = checkpoints.last().expect("non-empty").1;
    let poisoned = poisoned_from.is_some();
    let growth = if last.is_infinite() {
        f64::INFINITY
    } else if first > 0.0 {
        last / first
    } else {
        0.0
    };
    Ok(ReciprocalMomentReport {
        order,
        checkpoints,
        collisions,
        poisoned,
        growth,
        divergence_evidence: poisoned || growth >= growth_factor,
    })
}

/// Outcome of the dilation event-inclusion check.
#[derive(Debug, Clone, PartialEq)]
pub struct DilationReport {
    pub checked: u64,
    pub violations: u64,
    /// Up to eight violating draws: `(index, |X - x|, |d(X) - d(x)|)`.
    pub violating_samples: Vec<(u64, f64, f64)>,
    /// Ratio sequence at the map's target order, from the same draws.
    pub ratio_seq: MouldRatioSeq,
}

/// Verify per sample that `|d(X) - d(x)| >= c |X - x|`, the pointwise form
/// of the event inclusion `(|X - x| < eps) contains (|d(X) - d(x)| < c eps)`
/// for every `eps` at once. Reports the order-`m` ratio sequence of `x`
/// (`m` = target dimension) alongside.
pub fn dilation_pushforward_check(
    law: &dyn VectorLaw,
    map: &(dyn Fn(&RVec) -> RVec + Sync),
    c: f64,
    x: &RVec,
    n: u64,
    seed: Seed,
    workers: usize,
) -> Result<DilationReport> {
    if !c.is_finite() || c <= 0.0 {
        return Err(Error::param("c", format!("must be > 0, got {c}")));
    }
    if n == 0 {
        return Err(Error::param("N", "need at least one draw"));
    }
    check_point(law, x)?;
    let mapped_x = map(x);
    let order = mapped_x.dim() as u32;

    struct Partial {
        counts: Vec<u64>,
        violations: Vec<(u64, f64, f64)>,
    }

    let radii: Vec<f64> = DEFAULT_K_LIST.iter().map(|&k| 1.0 / k as f64).collect();
    let ranges = chunk_ranges(n, &[]);
    let partials = run_chunked(&ranges, workers, |r| {
        let mut p = Partial {
            counts: vec![0; radii.len()],
            violations: Vec::new(),
        };
        for i in r {
            let sample = law.sample(seed, i);
            let dist_x = sample.dist_l2(x);
            let dist_d = map(&sample).dist_l2(&mapped_x);
            // Tiny relative slack: the two distances round independently.
            let slack = 1e-12 * (c * dist_x).max(dist_d);
            if dist_d + slack < c * dist_x {
                p.violations.push((i, dist_x, dist_d));
            }
            for (slot, &radius) in p.counts.iter_mut().zip(&radii) {
                if dist_x < radius {
                    *slot += 1;
                }
            }
        }
        p
    });

    let mut counts = vec![0u64; radii.len()];
    let mut violations = 0u64;
    let mut violating_samples = Vec::new();
    for p in &partials {
        for (total, c) in counts.iter_mut().zip(&p.counts) {
            *total += c;
        }
        violations += p.violations.len() as u64;
        for v in &p.violations {
            if violating_samples.len() < 8 {
                violating_samples.push(*v);
            }
        }
    }

    let entries = DEFAULT_K_LIST
        .iter()
        .zip(&counts)
        .map(|(&k, &count)| {
            let scale = (k as f64).powi(order as i32);
            let ci = wilson_interval(count, n, Z95);
            MouldRatioEntry {
                k,
                count,
                ratio: scale * count as f64 / n as f64,
                ci_lo: scale * ci.lo,
                ci_hi: scale * ci.hi,
            }
        })
        .collect();

    Ok(DilationReport {
        checked: n,
        violations,
        violating_samples,
        ratio_seq: MouldRatioSeq {
            point: x.clone(),
            order,
            entries,
            sample_count: n,
        },
    })
}

fn check_point(law: &dyn VectorLaw, x: &RVec) -> Result<()> {
    if law.dim() != x.dim() {
        return Err(Error::param(
            "point",
            format!(
                "dimension {} does not match the law's {}",
                x.dim(),
                law.dim()
            ),
        ));
    }
    Ok(())
}

fn check_order(law: &dyn VectorLaw, order: u32) -> Result<()> {
    let max = law.dim() as u32 + 2;
    if order > max {
        return Err(Error::param(
            "order",
            format!("orders above dim + 2 = {max} are out of scope, got {order}"),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laws::{AtomMixture, PointMass, UniformBox};

    const SQRT3: f64 = 1.732_050_807_568_877_2;

    #[test]
    fn scalar_uniform_ball_matches_length_ratio() {
        // Uniform on [-sqrt(3), sqrt(3)]: P(|X| < 0.1) = 0.1 / sqrt(3).
        let law = UniformBox {
            dim: 1,
            lo: -SQRT3,
            hi: SQRT3,
        };
        let est = small_ball_estimate(&law, &RVec::zeros(1), 0.1, 200_000, Seed(5), 1).unwrap();
        let truth = 0.057_735_026_918_962_58;
        assert!(
            est.ci.lo <= truth && truth <= est.ci.hi,
            "CI [{}, {}] missed {truth}",
            est.ci.lo,
            est.ci.hi
        );
    }

    #[test]
    fn point_mass_hits_always() {
        let law = PointMass {
            point: RVec::new(vec![1.0, 2.0]).unwrap(),
        };
        let x = RVec::new(vec![1.0, 2.0]).unwrap();
        let est = small_ball_estimate(&law, &x, 1e-6, 1000, Seed(0), 1).unwrap();
        assert_eq!(est.p_hat, 1.0);
    }

    #[test]
    fn outside_support_is_zero() {
        let law = UniformBox {
            dim: 2,
            lo: 0.0,
            hi: 1.0,
        };
        let x = RVec::new(vec![2.0, 2.0]).unwrap();
        let est = small_ball_estimate(&law, &x, 0.5, 10_000, Seed(1), 1).unwrap();
        assert_eq!(est.count, 0);
    }

    #[test]
    fn ratio_sequence_order_one_calibration() {
        // Uniform on [0,1], x = 0.5: P(|X - x| < 1/k) = 2/k, so the order-1
        // ratios concentrate near 2.
        let law = UniformBox {
            dim: 1,
            lo: 0.0,
            hi: 1.0,
        };
        let x = RVec::new(vec![0.5]).unwrap();
        let seq = mould_ratio_sequence(&law, &x, 1, &[64, 128, 256], 200_000, Seed(9), 1).unwrap();
        for e in &seq.entries {
            assert!(
                e.ci_lo <= 2.0 && 2.0 <= e.ci_hi,
                "k={} ratio CI missed 2: {e:?}",
                e.k
            );
            assert!((e.ratio - 2.0).abs() < 0.2);
        }
        assert_eq!(
            membership_verdict(&seq, 0.5).unwrap(),
            MouldVerdict::MemberEvidence
        );
    }

    #[test]
    fn ratio_sequence_order_zero_decays() {
        // Order 0 asks for an atom: the scaled ratio is the raw probability
        // 2/k, which decays below any fixed positive threshold.
        let law = UniformBox {
            dim: 1,
            lo: 0.0,
            hi: 1.0,
        };
        let x = RVec::new(vec![0.5]).unwrap();
        let ks: Vec<u64> = DEFAULT_K_LIST.to_vec();
        let seq = mould_ratio_sequence(&law, &x, 0, &ks, 200_000, Seed(9), 1).unwrap();
        assert_eq!(
            membership_verdict(&seq, 0.5).unwrap(),
            MouldVerdict::NonMemberEvidence
        );
    }

    #[test]
    fn atom_dominates_every_polynomial_order() {
        let atom = RVec::new(vec![0.25, 0.25]).unwrap();
        let law = AtomMixture {
            atom: atom.clone(),
            weight: 0.3,
            background: UniformBox {
                dim: 2,
                lo: 0.0,
                hi: 1.0,
            },
        };
        let seq =
            mould_ratio_sequence(&law, &atom, 1, &[4, 8, 16, 32], 50_000, Seed(4), 1).unwrap();
        // Ratios >= k * (p - CI), diverging in k.
        for e in &seq.entries {
            assert!(e.ratio >= e.k as f64 * 0.25, "k={}: {}", e.k, e.ratio);
        }
        assert_eq!(
            membership_verdict(&seq, 1.0).unwrap(),
            MouldVerdict::MemberEvidence
        );
    }

    #[test]
    fn tiny_samples_are_inconclusive() {
        let law = UniformBox {
            dim: 1,
            lo: 0.0,
            hi: 1.0,
        };
        let x = RVec::new(vec![0.5]).unwrap();
        let seq = mould_ratio_sequence(&law, &x, 1, &[64, 128, 256], 50, Seed(3), 1).unwrap();
        assert_eq!(
            membership_verdict(&seq, 0.5).unwrap(),
            MouldVerdict::Inconclusive
        );
    }

    #[test]
    fn verdict_needs_three_scales() {
        let law = UniformBox {
            dim: 1,
            lo: 0.0,
            hi: 1.0,
        };
        let x = RVec::new(vec![0.5]).unwrap();
        let seq = mould_ratio_sequence(&law, &x, 1, &[64, 128], 1000, Seed(2), 1).unwrap();
        assert!(membership_verdict(&seq, 0.5).is_err());
    }

    #[test]
    fn nesting_of_orders_is_pointwise() {
        // k^m p >= k^l p for m >= l and k >= 1: same counts, larger scaling.
        let law = UniformBox {
            dim: 2,
            lo: 0.0,
            hi: 1.0,
        };
        let x = RVec::new(vec![0.4, 0.6]).unwrap();
        let ks = [2u64, 4, 8, 16];
        let lo = mould_ratio_sequence(&law, &x, 1, &ks, 20_000, Seed(3), 1).unwrap();
        let hi = mould_ratio_sequence(&law, &x, 2, &ks, 20_000, Seed(3), 1).unwrap();
        for (a, b) in lo.entries.iter().zip(&hi.entries) {
            assert_eq!(a.count, b.count, "same draw set must give same counts");
            assert!(b.ratio >= a.ratio);
        }
    }

    #[test]
    fn expectation_lemma_reciprocal_uniform() {
        // W = 1/U has t(1 - F(t)) = 1 exactly for t >= 1.
        let law = UniformBox {
            dim: 1,
            lo: 0.0,
            hi: 1.0,
        };
        let samples: Vec<f64> = (0..100_000)
            .map(|i| 1.0 / law.sample(Seed(8), i).get(0).max(1e-300))
            .collect();
        let ts: Vec<f64> = (0..10).map(|i| 2f64.powi(i)).collect();
        let rep = expectation_lemma_check(&samples, &ts, 0.5).unwrap();
        assert!(rep.tail_bounded_below);
        assert!(rep.mean_grows);
        assert!(rep.divergence_flag);
    }

    #[test]
    fn expectation_lemma_bounded_variable() {
        let law = UniformBox {
            dim: 1,
            lo: 0.0,
            hi: 1.0,
        };
        let samples: Vec<f64> = (0..50_000)
            .map(|i| law.sample(Seed(8), i).get(0) + 1e-12)
            .collect();
        let ts = [0.125, 0.25, 0.5, 1.0, 2.0, 4.0];
        let rep = expectation_lemma_check(&samples, &ts, 0.05).unwrap();
        assert!(!rep.tail_bounded_below);
        assert!(!rep.divergence_flag);
    }

    #[test]
    fn expectation_lemma_stronger_tail() {
        // W = 1/U^2 has tail index 1/2: t(1 - F(t)) = sqrt(t) -> infinity.
        let law = UniformBox {
            dim: 1,
            lo: 0.0,
            hi: 1.0,
        };
        let samples: Vec<f64> = (0..100_000)
            .map(|i| {
                let u = law.sample(Seed(8), i).get(0).max(1e-300);
                1.0 / (u * u)
            })
            .collect();
        let ts: Vec<f64> = (0..10).map(|i| 4f64.powi(i)).collect();
        let rep = expectation_lemma_check(&samples, &ts, 0.5).unwrap();
        assert!(rep.divergence_flag);
    }

    #[test]
    fn expectation_lemma_rejects_nonpositive() {
        assert!(expectation_lemma_check(&[1.0, 0.0], &[1.0], 0.1).is_err());
        assert!(expectation_lemma_check(&[1.0, -2.0], &[1.0], 0.1).is_err());
    }

    #[test]
    fn reciprocal_moment_log_divergence_vs_convergence() {
        let law = UniformBox {
            dim: 2,
            lo: 0.0,
            hi: 1.0,
        };
        let x = RVec::new(vec![0.5, 0.5]).unwrap();
        let schedule = [1000, 10_000, 100_000];
        // m = 2: E diverges logarithmically; m = 1: the radial integral is
        // finite, so the running mean settles.
        let diverging =
            reciprocal_moment_divergence(&law, &x, 2, &schedule, 1.2, Seed(21), 1).unwrap();
        assert!(diverging.growth > 1.0);
        let converging =
            reciprocal_moment_divergence(&law, &x, 1, &schedule, 1.5, Seed(21), 1).unwrap();
        assert!(
            !converging.divergence_evidence,
            "growth {}",
            converging.growth
        );
        assert_eq!(converging.collisions, 0);
    }

    #[test]
    fn reciprocal_moment_atom_poisons() {
        let atom = RVec::new(vec![0.5, 0.5]).unwrap();
        let law = AtomMixture {
            atom: atom.clone(),
            weight: 0.5,
            background: UniformBox {
                dim: 2,
                lo: 0.0,
                hi: 1.0,
            },
        };
        let rep =
            reciprocal_moment_divergence(&law, &atom, 1, &[100, 1000], 1.5, Seed(2), 1).unwrap();
        assert!(rep.poisoned);
        assert!(rep.divergence_evidence);
        assert!(rep.checkpoints.last().unwrap().1.is_infinite());
        assert!(rep.collisions > 0);
    }

    #[test]
    fn small_ball_monotone_in_eps() {
        let law = UniformBox {
            dim: 2,
            lo: 0.0,
            hi: 1.0,
        };
        let x = RVec::new(vec![0.3, 0.7]).unwrap();
        let mut prev = 0;
        for eps in [0.05, 0.1, 0.2, 0.4] {
            let est = small_ball_estimate(&law, &x, eps, 20_000, Seed(6), 1).unwrap();
            assert!(est.count >= prev, "counts must nest across eps");
            prev = est.count;
        }
    }

    #[test]
    fn order_above_dim_plus_two_rejected() {
        let law = UniformBox {
            dim: 1,
            lo: 0.0,
            hi: 1.0,
        };
        let x = RVec::new(vec![0.5]).unwrap();
        assert!(mould_ratio_sequence(&law, &x, 4, &[4, 8], 100, Seed(0), 1).is_err());
    }
}
