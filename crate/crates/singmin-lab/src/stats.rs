//! Statistical utilities: Wilson score intervals, the normal quantile,
//! compensated summation, and the Kolmogorov-Smirnov distance.

use crate::error::{Error, Result};

/// Two-sided normal quantile for the central confidence level, e.g.
/// `0.95 -> 1.959964`.
pub fn z_for_level(level: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&level) || level <= 0.0 {
        return Err(Error::param(
            "ci_level",
            format!("must be in (0, 1), got {level}"),
        ));
    }
    Ok(probit(0.5 + level / 2.0))
}

/// Inverse standard normal CDF (Wichura's AS 241, double precision).
pub fn probit(p: f64) -> f64 {
    assert!(p > 0.0 && p < 1.0, "probit domain is (0, 1), got {p}");
    let q = p - 0.5;
    if q.abs() <= 0.425 {
        let r = 0.180625 - q * q;
        return q * poly(&PROBIT_A, r) / poly(&PROBIT_B, r);
    }
    let mut r = if q < 0.0 { p } else { 1.0 - p };
    r = (-r.ln()).sqrt();
    let val = if r <= 5.0 {
        let r = r - 1.6;
        poly(&PROBIT_C, r) / poly(&PROBIT_D, r)
    } else {
        let r = r - 5.0;
        poly(&PROBIT_E, r) / poly(&PROBIT_F, r)
    };
    if q < 0.0 {
        -val
    } else {
        val
    }
}

fn poly(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

const PROBIT_A: [f64; 8] = [
    3.387_132_872_796_366_5e0,
    1.331_416_678_917_843_8e2,
    1.971_590_950_306_551_3e3,
    1.373_169_376_550_946_1e4,
    4.592_195_393_154_987e4,
    6.726_577_092_700_87e4,
    3.343_057_558_358_813e4,
    2.509_080_928_730_122_7e3,
];
const PROBIT_B: [f64; 8] = [
    1.0,
    4.231_333_070_160_091e1,
    6.871_870_074_920_579e2,
    5.394_196_021_424_751e3,
    2.121_379_430_158_659_6e4,
    3.930_789_580_009_271e4,
    2.872_908_573_572_194_3e4,
    5.226_495_278_852_545_5e3,
];
const PROBIT_C: [f64; 8] = [
    1.423_437_110_749_683_5e0,
    4.630_337_846_156_546e0,
    5.769_497_221_460_691e0,
    3.647_848_324_763_204_5e0,
    1.270_458_252_452_368_4e0,
    2.417_807_251_774_506e-1,
    2.272_384_498_926_918_4e-2,
    7.745_450_142_783_414e-4,
];
const PROBIT_D: [f64; 8] = [
    1.0,
    2.053_191_626_637_759e0,
    1.676_384_830_183_803_8e0,
    6.897_673_349_851e-1,
    1.481_039_764_274_800_8e-1,
    1.519_866_656_361_645_7e-2,
    5.475_938_084_995_345e-4,
    1.050_750_071_644_416_9e-9,
];
const PROBIT_E: [f64; 8] = [
    6.657_904_643_501_103e0,
    5.463_784_911_164_114e0,
    1.784_826_539_917_291_3e0,
    2.965_605_718_285_048_7e-1,
    2.653_218_952_657_612_4e-2,
    1.242_660_947_388_078_4e-3,
    2.711_555_568_743_487_6e-5,
    2.010_334_399_292_288_1e-7,
];
const PROBIT_F: [f64; 8] = [
    1.0,
    5.998_322_065_558_88e-1,
    1.369_298_809_227_358e-1,
    1.487_536_129_085_061_5e-2,
    7.868_691_311_456_133e-4,
    1.846_318_317_510_054_8e-5,
    1.421_511_758_316_446e-7,
    2.044_263_103_389_939_7e-15,
];

/// Wilson score interval for a binomial proportion. Valid near p = 0, which
/// is the small-ball regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WilsonCi {
    pub lo: f64,
    pub hi: f64,
}

impl WilsonCi {
    pub fn half_width(&self) -> f64 {
        (self.hi - self.lo) / 2.0
    }
}

/// Wilson interval for `count` successes out of `n` at normal quantile `z`.
pub fn wilson_interval(count: u64, n: u64, z: f64) -> WilsonCi {
    assert!(n > 0 && count <= n);
    let nf = n as f64;
    let p = count as f64 / nf;
    let z2 = z * z;
    let denom = 1.0 + z2 / nf;
    let center = (p + z2 / (2.0 * nf)) / denom;
    let hw = z / denom * (p * (1.0 - p) / nf + z2 / (4.0 * nf * nf)).sqrt();
    // The bounds at p = 0 and p = 1 are exactly 0 and 1; keep them free of
    // last-ulp rounding.
    let lo = if count == 0 {
        0.0
    } else {
        (center - hw).max(0.0)
    };
    let hi = if count == n {
        1.0
    } else {
        (center + hw).min(1.0)
    };
    WilsonCi { lo, hi }
}

/// Neumaier-compensated accumulator. Inputs must be finite.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        debug_assert!(x.is_finite());
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    /// Merge another accumulator (chunked summation; order matters and is
    /// fixed by the caller).
    pub fn merge(&mut self, other: &KahanSum) {
        self.add(other.sum);
        self.comp += other.comp;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Kolmogorov-Smirnov distance between the empirical law of `samples` and a
/// reference CDF. Sorts a copy of the input.
pub fn ks_distance(samples: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    assert!(!samples.is_empty());
    let mut xs = samples.to_vec();
    xs.sort_by(|a, b| a.partial_cmp(b).expect("finite samples"));
    let n = xs.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        let f = cdf(x);
        d = d.max((f - i as f64 / n).abs());
        d = d.max(((i + 1) as f64 / n - f).abs());
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn probit_reference_values() {
        assert_eq!(probit(0.5), 0.0);
        assert_relative_eq!(probit(0.975), 1.959963984540054, max_relative = 1e-13);
        assert_relative_eq!(probit(0.995), 2.5758293035489004, max_relative = 1e-13);
        assert_relative_eq!(probit(0.9), 1.2815515655446004, max_relative = 1e-13);
        assert_relative_eq!(probit(0.3), -0.5244005127080409, max_relative = 1e-13);
        assert_relative_eq!(probit(1e-9), -5.9978070150076865, max_relative = 1e-12);
        assert_relative_eq!(probit(0.0995), -probit(0.9005), max_relative = 1e-12);
    }

    #[test]
    fn z_for_level_matches_wilson_usage() {
        assert_relative_eq!(
            z_for_level(0.95).unwrap(),
            1.959963984540054,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            z_for_level(0.99).unwrap(),
            2.5758293035489004,
            max_relative = 1e-13
        );
        assert!(z_for_level(1.0).is_err());
        assert!(z_for_level(0.0).is_err());
    }

    #[test]
    fn wilson_contains_point_estimate() {
        for (count, n) in [(0u64, 100u64), (1, 100), (50, 100), (100, 100), (3, 7)] {
            let ci = wilson_interval(count, n, 1.959963984540054);
            let p = count as f64 / n as f64;
            assert!(ci.lo <= p && p <= ci.hi, "{count}/{n}: {ci:?}");
            assert!(ci.lo >= 0.0 && ci.hi <= 1.0);
        }
    }

    #[test]
    fn wilson_zero_count_has_positive_upper() {
        let ci = wilson_interval(0, 1000, 1.959963984540054);
        assert_eq!(ci.lo, 0.0);
        assert!(ci.hi > 0.0 && ci.hi < 0.01);
    }

    #[test]
    fn kahan_beats_naive_on_adversarial_input() {
        let mut k = KahanSum::new();
        k.add(1e16);
        for _ in 0..10 {
            k.add(1.0);
        }
        k.add(-1e16);
        assert_eq!(k.value(), 10.0);
    }

    #[test]
    fn ks_of_exact_grid_is_small() {
        // Points at (i + 0.5) / n under the uniform CDF: distance 0.5 / n.
        let n = 100;
        let xs: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect();
        let d = ks_distance(&xs, |x| x.clamp(0.0, 1.0));
        assert_relative_eq!(d, 0.5 / n as f64, max_relative = 1e-12);
    }
}
