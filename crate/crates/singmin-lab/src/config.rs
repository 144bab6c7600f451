//! Experiment configuration: a flat, diff-friendly `key=value` grammar.
//!
//! Lines are `key=value`, `#` starts a comment, blank lines are ignored.
//! Unknown keys are rejected with their line number; constraint violations
//! name the offending key.

use std::collections::BTreeMap;
use std::path::PathBuf;

use crate::ensembles::{EnsembleKind, EnsembleSpec};
use crate::error::{Error, Result};
use crate::linalg::{PNorm, RVec};
use crate::moulds::DEFAULT_K_LIST;
use crate::rng::Seed;

/// Experiment selector, one per engine plus the acceptance runner.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    Cdf,
    Ratio,
    Sandwich,
    Power,
    Kappa,
    AlphaSweep,
    Mould,
    Tail,
    Counterexamples,
    Verify,
}

impl ExperimentKind {
    pub fn label(self) -> &'static str {
        match self {
            ExperimentKind::Cdf => "cdf",
            ExperimentKind::Ratio => "ratio",
            ExperimentKind::Sandwich => "sandwich",
            ExperimentKind::Power => "power",
            ExperimentKind::Kappa => "kappa",
            ExperimentKind::AlphaSweep => "alpha-sweep",
            ExperimentKind::Mould => "mould",
            ExperimentKind::Tail => "tail",
            ExperimentKind::Counterexamples => "counterexamples",
            ExperimentKind::Verify => "verify",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "cdf" => ExperimentKind::Cdf,
            "ratio" => ExperimentKind::Ratio,
            "sandwich" => ExperimentKind::Sandwich,
            "power" => ExperimentKind::Power,
            "kappa" => ExperimentKind::Kappa,
            "alpha-sweep" => ExperimentKind::AlphaSweep,
            "mould" => ExperimentKind::Mould,
            "tail" => ExperimentKind::Tail,
            "counterexamples" => ExperimentKind::Counterexamples,
            "verify" => ExperimentKind::Verify,
            _ => return None,
        })
    }

    fn needs_ensemble(self) -> bool {
        !matches!(
            self,
            ExperimentKind::Counterexamples | ExperimentKind::Verify
        )
    }
}

/// A fully resolved experiment description.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub ensemble: Option<EnsembleSpec>,
    pub n_samples: u64,
    pub seed: Seed,
    pub eps_grid: Vec<f64>,
    pub k_list: Vec<u64>,
    pub alpha_grid: Vec<f64>,
    pub n_schedule: Vec<u64>,
    pub norm: PNorm,
    /// Center point for mould experiments (defaults to the origin).
    pub point: Option<RVec>,
    /// Mould order m.
    pub order: u32,
    /// Membership verdict threshold.
    pub threshold: f64,
    /// Half-width for the power identity event.
    pub eps: f64,
    pub workers: usize,
    pub out_prefix: PathBuf,
    pub ci_level: f64,
}

impl ExperimentConfig {
    /// Echo in the same grammar `parse_config` accepts.
    pub fn echo(&self) -> String {
        let mut s = format!("experiment={}\n", self.kind.label());
        if let Some(spec) = &self.ensemble {
            s.push_str(&format!("ensemble={}\n", spec.kind().label()));
            s.push_str(&format!("n={}\n", spec.n()));
            match spec.kind() {
                EnsembleKind::LowDimRow { m } => s.push_str(&format!("m={m}\n")),
                EnsembleKind::ShiftedUniform { shift } => {
                    s.push_str(&format!("shift={}\n", fmt_num(shift)))
                }
                _ => {}
            }
        }
        s.push_str(&format!("N={}\n", self.n_samples));
        s.push_str(&format!("seed={}\n", self.seed.0));
        s.push_str(&format!("eps_grid={}\n", join_f64(&self.eps_grid)));
        s.push_str(&format!(
            "k_list={}\n",
            self.k_list
                .iter()
                .map(|k| k.to_string())
                .collect::<Vec<_>>()
                .join(",")
        ));
        s.push_str(&format!("alpha_grid={}\n", join_f64(&self.alpha_grid)));
        s.push_str(&format!(
            "N_schedule={}\n",
            self.n_schedule
                .iter()
                .map(|n| n.to_string())
                .collect::<Vec<_>>()
                .join(",")
        ));
        s.push_str(&format!("norm={}\n", self.norm.label()));
        if let Some(p) = &self.point {
            s.push_str(&format!("point={}\n", join_f64(p.as_slice())));
        }
        s.push_str(&format!("order={}\n", self.order));
        s.push_str(&format!("threshold={}\n", fmt_num(self.threshold)));
        s.push_str(&format!("eps={}\n", fmt_num(self.eps)));
        s.push_str(&format!("workers={}\n", self.workers));
        s.push_str(&format!("out={}\n", self.out_prefix.display()));
        s.push_str(&format!("ci_level={}\n", fmt_num(self.ci_level)));
        s
    }
}

fn fmt_num(x: f64) -> String {
    // Shortest representation that round-trips.
    format!("{x}")
}

fn join_f64(xs: &[f64]) -> String {
    xs.iter().map(|x| fmt_num(*x)).collect::<Vec<_>>().join(",")
}

/// Default epsilon grid: geometric with eight points per decade from 1e-3
/// to 1e-1.
pub fn default_eps_grid() -> Vec<f64> {
    geometric_grid(1e-3, 1e-1, 8)
}

/// Geometric grid from `lo` to `hi` with `per_decade` points per decade;
/// `hi` is always included.
pub fn geometric_grid(lo: f64, hi: f64, per_decade: u32) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo && per_decade > 0);
    let step = 10f64.powf(1.0 / per_decade as f64);
    let mut grid = Vec::new();
    let mut x = lo;
    while x < hi * (1.0 - 1e-12) {
        grid.push(x);
        x *= step;
    }
    grid.push(hi);
    grid
}

struct Raw {
    line: usize,
    value: String,
}

/// Parse the line-oriented grammar into a validated configuration.
pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    const KNOWN: &[&str] = &[
        "experiment",
        "ensemble",
        "n",
        "m",
        "shift",
        "N",
        "seed",
        "eps_grid",
        "k_list",
        "alpha_grid",
        "N_schedule",
        "norm",
        "point",
        "order",
        "threshold",
        "eps",
        "workers",
        "out",
        "ci_level",
    ];

    let mut entries: BTreeMap<String, Raw> = BTreeMap::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::Config {
                line: line_no,
                message: format!("expected key=value, got '{line}'"),
            });
        };
        let key = key.trim();
        let value = value.trim();
        if !KNOWN.contains(&key) {
            return Err(Error::Config {
                line: line_no,
                message: format!("unknown key '{key}'"),
            });
        }
        if entries.contains_key(key) {
            return Err(Error::Config {
                line: line_no,
                message: format!("duplicate key '{key}'"),
            });
        }
        entries.insert(
            key.to_string(),
            Raw {
                line: line_no,
                value: value.to_string(),
            },
        );
    }

    let take = |key: &str| entries.get(key);
    let parse_u64 = |key: &str| -> Result<Option<u64>> {
        match take(key) {
            None => Ok(None),
            Some(raw) => raw
                .value
                .parse::<u64>()
                .map(Some)
                .map_err(|_| Error::Config {
                    line: raw.line,
                    message: format!(
                        "key '{key}': expected a non-negative integer, got '{}'",
                        raw.value
                    ),
                }),
        }
    };
    let parse_f64 = |key: &str| -> Result<Option<f64>> {
        match take(key) {
            None => Ok(None),
            Some(raw) => raw
                .value
                .parse::<f64>()
                .map(Some)
                .map_err(|_| Error::Config {
                    line: raw.line,
                    message: format!("key '{key}': expected a number, got '{}'", raw.value),
                }),
        }
    };

    let kind = match take("experiment") {
        None => {
            return Err(Error::Config {
                line: 0,
                message: "missing required key 'experiment'".into(),
            })
        }
        Some(raw) => ExperimentKind::parse(&raw.value).ok_or_else(|| Error::Config {
            line: raw.line,
            message: format!("unknown experiment '{}'", raw.value),
        })?,
    };

    let ensemble = match take("ensemble") {
        None if kind.needs_ensemble() => {
            return Err(Error::Config {
                line: 0,
                message: format!("experiment '{}' requires an ensemble", kind.label()),
            })
        }
        None => {
            for k in ["n", "m", "shift"] {
                if let Some(raw) = take(k) {
                    return Err(Error::Config {
                        line: raw.line,
                        message: format!("key '{k}' is only meaningful with an ensemble"),
                    });
                }
            }
            None
        }
        Some(raw) => {
            let n = parse_u64("n")?.ok_or_else(|| Error::Config {
                line: raw.line,
                message: "ensemble needs the matrix dimension key 'n'".into(),
            })? as usize;
            let m = parse_u64("m")?;
            let shift = parse_f64("shift")?;
            let kind_token = raw.value.as_str();
            if m.is_some() && kind_token != "lowdim" {
                let bad = take("m").expect("present");
                return Err(Error::Config {
                    line: bad.line,
                    message: "key 'm' is only valid for ensemble=lowdim".into(),
                });
            }
            if shift.is_some() && kind_token != "shifted" {
                let bad = take("shift").expect("present");
                return Err(Error::Config {
                    line: bad.line,
                    message: "key 'shift' is only valid for ensemble=shifted".into(),
                });
            }
            let ekind = match kind_token {
                "gaussian" => EnsembleKind::GaussianIid,
                "uniform-cube" => EnsembleKind::LogConcaveUniformCube,
                "laplace" => EnsembleKind::LogConcaveLaplace,
                "rademacher" => EnsembleKind::RademacherIid,
                "cauchy" => EnsembleKind::CauchyIid,
                "sphere" => EnsembleKind::SphereRow,
                "lowdim" => EnsembleKind::LowDimRow {
                    m: m.ok_or_else(|| Error::Config {
                        line: raw.line,
                        message: "ensemble=lowdim needs key 'm'".into(),
                    })? as usize,
                },
                "shifted" => EnsembleKind::ShiftedUniform {
                    shift: shift.unwrap_or(3.0),
                },
                other => {
                    return Err(Error::Config {
                        line: raw.line,
                        message: format!("unknown ensemble '{other}'"),
                    })
                }
            };
            Some(EnsembleSpec::new(ekind, n)?)
        }
    };

    let n_samples = parse_u64("N")?.unwrap_or(100_000);
    if n_samples == 0 {
        let raw = take("N").expect("present");
        return Err(Error::Config {
            line: raw.line,
            message: "key 'N': must be >= 1".into(),
        });
    }
    let seed = Seed(parse_u64("seed")?.unwrap_or(0));
    let workers = parse_u64("workers")?.unwrap_or(1) as usize;
    if workers == 0 {
        let raw = take("workers").expect("present");
        return Err(Error::Config {
            line: raw.line,
            message: "key 'workers': must be >= 1".into(),
        });
    }
    let ci_level = parse_f64("ci_level")?.unwrap_or(0.95);
    if !(ci_level > 0.0 && ci_level < 1.0) {
        let raw = take("ci_level").expect("present");
        return Err(Error::Config {
            line: raw.line,
            message: "key 'ci_level': must lie in (0, 1)".into(),
        });
    }

    let eps_grid = match take("eps_grid") {
        // The default grid carries the n^(-1/2) normalization under which
        // the small-sigma behavior is dimension-comparable.
        None => {
            let scale = ensemble.map_or(1.0, |e| 1.0 / (e.n() as f64).sqrt());
            default_eps_grid().into_iter().map(|e| e * scale).collect()
        }
        Some(raw) => parse_eps_grid(&raw.value).map_err(|message| Error::Config {
            line: raw.line,
            message: format!("key 'eps_grid': {message}"),
        })?,
    };

    let k_list = match take("k_list") {
        None => DEFAULT_K_LIST.to_vec(),
        Some(raw) => {
            let ks: std::result::Result<Vec<u64>, _> = raw
                .value
                .split(',')
                .map(|t| t.trim().parse::<u64>())
                .collect();
            let ks = ks.map_err(|_| Error::Config {
                line: raw.line,
                message: "key 'k_list': expected comma-separated integers".into(),
            })?;
            if ks.is_empty() || ks.windows(2).any(|w| w[0] >= w[1]) || ks[0] == 0 {
                return Err(Error::Config {
                    line: raw.line,
                    message: "key 'k_list': must be strictly increasing and positive".into(),
                });
            }
            ks
        }
    };

    let alpha_grid = match take("alpha_grid") {
        None => vec![0.25, 0.5, 0.7, 1.0, 1.2],
        Some(raw) => {
            let xs = parse_f64_list(&raw.value).map_err(|message| Error::Config {
                line: raw.line,
                message: format!("key 'alpha_grid': {message}"),
            })?;
            if xs.iter().any(|a| !a.is_finite() || *a < 0.0 || *a > 1.2) {
                return Err(Error::Config {
                    line: raw.line,
                    message: "key 'alpha_grid': exponents must lie in [0, 1.2]".into(),
                });
            }
            xs
        }
    };

    let n_schedule = match take("N_schedule") {
        None => {
            let mut s: Vec<u64> = [n_samples / 100, n_samples / 10, n_samples]
                .into_iter()
                .filter(|&x| x > 0)
                .collect();
            s.dedup();
            s
        }
        Some(raw) => {
            let xs: std::result::Result<Vec<u64>, _> = raw
                .value
                .split(',')
                .map(|t| t.trim().parse::<u64>())
                .collect();
            let xs = xs.map_err(|_| Error::Config {
                line: raw.line,
                message: "key 'N_schedule': expected comma-separated integers".into(),
            })?;
            if xs.is_empty() || xs.windows(2).any(|w| w[0] >= w[1]) || xs[0] == 0 {
                return Err(Error::Config {
                    line: raw.line,
                    message: "key 'N_schedule': must be strictly increasing and positive".into(),
                });
            }
            xs
        }
    };

    let norm = match take("norm") {
        None => PNorm::Inf,
        Some(raw) => match raw.value.as_str() {
            "1" => PNorm::One,
            "2" => PNorm::Two,
            "inf" => PNorm::Inf,
            other => {
                return Err(Error::Config {
                    line: raw.line,
                    message: format!("key 'norm': unsupported p '{other}' (use 1, 2, or inf)"),
                })
            }
        },
    };

    let point = match take("point") {
        None => None,
        Some(raw) => {
            let xs = parse_f64_list(&raw.value).map_err(|message| Error::Config {
                line: raw.line,
                message: format!("key 'point': {message}"),
            })?;
            Some(RVec::new(xs).map_err(|e| Error::Config {
                line: raw.line,
                message: format!("key 'point': {e}"),
            })?)
        }
    };

    let order = parse_u64("order")?.unwrap_or(1) as u32;
    let threshold = parse_f64("threshold")?.unwrap_or(0.1);
    let eps = parse_f64("eps")?.unwrap_or(0.05);
    if !eps.is_finite() || eps <= 0.0 {
        let raw = take("eps").expect("present");
        return Err(Error::Config {
            line: raw.line,
            message: "key 'eps': must be > 0".into(),
        });
    }
    let out_prefix = PathBuf::from(
        take("out")
            .map(|raw| raw.value.clone())
            .unwrap_or_else(|| "singmin-out".to_string()),
    );

    Ok(ExperimentConfig {
        kind,
        ensemble,
        n_samples,
        seed,
        eps_grid,
        k_list,
        alpha_grid,
        n_schedule,
        norm,
        point,
        order,
        threshold,
        eps,
        workers,
        out_prefix,
        ci_level,
    })
}

fn parse_f64_list(s: &str) -> std::result::Result<Vec<f64>, String> {
    let xs: std::result::Result<Vec<f64>, _> =
        s.split(',').map(|t| t.trim().parse::<f64>()).collect();
    let xs = xs.map_err(|_| "expected comma-separated numbers".to_string())?;
    if xs.is_empty() {
        return Err("list is empty".to_string());
    }
    if xs.iter().any(|x| !x.is_finite()) {
        return Err("entries must be finite".to_string());
    }
    Ok(xs)
}

/// `lo:hi:per_decade` for a geometric grid, otherwise a comma list.
fn parse_eps_grid(s: &str) -> std::result::Result<Vec<f64>, String> {
    if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err("geometric form is lo:hi:points_per_decade".to_string());
        }
        let lo: f64 = parts[0]
            .trim()
            .parse()
            .map_err(|_| "bad lower bound".to_string())?;
        let hi: f64 = parts[1]
            .trim()
            .parse()
            .map_err(|_| "bad upper bound".to_string())?;
        let ppd: u32 = parts[2]
            .trim()
            .parse()
            .map_err(|_| "bad points-per-decade".to_string())?;
        if !lo.is_finite() || !hi.is_finite() || lo <= 0.0 || hi <= lo || ppd == 0 {
            return Err("need 0 < lo < hi and points_per_decade >= 1".to_string());
        }
        Ok(geometric_grid(lo, hi, ppd))
    } else {
        let xs = parse_f64_list(s)?;
        if xs.iter().any(|x| *x <= 0.0) || xs.windows(2).any(|w| w[0] >= w[1]) {
            return Err("must be ascending and positive".to_string());
        }
        Ok(xs)
    }
}
