//! Experiment runner: dispatches a parsed configuration to its engine and
//! writes the artifacts.
//!
//! Every run writes `<prefix>.csv` (always), `<prefix>.svg` (when the
//! experiment produces a curve), and `<prefix>.meta` (resolved config echo,
//! wall time, library version). The runner is the only writer; CSV bytes are
//! a pure function of `(config, seed)` and never of the worker count.

use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use crate::config::{ExperimentConfig, ExperimentKind};
use crate::error::{Error, Result};
use crate::laws::EnsembleRow;
use crate::linalg::RVec;
use crate::moulds;
use crate::plot::{line_plot, Series};
use crate::tails;
use crate::theorems;
use crate::verify;

/// Floats are serialized with 17 significant digits so they round-trip
/// exactly.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Completion status of a run. Errors are reported through `Result`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunOutcome {
    Pass,
    /// An asserting experiment (counterexamples, verify) found a violation.
    AssertionFailed,
}

/// Paths and summary of a completed run.
#[derive(Debug, Clone)]
pub struct RunArtifacts {
    pub outcome: RunOutcome,
    pub csv_path: PathBuf,
    pub svg_path: Option<PathBuf>,
    pub meta_path: PathBuf,
    /// One-paragraph human summary, also placed in the meta file.
    pub summary: String,
}

fn require_ensemble(cfg: &ExperimentConfig) -> Result<&crate::ensembles::EnsembleSpec> {
    cfg.ensemble
        .as_ref()
        .ok_or_else(|| Error::param("ensemble", "this experiment requires an ensemble"))
}

/// Run one experiment to completion and write its artifacts.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<RunArtifacts> {
    let started = Instant::now();
    let mut outcome = RunOutcome::Pass;
    let (csv, svg, summary): (String, Option<String>, String) = match cfg.kind {
        ExperimentKind::Cdf => {
            let spec = require_ensemble(cfg)?;
            let cdf = theorems::estimate_sigma_min_cdf(
                spec,
                &cfg.eps_grid,
                cfg.n_samples,
                cfg.seed,
                cfg.ci_level,
                cfg.workers,
            )?;
            let series = Series {
                label: "P(sigma_min < eps)".to_string(),
                points: cfg
                    .eps_grid
                    .iter()
                    .zip(&cdf.points)
                    .map(|(&e, p)| (e, p.0))
                    .collect(),
                band: Some(cdf.points.iter().map(|p| (p.1, p.2)).collect()),
            };
            let svg = line_plot(
                "least singular value CDF",
                "eps",
                "probability",
                true,
                true,
                &[series],
            );
            let summary = format!(
                "cdf: {} grid points, N={}, last point p={}",
                cdf.eps_grid.len(),
                cdf.n,
                cdf.points.last().map(|p| p.0).unwrap_or(0.0)
            );
            (cdf.to_csv(), Some(svg), summary)
        }
        ExperimentKind::Ratio => {
            let spec = require_ensemble(cfg)?;
            let cdf = theorems::estimate_sigma_min_cdf(
                spec,
                &cfg.eps_grid,
                cfg.n_samples,
                cfg.seed,
                cfg.ci_level,
                cfg.workers,
            )?;
            let probe = theorems::ratio_lower_bound_probe(&cdf, 0.0, 2.5)?;
            let series = Series {
                label: "P(sigma_min < eps) / eps".to_string(),
                points: probe
                    .eps_grid
                    .iter()
                    .zip(&probe.ratios)
                    .map(|(&e, r)| (e, r.0))
                    .collect(),
                band: Some(probe.ratios.iter().map(|r| (r.1, r.2)).collect()),
            };
            let svg = line_plot(
                "first-order ratio probe",
                "eps",
                "ratio",
                true,
                false,
                &[series],
            );
            let summary = format!(
                "ratio probe: verdict={} band={:.3}",
                probe.verdict, probe.band
            );
            (probe.to_csv(), Some(svg), summary)
        }
        ExperimentKind::Sandwich => {
            let spec = require_ensemble(cfg)?;
            let rep = theorems::sandwich_check(
                spec,
                &cfg.eps_grid,
                cfg.n_samples,
                cfg.seed,
                cfg.workers,
            )?;
            let mk = |label: &str, counts: &[u64]| Series {
                label: label.to_string(),
                points: rep
                    .eps_grid
                    .iter()
                    .zip(counts)
                    .map(|(&e, &c)| (e, c as f64 / rep.n as f64))
                    .collect(),
                band: None,
            };
            let svg = line_plot(
                "sandwich: sigma_min vs |X_n . Y|",
                "eps",
                "probability",
                true,
                true,
                &[
                    mk("P(sigma_min < eps)", &rep.count_sigma),
                    mk("P(|X_n . Y| < eps)", &rep.count_dot),
                ],
            );
            let summary = format!(
                "sandwich: violations={} degenerate={} over N={}",
                rep.violations, rep.degenerate, rep.n
            );
            (rep.to_csv(), Some(svg), summary)
        }
        ExperimentKind::Power => {
            let spec = require_ensemble(cfg)?;
            let y = match &cfg.point {
                Some(p) => p.clone(),
                None => RVec::basis(spec.n(), 0),
            };
            let rep = theorems::power_identity_check(
                spec,
                &y,
                cfg.eps,
                cfg.n_samples,
                cfg.seed,
                cfg.workers,
            )?;
            let summary = format!(
                "power identity: single={} joint={} expected={} pass={}",
                rep.p_single, rep.p_joint, rep.p_single_power, rep.pass
            );
            (rep.to_csv(), None, summary)
        }
        ExperimentKind::Kappa => {
            let spec = require_ensemble(cfg)?;
            let rep = theorems::kappa_divergence_diagnostic(
                spec,
                cfg.norm,
                &cfg.n_schedule,
                cfg.seed,
                cfg.workers,
            )?;
            let mk = |label: &str, pick: &dyn Fn(&theorems::DivergenceCheckpoint) -> f64| Series {
                label: label.to_string(),
                points: rep
                    .checkpoints
                    .iter()
                    .map(|c| (c.n as f64, pick(c)))
                    .collect(),
                band: None,
            };
            let svg = line_plot(
                "divergence diagnostic: running means",
                "N",
                "running mean",
                true,
                true,
                &[
                    mk(&format!("kappa_{}", cfg.norm), &|c| c.kappa_mean),
                    mk("1/sigma_min", &|c| c.inv_sigma_mean),
                ],
            );
            let hill = rep
                .hill
                .as_ref()
                .map(|h| format!("{:.4}", h.alpha_hat))
                .unwrap_or_else(|| "n/a".to_string());
            let summary = format!(
                "kappa diagnostic: growth kappa={:.3} inv_sigma={:.3} hill={} survival-bound={} divergence={}",
                rep.kappa_growth,
                rep.inv_sigma_growth,
                hill,
                rep.survival_bounded_below,
                rep.divergence_flag
            );
            (rep.to_csv(), Some(svg), summary)
        }
        ExperimentKind::AlphaSweep => {
            let spec = require_ensemble(cfg)?;
            let rep = theorems::alpha_moment_sweep(
                spec,
                &cfg.alpha_grid,
                &cfg.n_schedule,
                cfg.seed,
                cfg.workers,
            )?;
            let series: Vec<Series> = rep
                .tracks
                .iter()
                .map(|t| Series {
                    label: format!("alpha={}", t.alpha),
                    points: t.means.iter().map(|&(n, m)| (n as f64, m)).collect(),
                    band: None,
                })
                .collect();
            let svg = line_plot(
                "alpha-moment sweep: running means of kappa^alpha",
                "N",
                "running mean",
                true,
                true,
                &series,
            );
            let drifts: Vec<String> = rep
                .tracks
                .iter()
                .map(|t| format!("{}:{:.3}", t.alpha, t.drift))
                .collect();
            let summary = format!("alpha sweep drifts: {}", drifts.join(" "));
            (rep.to_csv(), Some(svg), summary)
        }
        ExperimentKind::Mould => {
            let spec = require_ensemble(cfg)?;
            let law = EnsembleRow(*spec);
            let x = match &cfg.point {
                Some(p) => p.clone(),
                None => RVec::zeros(spec.n()),
            };
            let seq = moulds::mould_ratio_sequence(
                &law,
                &x,
                cfg.order,
                &cfg.k_list,
                cfg.n_samples,
                cfg.seed,
                cfg.workers,
            )?;
            let verdict = if seq.entries.len() >= 3 {
                moulds::membership_verdict(&seq, cfg.threshold)?.to_string()
            } else {
                "Inconclusive".to_string()
            };
            let series = Series {
                label: format!("k^{} * P(|X - x| < 1/k)", cfg.order),
                points: seq.entries.iter().map(|e| (e.k as f64, e.ratio)).collect(),
                band: Some(seq.entries.iter().map(|e| (e.ci_lo, e.ci_hi)).collect()),
            };
            let svg = line_plot(
                "mould ratio sequence",
                "k",
                "scaled ratio",
                true,
                false,
                &[series],
            );
            let summary = format!(
                "mould: order={} threshold={} verdict={}",
                cfg.order, cfg.threshold, verdict
            );
            (seq.to_csv(), Some(svg), summary)
        }
        ExperimentKind::Tail => {
            let spec = require_ensemble(cfg)?;
            let samples =
                theorems::inv_sigma_min_samples(spec, cfg.n_samples, cfg.seed, cfg.workers)?;
            let n = samples.len();
            let base = tails::default_hill_k(n);
            let mut ks: Vec<usize> = [base / 4, base / 2, base, base * 2, base * 4]
                .into_iter()
                .map(|k| k.clamp(10, (n / 2).max(10)))
                .collect();
            ks.dedup();
            let mut csv = String::from("k,N,alpha_hat,ci_lo,ci_hi\n");
            let mut points = Vec::new();
            let mut band = Vec::new();
            for &k in &ks {
                let est = tails::hill_estimator(&samples, k)?;
                csv.push_str(&format!(
                    "{},{},{},{},{}\n",
                    k,
                    n,
                    fmt_f64(est.alpha_hat),
                    fmt_f64(est.ci_lo),
                    fmt_f64(est.ci_hi)
                ));
                points.push((k as f64, est.alpha_hat));
                band.push((est.ci_lo, est.ci_hi));
            }
            let series = Series {
                label: "hill alpha(k) of 1/sigma_min".to_string(),
                points,
                band: Some(band),
            };
            let svg = line_plot(
                "tail index of 1/sigma_min",
                "k",
                "alpha",
                true,
                false,
                &[series],
            );
            let mid = tails::hill_estimator(&samples, base.clamp(10, (n / 2).max(10)))?;
            let summary = format!("tail: hill alpha={:.4} at k={}", mid.alpha_hat, mid.k_used);
            (csv, Some(svg), summary)
        }
        ExperimentKind::Counterexamples => {
            let rep = theorems::counterexample_suite(cfg.seed, cfg.workers)?;
            if !rep.pass {
                outcome = RunOutcome::AssertionFailed;
            }
            let summary = format!(
                "counterexamples: shifted min sigma={:.4} exact=({}, {}) mc={:.4} pass={}",
                rep.shifted_min_sigma,
                rep.exact_p_singular,
                rep.exact_p_equal_rows,
                rep.mc_p_singular,
                rep.pass
            );
            (rep.to_csv(), None, summary)
        }
        ExperimentKind::Verify => {
            let results = verify::run_all(cfg.workers)?;
            let mut csv = String::from("criterion,name,pass,advisory,detail\n");
            for r in &results {
                csv.push_str(&format!(
                    "{},{},{},{},\"{}\"\n",
                    r.index,
                    r.name,
                    r.passed,
                    r.advisory,
                    r.detail.replace('"', "'")
                ));
            }
            let hard_failures = results.iter().filter(|r| !r.passed && !r.advisory).count();
            if hard_failures > 0 {
                outcome = RunOutcome::AssertionFailed;
            }
            let lines: Vec<String> = results.iter().map(|r| r.line()).collect();
            (csv, None, lines.join("\n"))
        }
    };

    let paths = write_artifacts(cfg, &csv, svg.as_deref(), &summary, started, outcome)?;
    Ok(RunArtifacts {
        outcome,
        csv_path: paths.0,
        svg_path: paths.1,
        meta_path: paths.2,
        summary,
    })
}

fn write_artifacts(
    cfg: &ExperimentConfig,
    csv: &str,
    svg: Option<&str>,
    summary: &str,
    started: Instant,
    outcome: RunOutcome,
) -> Result<(PathBuf, Option<PathBuf>, PathBuf)> {
    let prefix = &cfg.out_prefix;
    if let Some(parent) = prefix.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    let csv_path = prefix.with_extension("csv");
    fs::write(&csv_path, csv)?;
    let svg_path = match svg {
        Some(body) => {
            let p = prefix.with_extension("svg");
            fs::write(&p, body)?;
            Some(p)
        }
        None => None,
    };
    let meta_path = prefix.with_extension("meta");
    let meta = format!(
        "# {} run metadata\nversion={}\nwall_time_s={:.3}\noutcome={}\nsummary={}\n\n# resolved configuration\n{}",
        env!("CARGO_PKG_NAME"),
        env!("CARGO_PKG_VERSION"),
        started.elapsed().as_secs_f64(),
        match outcome {
            RunOutcome::Pass => "pass",
            RunOutcome::AssertionFailed => "assertion-failed",
        },
        summary.replace('\n', " | "),
        cfg.echo()
    );
    fs::write(&meta_path, meta)?;
    Ok((csv_path, svg_path, meta_path))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_config;

    fn tmp_prefix(tag: &str) -> String {
        let dir = std::env::temp_dir().join(format!("singmin-runner-{}-{tag}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        dir.join("run").to_string_lossy().into_owned()
    }

    #[test]
    fn cdf_run_produces_artifacts() {
        let prefix = tmp_prefix("cdf");
        let cfg = parse_config(&format!(
            "experiment=cdf\nensemble=gaussian\nn=2\nN=2000\nseed=1\neps_grid=0.001,0.01,0.1\nout={prefix}\n"
        ))
        .unwrap();
        let art = run_experiment(&cfg).unwrap();
        assert_eq!(art.outcome, RunOutcome::Pass);
        let csv = fs::read_to_string(&art.csv_path).unwrap();
        assert!(csv.starts_with("eps,count,N,p_hat,ci_lo,ci_hi\n"));
        assert_eq!(csv.lines().count(), 4);
        assert!(art.svg_path.is_some());
        let meta = fs::read_to_string(&art.meta_path).unwrap();
        assert!(meta.contains("outcome=pass"));
        assert!(meta.contains("experiment=cdf"));
    }

    #[test]
    fn same_config_twice_is_byte_identical() {
        let p1 = tmp_prefix("det1");
        let p2 = tmp_prefix("det2");
        let base =
            "experiment=mould\nensemble=uniform-cube\nn=2\nN=5000\nseed=3\npoint=0,0\norder=2\n";
        let a = run_experiment(&parse_config(&format!("{base}out={p1}\n")).unwrap()).unwrap();
        let b = run_experiment(&parse_config(&format!("{base}out={p2}\n")).unwrap()).unwrap();
        let csv_a = fs::read(&a.csv_path).unwrap();
        let csv_b = fs::read(&b.csv_path).unwrap();
        assert_eq!(csv_a, csv_b);
        let svg_a = fs::read(a.svg_path.unwrap()).unwrap();
        let svg_b = fs::read(b.svg_path.unwrap()).unwrap();
        assert_eq!(svg_a, svg_b);
    }

    #[test]
    fn counterexample_outcome_feeds_exit_code() {
        let prefix = tmp_prefix("ce");
        let cfg = parse_config(&format!(
            "experiment=counterexamples\nseed=42\nout={prefix}\n"
        ))
        .unwrap();
        let art = run_experiment(&cfg).unwrap();
        assert_eq!(art.outcome, RunOutcome::Pass);
        assert!(art.svg_path.is_none());
    }

    #[test]
    fn fmt_f64_round_trips() {
        for &x in &[0.05, 1.0 / 3.0, 2.5e-17, 123456.789, f64::MIN_POSITIVE] {
            let s = fmt_f64(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
    }
}
