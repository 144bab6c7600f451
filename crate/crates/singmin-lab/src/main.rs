//! Thin CLI over the experiment runner:
//! `singmin-lab <config-path> [--workers W] [--seed S] [--out PREFIX]`.
//!
//! Exit codes: 0 on completion, 1 on error, 2 when an asserting experiment
//! (counterexamples, verify) reports a violation.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use singmin_lab::config::parse_config;
use singmin_lab::rng::Seed;
use singmin_lab::runner::{run_experiment, RunOutcome};

/// Print without panicking when stdout is a closed pipe (e.g. `| head`).
fn say(line: &str) {
    let _ = writeln!(std::io::stdout(), "{line}");
}

const USAGE: &str = "usage: singmin-lab <config-path> [--workers W] [--seed S] [--out PREFIX]";

struct Args {
    config_path: PathBuf,
    workers: Option<usize>,
    seed: Option<u64>,
    out: Option<PathBuf>,
}

fn parse_args(argv: &[String]) -> Result<Args, String> {
    let mut config_path = None;
    let mut workers = None;
    let mut seed = None;
    let mut out = None;
    let mut it = argv.iter();
    while let Some(arg) = it.next() {
        match arg.as_str() {
            "--workers" => {
                let v = it.next().ok_or("--workers needs a value")?;
                workers = Some(
                    v.parse::<usize>()
                        .map_err(|_| format!("bad --workers '{v}'"))?,
                );
            }
            "--seed" => {
                let v = it.next().ok_or("--seed needs a value")?;
                seed = Some(v.parse::<u64>().map_err(|_| format!("bad --seed '{v}'"))?);
            }
            "--out" => {
                let v = it.next().ok_or("--out needs a value")?;
                out = Some(PathBuf::from(v));
            }
            "--help" | "-h" => return Err(USAGE.to_string()),
            other if other.starts_with('-') => return Err(format!("unknown flag '{other}'")),
            other => {
                if config_path.replace(PathBuf::from(other)).is_some() {
                    return Err("exactly one config path expected".to_string());
                }
            }
        }
    }
    Ok(Args {
        config_path: config_path.ok_or(USAGE.to_string())?,
        workers,
        seed,
        out,
    })
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let args = match parse_args(&argv) {
        Ok(a) => a,
        Err(msg) => {
            eprintln!("{msg}");
            return ExitCode::from(1);
        }
    };

    let text = match std::fs::read_to_string(&args.config_path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("cannot read {}: {e}", args.config_path.display());
            return ExitCode::from(1);
        }
    };
    let mut cfg = match parse_config(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(1);
        }
    };
    if let Some(w) = args.workers {
        if w == 0 {
            eprintln!("--workers must be >= 1");
            return ExitCode::from(1);
        }
        cfg.workers = w;
    }
    if let Some(s) = args.seed {
        cfg.seed = Seed(s);
    }
    if let Some(out) = args.out {
        cfg.out_prefix = out;
    }

    match run_experiment(&cfg) {
        Ok(artifacts) => {
            say(&artifacts.summary);
            say(&format!("csv:  {}", artifacts.csv_path.display()));
            if let Some(svg) = &artifacts.svg_path {
                say(&format!("svg:  {}", svg.display()));
            }
            say(&format!("meta: {}", artifacts.meta_path.display()));
            match artifacts.outcome {
                RunOutcome::Pass => ExitCode::SUCCESS,
                RunOutcome::AssertionFailed => ExitCode::from(2),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
