//! End-to-end tests of the `singmin-lab` binary: exit codes, artifact
//! files, and seed/worker behavior.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_singmin-lab"))
}

fn workdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("singmin-cli-{}-{tag}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_config(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path
}

#[test]
fn cdf_run_exits_zero_with_artifacts() {
    let dir = workdir("cdf");
    let out = dir.join("gauss");
    let cfg = write_config(
        &dir,
        "cdf.cfg",
        &format!(
            "experiment=cdf\nensemble=gaussian\nn=3\nN=3000\nseed=42\neps_grid=0.001,0.01,0.1\nout={}\n",
            out.display()
        ),
    );
    let output = bin().arg(&cfg).output().unwrap();
    assert!(output.status.success(), "{output:?}");
    let csv = fs::read_to_string(out.with_extension("csv")).unwrap();
    assert!(csv.starts_with("eps,count,N,p_hat,ci_lo,ci_hi\n"));
    assert!(out.with_extension("svg").exists());
    let meta = fs::read_to_string(out.with_extension("meta")).unwrap();
    assert!(meta.contains("experiment=cdf"));
    assert!(meta.contains("seed=42"));
}

#[test]
fn parse_error_exits_one_with_line_number() {
    let dir = workdir("bad");
    let cfg = write_config(
        &dir,
        "bad.cfg",
        "experiment=cdf\nensemble=gaussian\nn=3\nbogus=1\n",
    );
    let output = bin().arg(&cfg).output().unwrap();
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("line 4"), "{stderr}");
    assert!(stderr.contains("bogus"), "{stderr}");
}

#[test]
fn dimension_one_rejected() {
    let dir = workdir("n1");
    let cfg = write_config(&dir, "n1.cfg", "experiment=cdf\nensemble=gaussian\nn=1\n");
    let output = bin().arg(&cfg).output().unwrap();
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains(">= 2"), "{stderr}");
}

#[test]
fn missing_config_exits_one() {
    let output = bin().arg("/nonexistent/config.cfg").output().unwrap();
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn counterexamples_exit_zero() {
    let dir = workdir("ce");
    let out = dir.join("ce");
    let cfg = write_config(
        &dir,
        "ce.cfg",
        &format!(
            "experiment=counterexamples\nseed=42\nout={}\n",
            out.display()
        ),
    );
    let output = bin().arg(&cfg).output().unwrap();
    assert_eq!(output.status.code(), Some(0), "{output:?}");
    let csv = fs::read_to_string(out.with_extension("csv")).unwrap();
    assert!(csv.contains("exact_p_singular,5.0000000000000000e-1,0.5,true"));
}

#[test]
fn worker_flag_changes_nothing_in_csv() {
    let dir = workdir("workers");
    let body =
        "experiment=mould\nensemble=uniform-cube\nn=2\nN=8000\nseed=11\npoint=0,0\norder=2\n";
    let mut csvs = Vec::new();
    for workers in [1, 3] {
        let out = dir.join(format!("w{workers}"));
        let cfg = write_config(
            &dir,
            &format!("w{workers}.cfg"),
            &format!("{body}out={}\n", out.display()),
        );
        let output = bin()
            .arg(&cfg)
            .arg("--workers")
            .arg(workers.to_string())
            .output()
            .unwrap();
        assert!(output.status.success(), "{output:?}");
        csvs.push(fs::read(out.with_extension("csv")).unwrap());
    }
    assert_eq!(csvs[0], csvs[1]);
}

#[test]
fn seed_override_changes_results() {
    let dir = workdir("seed");
    let body = "experiment=cdf\nensemble=gaussian\nn=2\nN=2000\nseed=1\neps_grid=0.01,0.1,1.0\n";
    let mut csvs = Vec::new();
    for seed in [1u64, 2] {
        let out = dir.join(format!("s{seed}"));
        let cfg = write_config(
            &dir,
            &format!("s{seed}.cfg"),
            &format!("{body}out={}\n", out.display()),
        );
        let output = bin()
            .arg(&cfg)
            .arg("--seed")
            .arg(seed.to_string())
            .output()
            .unwrap();
        assert!(output.status.success());
        csvs.push(fs::read(out.with_extension("csv")).unwrap());
    }
    assert_ne!(csvs[0], csvs[1]);
}

#[test]
fn usage_error_for_bad_flags() {
    let output = bin().arg("--frobnicate").output().unwrap();
    assert_eq!(output.status.code(), Some(1));
    let output = bin().output().unwrap();
    assert_eq!(output.status.code(), Some(1));
}
