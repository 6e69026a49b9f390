use std::path::PathBuf;
use std::process::Command;

use eigencount::cli::{dispatch, EXIT_OK, EXIT_USAGE};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = dispatch(std::iter::once("eigencount").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("eigencount-{}-{name}", std::process::id()))
}

#[test]
fn count_reports_both_methods() {
    let (code, csv, report) = run(&["count", "--k", "1", "--lambda", "0", "--method", "brute,fast"]);
    assert_eq!(code, EXIT_OK, "{report}");
    assert!(report.contains("brute=33 fast=33"), "{report}");
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("k,lambda,brute,fast,main_term,ratio"));
    assert!(lines.next().unwrap().starts_with("1,0,33,33,"));
}

#[test]
fn count_all_lambdas_has_one_row_each() {
    let (code, csv, _) = run(&["count", "--k", "3", "--method", "brute,fast"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(csv.lines().count(), 1 + 13);
}

#[test]
fn count_spectrum_line() {
    let (code, _, report) = run(&["count", "--k", "1", "--lambda", "0", "--spectrum"]);
    assert_eq!(code, EXIT_OK);
    assert!(report.contains("count=55 repeated=19"), "{report}");
}

#[test]
fn constants_prints_c() {
    let (code, out, _) = run(&["constants"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("0.55873957"), "{out}");
}

#[test]
fn small_k_suite_passes() {
    let (code, out, _) = run(&["verify", "--suite", "small-k"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.lines().all(|l| !l.starts_with("FAIL")));
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        vec!["count"],
        vec!["count", "--k", "x"],
        vec!["count", "--k", "0"],
        vec!["density", "--kind", "Q"],
        vec!["density", "--kind", "W", "--points", "1"],
        vec!["verify", "--suite", "nope"],
        vec!["frobnicate"],
    ] {
        let (code, _, err) = run(&args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("simulate"));
}

#[test]
fn density_table_is_symmetric_and_full_precision() {
    let (code, csv, _) = run(&["density", "--kind", "W", "--points", "41"]);
    assert_eq!(code, EXIT_OK);
    let rows: Vec<(f64, f64)> = csv
        .lines()
        .skip(1)
        .map(|l| {
            let (d, v) = l.split_once(',').unwrap();
            (d.parse().unwrap(), v.parse().unwrap())
        })
        .collect();
    assert!(rows.len() >= 41);
    for (a, b) in rows.iter().zip(rows.iter().rev()) {
        assert_eq!(a.0, -b.0);
        assert!((a.1 - b.1).abs() < 1e-14);
    }
    let sample = csv.lines().nth(5).unwrap().split(',').nth(1).unwrap();
    let digits = sample.chars().filter(char::is_ascii_digit).collect::<String>();
    assert!(digits.trim_start_matches('0').len() >= 12, "{sample}");
}

#[test]
fn simulate_reruns_are_byte_identical() {
    let paths = [scratch("sim-a.csv"), scratch("sim-b.csv")];
    for p in &paths {
        let (code, report, _) = run(&["simulate", "--n", "50000", "--bins", "20", "--out", p.to_str().unwrap()]);
        assert_eq!(code, EXIT_OK);
        assert!(report.contains("real-pair frequency"));
    }
    let a = std::fs::read(&paths[0]).unwrap();
    let b = std::fs::read(&paths[1]).unwrap();
    assert_eq!(a, b);
    assert!(String::from_utf8_lossy(&a).starts_with("bin_lo,bin_hi,count,mass,w_mass\n"));
    for p in &paths {
        let _ = std::fs::remove_file(p);
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_eigencount");
    let ok = Command::new(bin).args(["count", "--k", "2", "--lambda", "1"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).starts_with("k,lambda,"));
    let bad = Command::new(bin).args(["count", "--lambda", "1"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
}
