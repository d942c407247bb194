//! End-to-end tests of the compiled binary: argument validation, exit
//! codes, output determinism, format schemas and file delivery.

use std::path::Path;
use std::process::{Command, Output};

fn dqo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dqo"))
        .args(args)
        .output()
        .expect("binary should spawn")
}

fn stdout_of(args: &[&str]) -> String {
    let out = dqo(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("output should be UTF-8")
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = [
        "energy",
        "--gamma",
        "1",
        "--omega-cut",
        "10",
        "--omega-c",
        "2.5",
        "--alpha-range",
        "0.1:7.5:8",
    ];
    let first = dqo(&args);
    let second = dqo(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);

    let verify_args = ["verify", "--bath", "ohmic", "--sets", "4", "--format", "json"];
    assert_eq!(dqo(&verify_args).stdout, dqo(&verify_args).stdout);
}

#[test]
fn usage_errors_exit_with_code_two() {
    // Ohmic bath cannot carry a cyclotron frequency.
    let out = dqo(&[
        "energy", "--bath", "ohmic", "--gamma", "1", "--omega-c", "2", "--alpha", "0.5",
    ]);
    assert_eq!(out.status.code(), Some(2));

    // --alpha and --alpha-range are mutually exclusive.
    let out = dqo(&[
        "energy",
        "--gamma",
        "1",
        "--omega-cut",
        "10",
        "--alpha",
        "1",
        "--alpha-range",
        "1:2:3",
    ]);
    assert_eq!(out.status.code(), Some(2));

    // A temperature selection is mandatory.
    let out = dqo(&["energy", "--gamma", "1", "--omega-cut", "10"]);
    assert_eq!(out.status.code(), Some(2));

    // A Drude bath needs its cutoff.
    let out = dqo(&["energy", "--gamma", "1", "--alpha", "0.5"]);
    assert_eq!(out.status.code(), Some(2));

    // Malformed sweep syntax.
    let out = dqo(&[
        "energy",
        "--gamma",
        "1",
        "--omega-cut",
        "10",
        "--alpha-range",
        "2:1:5",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn energy_csv_has_the_documented_schema() {
    let text = stdout_of(&[
        "energy", "--gamma", "1", "--omega-cut", "10", "--alpha", "0.5",
    ]);
    let header = text.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(
        header,
        "alpha,beta_mean,beta_internal,beta_gibbs,mean_tail,internal_tail,gibbs_tail,note"
    );
    let row = text.lines().last().unwrap();
    let mean: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
    assert!((mean - 1.0870173431127674).abs() < 1e-12);
}

#[test]
fn ohmic_energy_row_explains_the_missing_columns() {
    let text = stdout_of(&["energy", "--bath", "ohmic", "--gamma", "0.5", "--alpha", "0.5"]);
    let row = text.lines().last().unwrap();
    let cells: Vec<&str> = row.split(',').collect();
    assert_eq!(cells[1], "", "mean column must be empty");
    assert_eq!(cells[3], "", "gibbs column must be empty");
    assert!(!cells[2].is_empty(), "internal column must be filled");
    assert!(cells[7].contains("diverge"));
}

#[test]
fn distribution_reports_a_unit_norm() {
    let text = stdout_of(&[
        "distribution",
        "--gamma",
        "1",
        "--omega-cut",
        "10",
        "--points",
        "11",
    ]);
    let norm_line = text.lines().find(|l| l.starts_with("# norm:")).unwrap();
    let norm: f64 = norm_line.trim_start_matches("# norm:").trim().parse().unwrap();
    assert!((norm - 1.0).abs() < 1e-8);
    let data_rows = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("omega"))
        .count();
    assert_eq!(data_rows, 11);
}

#[test]
fn verify_json_parses_and_reports_success() {
    let text = stdout_of(&["verify", "--bath", "ohmic", "--sets", "4", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["command"], "verify");
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["checks"].as_array().unwrap().len(), 3);
    for check in doc["checks"].as_array().unwrap() {
        assert_eq!(check["passed"], true, "check {} failed", check["name"]);
    }
}

#[test]
fn table_json_covers_both_reference_sets() {
    let text = stdout_of(&["table", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 48);
    let worst = doc["worst_abs_deviation"].as_f64().unwrap();
    assert!(worst < 1e-3, "worst deviation {worst}");
}

#[test]
fn peaks_csv_counts_the_field_split_resonances() {
    let text = stdout_of(&[
        "peaks", "--gamma", "0.5", "--omega-cut", "10", "--omega-c", "5",
    ]);
    let count_line = text.lines().find(|l| l.starts_with("# count:")).unwrap();
    assert_eq!(count_line, "# count: 3");
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let args = [
        "energy", "--gamma", "1", "--omega-cut", "10", "--alpha", "0.5",
    ];
    let expected = stdout_of(&args);

    let mut with_out: Vec<&str> = args.to_vec();
    with_out.extend_from_slice(&["--out", path.to_str().unwrap()]);
    let out = dqo(&with_out);
    assert!(out.status.success());
    assert!(out.stdout.is_empty(), "report must go to the file only");
    assert_eq!(read_to_string(&path), expected);
}

fn read_to_string(path: &Path) -> String {
    std::fs::read_to_string(path).expect("report file should exist")
}
