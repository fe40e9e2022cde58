use std::process::Command;

use qdeform::report::{entries_to_csv, parse_csv, parse_json, serialize, CSV_COLUMNS};
use qdeform::sweep::expected_to_pass;
use qdeform::{run_sweep, run_sweep_with, CheckSet, Execution, OutputFormat, SweepConfig};
use qdeform_core::FunctionFamily;

fn config(grid: &[f64], psi: FunctionFamily) -> SweepConfig {
    SweepConfig { s_grid: grid.to_vec(), psi_family: psi, ..SweepConfig::default() }
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qdeform"))
}

#[test]
fn json_round_trip_is_lossless() {
    let report = run_sweep(&SweepConfig::default()).unwrap();
    let bytes = serialize(&report, OutputFormat::Json).unwrap();
    assert_eq!(parse_json(&bytes).unwrap(), report);
}

#[test]
fn csv_round_trip_is_lossless() {
    let report = run_sweep(&SweepConfig::default()).unwrap();
    let bytes = entries_to_csv(&report.entries).unwrap();
    assert_eq!(parse_csv(&bytes).unwrap(), report.entries);
}

#[test]
fn csv_header_snapshot() {
    let report = run_sweep(&config(&[0.5], FunctionFamily::ConstantOne)).unwrap();
    let bytes = serialize(&report, OutputFormat::Csv).unwrap();
    let header = String::from_utf8(bytes).unwrap().lines().next().unwrap().to_string();
    assert_eq!(header, "check_id,s,cutoff,psi1,psi2,beta1,beta2,residual,pass,note");
    assert_eq!(header, CSV_COLUMNS.join(","));
}

#[test]
fn parallel_and_sequential_agree() {
    let cfg = config(&[0.1, 0.3, 0.5, 0.7, 0.9], FunctionFamily::PowerOfQ(1.0));
    let parallel = run_sweep_with(&cfg, CheckSet::All, Execution::Parallel).unwrap();
    let sequential = run_sweep_with(&cfg, CheckSet::All, Execution::Sequential).unwrap();
    assert_eq!(serialize(&parallel, OutputFormat::Json).unwrap(), serialize(&sequential, OutputFormat::Json).unwrap());
}

#[test]
fn undeformed_sweep_at_half_has_no_failures() {
    let report = run_sweep(&config(&[0.5], FunctionFamily::ConstantOne)).unwrap();
    assert_eq!(report.summary.total_fail, 0);
    assert_eq!(report.entries.len(), 9);
}

#[test]
fn psi_q_breaks_products_but_not_not_gate() {
    let report = run_sweep(&config(&[0.5], FunctionFamily::PowerOfQ(1.0))).unwrap();
    let entry = |id: &str| report.entries.iter().find(|e| e.check_id == id).unwrap();
    assert!(!entry("eq1b_number_products").pass);
    assert!(!expected_to_pass(entry("eq1b_number_products")));
    assert!(entry("eq14_not_condition").pass);
    assert!(entry("eq1a_qcommutator").pass);
    assert_eq!(report.summary.unexpected_failures, 0);
}

#[test]
fn empty_grid_is_rejected() {
    let err = run_sweep(&config(&[], FunctionFamily::ConstantOne)).unwrap_err();
    assert!(err.issues.iter().any(|i| i.contains("s_grid")), "{err}");
}

#[test]
fn exit_zero_when_all_expected_checks_pass() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let status = bin().args(["sweep", "--s", "0.5", "--out"]).arg(&out).status().unwrap();
    assert_eq!(status.code(), Some(0));
    let report = parse_json(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(report.config.s_grid, vec![0.5]);
}

#[test]
fn exit_one_on_unexpected_failure() {
    // a tolerance below rounding cannot absorb rounding in the algebra checks
    let status = bin().args(["audit", "--s", "0.9", "--tol", "1e-16"]).output().unwrap();
    assert_eq!(status.status.code(), Some(1));
}

#[test]
fn exit_two_on_bad_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(&cfg, r#"{"s_grid": [0.5, 2.0], "cutoff": 16}"#).unwrap();
    let out = bin().args(["sweep", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("s_grid"));

    let out = bin().args(["sweep", "--cutoff", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(&cfg, r#"{"s_grid": [0.1], "cutoff": 8, "psi_family": "q^1"}"#).unwrap();
    let out_path = dir.path().join("r.json");
    let status = bin()
        .args(["gates", "--s-grid", "0.2,0.4", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&out_path)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let report = parse_json(&std::fs::read(&out_path).unwrap()).unwrap();
    assert_eq!(report.config.s_grid, vec![0.2, 0.4]);
    assert_eq!(report.config.cutoff, 8);
    assert_eq!(report.config.psi_family, FunctionFamily::PowerOfQ(1.0));
}

#[test]
fn states_and_infer_emit_json() {
    let out = bin().args(["states", "--s", "0.5"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["measured_law"], "product");
    assert_eq!(json["consistency_table"].as_array().unwrap().len(), 4);
    // Case I and II, four labels each, one basis element per state
    let states = json["states"].as_array().unwrap();
    assert_eq!(states.len(), 8);
    assert!(states.iter().all(|s| s["amplitudes"].as_array().unwrap().len() == 1));

    let out =
        bin().args(["infer", "--s", "0.5", "--psi-value", "1.6487212707001282", "--n-hat", "1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["signature"], "q^n_hat");
    assert_eq!(json["encoded_occupation"], 0);

    let out = bin().args(["states", "--format", "csv"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
