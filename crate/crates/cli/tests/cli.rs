//! End-to-end tests of the `cop6` binary: output shapes, determinism and
//! exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn cop6(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cop6"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn write_temp_matrix(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("cop6-test-{name}-{}.json", std::process::id()));
    std::fs::write(&path, contents).expect("temp file written");
    path
}

#[test]
fn essential_prints_the_five_names() {
    let out = cop6(&["essential"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "[\"13.1\",\"13.2\",\"16\",\"17\",\"19\"]\n");
}

#[test]
fn essential_output_is_deterministic() {
    let a = cop6(&["essential"]);
    let b = cop6(&["essential"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn table3_csv_has_22_rows() {
    let out = cop6(&["table3", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 23, "header plus 22 rows");
    assert_eq!(lines[0], "no,may_be_in_closure_of");
    assert!(lines.contains(&"13.1,\"\""));
    assert!(lines.iter().any(|l| l.starts_with("O5,\"8,16,17\"")));
}

#[test]
fn gen_rejects_malformed_phi() {
    let out = cop6(&["gen", "--phi", "bad", "--variant", "13.1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = cop6(&["gen", "--phi", "0.2,0.3", "--variant", "13.1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gen_rejects_invalid_angles_with_exit_2() {
    // Valid floats violating the angle constraints are usage errors too.
    let out = cop6(&[
        "gen",
        "--phi",
        "0.6,0.5,0.1,0.1,0.1,0.1",
        "--variant",
        "13.1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("phi1 + phi2 < pi"), "{err}");
}

#[test]
fn gen_emits_matrix_and_zeros() {
    let out = cop6(&[
        "gen",
        "--phi",
        "0.20,0.29,0.30,0.23,0.06,0.02",
        "--variant",
        "13.1",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["matrix"][0][0], 1.0);
    assert_eq!(v["zeros"].as_array().unwrap().len(), 6);
    assert_eq!(v["extended_supports"][0]["I"], serde_json::json!([1, 2, 3]));
    assert_eq!(v["regime_is_main"], true);
}

#[test]
fn gen_applies_diagonal_scaling() {
    let out = cop6(&[
        "gen",
        "--phi",
        "0.20,0.29,0.30,0.23,0.06,0.02",
        "--variant",
        "13.1",
        "--scale",
        "2,1,1,1,1,1",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["matrix"][0][0], 4.0);
}

#[test]
fn zeros_subcommand_reads_matrix_files() {
    let path = write_temp_matrix(
        "identity",
        "[[1,0,0,0,0,0],[0,1,0,0,0,0],[0,0,1,0,0,0],[0,0,0,1,0,0],[0,0,0,0,1,0],[0,0,0,0,0,1]]",
    );
    let out = cop6(&["zeros", "--matrix", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["zeros"].as_array().unwrap().len(), 0);
}

#[test]
fn zeros_subcommand_rejects_asymmetric_input() {
    let path = write_temp_matrix("asym", "[[1,2],[3,1]]");
    let out = cop6(&["zeros", "--matrix", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_cop_refutes_the_planted_violation() {
    let path = write_temp_matrix("neg", "[[1,-2],[-2,1]]");
    let out = cop6(&["check-cop", "--matrix", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"]["verdict"], "not_copositive");
    let value = v["result"]["value"].as_f64().unwrap();
    assert!(value < -0.4);
}

#[test]
fn check_cop_certifies_identity_at_depth_zero() {
    let path = write_temp_matrix("id2", "[[1,0],[0,1]]");
    let out = cop6(&[
        "check-cop",
        "--matrix",
        path.to_str().unwrap(),
        "--samples",
        "100",
    ]);
    std::fs::remove_file(&path).ok();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"]["verdict"], "copositive_up_to_eps");
    assert_eq!(v["result"]["depth"], 0);
    assert_eq!(v["sampled_witness"], serde_json::Value::Null);
}

#[test]
fn k1check_reports_the_violating_triple() {
    let out = cop6(&["k1check", "--phi", "0.20,0.29,0.30,0.23,0.06,0.02"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let cert = &v["certificate"];
    assert_eq!(cert["verdict"]["verdict"], "non_member");
    assert_eq!(cert["verdict"]["violating"], serde_json::json!([[1, 3, 6]]));
    assert_eq!(cert["m_tensor"].as_array().unwrap().len(), 20);
    let min_m = cert["margins"]["min_m"].as_f64().unwrap();
    assert!(min_m < -4.0 / 3.0);
}

#[test]
fn k1check_rejects_angles_outside_the_main_regime() {
    let out = cop6(&["k1check", "--phi", "0.28,0.10,0.30,0.12,0.20,0.14"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn counterexample_confirms_everything() {
    // The full pipeline: zero supports, simplicial certification and the
    // membership refutation. This is the slow test of the suite.
    let out = cop6(&["counterexample"]);
    assert!(out.status.success(), "confirmations must pass");
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["all_confirmed"], true);
    assert_eq!(v["confirmations"]["zero_supports"], true);
    assert_eq!(v["confirmations"]["copositivity"], true);
    assert_eq!(v["confirmations"]["k1_nonmember"], true);
    let m136 = v["k1"]["m136"].as_f64().unwrap();
    assert!(m136 < -4.0 / 3.0);
}

#[test]
fn out_is_an_alias_for_format() {
    let a = cop6(&["table3", "--out", "csv"]);
    let b = cop6(&["table3", "--format", "csv"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn gen_csv_lists_matrix_then_zeros() {
    let out = cop6(&[
        "gen",
        "--phi",
        "0.20,0.29,0.30,0.23,0.06,0.02",
        "--variant",
        "13.1",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let blocks: Vec<&str> = text.trim_end().split("\n\n").collect();
    assert_eq!(blocks.len(), 2);
    assert_eq!(blocks[0].lines().count(), 6, "six matrix rows");
    assert_eq!(blocks[1].lines().count(), 6, "six zero vectors");
    assert!(blocks[0].lines().next().unwrap().starts_with("1,"));
}

#[test]
fn zeros_csv_has_one_row_per_zero() {
    let out = cop6(&[
        "gen",
        "--phi",
        "0.20,0.29,0.30,0.23,0.06,0.02",
        "--variant",
        "13.1",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let path = write_temp_matrix("case13", &v["matrix"].to_string());
    let out = cop6(&[
        "zeros",
        "--matrix",
        path.to_str().unwrap(),
        "--format",
        "csv",
    ]);
    std::fs::remove_file(&path).ok();
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 7, "header plus six zeros");
    assert_eq!(lines[0], "support,complementary,vector");
    assert!(lines[1].starts_with("1 2 3,1 2 3 4,"));
}

#[test]
fn radians_flag_matches_pi_multiples() {
    let a = cop6(&[
        "gen",
        "--phi",
        "0.25,0.25,0.25,0.25,0.25,0.25",
        "--variant",
        "13.1",
    ]);
    let pi4 = 0.25 * std::f64::consts::PI;
    let rad = format!("{pi4},{pi4},{pi4},{pi4},{pi4},{pi4}");
    let b = cop6(&["gen", "--phi", &rad, "--radians", "--variant", "13.1"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}
