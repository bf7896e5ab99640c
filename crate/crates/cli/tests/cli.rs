//! End-to-end tests running the compiled binary.

use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_artin-growth"))
        .args(args)
        .env_remove("ARTIN_GROWTH_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

#[test]
fn poly_prints_expression_and_coefficient_array() {
    let out = run(&["poly", "A2"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("N(t) = 1 - 2*t + t^3"));
    assert!(text.contains("[1,-2,0,1]"));

    let out = run(&["poly", "D4"]);
    assert!(stdout_of(&out).contains("1 - 4*t + 3*t^2 + 2*t^3 - 3*t^6 + t^12"));

    let out = run(&["poly", "A1"]);
    assert!(stdout_of(&out).contains("N(t) = 1 - t"));
}

#[test]
fn poly_json_has_schema_fields() {
    let out = run(&["--json", "poly", "A2xB3"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(value["spec"], "A2xB3");
    assert!(value["polynomial"].is_string());
    assert_eq!(value["coefficients"][0], "1");
}

#[test]
fn derivative_reports_value_and_slope() {
    let out = run(&["derivative", "E8"]);
    let text = stdout_of(&out);
    assert!(text.contains("N(1) = 0"));
    assert!(text.contains("N'(1) = 44"));
}

#[test]
fn table_matches_and_exits_zero() {
    let out = run(&["table", "--max-rank", "8"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("E6"));
    assert!(text.contains("OK"));
    assert!(!text.contains("MISMATCH"));
}

#[test]
fn verify_passes_and_reports_d4_note() {
    let out = run(&["verify", "--lmax", "6"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("all identities hold"));
    assert!(text.contains("d4_base_value"));
    assert!(text.contains("12"));

    let out = run(&["--json", "verify", "--lmax", "4"]);
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(value["all_passed"], true);
    let checks = value["checks"].as_array().unwrap();
    assert!(checks
        .iter()
        .any(|c| c["name"] == "d4_base_value" && c["note"].as_str().unwrap().contains("12")));
}

#[test]
fn growth_series_with_and_without_oracle() {
    let out = run(&["growth", "A2", "--degree", "6"]);
    assert_eq!(stdout_of(&out).trim(), "1 2 4 7 12 20 33");

    let out = run(&["growth", "I2(5)", "--degree", "5", "--oracle"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("oracle: 1 2 4 8 16 31"));
    assert!(text.contains("verdict: PASS"));

    let out = run(&["growth", "A1", "--degree", "4"]);
    assert_eq!(stdout_of(&out).trim(), "1 1 1 1 1");
}

#[test]
fn matrix_files_are_accepted() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "rank 2\n1 2 5").unwrap();
    let path = file.path().to_str().unwrap();
    let out = run(&["poly", path]);
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("1 - 2*t + t^5"));
}

#[test]
fn exit_codes_for_errors() {
    // unparseable spec: usage error
    let out = run(&["poly", "Q9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!String::from_utf8(out.stderr).unwrap().is_empty());

    // non-finite matrix: input error, names the component
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "rank 3\n1 2 3\n2 3 3\n1 3 3").unwrap();
    let out = run(&["poly", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("[1, 2, 3]"));

    // starved oracle budget: limit error plus a fitting-degree hint
    let out = Command::new(env!("CARGO_BIN_EXE_artin-growth"))
        .args(["growth", "A2", "--degree", "6", "--oracle"])
        .env("ARTIN_GROWTH_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("exceeds the budget"));
    assert!(stderr.contains("hint: --degree"));

    // out-of-range table bound: usage error
    let out = run(&["table", "--max-rank", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let first = run(&["--json", "table", "--max-rank", "6"]);
    let second = run(&["--json", "table", "--max-rank", "6"]);
    assert_eq!(first.stdout, second.stdout);
}
