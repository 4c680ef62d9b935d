//! End-to-end tests of the `dunkl` binary: spawn the compiled executable,
//! check output, exit codes, JSON round-trips, and the advisory cache.

use std::process::{Command, Output};

use dunkl_core::dunkl::DunklContext;
use dunkl_core::jack::{zeta, Composition};
use dunkl_core::poly::Polynomial;
use dunkl_core::roots::{MultiplicitySpec, RootSystem, TypeTag};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dunkl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn version_prints_name_and_number() {
    let out = run(&["version"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("dunkl "));
}

#[test]
fn roots_json_matches_the_b3_table_row() {
    let out = run(&["roots", "--type", "B", "--rank", "3", "--json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["degrees"], serde_json::json!([2, 4, 6]));
    assert_eq!(doc["order"], serde_json::json!(48));
    assert_eq!(doc["dim"], serde_json::json!(3));
    assert_eq!(doc["num_positive_roots"], serde_json::json!(9));
    assert_eq!(doc["classes"].as_array().unwrap().len(), 2);
}

#[test]
fn jack_zeta_matches_the_library_and_round_trips() {
    let out = run(&["jack", "zeta", "--d", "2", "--alpha", "1,0", "--json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let emitted = Polynomial::from_json(&doc["poly"]).unwrap();

    let ctx = DunklContext::new(
        RootSystem::build(TypeTag::A(1)).unwrap(),
        MultiplicitySpec::symbolic(1).unwrap(),
    )
    .unwrap();
    let expected = zeta(&ctx, &Composition::new(vec![1, 0])).unwrap();
    assert_eq!(emitted, expected.poly);

    // The text form is the same polynomial.
    let text = run(&["jack", "zeta", "--d", "2", "--alpha", "1,0"]);
    assert_eq!(stdout(&text).trim(), expected.poly.to_string());
}

#[test]
fn apply_json_round_trips_through_the_polynomial_schema() {
    let out = run(&[
        "apply", "--type", "a2", "--kappa", "1/2", "--dir", "1,0,0", "--poly", "x1^2*x2", "--json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let parsed = Polynomial::from_json(&doc).unwrap();
    assert_eq!(parsed.to_json(), doc);
    assert_eq!(parsed.to_string(), "3*x1*x2 + (1)/(2)*x2*x3");
}

#[test]
fn kernel_csv_emits_one_row_per_point_pair() {
    let out = run(&[
        "kernel", "--type", "A", "--rank", "2", "--kappa", "0.5", "--x", "1,0,-1", "--y",
        "0.5,0.5,-1", "--x", "0,0,0", "--y", "1,1,1", "--tol", "1e-8", "--csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.trim().lines().collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0], "x,y,value,terms_used,tail_bound");
    // K(0, y) = 1 identically.
    assert!(lines[2].contains(",1,"), "got row {:?}", lines[2]);
}

#[test]
fn verify_census_suite_passes_quickly() {
    let out = run(&["verify", "--suite", "census", "--seed", "7", "--json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let reports = doc.as_array().unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0]["passed"], serde_json::json!(true));
    assert_eq!(reports[0]["name"], serde_json::json!("ac14"));
}

#[test]
fn usage_errors_exit_with_code_2() {
    let unknown_type = run(&["roots", "--type", "q"]);
    assert_eq!(unknown_type.status.code(), Some(2));

    let unknown_flag = run(&["roots", "--no-such-flag"]);
    assert_eq!(unknown_flag.status.code(), Some(2));

    let unknown_suite = run(&["verify", "--suite", "nope"]);
    assert_eq!(unknown_suite.status.code(), Some(2));
}

#[test]
fn mathematical_errors_exit_with_code_1() {
    let out = run(&[
        "kernel", "--type", "A", "--rank", "2", "--kappa", "symbolic", "--x", "1,0,-1", "--y",
        "1,0,-1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("symbolic parameter"), "stderr: {}", stderr);
}

#[test]
fn cache_dir_is_advisory_and_results_are_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["jack", "zeta", "--d", "3", "--alpha", "2,0,1", "--json"];

    let without = run(&args);
    assert!(without.status.success());

    let first = Command::new(env!("CARGO_BIN_EXE_dunkl"))
        .args(args)
        .env("DUNKL_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert!(first.status.success());
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert!(!files.is_empty(), "cache file written");

    let second = Command::new(env!("CARGO_BIN_EXE_dunkl"))
        .args(args)
        .env("DUNKL_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert!(second.status.success());

    assert_eq!(stdout(&without), stdout(&first));
    assert_eq!(stdout(&first), stdout(&second));
}

#[test]
fn corrupt_cache_files_are_ignored() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["jack", "zeta", "--d", "2", "--alpha", "0,2"];

    let clean = run(&args);
    let first = Command::new(env!("CARGO_BIN_EXE_dunkl"))
        .args(args)
        .env("DUNKL_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert!(first.status.success());

    for entry in std::fs::read_dir(dir.path()).unwrap() {
        std::fs::write(entry.unwrap().path(), "garbage").unwrap();
    }
    let second = Command::new(env!("CARGO_BIN_EXE_dunkl"))
        .args(args)
        .env("DUNKL_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert!(second.status.success());
    assert_eq!(stdout(&clean), stdout(&first));
    assert_eq!(stdout(&clean), stdout(&second));
}
