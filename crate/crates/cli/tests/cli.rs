//! End-to-end tests through the compiled binary: output contracts and
//! exit codes (0 = verified, 1 = counterexample, 2 = usage/input error).

use std::path::PathBuf;
use std::process::{Command, Output};

fn avi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_avi"))
        .args(args)
        .env("NO_COLOR", "1")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn data_file(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "data", name].iter().collect();
    format!("file:{}", path.display())
}

#[test]
fn avg_prints_exact_fractions() {
    let out = avi(&["avg", "--graph", "star:4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "13/9");

    let out = avi(&["avg", "--graph", "empty:6", "--alpha", "1/1"]);
    assert_eq!(stdout(&out).trim(), "3/1");

    let out = avi(&["avg", "--graph", "star:3", "--alpha", "2/1"]);
    assert_eq!(stdout(&out).trim(), "14/11");
}

#[test]
fn poly_prints_the_polynomial() {
    let out = avi(&["poly", "--graph", "path:4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("1 + 4*x + 3*x^2"), "{text}");
    assert!(text.contains("avi(G) = 5/4"), "{text}");
}

#[test]
fn usage_and_input_errors_exit_two() {
    for args in [
        &["avg", "--graph", "star:x"][..],
        &["avg", "--graph", "ring:4"],
        &["avg", "--graph", "star:4", "--alpha", "0/1"],
        &["avg", "--graph", "star:4", "--alpha", "-1/2"],
        &["avg", "--graph", "complete:65"],
        &["trees", "--n", "19"],
        &["verify", "bounds", "--max-n", "8"],
        &["avg", "--graph", "star:4", "--bogus-flag"],
        &["avg", "--graph", "file:/no/such/file.edges"],
    ] {
        let out = avi(args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
    }
}

#[test]
fn verify_cases_emits_the_margin_table() {
    let out = avi(&["verify", "cases"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("VERIFIED"), "{text}");
    // 105 data rows: 35 with k=3 and 70 with k=4.
    let k3 = text.lines().filter(|l| l.trim_start().starts_with("3 ")).count();
    let k4 = text.lines().filter(|l| l.trim_start().starts_with("4 ")).count();
    assert_eq!(k3, 35, "{text}");
    assert_eq!(k4, 70);
    // The worst case appears with its exact interval and zero margin.
    assert!(text.contains("3/5"), "{text}");
    assert!(text.contains("6/7"));
    assert!(text.contains("0/1 + 0/1*sqrt5"));
}

#[test]
fn verify_suites_exit_zero_when_verified() {
    for args in [
        &["verify", "bounds", "--max-n", "4"][..],
        &["verify", "star-max", "--max-n", "8"],
        &["verify", "path-min", "--max-n", "8"],
        &["verify", "quotient", "--max-n", "7"],
        &["verify", "vertex-removal", "--max-n", "4"],
        &["verify", "path-formula", "--max-n", "60"],
        &["verify", "aux"],
    ] {
        let out = avi(args);
        assert_eq!(out.status.code(), Some(0), "args {args:?}");
        assert!(stdout(&out).contains("VERIFIED"), "args {args:?}");
    }
}

#[test]
fn jobs_flag_caps_parallelism() {
    let out = avi(&["--jobs", "1", "verify", "bounds", "--max-n", "4"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn bundled_example_tree_shows_both_edge_directions() {
    let spec = data_file("nonmonotone-tree.edges");
    let out = avi(&["edge-scan", "--graph", &spec]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("avi(G) = 55/26"), "{text}");
    assert!(text.contains("19/9"));
    assert!(text.contains("83/34"));
    assert!(text.contains("[decrease]"));
    assert!(text.contains("[increase]"));
}

#[test]
fn vertex_scan_star() {
    let out = avi(&["vertex-scan", "--graph", "star:4"]);
    let text = stdout(&out);
    assert!(text.contains("13/9 -> 3/2  [increase]"), "{text}");
    assert!(text.contains("13/9 -> 1/1  [decrease]"));
}

#[test]
fn weighted_scan_exit_codes_track_the_finding() {
    // At fugacity 10 a non-path minimiser exists on 7 vertices but not
    // on 8.
    let out = avi(&["weighted-scan", "--n", "7", "--alpha", "10/1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("COUNTEREXAMPLE"));
    let out = avi(&["weighted-scan", "--n", "8", "--alpha", "10/1"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn json_output_is_machine_readable_with_exact_strings() {
    let out = avi(&["--format", "json", "avg", "--graph", "star:4"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["average"], "13/9");
    assert_eq!(value["count"], "9/1");

    let out = avi(&["--format", "json", "verify", "aux"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["reports"][0]["status"], "verified");

    let out = avi(&["--format", "json", "verify", "cases"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["cases"].as_array().unwrap().len(), 105);
    assert_eq!(value["reports"][0]["status"], "verified");

    let out = avi(&["--format", "json", "trees", "--n", "4"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["count"], 2);
    assert_eq!(value["trees"].as_array().unwrap().len(), 2);

    let out = avi(&["--format", "json", "vertex-scan", "--graph", "star:4"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = value["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0]["direction"], "increase");
    assert_eq!(rows[0]["after"], "3/2");
}

#[test]
fn trees_listing_and_count() {
    let out = avi(&["trees", "--n", "7", "--count-only"]);
    assert_eq!(stdout(&out).trim(), "11");
    let out = avi(&["trees", "--n", "4"]);
    assert_eq!(stdout(&out).lines().count(), 2);
}
