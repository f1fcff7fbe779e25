//! End-to-end checks of the binary: exit codes, spec round-trips, file
//! outputs, and byte-level determinism.

use std::process::{Command, Output};

fn octanorm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_octanorm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn exit_zero_with_report_on_success() {
    let out = octanorm(&["check", "pos-oh", "--norm", "lp:1"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["results"]["verdict"], serde_json::json!(true));
    assert_eq!(json["schema"], serde_json::json!("report_v1"));
}

#[test]
fn exit_two_on_parse_error_with_position() {
    let out = octanorm(&["norm", "eval", "--norm", "lp:x", "--point", "1,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).is_empty(), "no partial JSON on error paths");
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("byte 3"), "position missing: {err}");
}

#[test]
fn exit_one_on_failing_verification() {
    // A four-functional grid misses the corner slices of the square, so the
    // two duality sides genuinely disagree at this budget.
    let out = octanorm(&[
        "slices", "deville", "--norm", "lp:inf", "--k", "2", "--alpha", "1e-3", "--grid", "4",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["results"]["pass"], serde_json::json!(false));
}

#[test]
fn norm_specs_round_trip_through_reports() {
    for spec in ["lp:inf", "ab:0.5,0.25", "dual(poly:[(1,0),(0.5,1),(0,1)])"] {
        let out = octanorm(&["norm", "gamma", "--norm", spec]);
        assert!(out.status.success());
        let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        let echoed = json["inputs"]["norm"].as_str().unwrap();
        let reparsed = octanorm::parse_norm(echoed).unwrap();
        assert_eq!(reparsed.to_string(), echoed);
    }
}

#[test]
fn json_flag_writes_identical_bytes() {
    let dir = std::env::temp_dir().join("octanorm-cli-test-json");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = octanorm(&[
        "window",
        "compute",
        "--a",
        "0.5",
        "--b",
        "0",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let on_disk = std::fs::read_to_string(&path).unwrap();
    assert_eq!(on_disk, stdout(&out));
}

#[test]
fn csv_only_for_min_diameter() {
    let dir = std::env::temp_dir().join("octanorm-cli-test-csv");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rows.csv");
    let out = octanorm(&[
        "slices",
        "min-diameter",
        "--norm",
        "lp:inf",
        "--k",
        "1",
        "--alpha",
        "0.1",
        "--grid",
        "8",
        "--csv",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let rows = std::fs::read_to_string(&path).unwrap();
    assert!(rows.starts_with("f1x,f1y,"));
    assert_eq!(rows.lines().count(), 9, "header plus one row per functional");

    let out = octanorm(&[
        "norm",
        "gamma",
        "--norm",
        "lp:2",
        "--csv",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn identical_seeds_are_byte_identical() {
    let args = [
        "rough",
        "search",
        "--space",
        "sum(lp:2; leaf:1; leaf:1)",
        "--points",
        r#"[[{"0":1.0},{}],[{},{"0":1.0}]]"#,
        "--budget",
        "400",
        "--seed",
        "7",
    ];
    let a = octanorm(&args);
    let b = octanorm(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn theorem_sum_reports_branch() {
    let out = octanorm(&[
        "rough",
        "theorem-sum",
        "--space",
        "sum(lp:2; leaf:1; leaf:1)",
        "--points",
        r#"[[{},{"0":1.0}],[{},{"1":1.0}]]"#,
        "--budget",
        "300",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["results"]["branch"], serde_json::json!("second-factor-only"));
    assert_eq!(json["results"]["satisfied"], serde_json::json!(true));
}

#[test]
fn fbound_with_samples_checks_the_inequality() {
    let out = octanorm(&[
        "rough", "fbound", "--p", "2", "--eps", "0.1", "--samples", "500",
    ]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["results"]["check"]["pass"], serde_json::json!(true));
    let f: f64 = json["results"]["f_eps"].as_f64().unwrap();
    assert!((f - 0.1).abs() < 1e-15);
}
