use std::process::{Command, Output};

use proptest::prelude::*;
use quadric_genus::{genus_bound, BoundReport, CurveParams};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadric-genus"))
        .args(args)
        .env_remove("QUADRIC_GENUS_NODE_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn validator() -> jsonschema::Validator {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/bound_report.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

#[test]
fn compute_json_matches_library_and_schema() {
    let v = validator();
    for (d, k) in [(9, 2), (12, 3), (15, 3), (27, 4), (1, 1), (58, 6)] {
        let text = stdout(&[
            "compute",
            "--d",
            &d.to_string(),
            "--k",
            &k.to_string(),
            "--format",
            "json",
        ]);
        let json: Value = serde_json::from_str(&text).unwrap();
        assert!(
            v.is_valid(&json),
            "({d},{k}): {:?}",
            v.iter_errors(&json).map(|e| e.to_string()).collect::<Vec<_>>()
        );
        let parsed: BoundReport = serde_json::from_value(json).unwrap();
        assert_eq!(parsed, genus_bound(CurveParams::new(d, k).unwrap()));
    }
}

#[test]
fn sweep_json_is_an_array_of_valid_reports() {
    let v = validator();
    let json: Value = serde_json::from_str(&stdout(&[
        "sweep", "--k", "3", "--d-from", "1", "--d-to", "30", "--format", "json",
    ]))
    .unwrap();
    let items = json.as_array().unwrap();
    assert_eq!(items.len(), 30);
    assert!(items.iter().all(|r| v.is_valid(r)));
    let ds: Vec<i64> = items.iter().map(|r| r["d"].as_i64().unwrap()).collect();
    assert_eq!(ds, (1..=30).collect::<Vec<_>>());
}

#[test]
fn sweep_k1_starts_at_minus_one() {
    let csv = stdout(&["sweep", "--k", "1", "--d-from", "2", "--d-to", "6", "--format", "csv"]);
    let mut lines = csv.lines();
    assert!(lines.next().unwrap().ends_with("residual_degree,no_small_curve"));
    let bound_col = |line: &str| line.split(',').nth(9).unwrap().to_owned();
    let bounds: Vec<String> = lines.map(bound_col).collect();
    assert_eq!(bounds, ["-1", "-1", "0", "1", "3"]);
}

#[test]
fn compute_text_blocks() {
    let text = stdout(&["compute", "--d", "9", "--k", "2"]);
    for needle in ["g - 1 <= 5", "sharp", "S(9,2)", "type (2,3)", "degree 3"] {
        assert!(text.contains(needle), "missing {needle:?} in\n{text}");
    }
    let text = stdout(&["compute", "--d", "27", "--k", "4"]);
    assert!(text.contains("conjectured sharp"), "{text}");
    assert!(text.contains("g - 1 <= 56"), "{text}");
}

#[test]
fn extremal_examples() {
    let text = stdout(&["extremal", "--d", "9", "--k", "2"]);
    assert!(text.contains("gamma~         1,3,4,1"), "{text}");
    assert!(text.contains("raw template 1,3,4,2,-1"), "{text}");
    assert!(text.contains("coincide: yes"));

    let json: Value =
        serde_json::from_str(&stdout(&["extremal", "--d", "15", "--k", "3", "--format", "json"])).unwrap();
    assert_eq!(json["tilde_gamma"]["functional"], 18);
    assert_eq!(json["hat_gamma"]["functional"], 17);
    assert_eq!(json["coincide"], false);

    let text = stdout(&["extremal", "--d", "4", "--k", "1"]);
    assert_eq!(text.matches("1,2,1").count(), 2, "{text}");

    let json: Value =
        serde_json::from_str(&stdout(&["extremal", "--d", "12", "--k", "3", "--format", "json"])).unwrap();
    assert_eq!(json["tilde_gamma_theta_k"]["functional"], 10);
}

#[test]
fn verify_reports_quadric_cross_check_and_json() {
    let text = stdout(&["verify", "--k-max", "1", "--d-max", "10"]);
    assert!(text.contains("quadric-surface cross-check"), "{text}");
    let json: Value = serde_json::from_str(&stdout(&[
        "verify", "--k-max", "2", "--d-max", "12", "--format", "json",
    ]))
    .unwrap();
    assert_eq!(json["cells"], 24);
    assert_eq!(json["passed"], true);
}

#[test]
fn budget_env_and_flag() {
    let out = Command::new(env!("CARGO_BIN_EXE_quadric-genus"))
        .args(["verify", "--k-max", "2", "--d-max", "10"])
        .env("QUADRIC_GENUS_NODE_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stdout).contains("first counterexample"));

    let out = Command::new(env!("CARGO_BIN_EXE_quadric-genus"))
        .args(["verify", "--k-max", "2", "--d-max", "10", "--node-budget", "100000"])
        .env("QUADRIC_GENUS_NODE_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));

    let out = Command::new(env!("CARGO_BIN_EXE_quadric-genus"))
        .args(["verify", "--k-max", "1", "--d-max", "3"])
        .env("QUADRIC_GENUS_NODE_BUDGET", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn invalid_inputs_exit_1() {
    for args in [
        &["compute", "--d", "5"][..],
        &["compute", "--d", "5", "--k", "-1"],
        &["compute", "--d", "5", "--k", "1", "--format", "xml"],
        &["extremal", "--d", "5", "--k", "0"],
        &["extremal", "--d", "5", "--k", "1", "--format", "csv"],
        &["sweep", "--k", "0", "--d-from", "1", "--d-to", "2"],
        &["verify", "--k-max", "2", "--d-max", "0"],
        &["frobnicate"],
    ] {
        assert_eq!(run(args).status.code(), Some(1), "{args:?}");
    }
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn csv_row_reproduces_library(d in 1i64..300, k in 1i64..9) {
        let csv = stdout(&["compute", "--d", &d.to_string(), "--k", &k.to_string(), "--format", "csv"]);
        let row = csv.lines().nth(1).unwrap();
        let fields: Vec<&str> = row.split(',').collect();
        let parsed = quadric_genus::CsvRow::parse(&fields).unwrap();
        prop_assert!(parsed.matches(&genus_bound(CurveParams::new(d, k).unwrap())));
    }
}
