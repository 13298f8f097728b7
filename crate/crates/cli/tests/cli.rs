use std::process::Command;

use serde_json::Value;

fn pqa(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_pqa"))
        .args(args)
        .env_remove("PQA_OUT_DIR")
        .env_remove("PQA_SEED")
        .output()
        .unwrap()
}

fn error_json(out: &std::process::Output) -> Value {
    assert!(!out.status.success());
    serde_json::from_slice(&out.stderr).expect("error is JSON")
}

#[test]
fn bad_usage_is_json() {
    let err = error_json(&pqa(&["gen", "--task", "t9", "--count", "4", "--out", "x"]));
    assert_eq!(err["error"], "usage");
    let err = error_json(&pqa(&["frobnicate"]));
    assert_eq!(err["error"], "usage");
}

#[test]
fn missing_input_is_json() {
    let err = error_json(&pqa(&["stats", "--in", "/nonexistent/pqa"]));
    assert_eq!(err["error"], "invalid_dataset");
}

#[test]
fn oracle_scores_full_marks_and_empty_preds_score_zero() {
    let tmp = tempfile::tempdir().unwrap();
    let root = tmp.path().join("d");
    let r = root.to_str().unwrap();
    assert!(pqa(&["gen", "--task", "all", "--count", "20", "--seed", "7", "--out", r]).status.success());

    let preds = tmp.path().join("p.json");
    let p = preds.to_str().unwrap();
    assert!(pqa(&["solve", "--in", r, "--agent", "oracle", "--out", p]).status.success());
    let out = pqa(&["score", "--in", r, "--preds", p]);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    for row in report["tasks"].as_array().unwrap() {
        assert_eq!(row["error_free_pct"], 100.0);
    }

    let empty = tmp.path().join("empty.json");
    std::fs::write(&empty, "").unwrap();
    let out = pqa(&["score", "--in", r, "--preds", empty.to_str().unwrap()]);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["overall_pct"], 0.0);
    assert_eq!(report["missing"].as_array().unwrap().len(), 70);

    let stats: Value = serde_json::from_slice(&pqa(&["stats", "--in", r]).stdout).unwrap();
    assert_eq!(stats.as_array().unwrap().len(), 7);
    assert_eq!(stats[0]["avg_symbols"], 2.0);

    let out = pqa(&["export", "--in", r, "--format", "tensors", "--d", "8"]);
    assert!(out.status.success());
    assert!(root.join("export-tensors/pos_encoding_d8.bin").is_file());
}

#[test]
fn params_file_overrides_defaults() {
    let tmp = tempfile::tempdir().unwrap();
    let params = tmp.path().join("params.json");
    std::fs::write(&params, r#"{"min_dim": 10, "max_dim": 10}"#).unwrap();
    let root = tmp.path().join("d");
    let out = pqa(&[
        "gen", "--task", "t4", "--count", "6", "--seed", "1", "--out", root.to_str().unwrap(),
        "--params", params.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let stats: Value = serde_json::from_slice(&pqa(&["stats", "--in", root.to_str().unwrap()]).stdout).unwrap();
    assert_eq!(stats[0]["size_histogram"]["10x10"], 6);

    std::fs::write(&params, r#"{"min_dim": 0}"#).unwrap();
    let err = error_json(&pqa(&[
        "gen", "--task", "t4", "--count", "6", "--out", root.to_str().unwrap(), "--params",
        params.to_str().unwrap(),
    ]));
    assert_eq!(err["error"], "invalid_params");
}
