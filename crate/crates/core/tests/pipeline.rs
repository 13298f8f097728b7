use std::fs;

use pqa_core::dataset::{read_episode_json, MANIFEST_FILE};
use pqa_core::eval::{Agent, PredictionSet};
use pqa_core::harness::{self, ExportFormat};
use pqa_core::task::TaskId;
use pqa_core::taskgen::GenParams;

#[test]
fn generate_solve_score_export() {
    let tmp = tempfile::tempdir().unwrap();
    let root = tmp.path().join("data");
    let manifests =
        harness::generate(&root, &TaskId::ALL, 12, 3, &GenParams::default()).unwrap();
    assert_eq!(manifests.len(), 7);
    assert!(root.join("t4").join(MANIFEST_FILE).is_file());

    let stats = harness::dataset_stats(&root).unwrap();
    assert_eq!(stats.len(), 7);
    for s in &stats {
        assert_eq!(s.pairs, 12);
        assert!((0.0..=100.0).contains(&s.avg_slots_pct));
        for &(x, y) in &s.key_region_centers {
            assert!(0.0 < x && x < 1.0 && 0.0 < y && y < 1.0);
        }
    }

    let oracle = harness::solve(&root, Agent::Oracle).unwrap();
    assert_eq!(oracle.predictions.len(), 7 * 6);
    let report = harness::score_dir(&root, &oracle).unwrap();
    assert!(report.tasks.iter().all(|t| t.error_free_pct == 100.0));
    assert_eq!(report.overall_pct, 100.0);

    let identity = harness::solve(&root, Agent::Identity).unwrap();
    assert_eq!(harness::score_dir(&root, &identity).unwrap().overall_pct, 0.0);

    let nothing = harness::score_dir(&root, &PredictionSet::default()).unwrap();
    assert_eq!(nothing.overall_pct, 0.0);
    assert_eq!(nothing.missing.len(), 42);

    let json = harness::export(&root, &tmp.path().join("json"), ExportFormat::Json, 8).unwrap();
    assert_eq!(json.files, 7);
    let doc: serde_json::Value =
        serde_json::from_slice(&fs::read(tmp.path().join("json/t2.json")).unwrap()).unwrap();
    let first = serde_json::to_vec(&doc["t2/000000"]).unwrap();
    assert_eq!(read_episode_json(&first).unwrap().task(), TaskId::T2);

    let px = harness::export(&root, &tmp.path().join("px"), ExportFormat::Pixmap, 8).unwrap();
    assert_eq!(px.files, 7 * 6 * 4);
    assert!(fs::read(tmp.path().join("px/t1/000000_test_input.ppm"))
        .unwrap()
        .starts_with(b"P6\n"));

    let tensors =
        harness::export(&root, &tmp.path().join("tensors"), ExportFormat::Tensors, 8).unwrap();
    assert_eq!(tensors.files, 8);
    assert!(tmp.path().join("tensors/pos_encoding_d8.bin").is_file());
}

#[test]
fn missing_directory_is_an_error() {
    let tmp = tempfile::tempdir().unwrap();
    let err = harness::dataset_stats(&tmp.path().join("nope")).unwrap_err();
    assert_eq!(err.kind(), "invalid_dataset");
}
