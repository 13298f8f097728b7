//! Build a small dataset on disk, read it back and verify its manifest.
//!
//! cargo run -p pqa-core --example dataset_roundtrip -- [out-dir]

use std::path::PathBuf;

use pqa_core::dataset::{build_task, read_dataset, write_episode_json, write_task};
use pqa_core::task::TaskId;
use pqa_core::taskgen::GenParams;

fn main() {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("pqa-roundtrip"));
    let params = GenParams::default();
    for task in [TaskId::T2, TaskId::T6] {
        let (episodes, manifest) = build_task(task, 20, 11, &params).expect("build");
        let dir = write_task(&out, &episodes, &manifest).expect("write");
        println!("{task}: {} episodes in {} (checksum {})", episodes.len(), dir.display(), manifest.checksum);
    }
    for data in read_dataset(&out).expect("read") {
        let (id, first) = &data.episodes[0];
        let bytes = write_episode_json(first);
        println!("{id}: {} bytes, e.g. {}…", bytes.len(), String::from_utf8_lossy(&bytes[..60]));
    }
}
