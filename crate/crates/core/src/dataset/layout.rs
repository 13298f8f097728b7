use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::task::{Episode, TaskId};
use crate::taskgen::{generate_dataset, make_episodes, GenParams};

use super::{read_episode_json_with_task, write_episode_json, DatasetError};

pub const FORMAT_VERSION: u32 = 1;
pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetManifest {
    pub task: TaskId,
    /// Pairs generated; they form `count / 2` episodes.
    pub count: u64,
    pub seed: u64,
    pub params_fingerprint: String,
    pub format_version: u32,
    /// Hex SHA-256 over the per-episode digests in index order.
    pub checksum: String,
    pub episodes: usize,
    /// Full parameters, so the manifest alone regenerates the data.
    pub params: GenParams,
}

/// One task's episodes with their ids (`"t1/000000"`, ...).
#[derive(Debug, Clone, PartialEq)]
pub struct TaskData {
    pub task: TaskId,
    pub manifest: Option<DatasetManifest>,
    pub episodes: Vec<(String, Episode)>,
}

pub fn episode_id(task: TaskId, index: usize) -> String {
    format!("{}/{index:06}", task.slug())
}

/// Digest of every episode's id and canonical bytes, combined in index
/// order. Per-episode digests are independent, so they are computed in
/// parallel without affecting the result.
pub fn checksum(task: TaskId, episodes: &[Episode]) -> String {
    let digests: Vec<[u8; 32]> = episodes
        .par_iter()
        .enumerate()
        .map(|(i, e)| {
            let mut h = Sha256::new();
            h.update(episode_id(task, i).as_bytes());
            h.update(b"\n");
            h.update(write_episode_json(e));
            h.finalize().into()
        })
        .collect();
    let mut h = Sha256::new();
    for d in &digests {
        h.update(d);
    }
    hex::encode(h.finalize())
}

/// Generates `count` pairs for `task` and assembles them into episodes.
pub fn build_task(
    task: TaskId,
    count: u64,
    seed: u64,
    params: &GenParams,
) -> Result<(Vec<Episode>, DatasetManifest), DatasetError> {
    let pairs = generate_dataset(task, count, seed, params)?;
    let episodes = make_episodes(&pairs, seed)?;
    let manifest = DatasetManifest {
        task,
        count,
        seed,
        params_fingerprint: params.fingerprint(),
        format_version: FORMAT_VERSION,
        checksum: checksum(task, &episodes),
        episodes: episodes.len(),
        params: params.clone(),
    };
    Ok((episodes, manifest))
}

fn task_dir(root: &Path, task: TaskId) -> PathBuf {
    root.join(task.slug())
}

/// Writes `<root>/<task>/<index>.json` for every episode, then the manifest.
pub fn write_task(
    root: &Path,
    episodes: &[Episode],
    manifest: &DatasetManifest,
) -> Result<PathBuf, DatasetError> {
    let dir = task_dir(root, manifest.task);
    fs::create_dir_all(&dir).map_err(|e| DatasetError::io(&dir, e))?;
    episodes.par_iter().enumerate().try_for_each(|(i, e)| {
        let path = dir.join(format!("{i:06}.json"));
        fs::write(&path, write_episode_json(e)).map_err(|err| DatasetError::io(&path, err))
    })?;
    let path = dir.join(MANIFEST_FILE);
    let mut bytes = serde_json::to_vec_pretty(manifest).expect("manifest serializes");
    bytes.push(b'\n');
    fs::write(&path, bytes).map_err(|e| DatasetError::io(&path, e))?;
    Ok(dir)
}

/// Reads one task directory. Episode files are taken in name order; when a
/// manifest is present its checksum must match the files.
pub fn read_task_dir(dir: &Path, task: TaskId) -> Result<TaskData, DatasetError> {
    let mut names: Vec<String> = fs::read_dir(dir)
        .map_err(|e| DatasetError::io(dir, e))?
        .filter_map(|entry| entry.ok())
        .map(|entry| entry.file_name().to_string_lossy().into_owned())
        .filter(|n| n.ends_with(".json") && n != MANIFEST_FILE)
        .collect();
    names.sort();
    let episodes = names
        .par_iter()
        .map(|name| {
            let path = dir.join(name);
            let bytes = fs::read(&path).map_err(|e| DatasetError::io(&path, e))?;
            let e = read_episode_json_with_task(&bytes, task).map_err(|err| {
                DatasetError::Invalid {
                    path: path.clone(),
                    reason: err.to_string(),
                }
            })?;
            let stem = name.trim_end_matches(".json");
            Ok((format!("{}/{stem}", task.slug()), e))
        })
        .collect::<Result<Vec<_>, DatasetError>>()?;

    let manifest_path = dir.join(MANIFEST_FILE);
    let manifest = match fs::read(&manifest_path) {
        Ok(bytes) => Some(
            serde_json::from_slice::<DatasetManifest>(&bytes).map_err(|e| {
                DatasetError::Invalid {
                    path: manifest_path.clone(),
                    reason: e.to_string(),
                }
            })?,
        ),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => None,
        Err(e) => return Err(DatasetError::io(&manifest_path, e)),
    };
    if let Some(m) = &manifest {
        let plain: Vec<Episode> = episodes.iter().map(|(_, e)| e.clone()).collect();
        let found = checksum(task, &plain);
        if m.task != task || found != m.checksum {
            return Err(DatasetError::Invalid {
                path: manifest_path,
                reason: format!("checksum {found} does not match manifest {}", m.checksum),
            });
        }
    }
    Ok(TaskData {
        task,
        manifest,
        episodes,
    })
}

/// Reads every `t1`..`t7` directory present under `root`.
pub fn read_dataset(root: &Path) -> Result<Vec<TaskData>, DatasetError> {
    if !root.is_dir() {
        return Err(DatasetError::Invalid {
            path: root.to_path_buf(),
            reason: "not a directory".into(),
        });
    }
    let tasks: Vec<TaskData> = TaskId::ALL
        .into_iter()
        .filter(|&t| task_dir(root, t).is_dir())
        .map(|t| read_task_dir(&task_dir(root, t), t))
        .collect::<Result<_, _>>()?;
    if tasks.is_empty() {
        return Err(DatasetError::Invalid {
            path: root.to_path_buf(),
            reason: "no t1..t7 task directories".into(),
        });
    }
    Ok(tasks)
}
