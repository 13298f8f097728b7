//! Directory-level operations behind the command-line tool: build a
//! dataset tree, summarize it, run a built-in agent, score predictions and
//! export alternate formats.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dataset::render::{render_grid, ARC_PALETTE};
use crate::dataset::{self, DatasetError, DatasetManifest, TaskData};
use crate::encode::{to_indices, EncodeError, PosEncodingTable};
use crate::eval::{score, Agent, PredictionSet, Report};
use crate::stats::{compute_stats, StatsError, TaskStats};
use crate::task::{Episode, Pair, TaskId};
use crate::taskgen::GenParams;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Dataset(#[from] DatasetError),
    #[error(transparent)]
    Stats(#[from] StatsError),
    #[error(transparent)]
    Encode(#[from] EncodeError),
    #[error("{path}: {reason}")]
    File { path: PathBuf, reason: String },
}

impl HarnessError {
    pub fn kind(&self) -> &'static str {
        match self {
            HarnessError::Dataset(e) => e.kind(),
            HarnessError::Stats(_) => "stats",
            HarnessError::Encode(_) => "encode",
            HarnessError::File { .. } => "file",
        }
    }

    fn file(path: &Path, reason: impl ToString) -> HarnessError {
        HarnessError::File {
            path: path.to_path_buf(),
            reason: reason.to_string(),
        }
    }
}

/// Generates `count` pairs per task under `out/<task>/`, returning manifests.
pub fn generate(
    out: &Path,
    tasks: &[TaskId],
    count: u64,
    seed: u64,
    params: &GenParams,
) -> Result<Vec<DatasetManifest>, HarnessError> {
    tasks
        .iter()
        .map(|&task| {
            let (episodes, manifest) = dataset::build_task(task, count, seed, params)?;
            dataset::write_task(out, &episodes, &manifest)?;
            Ok(manifest)
        })
        .collect()
}

/// Every episode under `root`, with ids, in task then index order.
pub fn load_episodes(root: &Path) -> Result<Vec<(String, Episode)>, HarnessError> {
    Ok(dataset::read_dataset(root)?
        .into_iter()
        .flat_map(|t: TaskData| t.episodes)
        .collect())
}

/// Both pairs of every episode (context and test), per task.
pub fn dataset_stats(root: &Path) -> Result<Vec<TaskStats>, HarnessError> {
    dataset::read_dataset(root)?
        .iter()
        .map(|t| {
            let pairs: Vec<Pair> = t
                .episodes
                .iter()
                .flat_map(|(_, e)| {
                    [
                        e.context.clone(),
                        Pair {
                            question: e.test_question.clone(),
                            answer: e.test_answer.clone(),
                            task: t.task,
                        },
                    ]
                })
                .collect();
            Ok(compute_stats(&pairs)?)
        })
        .collect()
}

pub fn solve(root: &Path, agent: Agent) -> Result<PredictionSet, HarnessError> {
    Ok(agent.run(&load_episodes(root)?))
}

pub fn read_predictions(path: &Path) -> Result<PredictionSet, HarnessError> {
    let bytes = fs::read(path).map_err(|e| HarnessError::file(path, e))?;
    if bytes.iter().all(u8::is_ascii_whitespace) {
        return Ok(PredictionSet {
            agent: "empty".into(),
            ..PredictionSet::default()
        });
    }
    serde_json::from_slice(&bytes).map_err(|e| HarnessError::file(path, e))
}

pub fn score_dir(root: &Path, preds: &PredictionSet) -> Result<Report, HarnessError> {
    Ok(score(&load_episodes(root)?, preds))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExportFormat {
    /// One JSON object per task mapping episode id to its ARC-style episode.
    Json,
    /// A binary pixmap per grid.
    Pixmap,
    /// Padded index batches per task plus the positional-encoding table.
    Tensors,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportSummary {
    pub format: ExportFormat,
    pub out: PathBuf,
    pub files: usize,
}

const PIXELS_PER_CELL: usize = 10;

fn write(path: &Path, bytes: &[u8]) -> Result<(), HarnessError> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|e| HarnessError::file(parent, e))?;
    }
    fs::write(path, bytes).map_err(|e| HarnessError::file(path, e))
}

/// Exports the dataset under `root` to `out`. `pe_dim` sets the embedding
/// dimension of the tensor export's positional-encoding table.
pub fn export(
    root: &Path,
    out: &Path,
    format: ExportFormat,
    pe_dim: usize,
) -> Result<ExportSummary, HarnessError> {
    let tasks = dataset::read_dataset(root)?;
    let mut files = 0;
    match format {
        ExportFormat::Json => {
            for t in &tasks {
                let mut doc = serde_json::Map::new();
                for (id, e) in &t.episodes {
                    let value: serde_json::Value =
                        serde_json::from_slice(&dataset::write_episode_json(e))
                            .expect("canonical JSON parses");
                    doc.insert(id.clone(), value);
                }
                let bytes = serde_json::to_vec(&doc).expect("JSON serializes");
                write(&out.join(format!("{}.json", t.task.slug())), &bytes)?;
                files += 1;
            }
        }
        ExportFormat::Pixmap => {
            for t in &tasks {
                let written: Vec<usize> = t
                    .episodes
                    .par_iter()
                    .map(|(id, e)| {
                        let grids = [
                            ("train_input", &e.context.question),
                            ("train_output", &e.context.answer),
                            ("test_input", &e.test_question),
                            ("test_output", &e.test_answer),
                        ];
                        for (name, g) in grids {
                            let path = out.join(format!("{id}_{name}.ppm"));
                            write(&path, &render_grid(g, PIXELS_PER_CELL, &ARC_PALETTE))?;
                        }
                        Ok(grids.len())
                    })
                    .collect::<Result<_, HarnessError>>()?;
                files += written.iter().sum::<usize>();
            }
        }
        ExportFormat::Tensors => {
            for t in &tasks {
                // Per episode: context question, context answer, test question, test answer.
                let grids: Vec<_> = t
                    .episodes
                    .iter()
                    .flat_map(|(_, e)| {
                        [
                            e.context.question.clone(),
                            e.context.answer.clone(),
                            e.test_question.clone(),
                            e.test_answer.clone(),
                        ]
                    })
                    .collect();
                let mut bytes = Vec::new();
                to_indices(&grids)?
                    .write_binary(&mut bytes)
                    .expect("writing to memory");
                write(&out.join(format!("{}.indices.bin", t.task.slug())), &bytes)?;
                files += 1;
            }
            let mut bytes = Vec::new();
            PosEncodingTable::new(pe_dim)?
                .write_binary(&mut bytes)
                .expect("writing to memory");
            write(&out.join(format!("pos_encoding_d{pe_dim}.bin")), &bytes)?;
            files += 1;
        }
    }
    Ok(ExportSummary {
        format,
        out: out.to_path_buf(),
        files,
    })
}
