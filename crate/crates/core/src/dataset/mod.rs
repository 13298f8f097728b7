//! ARC-style JSON episodes, on-disk dataset layout and manifests.
//!
//! An episode file is the canonical, whitespace-free object
//! `{"train":[{"input":..,"output":..}],"test":[{"input":..,"output":..}]}`
//! with grids written as rows of integers. Canonical bytes make content
//! checksums stable across platforms and thread counts.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::{Grid, GridError};
use crate::oracle::{infer_task, InferError};
use crate::task::{Episode, Pair, TaskId};
use crate::taskgen::GenError;

mod layout;
pub mod render;

pub use layout::{
    build_task, checksum, episode_id, read_dataset, read_task_dir, write_task, DatasetManifest,
    TaskData, FORMAT_VERSION, MANIFEST_FILE,
};

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("{field}: {source}")]
    Grid {
        field: String,
        #[source]
        source: GridError,
    },
    #[error("expected exactly one {0} example")]
    Shape(&'static str),
    #[error("cannot attribute context pair to a task: {0}")]
    Infer(#[from] InferError),
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {reason}")]
    Invalid { path: PathBuf, reason: String },
}

impl DatasetError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> DatasetError {
        DatasetError::Io {
            path: path.into(),
            source,
        }
    }

    /// Stable machine-readable category for error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            DatasetError::Json(_) => "malformed_json",
            DatasetError::Grid { source, .. } => match source {
                GridError::InvalidDims { .. } => "invalid_dims",
                GridError::InvalidSymbol(_) => "invalid_symbol",
                GridError::RaggedRow { .. } => "ragged_row",
                _ => "invalid_grid",
            },
            DatasetError::Shape(_) => "episode_shape",
            DatasetError::Infer(_) => "unattributable_context",
            DatasetError::Gen(_) => "generation_failed",
            DatasetError::Io { .. } => "io",
            DatasetError::Invalid { .. } => "invalid_dataset",
        }
    }
}

#[derive(Serialize)]
struct Example<'a> {
    input: &'a Grid,
    output: &'a Grid,
}

#[derive(Serialize)]
struct TaskFile<'a> {
    train: [Example<'a>; 1],
    test: [Example<'a>; 1],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExample {
    input: Vec<Vec<i64>>,
    output: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTaskFile {
    train: Vec<RawExample>,
    test: Vec<RawExample>,
}

/// Canonical bytes for an episode.
pub fn write_episode_json(e: &Episode) -> Vec<u8> {
    let file = TaskFile {
        train: [Example {
            input: &e.context.question,
            output: &e.context.answer,
        }],
        test: [Example {
            input: &e.test_question,
            output: &e.test_answer,
        }],
    };
    serde_json::to_vec(&file).expect("grids always serialize")
}

fn grid(rows: &[Vec<i64>], field: &str) -> Result<Grid, DatasetError> {
    Grid::from_rows(rows).map_err(|source| DatasetError::Grid {
        field: field.to_string(),
        source,
    })
}

/// Parses and validates an episode; the task is taken from `task` or, when
/// absent, inferred from the context pair.
fn parse(bytes: &[u8], task: Option<TaskId>) -> Result<Episode, DatasetError> {
    let raw: RawTaskFile =
        serde_json::from_slice(bytes).map_err(|e| DatasetError::Json(e.to_string()))?;
    let [train] = raw.train.as_slice() else {
        return Err(DatasetError::Shape("train"));
    };
    let [test] = raw.test.as_slice() else {
        return Err(DatasetError::Shape("test"));
    };
    let question = grid(&train.input, "train[0].input")?;
    let answer = grid(&train.output, "train[0].output")?;
    let test_question = grid(&test.input, "test[0].input")?;
    let test_answer = grid(&test.output, "test[0].output")?;
    for (name, a, b) in [
        ("train[0]", &question, &answer),
        ("test[0]", &test_question, &test_answer),
    ] {
        a.same_dims(b).map_err(|source| DatasetError::Grid {
            field: name.to_string(),
            source,
        })?;
    }
    let task = match task {
        Some(t) => t,
        None => infer_task(&question, &answer)?,
    };
    Ok(Episode {
        context: Pair {
            question,
            answer,
            task,
        },
        test_question,
        test_answer,
    })
}

/// Reads an episode, attributing it to the task its context pair exhibits.
pub fn read_episode_json(bytes: &[u8]) -> Result<Episode, DatasetError> {
    parse(bytes, None)
}

/// Reads an episode whose task is known from elsewhere (e.g. its directory).
pub fn read_episode_json_with_task(bytes: &[u8], task: TaskId) -> Result<Episode, DatasetError> {
    parse(bytes, Some(task))
}
