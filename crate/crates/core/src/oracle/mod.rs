//! Rule-based solvers, one per task, and context-driven task inference.
//!
//! Solvers are total: malformed or foreign input yields a [`Rejection`]
//! value, never a panic and never a guess. That property lets
//! [`infer_task`] run all seven as a filter over a context pair.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::{Grid, GridError};
use crate::task::{Episode, TaskId};

pub(crate) mod closure;
pub(crate) mod continuity;
pub(crate) mod pattern;
pub(crate) mod proximity;
pub(crate) mod rectangle;
pub(crate) mod reflection;
pub(crate) mod rotation;

pub use closure::solve as solve_t1;
pub use continuity::solve as solve_t2;
pub use proximity::solve as solve_t3;
pub use rectangle::solve as solve_t4;
pub use pattern::solve as solve_t5;
pub use pattern::Scale;
pub use reflection::solve as solve_t6;
pub use rotation::solve as solve_t7;

/// Why a solver declined a grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Error, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rejection {
    #[error("grid is not an instance of this task")]
    NotAnInstance,
    #[error("grid admits more than one answer")]
    Ambiguous,
}

pub type SolveOutcome = Result<Grid, Rejection>;

/// Dispatches to the solver for `task`.
pub fn solve(task: TaskId, question: &Grid) -> SolveOutcome {
    match task {
        TaskId::T1 => solve_t1(question),
        TaskId::T2 => solve_t2(question),
        TaskId::T3 => solve_t3(question),
        TaskId::T4 => solve_t4(question),
        TaskId::T5 => solve_t5(question),
        TaskId::T6 => solve_t6(question),
        TaskId::T7 => solve_t7(question),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InferError {
    #[error(transparent)]
    Dimensions(#[from] GridError),
    #[error("context pair is explained by several tasks: {0:?}")]
    Ambiguous(Vec<TaskId>),
    #[error("no task explains the context pair")]
    NoMatch,
    #[error("inferred {task} but its solver rejected the test question: {reason}")]
    Unsolvable { task: TaskId, reason: Rejection },
}

/// Tasks whose solver maps `question` exactly to `answer`.
pub fn matching_tasks(question: &Grid, answer: &Grid) -> Vec<TaskId> {
    TaskId::ALL
        .into_iter()
        .filter(|&t| solve(t, question).is_ok_and(|g| &g == answer))
        .collect()
}

/// The unique task explaining a context pair.
pub fn infer_task(question: &Grid, answer: &Grid) -> Result<TaskId, InferError> {
    question.same_dims(answer)?;
    let found = matching_tasks(question, answer);
    match found.as_slice() {
        [t] => Ok(*t),
        [] => Err(InferError::NoMatch),
        _ => Err(InferError::Ambiguous(found)),
    }
}

/// Infers the law from the episode's context and answers the test question
/// from scratch with it. The test answer is never consulted.
pub fn oracle_agent(episode: &Episode) -> Result<Grid, InferError> {
    let task = infer_task(&episode.context.question, &episode.context.answer)?;
    solve(task, &episode.test_question).map_err(|reason| InferError::Unsolvable { task, reason })
}
