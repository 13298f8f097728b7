use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::Grid;

/// The seven perceptual-grouping tasks, one per Gestalt law.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TaskId {
    /// Closure filling.
    T1,
    /// Continuity connection.
    T2,
    /// Proximity identification.
    T3,
    /// Shape reconstruction.
    T4,
    /// Shape matching and pattern generalization.
    T5,
    /// Reflection-symmetry completion.
    T6,
    /// Rotation-symmetry completion.
    T7,
}

impl TaskId {
    pub const ALL: [TaskId; 7] = [
        TaskId::T1,
        TaskId::T2,
        TaskId::T3,
        TaskId::T4,
        TaskId::T5,
        TaskId::T6,
        TaskId::T7,
    ];

    /// Lowercase identifier used in paths and JSON: `t1`..`t7`.
    pub fn slug(self) -> &'static str {
        match self {
            TaskId::T1 => "t1",
            TaskId::T2 => "t2",
            TaskId::T3 => "t3",
            TaskId::T4 => "t4",
            TaskId::T5 => "t5",
            TaskId::T6 => "t6",
            TaskId::T7 => "t7",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TaskId::T1 => "Closure Filling",
            TaskId::T2 => "Continuity Connection",
            TaskId::T3 => "Proximity Identification",
            TaskId::T4 => "Shape Reconstruction",
            TaskId::T5 => "Shape Matching & Pattern Generalization",
            TaskId::T6 => "Reflection-Symmetry Completion",
            TaskId::T7 => "Rotation-Symmetry Completion",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for TaskId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{}", self.index() + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown task {0:?}, expected t1..t7")]
pub struct UnknownTask(pub String);

impl FromStr for TaskId {
    type Err = UnknownTask;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TaskId::ALL
            .into_iter()
            .find(|t| t.slug().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownTask(s.to_string()))
    }
}

/// A question grid, its unique answer and the task that links them.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pair {
    pub question: Grid,
    pub answer: Grid,
    pub task: TaskId,
}

/// One context pair plus a test question whose answer is withheld from agents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Episode {
    pub context: Pair,
    pub test_question: Grid,
    pub test_answer: Grid,
}

impl Episode {
    pub fn task(&self) -> TaskId {
        self.context.task
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        assert_eq!("t3".parse::<TaskId>().unwrap(), TaskId::T3);
        assert_eq!("T7".parse::<TaskId>().unwrap(), TaskId::T7);
        assert!("t9".parse::<TaskId>().is_err());
        assert_eq!(TaskId::T5.to_string(), "T5");
        assert_eq!(serde_json::to_string(&TaskId::T2).unwrap(), "\"t2\"");
        assert_eq!(TaskId::ALL.len(), 7);
    }
}
