//! Exact-match scoring of agent predictions.
//!
//! An answer earns credit only if its dimensions and every cell equal the
//! ground truth; there is no partial credit. Per-task percentages are
//! averaged without weighting to give the overall figure.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::Grid;
use crate::oracle::oracle_agent;
use crate::task::{Episode, TaskId};

/// Predicted test answers keyed by episode id, as produced by any agent.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictionSet {
    pub agent: String,
    pub predictions: BTreeMap<String, Grid>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskScore {
    pub task: TaskId,
    pub episodes: usize,
    pub correct: usize,
    pub missing: usize,
    pub error_free_pct: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub id: String,
    pub task: TaskId,
    pub correct: bool,
    pub missing: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub agent: String,
    /// Tasks in `T1..T7` order; tasks without episodes are omitted.
    pub tasks: Vec<TaskScore>,
    /// Unweighted mean of the per-task percentages.
    pub overall_pct: f64,
    /// Episode ids that had no prediction (scored as incorrect).
    pub missing: Vec<String>,
    pub verdicts: Vec<Verdict>,
}

/// The all-symbols rule: dimensions and every cell must agree.
pub fn exact_match(prediction: &Grid, truth: &Grid) -> bool {
    prediction == truth
}

/// Identity floor: answer with the test question unchanged.
pub fn baseline_identity(e: &Episode) -> Grid {
    e.test_question.clone()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Agent {
    /// Infers the law from the context pair and applies its solver.
    Oracle,
    Identity,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown agent {0:?}, expected oracle or identity")]
pub struct UnknownAgent(pub String);

impl FromStr for Agent {
    type Err = UnknownAgent;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "oracle" => Ok(Agent::Oracle),
            "identity" => Ok(Agent::Identity),
            _ => Err(UnknownAgent(s.to_string())),
        }
    }
}

impl Agent {
    pub fn name(self) -> &'static str {
        match self {
            Agent::Oracle => "oracle",
            Agent::Identity => "identity",
        }
    }

    /// `None` when the agent declines to answer.
    pub fn predict(self, e: &Episode) -> Option<Grid> {
        match self {
            Agent::Oracle => oracle_agent(e).ok(),
            Agent::Identity => Some(baseline_identity(e)),
        }
    }

    pub fn run(self, episodes: &[(String, Episode)]) -> PredictionSet {
        let predictions = episodes
            .par_iter()
            .filter_map(|(id, e)| self.predict(e).map(|g| (id.clone(), g)))
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        PredictionSet {
            agent: self.name().to_string(),
            predictions,
        }
    }
}

/// Scores `preds` against the episodes' hidden answers. Missing
/// predictions count as incorrect and are listed in the report.
pub fn score(episodes: &[(String, Episode)], preds: &PredictionSet) -> Report {
    let verdicts: Vec<Verdict> = episodes
        .par_iter()
        .map(|(id, e)| {
            let guess = preds.predictions.get(id);
            Verdict {
                id: id.clone(),
                task: e.task(),
                correct: guess.is_some_and(|g| exact_match(g, &e.test_answer)),
                missing: guess.is_none(),
            }
        })
        .collect();

    let mut tasks = Vec::new();
    for task in TaskId::ALL {
        let of_task = verdicts.iter().filter(|v| v.task == task);
        let (mut episodes, mut correct, mut missing) = (0, 0, 0);
        for v in of_task {
            episodes += 1;
            correct += v.correct as usize;
            missing += v.missing as usize;
        }
        if episodes > 0 {
            tasks.push(TaskScore {
                task,
                episodes,
                correct,
                missing,
                error_free_pct: 100.0 * correct as f64 / episodes as f64,
            });
        }
    }
    let overall_pct = if tasks.is_empty() {
        0.0
    } else {
        tasks.iter().map(|t| t.error_free_pct).sum::<f64>() / tasks.len() as f64
    };
    Report {
        agent: preds.agent.clone(),
        tasks,
        overall_pct,
        missing: verdicts.iter().filter(|v| v.missing).map(|v| v.id.clone()).collect(),
        verdicts,
    }
}

impl Report {
    /// Plain-text table: one row for the agent, one column per task plus
    /// the average.
    pub fn table(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "{:<16}", "Agent");
        for t in &self.tasks {
            let _ = write!(out, "{:>8}", t.task.to_string());
        }
        let _ = writeln!(out, "{:>8}", "Avg");
        let _ = write!(out, "{:<16}", self.agent);
        for t in &self.tasks {
            let _ = write!(out, "{:>8.1}", t.error_free_pct);
        }
        let _ = writeln!(out, "{:>8.1}", self.overall_pct);
        if !self.missing.is_empty() {
            let _ = writeln!(out, "missing predictions: {}", self.missing.len());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::fixtures::grid;
    use crate::task::Pair;

    fn ep(task: TaskId, answer: Grid) -> Episode {
        let q = grid(&[&[0, 0], &[0, 0]]);
        Episode {
            context: Pair {
                question: q.clone(),
                answer: answer.clone(),
                task,
            },
            test_question: q,
            test_answer: answer,
        }
    }

    #[test]
    fn half_right_is_fifty_percent() {
        let a = grid(&[&[1, 0], &[0, 0]]);
        let eps: Vec<(String, Episode)> =
            (0..4).map(|i| (format!("t1/{i}"), ep(TaskId::T1, a.clone()))).collect();
        let mut preds = PredictionSet::default();
        preds.predictions.insert("t1/0".into(), a.clone());
        preds.predictions.insert("t1/1".into(), a);
        preds.predictions.insert("t1/2".into(), grid(&[&[0, 0], &[0, 0]]));
        let r = score(&eps, &preds);
        assert_eq!(r.tasks[0].error_free_pct, 50.0);
        assert_eq!(r.missing, vec!["t1/3".to_string()]);
        assert_eq!(r.tasks[0].missing, 1);
    }

    #[test]
    fn one_wrong_cell_earns_nothing() {
        let a = grid(&[&[1, 2], &[3, 4]]);
        let eps = vec![("t7/0".to_string(), ep(TaskId::T7, a))];
        let mut preds = PredictionSet::default();
        preds.predictions.insert("t7/0".into(), grid(&[&[1, 2], &[3, 5]]));
        assert_eq!(score(&eps, &preds).overall_pct, 0.0);
    }

    #[test]
    fn overall_is_task_weighted() {
        let a = grid(&[&[1, 0], &[0, 0]]);
        let mut eps = vec![("t1/0".to_string(), ep(TaskId::T1, a.clone()))];
        for i in 0..3 {
            eps.push((format!("t2/{i}"), ep(TaskId::T2, a.clone())));
        }
        let mut preds = PredictionSet::default();
        preds.predictions.insert("t1/0".into(), a);
        // T1 100%, T2 0%: the mean of tasks is 50, the mean of episodes 25.
        let r = score(&eps, &preds);
        assert_eq!(r.overall_pct, 50.0);
        assert!(r.table().contains("50.0"));
    }

    #[test]
    fn wrong_dimensions_are_incorrect() {
        let a = grid(&[&[1, 0], &[0, 0]]);
        let eps = vec![("t1/0".to_string(), ep(TaskId::T1, a))];
        let mut preds = PredictionSet::default();
        preds.predictions.insert("t1/0".into(), grid(&[&[1, 0]]));
        assert!(!score(&eps, &preds).verdicts[0].correct);
    }

    #[test]
    fn prediction_file_shape() {
        let json = r#"{"agent":"ext","predictions":{"t1/000000":[[0,1],[1,0]]}}"#;
        let p: PredictionSet = serde_json::from_str(json).unwrap();
        assert_eq!(p.agent, "ext");
        assert_eq!(p.predictions["t1/000000"], grid(&[&[0, 1], &[1, 0]]));
        let bad = r#"{"agent":"ext","predictions":{"t1/000000":[[12]]}}"#;
        assert!(serde_json::from_str::<PredictionSet>(bad).is_err());
    }
}
