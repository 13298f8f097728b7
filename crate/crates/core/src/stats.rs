//! Dataset statistics: symbol counts, edit burden and where edits land.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::task::{Pair, TaskId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StatsError {
    #[error("no pairs to summarize")]
    Empty,
    #[error("pairs mix tasks {0} and {1}")]
    MixedTasks(TaskId, TaskId),
    #[error("pair {0} has mismatched question/answer dimensions")]
    Dimensions(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskStats {
    pub task: TaskId,
    pub pairs: usize,
    /// Mean number of distinct symbols (background included) per question.
    pub avg_symbols: f64,
    /// Mean percentage of cells that differ between question and answer.
    pub avg_slots_pct: f64,
    /// Per pair, the centroid of the differing cells normalized to `(0, 1)²`
    /// as `((col + 0.5) / w, (row + 0.5) / h)`. Pairs without differences
    /// contribute nothing.
    pub key_region_centers: Vec<(f64, f64)>,
    /// Pair counts keyed by `"WxH"`.
    pub size_histogram: BTreeMap<String, usize>,
}

/// Summarizes same-task pairs. Sums accumulate in pair order so the result
/// is bit-identical however the pairs were produced.
pub fn compute_stats(pairs: &[Pair]) -> Result<TaskStats, StatsError> {
    let first = pairs.first().ok_or(StatsError::Empty)?;
    let task = first.task;
    let mut symbols = 0usize;
    let mut slots = 0.0;
    let mut centers = Vec::with_capacity(pairs.len());
    let mut hist = BTreeMap::new();
    for (i, p) in pairs.iter().enumerate() {
        if p.task != task {
            return Err(StatsError::MixedTasks(task, p.task));
        }
        let diff = p
            .question
            .diff_cells(&p.answer)
            .map_err(|_| StatsError::Dimensions(i))?;
        let (w, h) = (p.question.width(), p.question.height());
        symbols += p.question.distinct_symbols();
        slots += 100.0 * diff.len() as f64 / (w * h) as f64;
        if !diff.is_empty() {
            let n = diff.len() as f64;
            let sc: usize = diff.iter().map(|c| c.col).sum();
            let sr: usize = diff.iter().map(|c| c.row).sum();
            centers.push((
                (sc as f64 / n + 0.5) / w as f64,
                (sr as f64 / n + 0.5) / h as f64,
            ));
        }
        *hist.entry(format!("{w}x{h}")).or_insert(0) += 1;
    }
    let n = pairs.len() as f64;
    Ok(TaskStats {
        task,
        pairs: pairs.len(),
        avg_symbols: symbols as f64 / n,
        avg_slots_pct: slots / n,
        key_region_centers: centers,
        size_histogram: hist,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::fixtures::grid;

    fn ring() -> Pair {
        let q = grid(&[
            &[0, 0, 0, 0, 0],
            &[0, 3, 3, 3, 0],
            &[0, 3, 0, 3, 0],
            &[0, 3, 3, 3, 0],
            &[0, 0, 0, 0, 0],
        ]);
        let a = q.set(crate::grid::Coord::new(2, 2), crate::grid::Symbol::of(3)).unwrap();
        Pair { question: q, answer: a, task: TaskId::T1 }
    }

    #[test]
    fn single_ring_pair() {
        let s = compute_stats(&[ring()]).unwrap();
        assert_eq!(s.avg_slots_pct, 4.0);
        assert_eq!(s.avg_symbols, 2.0);
        assert_eq!(s.key_region_centers, vec![(0.5, 0.5)]);
        assert_eq!(s.size_histogram.get("5x5"), Some(&1));
    }

    #[test]
    fn identical_pairs_have_no_slots() {
        let mut p = ring();
        p.answer = p.question.clone();
        let s = compute_stats(&[p.clone(), p]).unwrap();
        assert_eq!(s.avg_slots_pct, 0.0);
        assert!(s.key_region_centers.is_empty());
    }

    #[test]
    fn rejects_empty_and_mixed() {
        assert_eq!(compute_stats(&[]), Err(StatsError::Empty));
        let mut other = ring();
        other.task = TaskId::T4;
        assert_eq!(
            compute_stats(&[ring(), other]),
            Err(StatsError::MixedTasks(TaskId::T1, TaskId::T4))
        );
    }
}
