//! Seeded answer-first generators for the seven tasks.
//!
//! Each generator draws a blank canvas, paints an answer that obeys its law,
//! derives the question by deleting or replacing symbols, and keeps the pair
//! only if [`infer_task`] attributes it to the generating task alone. That
//! single check enforces both the solver round trip and cross-task
//! discrimination; failing draws are resampled up to the attempt budget.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::{BBox, Coord, Grid, MAX_DIM};
use crate::oracle::infer_task;
use crate::rng::Rng;
use crate::task::{Episode, Pair, TaskId};

mod closure;
mod continuity;
mod pattern;
mod proximity;
mod rectangle;
mod reflection;
mod rotation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("invalid generation parameters: {0}")]
    InvalidParams(String),
    #[error("{task}: no valid pair within {attempts} attempts")]
    BudgetExhausted { task: TaskId, attempts: u32 },
    #[error("pair {index}: {source}")]
    AtIndex {
        index: u64,
        #[source]
        source: Box<GenError>,
    },
    #[error("need at least 2 pairs to build episodes, got {0}")]
    TooFewPairs(usize),
    #[error("episode pairs mix tasks {0} and {1}")]
    MixedTasks(TaskId, TaskId),
}

/// Closed range of fractions `[lo, hi]`.
pub type Span = (f64, f64);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClosureKnobs {
    /// Blob growth iterations as a fraction of the canvas area.
    pub growth: Span,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ContinuityKnobs {
    pub segments: (u32, u32),
    /// Longest segment as a fraction of the grid side it runs along.
    pub max_length: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProximityKnobs {
    pub singletons: (u32, u32),
    /// Cells changed (shape plus singletons) as a fraction of the area.
    pub edit: Span,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ReconstructionKnobs {
    pub rectangles: (u32, u32),
    /// Rectangle side as a fraction of the grid side.
    pub side: Span,
    /// Share of each rectangle's cells removed in the question.
    pub removal: Span,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MatchingKnobs {
    /// Smallest canvas side; three shapes with gaps need room.
    pub min_dim: usize,
    /// Target shape cells as a fraction of the area.
    pub target: Span,
    /// Share of the base mask's bounding box carved away.
    pub carve: Span,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ReflectionKnobs {
    /// Fraction of the mirrored band covered by content on one side.
    pub density: Span,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RotationKnobs {
    pub holes: (u32, u32),
    /// Hole cells as a fraction of the area.
    pub hole_area: Span,
}

/// Generation parameters. Defaults are tuned so dataset statistics land on
/// the reference per-task symbol counts and edit percentages.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GenParams {
    pub min_dim: usize,
    pub max_dim: usize,
    pub max_attempts: u32,
    pub closure: ClosureKnobs,
    pub continuity: ContinuityKnobs,
    pub proximity: ProximityKnobs,
    pub reconstruction: ReconstructionKnobs,
    pub matching: MatchingKnobs,
    pub reflection: ReflectionKnobs,
    pub rotation: RotationKnobs,
}

impl Default for ClosureKnobs {
    fn default() -> Self {
        ClosureKnobs { growth: (0.15, 0.45) }
    }
}

impl Default for ContinuityKnobs {
    fn default() -> Self {
        ContinuityKnobs {
            segments: (1, 4),
            max_length: 0.7,
        }
    }
}

impl Default for ProximityKnobs {
    fn default() -> Self {
        ProximityKnobs {
            singletons: (2, 4),
            edit: (0.02, 0.06),
        }
    }
}

impl Default for ReconstructionKnobs {
    fn default() -> Self {
        ReconstructionKnobs {
            rectangles: (1, 3),
            side: (0.2, 0.45),
            removal: (0.2, 0.55),
        }
    }
}

impl Default for MatchingKnobs {
    fn default() -> Self {
        MatchingKnobs {
            min_dim: 10,
            target: (0.1, 0.25),
            carve: (0.0, 0.3),
        }
    }
}

impl Default for ReflectionKnobs {
    fn default() -> Self {
        ReflectionKnobs { density: (0.15, 0.55) }
    }
}

impl Default for RotationKnobs {
    fn default() -> Self {
        RotationKnobs {
            holes: (1, 3),
            hole_area: (0.06, 0.2),
        }
    }
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            min_dim: 8,
            max_dim: MAX_DIM,
            max_attempts: 64,
            closure: ClosureKnobs::default(),
            continuity: ContinuityKnobs::default(),
            proximity: ProximityKnobs::default(),
            reconstruction: ReconstructionKnobs::default(),
            matching: MatchingKnobs::default(),
            reflection: ReflectionKnobs::default(),
            rotation: RotationKnobs::default(),
        }
    }
}

fn check_span(name: &str, (lo, hi): Span) -> Result<(), GenError> {
    if lo.is_finite() && hi.is_finite() && 0.0 <= lo && lo <= hi && hi <= 1.0 {
        Ok(())
    } else {
        Err(GenError::InvalidParams(format!("{name} must satisfy 0 <= lo <= hi <= 1")))
    }
}

fn check_count(name: &str, (lo, hi): (u32, u32), min: u32) -> Result<(), GenError> {
    if min <= lo && lo <= hi {
        Ok(())
    } else {
        Err(GenError::InvalidParams(format!("{name} must satisfy {min} <= lo <= hi")))
    }
}

impl GenParams {
    pub fn validate(&self) -> Result<(), GenError> {
        if !(1..=MAX_DIM).contains(&self.min_dim)
            || !(1..=MAX_DIM).contains(&self.max_dim)
            || self.min_dim > self.max_dim
        {
            return Err(GenError::InvalidParams(format!(
                "dims {}..={} must lie within 1..={MAX_DIM}",
                self.min_dim, self.max_dim
            )));
        }
        if self.max_attempts == 0 {
            return Err(GenError::InvalidParams("max_attempts must be at least 1".into()));
        }
        check_span("closure.growth", self.closure.growth)?;
        check_count("continuity.segments", self.continuity.segments, 1)?;
        if !(0.0..=1.0).contains(&self.continuity.max_length) {
            return Err(GenError::InvalidParams("continuity.max_length must lie in [0, 1]".into()));
        }
        check_count("proximity.singletons", self.proximity.singletons, 1)?;
        if self.proximity.singletons.1 > 8 {
            return Err(GenError::InvalidParams("proximity.singletons allows at most 8".into()));
        }
        check_span("proximity.edit", self.proximity.edit)?;
        check_count("reconstruction.rectangles", self.reconstruction.rectangles, 1)?;
        check_span("reconstruction.side", self.reconstruction.side)?;
        check_span("reconstruction.removal", self.reconstruction.removal)?;
        check_span("matching.target", self.matching.target)?;
        check_span("matching.carve", self.matching.carve)?;
        check_span("reflection.density", self.reflection.density)?;
        check_count("rotation.holes", self.rotation.holes, 1)?;
        check_span("rotation.hole_area", self.rotation.hole_area)?;
        Ok(())
    }

    /// Smallest side a task can work with under these parameters.
    fn floor(&self, task: TaskId) -> usize {
        let needed = match task {
            TaskId::T1 | TaskId::T2 => 3,
            TaskId::T3 | TaskId::T4 => 4,
            TaskId::T5 => self.matching.min_dim.max(7),
            TaskId::T6 => 5,
            TaskId::T7 => 4,
        };
        needed.max(self.min_dim)
    }

    /// Draws a canvas side length for `task`.
    pub(crate) fn draw_side(&self, rng: &mut Rng, task: TaskId) -> usize {
        let lo = self.floor(task).min(self.max_dim);
        rng.range_usize(lo, self.max_dim)
    }

    /// A stable fingerprint of these parameters (hex SHA-256 of their
    /// canonical JSON form, first 16 digits).
    pub fn fingerprint(&self) -> String {
        use sha2::{Digest, Sha256};
        let json = serde_json::to_vec(self).expect("params serialize");
        hex::encode(&Sha256::digest(&json)[..8])
    }
}

/// Grows an 8-connected blob over the background cells of `canvas`: one seed
/// cell, then `k` iterations that each add one random background cell
/// 8-adjacent to the blob. Growth stops early when no such cell remains.
/// Returns cells in insertion order; empty if the canvas has no background.
pub fn grow_blob(rng: &mut Rng, canvas: &Grid, k: usize) -> Vec<Coord> {
    let (w, h) = (canvas.width(), canvas.height());
    let free: Vec<usize> = (0..canvas.area())
        .filter(|&i| canvas.cells()[i].is_background())
        .collect();
    if free.is_empty() {
        return Vec::new();
    }
    let mut state = vec![0u8; w * h]; // 1 = frontier, 2 = blob
    let mut frontier: Vec<usize> = Vec::new();
    let mut blob = Vec::with_capacity(k + 1);
    let mut add = |i: usize, state: &mut Vec<u8>, frontier: &mut Vec<usize>| {
        state[i] = 2;
        let (col, row) = (i % w, i / w);
        blob.push(Coord::new(col, row));
        for r in row.saturating_sub(1)..=(row + 1).min(h - 1) {
            for c in col.saturating_sub(1)..=(col + 1).min(w - 1) {
                let j = r * w + c;
                if state[j] == 0 && canvas.cells()[j].is_background() {
                    state[j] = 1;
                    frontier.push(j);
                }
            }
        }
    };
    let seed = free[rng.index(free.len())];
    add(seed, &mut state, &mut frontier);
    for _ in 0..k {
        if frontier.is_empty() {
            break;
        }
        let next = frontier.swap_remove(rng.index(frontier.len()));
        add(next, &mut state, &mut frontier);
    }
    blob
}

/// True if `a` and `b` overlap or touch, including diagonally.
pub(crate) fn touching(a: &BBox, b: &BBox) -> bool {
    a.min_col <= b.max_col + 1
        && b.min_col <= a.max_col + 1
        && a.min_row <= b.max_row + 1
        && b.min_row <= a.max_row + 1
}

/// A uniformly placed `w × h` box inside a `gw × gh` canvas.
pub(crate) fn place(rng: &mut Rng, w: usize, h: usize, gw: usize, gh: usize) -> Option<BBox> {
    if w == 0 || h == 0 || w > gw || h > gh {
        return None;
    }
    let col = rng.range_usize(0, gw - w);
    let row = rng.range_usize(0, gh - h);
    Some(BBox {
        min_col: col,
        min_row: row,
        max_col: col + w - 1,
        max_row: row + h - 1,
    })
}

/// Places boxes of the given sizes so no two touch; `None` after `tries`
/// failed layouts.
pub(crate) fn place_apart(
    rng: &mut Rng,
    sizes: &[(usize, usize)],
    gw: usize,
    gh: usize,
    tries: usize,
) -> Option<Vec<BBox>> {
    'layout: for _ in 0..tries {
        let mut boxes: Vec<BBox> = Vec::with_capacity(sizes.len());
        for &(w, h) in sizes {
            let b = place(rng, w, h, gw, gh)?;
            if boxes.iter().any(|o| touching(o, &b)) {
                continue 'layout;
            }
            boxes.push(b);
        }
        return Some(boxes);
    }
    None
}

/// Shrinks a full `w × h` rectangle by peeling up to `remove` exposed cells
/// while the remainder stays 8-connected and touches all four sides of the
/// rectangle. Returns the kept-cell mask (row-major, `w × h`).
pub(crate) fn carve(rng: &mut Rng, w: usize, h: usize, remove: usize) -> Vec<bool> {
    let mut alive = vec![true; w * h];
    let mut removed = 0;
    let mut candidates = Vec::new();
    while removed < remove {
        candidates.clear();
        for row in 0..h {
            for col in 0..w {
                let i = row * w + col;
                if !alive[i] {
                    continue;
                }
                let exposed = col == 0
                    || row == 0
                    || col + 1 == w
                    || row + 1 == h
                    || !alive[i - 1]
                    || !alive[i + 1]
                    || !alive[i - w]
                    || !alive[i + w];
                if exposed {
                    candidates.push(i);
                }
            }
        }
        rng.shuffle(&mut candidates);
        let mut progressed = false;
        for &i in &candidates {
            alive[i] = false;
            if spans_box(&alive, w, h) && connected8(&alive, w, h) {
                removed += 1;
                progressed = true;
                break;
            }
            alive[i] = true;
        }
        if !progressed {
            break;
        }
    }
    alive
}

fn spans_box(alive: &[bool], w: usize, h: usize) -> bool {
    (0..w).any(|c| alive[c])
        && (0..w).any(|c| alive[(h - 1) * w + c])
        && (0..h).any(|r| alive[r * w])
        && (0..h).any(|r| alive[r * w + w - 1])
}

fn connected8(alive: &[bool], w: usize, h: usize) -> bool {
    let total = alive.iter().filter(|&&a| a).count();
    let Some(start) = alive.iter().position(|&a| a) else {
        return false;
    };
    let mut seen = vec![false; alive.len()];
    let mut stack = vec![start];
    seen[start] = true;
    let mut count = 0;
    while let Some(i) = stack.pop() {
        count += 1;
        let (col, row) = (i % w, i / w);
        for r in row.saturating_sub(1)..=(row + 1).min(h - 1) {
            for c in col.saturating_sub(1)..=(col + 1).min(w - 1) {
                let j = r * w + c;
                if alive[j] && !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    count == total
}

/// One unverified draw from the task's generator; `None` when the draw is
/// degenerate and must be resampled.
fn draft(task: TaskId, rng: &mut Rng, params: &GenParams) -> Option<Pair> {
    let (question, answer) = match task {
        TaskId::T1 => closure::draft(rng, params),
        TaskId::T2 => continuity::draft(rng, params),
        TaskId::T3 => proximity::draft(rng, params),
        TaskId::T4 => rectangle::draft(rng, params),
        TaskId::T5 => pattern::draft(rng, params),
        TaskId::T6 => reflection::draft(rng, params),
        TaskId::T7 => rotation::draft(rng, params),
    }?;
    (question != answer).then_some(Pair {
        question,
        answer,
        task,
    })
}

/// Generates one verified pair: the task's solver maps the question exactly
/// to the answer and no other task's solver does.
pub fn generate_pair(task: TaskId, rng: &mut Rng, params: &GenParams) -> Result<Pair, GenError> {
    params.validate()?;
    for _ in 0..params.max_attempts {
        if let Some(pair) = draft(task, rng, params) {
            if infer_task(&pair.question, &pair.answer) == Ok(task) {
                return Ok(pair);
            }
        }
    }
    Err(GenError::BudgetExhausted {
        task,
        attempts: params.max_attempts,
    })
}

/// Generates `count` pairs; pair `i` comes from stream `i` of `seed`, so the
/// result does not depend on evaluation order or thread count.
pub fn generate_dataset(
    task: TaskId,
    count: u64,
    seed: u64,
    params: &GenParams,
) -> Result<Vec<Pair>, GenError> {
    params.validate()?;
    (0..count)
        .into_par_iter()
        .map(|i| {
            generate_pair(task, &mut Rng::new(seed, i), params).map_err(|e| GenError::AtIndex {
                index: i,
                source: Box::new(e),
            })
        })
        .collect()
}

/// Stream reserved for episode assembly shuffles.
const EPISODE_STREAM: u64 = u64::MAX;
const SPLIT_STREAM: u64 = u64::MAX - 1;

/// Shuffles `pairs`, splits them in half and zips the first half (contexts)
/// with the second (tests). An odd pair out is left unused.
pub fn make_episodes(pairs: &[Pair], seed: u64) -> Result<Vec<Episode>, GenError> {
    if pairs.len() < 2 {
        return Err(GenError::TooFewPairs(pairs.len()));
    }
    let task = pairs[0].task;
    if let Some(p) = pairs.iter().find(|p| p.task != task) {
        return Err(GenError::MixedTasks(task, p.task));
    }
    let mut order: Vec<usize> = (0..pairs.len()).collect();
    Rng::new(seed, EPISODE_STREAM).shuffle(&mut order);
    let half = pairs.len() / 2;
    Ok(order[..half]
        .iter()
        .zip(&order[half..2 * half])
        .map(|(&c, &t)| Episode {
            context: pairs[c].clone(),
            test_question: pairs[t].question.clone(),
            test_answer: pairs[t].answer.clone(),
        })
        .collect())
}

/// Shuffled 4:1 train/test split.
pub fn split_train_test(pairs: &[Pair], seed: u64) -> (Vec<Pair>, Vec<Pair>) {
    let mut order: Vec<usize> = (0..pairs.len()).collect();
    Rng::new(seed, SPLIT_STREAM).shuffle(&mut order);
    let cut = pairs.len() * 4 / 5;
    let pick = |ix: &[usize]| ix.iter().map(|&i| pairs[i].clone()).collect();
    (pick(&order[..cut]), pick(&order[cut..]))
}

#[cfg(test)]
mod tests;
