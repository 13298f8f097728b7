use std::collections::BTreeMap;
use std::path::Path;
use std::sync::{Arc, Mutex, RwLock};

use serde::{Deserialize, Serialize};

use pqa_core::eval::exact_match;
use pqa_core::grid::Grid;
use pqa_core::rng::Rng;
use pqa_core::task::{Pair, TaskId};
use pqa_core::taskgen::{generate_pair, GenParams};

use crate::clock::Clock;
use crate::journal::{Event, Journal, JournalError};
use crate::ApiError;

/// Consecutive correct answers that complete a session.
pub const STREAK_TO_COMPLETE: u32 = 3;

/// Published human means per task: context pairs viewed and minutes spent.
pub const HUMAN_REFERENCE: [(TaskId, f64, f64); 7] = [
    (TaskId::T1, 1.5, 2.48),
    (TaskId::T2, 1.75, 2.67),
    (TaskId::T3, 3.0, 5.93),
    (TaskId::T4, 1.0, 0.77),
    (TaskId::T5, 1.0, 3.95),
    (TaskId::T6, 1.25, 2.54),
    (TaskId::T7, 1.0, 1.65),
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Attempt {
    pub episode_id: String,
    pub correct: bool,
    pub at: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionRecord {
    pub session_id: u64,
    pub task: TaskId,
    pub contexts_viewed: u32,
    pub started_at: f64,
    pub finished_at: Option<f64>,
    pub streak: u32,
    pub attempts: Vec<Attempt>,
    pub completed: bool,
}

/// What a participant sees of a test question. The answer stays server-side.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PuzzleHandle {
    pub episode_id: String,
    pub question: Grid,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContextPair {
    pub question: Grid,
    pub answer: Grid,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Created {
    pub session_id: u64,
    pub first_context: ContextPair,
    pub contexts_viewed: u32,
    pub streak: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContextResponse {
    pub question: Grid,
    pub answer: Grid,
    pub contexts_viewed: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub correct: bool,
    pub streak: u32,
    pub completed: bool,
    /// Revealed only now that the attempt is resolved.
    pub answer: Grid,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskStudyStats {
    pub task: TaskId,
    pub completed_sessions: usize,
    pub mean_contexts: Option<f64>,
    pub mean_minutes: Option<f64>,
    pub reference_contexts: f64,
    pub reference_minutes: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyStats {
    pub tasks: Vec<TaskStudyStats>,
}

#[derive(Debug)]
struct Puzzle {
    episode_id: String,
    question: Grid,
    answer: Grid,
}

#[derive(Debug)]
struct Session {
    record: SessionRecord,
    /// Pairs drawn so far; the next pair comes from this stream index.
    counter: u64,
    current: Option<Puzzle>,
}

/// Sessions of the study plus the journal that persists them.
pub struct Study {
    seed: u64,
    params: GenParams,
    clock: Arc<dyn Clock>,
    sessions: RwLock<BTreeMap<u64, Arc<Mutex<Session>>>>,
    next_id: Mutex<u64>,
    journal: Mutex<Option<Journal>>,
}

fn lock<T>(m: &Mutex<T>) -> std::sync::MutexGuard<'_, T> {
    m.lock().unwrap_or_else(|e| e.into_inner())
}

impl Study {
    pub fn new(seed: u64, params: GenParams, clock: Arc<dyn Clock>) -> Study {
        Study {
            seed,
            params,
            clock,
            sessions: RwLock::new(BTreeMap::new()),
            next_id: Mutex::new(1),
            journal: Mutex::new(None),
        }
    }

    /// Like [`Study::new`], but persisted to `path`; existing events are
    /// replayed first. Replays need the same seed and parameters.
    pub fn with_journal(
        seed: u64,
        params: GenParams,
        clock: Arc<dyn Clock>,
        path: &Path,
    ) -> Result<Study, JournalError> {
        let (journal, events) = Journal::open(path)?;
        let study = Study::new(seed, params, clock);
        for (line, event) in events.iter().enumerate() {
            study.replay(event).map_err(|e| JournalError::Corrupt {
                path: path.to_path_buf(),
                line: line + 1,
                reason: e.to_string(),
            })?;
        }
        *lock(&study.journal) = Some(journal);
        Ok(study)
    }

    /// Draws the session's next pair. Streams are keyed by session id and a
    /// per-session counter, so sessions never share pairs.
    fn draw(&self, task: TaskId, session: u64, counter: u64) -> Result<Pair, ApiError> {
        let stream = (session << 32) | counter;
        generate_pair(task, &mut Rng::new(self.seed, stream), &self.params)
            .map_err(|e| ApiError::Internal(e.to_string()))
    }

    fn session(&self, id: u64) -> Result<Arc<Mutex<Session>>, ApiError> {
        self.sessions
            .read()
            .unwrap_or_else(|e| e.into_inner())
            .get(&id)
            .cloned()
            .ok_or(ApiError::NotFound(id))
    }

    fn record(&self, event: &Event) -> Result<(), ApiError> {
        if let Some(j) = lock(&self.journal).as_mut() {
            j.append(event).map_err(|e| ApiError::Internal(e.to_string()))?;
        }
        Ok(())
    }

    /// Timestamps never run backwards within a session.
    fn stamp(&self, s: &Session) -> f64 {
        let last = s
            .record
            .attempts
            .last()
            .map_or(s.record.started_at, |a| a.at);
        self.clock.now().max(last)
    }

    pub fn create(&self, task: TaskId) -> Result<Created, ApiError> {
        let mut next = lock(&self.next_id);
        let event = Event::Created {
            session: *next,
            task,
            at: self.clock.now(),
        };
        self.record(&event)?;
        *next += 1;
        drop(next);
        self.apply_created(&event)
    }

    fn apply_created(&self, event: &Event) -> Result<Created, ApiError> {
        let &Event::Created { session, task, at } = event else {
            unreachable!("created event expected");
        };
        let first = self.draw(task, session, 0)?;
        let state = Session {
            record: SessionRecord {
                session_id: session,
                task,
                contexts_viewed: 1,
                started_at: at,
                finished_at: None,
                streak: 0,
                attempts: Vec::new(),
                completed: false,
            },
            counter: 1,
            current: None,
        };
        let mut sessions = self.sessions.write().unwrap_or_else(|e| e.into_inner());
        if sessions.contains_key(&session) {
            return Err(ApiError::Internal(format!("session {session} exists")));
        }
        sessions.insert(session, Arc::new(Mutex::new(state)));
        let mut next = lock(&self.next_id);
        *next = (*next).max(session + 1);
        Ok(Created {
            session_id: session,
            first_context: ContextPair {
                question: first.question,
                answer: first.answer,
            },
            contexts_viewed: 1,
            streak: 0,
        })
    }

    pub fn context(&self, id: u64) -> Result<ContextResponse, ApiError> {
        let handle = self.session(id)?;
        let mut s = lock(&handle);
        if s.record.completed {
            return Err(ApiError::Completed(id));
        }
        let event = Event::Context {
            session: id,
            at: self.stamp(&s),
        };
        self.record(&event)?;
        self.apply_context(&mut s)
    }

    fn apply_context(&self, s: &mut Session) -> Result<ContextResponse, ApiError> {
        let pair = self.draw(s.record.task, s.record.session_id, s.counter)?;
        s.counter += 1;
        s.record.contexts_viewed += 1;
        Ok(ContextResponse {
            question: pair.question,
            answer: pair.answer,
            contexts_viewed: s.record.contexts_viewed,
        })
    }

    /// The open puzzle, issuing a fresh one if none is pending.
    pub fn puzzle(&self, id: u64) -> Result<PuzzleHandle, ApiError> {
        let handle = self.session(id)?;
        let mut s = lock(&handle);
        if s.record.completed {
            return Err(ApiError::Completed(id));
        }
        if s.current.is_none() {
            let event = Event::Puzzle {
                session: id,
                at: self.stamp(&s),
            };
            self.record(&event)?;
            self.apply_puzzle(&mut s)?;
        }
        let p = s.current.as_ref().expect("puzzle issued");
        Ok(PuzzleHandle {
            episode_id: p.episode_id.clone(),
            question: p.question.clone(),
        })
    }

    fn apply_puzzle(&self, s: &mut Session) -> Result<(), ApiError> {
        let pair = self.draw(s.record.task, s.record.session_id, s.counter)?;
        s.current = Some(Puzzle {
            episode_id: format!("s{}-{}", s.record.session_id, s.counter),
            question: pair.question,
            answer: pair.answer,
        });
        s.counter += 1;
        Ok(())
    }

    pub fn answer(&self, id: u64, episode_id: &str, grid: Grid) -> Result<Verdict, ApiError> {
        let handle = self.session(id)?;
        let mut s = lock(&handle);
        check_answerable(&s, id, episode_id)?;
        let event = Event::Answer {
            session: id,
            episode_id: episode_id.to_string(),
            grid,
            at: self.stamp(&s),
        };
        self.record(&event)?;
        apply_answer(&mut s, &event)
    }

    fn replay(&self, event: &Event) -> Result<(), ApiError> {
        if let Event::Created { .. } = event {
            return self.apply_created(event).map(drop);
        }
        let id = event.session();
        let handle = self.session(id)?;
        let mut s = lock(&handle);
        match event {
            Event::Created { .. } => unreachable!(),
            Event::Context { .. } => self.apply_context(&mut s).map(drop),
            Event::Puzzle { .. } => self.apply_puzzle(&mut s),
            Event::Answer { episode_id, .. } => {
                check_answerable(&s, id, episode_id)?;
                apply_answer(&mut s, event).map(drop)
            }
        }
    }

    pub fn record_of(&self, id: u64) -> Result<SessionRecord, ApiError> {
        let handle = self.session(id)?;
        let record = lock(&handle).record.clone();
        Ok(record)
    }

    /// Per-task means over completed sessions, beside the human reference.
    pub fn stats(&self) -> StudyStats {
        let records: Vec<SessionRecord> = self
            .sessions
            .read()
            .unwrap_or_else(|e| e.into_inner())
            .values()
            .map(|h| lock(h).record.clone())
            .filter(|r| r.completed)
            .collect();
        let tasks = HUMAN_REFERENCE
            .iter()
            .map(|&(task, reference_contexts, reference_minutes)| {
                let done: Vec<&SessionRecord> = records.iter().filter(|r| r.task == task).collect();
                let n = done.len() as f64;
                let mean = |f: &dyn Fn(&SessionRecord) -> f64| {
                    (!done.is_empty()).then(|| done.iter().map(|r| f(r)).sum::<f64>() / n)
                };
                TaskStudyStats {
                    task,
                    completed_sessions: done.len(),
                    mean_contexts: mean(&|r| r.contexts_viewed as f64),
                    mean_minutes: mean(&|r| {
                        (r.finished_at.unwrap_or(r.started_at) - r.started_at) / 60.0
                    }),
                    reference_contexts,
                    reference_minutes,
                }
            })
            .collect();
        StudyStats { tasks }
    }
}

fn check_answerable(s: &Session, id: u64, episode_id: &str) -> Result<(), ApiError> {
    if s.record.completed {
        return Err(ApiError::Completed(id));
    }
    match &s.current {
        Some(p) if p.episode_id == episode_id => Ok(()),
        _ => Err(ApiError::NotCurrent(episode_id.to_string())),
    }
}

fn apply_answer(s: &mut Session, event: &Event) -> Result<Verdict, ApiError> {
    let Event::Answer {
        episode_id,
        grid,
        at,
        ..
    } = event
    else {
        unreachable!("answer event expected");
    };
    let puzzle = s.current.take().expect("checked answerable");
    let correct = exact_match(grid, &puzzle.answer);
    let r = &mut s.record;
    r.streak = if correct { r.streak + 1 } else { 0 };
    r.attempts.push(Attempt {
        episode_id: episode_id.clone(),
        correct,
        at: *at,
    });
    if r.streak >= STREAK_TO_COMPLETE {
        r.completed = true;
        r.finished_at = Some(*at);
    }
    Ok(Verdict {
        correct,
        streak: r.streak,
        completed: r.completed,
        answer: puzzle.answer,
    })
}
