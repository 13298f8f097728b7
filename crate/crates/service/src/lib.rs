//! HTTP front end for interactive puzzle sessions.
//!
//! A participant opens a session for one task, browses as many context
//! pairs as they like, then answers fresh test questions until three in a
//! row are correct. Every transition is appended to a JSON-lines journal so
//! the study survives restarts. `GET /stats` aggregates completed sessions
//! per task next to the published human reference means.
//!
//! | Method | Path | Body | Reply |
//! |---|---|---|---|
//! | POST | `/session` | `{"task":"t1"}` | session id and first context pair |
//! | POST | `/session/{id}/context` | — | another context pair |
//! | GET | `/session/{id}/puzzle` | — | `{episode_id, question}` |
//! | POST | `/session/{id}/answer` | `{"episode_id":..,"grid":[[..]]}` | `{correct, streak, completed, answer}` |
//! | GET | `/session/{id}` | — | the session record |
//! | GET | `/stats` | — | per-task means |
//!
//! Errors reply `{"error": kind, "message": text}` with status 400 (bad
//! request), 404 (unknown session), 409 (completed session or stale puzzle)
//! or 422 (malformed grid).

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;
use tower_http::services::ServeDir;

use pqa_core::grid::Grid;
use pqa_core::task::TaskId;
use pqa_core::taskgen::GenParams;

pub mod clock;
pub mod journal;
mod study;

pub use clock::{Clock, ManualClock, SystemClock};
pub use journal::{Event, Journal, JournalError};
pub use study::{
    Attempt, ContextPair, ContextResponse, Created, PuzzleHandle, SessionRecord, Study, StudyStats,
    TaskStudyStats, Verdict, HUMAN_REFERENCE, STREAK_TO_COMPLETE,
};

#[derive(Debug, Error)]
pub enum ApiError {
    #[error("{0}")]
    BadRequest(String),
    #[error("no session {0}")]
    NotFound(u64),
    #[error("session {0} is already completed")]
    Completed(u64),
    #[error("episode {0} is not the open puzzle")]
    NotCurrent(String),
    #[error("malformed grid: {0}")]
    MalformedGrid(String),
    #[error("{0}")]
    Internal(String),
}

impl ApiError {
    pub fn status(&self) -> StatusCode {
        match self {
            ApiError::BadRequest(_) => StatusCode::BAD_REQUEST,
            ApiError::NotFound(_) => StatusCode::NOT_FOUND,
            ApiError::Completed(_) | ApiError::NotCurrent(_) => StatusCode::CONFLICT,
            ApiError::MalformedGrid(_) => StatusCode::UNPROCESSABLE_ENTITY,
            ApiError::Internal(_) => StatusCode::INTERNAL_SERVER_ERROR,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            ApiError::BadRequest(_) => "bad_request",
            ApiError::NotFound(_) => "not_found",
            ApiError::Completed(_) => "completed",
            ApiError::NotCurrent(_) => "not_current",
            ApiError::MalformedGrid(_) => "malformed_grid",
            ApiError::Internal(_) => "internal",
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = json!({ "error": self.kind(), "message": self.to_string() });
        (self.status(), Json(body)).into_response()
    }
}

type Shared = Arc<Study>;

/// Parses a JSON body by hand so every client mistake maps to a documented
/// status rather than the extractor's defaults.
fn body(bytes: &[u8]) -> Result<Value, ApiError> {
    serde_json::from_slice(bytes).map_err(|e| ApiError::BadRequest(format!("invalid JSON: {e}")))
}

fn session_id(raw: &str) -> Result<u64, ApiError> {
    raw.parse()
        .map_err(|_| ApiError::BadRequest(format!("bad session id {raw:?}")))
}

async fn create(State(study): State<Shared>, bytes: axum::body::Bytes) -> Result<Response, ApiError> {
    let v = body(&bytes)?;
    let task = v
        .get("task")
        .and_then(Value::as_str)
        .ok_or_else(|| ApiError::BadRequest("missing task".into()))?;
    let task: TaskId = task
        .parse()
        .map_err(|e: pqa_core::task::UnknownTask| ApiError::BadRequest(e.to_string()))?;
    let created = study.create(task)?;
    Ok((StatusCode::CREATED, Json(created)).into_response())
}

async fn context(State(study): State<Shared>, Path(id): Path<String>) -> Result<Response, ApiError> {
    Ok(Json(study.context(session_id(&id)?)?).into_response())
}

async fn puzzle(State(study): State<Shared>, Path(id): Path<String>) -> Result<Response, ApiError> {
    Ok(Json(study.puzzle(session_id(&id)?)?).into_response())
}

async fn record(State(study): State<Shared>, Path(id): Path<String>) -> Result<Response, ApiError> {
    Ok(Json(study.record_of(session_id(&id)?)?).into_response())
}

async fn answer(
    State(study): State<Shared>,
    Path(id): Path<String>,
    bytes: axum::body::Bytes,
) -> Result<Response, ApiError> {
    let id = session_id(&id)?;
    let v = body(&bytes)?;
    let episode_id = v
        .get("episode_id")
        .and_then(Value::as_str)
        .ok_or_else(|| ApiError::BadRequest("missing episode_id".into()))?;
    let raw = v
        .get("grid")
        .ok_or_else(|| ApiError::MalformedGrid("missing grid".into()))?;
    let grid =
        Grid::deserialize(raw).map_err(|e| ApiError::MalformedGrid(e.to_string()))?;
    Ok(Json(study.answer(id, episode_id, grid)?).into_response())
}

async fn stats(State(study): State<Shared>) -> Json<StudyStats> {
    Json(study.stats())
}

/// All API routes; when `static_dir` is given, other paths serve files
/// from it (the browser client bundle).
pub fn router(study: Shared, static_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/session", post(create))
        .route("/session/{id}", get(record))
        .route("/session/{id}/context", post(context))
        .route("/session/{id}/puzzle", get(puzzle))
        .route("/session/{id}/answer", post(answer))
        .route("/stats", get(stats))
        .with_state(study);
    match static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    }
}

#[derive(Debug, Clone)]
pub struct ServiceConfig {
    pub addr: SocketAddr,
    pub seed: u64,
    pub journal: Option<PathBuf>,
    pub static_dir: Option<PathBuf>,
    pub params: GenParams,
}

#[derive(Debug, Error)]
pub enum ServeError {
    #[error(transparent)]
    Journal(#[from] JournalError),
    #[error("cannot listen on {addr}: {source}")]
    Bind {
        addr: SocketAddr,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub fn build_study(config: &ServiceConfig) -> Result<Study, JournalError> {
    let clock: Arc<dyn Clock> = Arc::new(SystemClock);
    match &config.journal {
        Some(path) => Study::with_journal(config.seed, config.params.clone(), clock, path),
        None => Ok(Study::new(config.seed, config.params.clone(), clock)),
    }
}

/// Binds and serves until Ctrl-C. `on_ready` receives the bound address
/// (useful with port 0).
pub async fn serve(config: ServiceConfig, on_ready: impl FnOnce(SocketAddr)) -> Result<(), ServeError> {
    let study = Arc::new(build_study(&config)?);
    let listener = tokio::net::TcpListener::bind(config.addr)
        .await
        .map_err(|source| ServeError::Bind {
            addr: config.addr,
            source,
        })?;
    on_ready(listener.local_addr()?);
    axum::serve(listener, router(study, config.static_dir))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await?;
    Ok(())
}
