use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use pqa_core::grid::Grid;
use pqa_core::oracle::solve;
use pqa_core::task::TaskId;
use pqa_core::taskgen::GenParams;
use pqa_service::{router, ManualClock, Study};

struct Harness {
    app: axum::Router,
    clock: Arc<ManualClock>,
}

impl Harness {
    fn new() -> Harness {
        let clock = Arc::new(ManualClock::new(1000.0));
        let study = Arc::new(Study::new(7, GenParams::default(), clock.clone()));
        Harness {
            app: router(study, None),
            clock,
        }
    }

    async fn call(&self, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
        let req = Request::builder()
            .method(method)
            .uri(uri)
            .header("content-type", "application/json")
            .body(match body {
                Some(v) => Body::from(v.to_string()),
                None => Body::empty(),
            })
            .unwrap();
        let resp = self.app.clone().oneshot(req).await.unwrap();
        let status = resp.status();
        let bytes = resp.into_body().collect().await.unwrap().to_bytes();
        let value = if bytes.is_empty() {
            Value::Null
        } else {
            serde_json::from_slice(&bytes).unwrap()
        };
        (status, value)
    }

    async fn open(&self, task: &str) -> u64 {
        let (status, v) = self.call("POST", "/session", Some(json!({ "task": task }))).await;
        assert_eq!(status, StatusCode::CREATED);
        v["session_id"].as_u64().unwrap()
    }

    /// Fetches the open puzzle and answers it, correctly or not.
    async fn attempt(&self, id: u64, task: TaskId, correct: bool) -> Value {
        let (status, puzzle) = self.call("GET", &format!("/session/{id}/puzzle"), None).await;
        assert_eq!(status, StatusCode::OK);
        assert!(puzzle.get("answer").is_none(), "answer leaked: {puzzle}");
        let q: Grid = serde_json::from_value(puzzle["question"].clone()).unwrap();
        let grid = if correct { solve(task, &q).unwrap() } else { q };
        let body = json!({ "episode_id": puzzle["episode_id"], "grid": grid });
        let (status, verdict) = self.call("POST", &format!("/session/{id}/answer"), Some(body)).await;
        assert_eq!(status, StatusCode::OK);
        verdict
    }
}

#[tokio::test]
async fn new_session_state() {
    let h = Harness::new();
    let (status, v) = h.call("POST", "/session", Some(json!({"task": "t1"}))).await;
    assert_eq!(status, StatusCode::CREATED);
    assert_eq!(v["contexts_viewed"], 1);
    assert_eq!(v["streak"], 0);
    let q: Grid = serde_json::from_value(v["first_context"]["question"].clone()).unwrap();
    let a: Grid = serde_json::from_value(v["first_context"]["answer"].clone()).unwrap();
    assert_eq!(solve(TaskId::T1, &q), Ok(a));
}

#[tokio::test]
async fn unknown_task_is_400() {
    let h = Harness::new();
    let (status, v) = h.call("POST", "/session", Some(json!({"task": "t9"}))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(v["error"], "bad_request");
    let (status, _) = h.call("POST", "/session", Some(json!({}))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn sessions_draw_independent_streams() {
    let h = Harness::new();
    let (_, a) = h.call("POST", "/session", Some(json!({"task": "t6"}))).await;
    let (_, b) = h.call("POST", "/session", Some(json!({"task": "t6"}))).await;
    assert_ne!(a["session_id"], b["session_id"]);
    assert_ne!(a["first_context"], b["first_context"]);
}

#[tokio::test]
async fn contexts_are_counted_and_valid() {
    let h = Harness::new();
    let id = h.open("t5").await;
    for expected in 2..=4 {
        let (status, v) = h.call("POST", &format!("/session/{id}/context"), None).await;
        assert_eq!(status, StatusCode::OK);
        assert_eq!(v["contexts_viewed"], expected);
        let q: Grid = serde_json::from_value(v["question"].clone()).unwrap();
        let a: Grid = serde_json::from_value(v["answer"].clone()).unwrap();
        assert_eq!(solve(TaskId::T5, &q), Ok(a));
    }
}

#[tokio::test]
async fn streak_rules_and_completion() {
    let h = Harness::new();
    let id = h.open("t3").await;
    let v = h.attempt(id, TaskId::T3, true).await;
    assert_eq!((v["correct"].as_bool(), v["streak"].as_u64()), (Some(true), Some(1)));
    let v = h.attempt(id, TaskId::T3, false).await;
    assert_eq!((v["correct"].as_bool(), v["streak"].as_u64()), (Some(false), Some(0)));
    for streak in 1..=3 {
        let v = h.attempt(id, TaskId::T3, true).await;
        assert_eq!(v["streak"], streak);
        assert_eq!(v["completed"], streak == 3);
    }
    let (status, v) = h.call("POST", &format!("/session/{id}/context"), None).await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!(v["error"], "completed");
    let (status, _) = h.call("GET", &format!("/session/{id}/puzzle"), None).await;
    assert_eq!(status, StatusCode::CONFLICT);
    let (_, record) = h.call("GET", &format!("/session/{id}"), None).await;
    assert_eq!(record["attempts"].as_array().unwrap().len(), 5);
    assert_eq!(record["completed"], true);
}

#[tokio::test]
async fn answer_errors() {
    let h = Harness::new();
    let (status, _) = h.call("GET", "/session/99/puzzle", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    let id = h.open("t2").await;
    let (_, puzzle) = h.call("GET", &format!("/session/{id}/puzzle"), None).await;
    // Asking again returns the same open puzzle.
    let (_, again) = h.call("GET", &format!("/session/{id}/puzzle"), None).await;
    assert_eq!(puzzle, again);

    let uri = format!("/session/{id}/answer");
    let bad = json!({"episode_id": puzzle["episode_id"], "grid": [[0, 1], [2]]});
    let (status, v) = h.call("POST", &uri, Some(bad)).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(v["error"], "malformed_grid");
    let bad = json!({"episode_id": puzzle["episode_id"], "grid": [[11]]});
    assert_eq!(h.call("POST", &uri, Some(bad)).await.0, StatusCode::UNPROCESSABLE_ENTITY);

    let stale = json!({"episode_id": "s1-999", "grid": [[0]]});
    assert_eq!(h.call("POST", &uri, Some(stale)).await.0, StatusCode::CONFLICT);
}

#[tokio::test]
async fn stats_cover_completed_sessions_only() {
    let h = Harness::new();
    let (_, empty) = h.call("GET", "/stats", None).await;
    let rows = empty["tasks"].as_array().unwrap();
    assert_eq!(rows.len(), 7);
    assert!(rows.iter().all(|r| r["mean_contexts"].is_null() && r["mean_minutes"].is_null()));
    assert_eq!(rows[3]["reference_contexts"], 1.0);
    assert_eq!(rows[3]["reference_minutes"], 0.77);

    let id = h.open("t1").await;
    h.call("POST", &format!("/session/{id}/context"), None).await;
    let abandoned = h.open("t1").await;
    h.attempt(abandoned, TaskId::T1, false).await;
    for _ in 0..3 {
        h.clock.advance(30.0);
        h.attempt(id, TaskId::T1, true).await;
    }
    let (_, stats) = h.call("GET", "/stats", None).await;
    let t1 = &stats["tasks"][0];
    assert_eq!(t1["completed_sessions"], 1);
    assert_eq!(t1["mean_contexts"], 2.0);
    assert_eq!(t1["mean_minutes"], 1.5);
}

#[tokio::test]
async fn journal_replay_restores_sessions() {
    let tmp = tempfile::tempdir().unwrap();
    let path = tmp.path().join("study.jsonl");
    let clock = Arc::new(ManualClock::new(0.0));
    let (id, pending) = {
        let study = Study::with_journal(3, GenParams::default(), clock.clone(), &path).unwrap();
        let id = study.create(TaskId::T7).unwrap().session_id;
        study.context(id).unwrap();
        let p = study.puzzle(id).unwrap();
        let answer = solve(TaskId::T7, &p.question).unwrap();
        clock.advance(5.0);
        assert!(study.answer(id, &p.episode_id, answer).unwrap().correct);
        (id, study.puzzle(id).unwrap())
    };
    let study = Study::with_journal(3, GenParams::default(), clock.clone(), &path).unwrap();
    let record = study.record_of(id).unwrap();
    assert_eq!(record.contexts_viewed, 2);
    assert_eq!(record.streak, 1);
    assert_eq!(record.attempts[0].at, 5.0);
    assert_eq!(study.puzzle(id).unwrap(), pending);
    // New sessions continue the id sequence.
    assert_eq!(study.create(TaskId::T1).unwrap().session_id, id + 1);
}

#[tokio::test]
async fn static_files_are_served() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(tmp.path().join("index.html"), "<html>pqa</html>").unwrap();
    let study = Arc::new(Study::new(1, GenParams::default(), Arc::new(ManualClock::new(0.0))));
    let app = router(study, Some(tmp.path().to_path_buf()));
    let resp = app
        .oneshot(Request::builder().uri("/index.html").body(Body::empty()).unwrap())
        .await
        .unwrap();
    assert_eq!(resp.status(), StatusCode::OK);
    let body = resp.into_body().collect().await.unwrap().to_bytes();
    assert_eq!(&body[..], b"<html>pqa</html>");
}
