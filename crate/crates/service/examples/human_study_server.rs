//! Serve the study API with a journal, then drive one session through the
//! HTTP interface exactly as a browser would: two context pairs, one wrong
//! answer, three right ones.
//!
//! cargo run -p pqa-service --example human_study_server

use std::io::{Read, Write};
use std::net::{SocketAddr, TcpStream};

use serde_json::{json, Value};

use pqa_core::grid::Grid;
use pqa_core::oracle::solve;
use pqa_core::task::TaskId;
use pqa_core::taskgen::GenParams;
use pqa_service::{serve, ServiceConfig};

fn request(addr: SocketAddr, method: &str, path: &str, body: Option<Value>) -> Value {
    let body = body.map(|b| b.to_string()).unwrap_or_default();
    let mut stream = TcpStream::connect(addr).unwrap();
    write!(
        stream,
        "{method} {path} HTTP/1.1\r\nHost: {addr}\r\nContent-Type: application/json\r\n\
         Content-Length: {}\r\nConnection: close\r\n\r\n{body}",
        body.len()
    )
    .unwrap();
    let mut reply = String::new();
    stream.read_to_string(&mut reply).unwrap();
    let (_, payload) = reply.split_once("\r\n\r\n").unwrap();
    serde_json::from_str(payload).unwrap()
}

fn main() {
    let journal = std::env::temp_dir().join("pqa-study.jsonl");
    let config = ServiceConfig {
        addr: "127.0.0.1:0".parse().unwrap(),
        seed: 1,
        journal: Some(journal.clone()),
        static_dir: None,
        params: GenParams::default(),
    };
    let (tx, rx) = std::sync::mpsc::channel();
    std::thread::spawn(move || {
        let rt = tokio::runtime::Runtime::new().unwrap();
        rt.block_on(serve(config, |addr| tx.send(addr).unwrap())).unwrap();
    });
    let addr = rx.recv().unwrap();
    println!("serving on http://{addr}, journal {}", journal.display());

    let created = request(addr, "POST", "/session", Some(json!({"task": "t1"})));
    let id = created["session_id"].as_u64().unwrap();
    request(addr, "POST", &format!("/session/{id}/context"), None);

    for correct in [false, true, true, true] {
        let puzzle = request(addr, "GET", &format!("/session/{id}/puzzle"), None);
        let q: Grid = serde_json::from_value(puzzle["question"].clone()).unwrap();
        let grid = if correct { solve(TaskId::T1, &q).unwrap() } else { q };
        let verdict = request(
            addr,
            "POST",
            &format!("/session/{id}/answer"),
            Some(json!({"episode_id": puzzle["episode_id"], "grid": grid})),
        );
        println!(
            "answer {}: correct={} streak={} completed={}",
            puzzle["episode_id"], verdict["correct"], verdict["streak"], verdict["completed"]
        );
    }
    let stats = request(addr, "GET", "/stats", None);
    println!("T1 stats: {}", stats["tasks"][0]);
}
