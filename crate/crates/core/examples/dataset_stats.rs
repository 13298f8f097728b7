//! Per-task symbol counts and edit burden over freshly generated pairs.
//!
//! cargo run --release -p pqa-core --example dataset_stats -- [pairs-per-task]

use std::time::Instant;

use pqa_core::stats::compute_stats;
use pqa_core::task::TaskId;
use pqa_core::taskgen::{generate_dataset, GenParams};

fn main() {
    let n = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5_000);
    let params = GenParams::default();
    println!("{:<4} {:>8} {:>9} {:>8}", "task", "symbols", "slots %", "seconds");
    for task in TaskId::ALL {
        let t = Instant::now();
        let pairs = generate_dataset(task, n, 1, &params).expect("generation");
        let s = compute_stats(&pairs).expect("stats");
        println!(
            "{:<4} {:>8.3} {:>9.2} {:>8.2}",
            task.to_string(),
            s.avg_symbols,
            s.avg_slots_pct,
            t.elapsed().as_secs_f64()
        );
    }
}
