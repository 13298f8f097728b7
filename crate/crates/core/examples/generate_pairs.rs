//! Generate one verified pair per task and print it.
//!
//! cargo run -p pqa-core --example generate_pairs -- [seed]

use pqa_core::rng::Rng;
use pqa_core::task::TaskId;
use pqa_core::taskgen::{generate_pair, GenParams};

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let params = GenParams {
        max_dim: 12,
        ..GenParams::default()
    };
    for task in TaskId::ALL {
        let pair = generate_pair(task, &mut Rng::new(seed, 0), &params).expect("generation");
        let changed = pair.question.diff_count(&pair.answer).unwrap();
        println!("== {task} {} ({changed} cells change)", task.name());
        println!("question:\n{:?}\nanswer:\n{:?}", pair.question, pair.answer);
    }
}
