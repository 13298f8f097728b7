//! Write a generated pair as two pixmap images.
//!
//! cargo run -p pqa-core --example render_pixmap -- [out-dir]

use std::path::PathBuf;

use pqa_core::dataset::render::{render_grid, ARC_PALETTE};
use pqa_core::rng::Rng;
use pqa_core::task::TaskId;
use pqa_core::taskgen::{generate_pair, GenParams};

fn main() {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(std::env::temp_dir);
    let pair = generate_pair(TaskId::T7, &mut Rng::new(5, 0), &GenParams::default()).unwrap();
    for (name, grid) in [("question", &pair.question), ("answer", &pair.answer)] {
        let path = out.join(format!("t7_{name}.ppm"));
        std::fs::write(&path, render_grid(grid, 16, &ARC_PALETTE)).unwrap();
        println!("wrote {}", path.display());
    }
}
