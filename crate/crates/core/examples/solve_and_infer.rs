//! Run the rule-based solvers on a hand-made grid and identify the law
//! behind a question/answer pair.

use pqa_core::grid::Grid;
use pqa_core::oracle::{infer_task, matching_tasks, solve};
use pqa_core::task::TaskId;

fn main() {
    let ring = Grid::from_rows(&[
        [0u8, 0, 0, 0, 0],
        [0, 3, 3, 3, 0],
        [0, 3, 0, 3, 0],
        [0, 3, 3, 3, 0],
        [0, 0, 0, 0, 0],
    ])
    .unwrap();
    for task in TaskId::ALL {
        match solve(task, &ring) {
            Ok(g) if g == ring => println!("{task}: unchanged"),
            Ok(g) => println!("{task}: changes {} cell(s)", g.diff_count(&ring).unwrap()),
            Err(r) => println!("{task}: rejected ({r:?})"),
        }
    }

    let filled = solve(TaskId::T1, &ring).unwrap();
    println!("law behind ring -> filled: {:?}", infer_task(&ring, &filled));
    println!("law behind ring -> ring:   {:?}", infer_task(&ring, &ring));
    println!("solvers fixing the ring:   {:?}", matching_tasks(&ring, &ring));
}
