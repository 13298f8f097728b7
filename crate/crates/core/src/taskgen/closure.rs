use crate::grid::{Connectivity, Grid, Symbol, BACKGROUND};
use crate::oracle::solve_t1;
use crate::rng::Rng;
use crate::task::TaskId;

use super::{grow_blob, GenParams};

/// A filled one-color blob; the question hollows out every cell that has no
/// background 8-neighbor and does not sit on the grid border.
pub(super) fn draft(rng: &mut Rng, params: &GenParams) -> Option<(Grid, Grid)> {
    let w = params.draw_side(rng, TaskId::T1);
    let h = params.draw_side(rng, TaskId::T1);
    let canvas = Grid::blank(w, h).ok()?;
    let color = Symbol::of(rng.range(1, 9) as u8);
    let (lo, hi) = params.closure.growth;
    let k = (rng.uniform(lo, hi) * canvas.area() as f64).round() as usize;
    let blob = grow_blob(rng, &canvas, k);
    // Eden growth leaves pinholes; fill them so the answer is hole-free.
    let answer = solve_t1(&canvas.paint(blob, color).ok()?).ok()?;
    let question = answer.map(|c, s| {
        let interior = !s.is_background()
            && !answer.is_border(c)
            && answer
                .neighbors(c, Connectivity::Eight)
                .all(|n| !answer.at(n.col, n.row).is_background());
        if interior {
            BACKGROUND
        } else {
            s
        }
    });
    Some((question, answer))
}
