use crate::grid::{Coord, Grid, Symbol};
use crate::rng::Rng;
use crate::task::TaskId;

use super::{carve, place_apart, GenParams};

/// Solid one-color rectangles, apart from each other; the question erodes
/// each one from the outside while it stays connected and still reaches all
/// four sides of its box, so the box is recoverable.
pub(super) fn draft(rng: &mut Rng, params: &GenParams) -> Option<(Grid, Grid)> {
    let w = params.draw_side(rng, TaskId::T4);
    let h = params.draw_side(rng, TaskId::T4);
    let knobs = &params.reconstruction;
    let n = rng.range(knobs.rectangles.0, knobs.rectangles.1) as usize;
    let side = |rng: &mut Rng, extent: usize| {
        let f = rng.uniform(knobs.side.0, knobs.side.1);
        ((f * extent as f64).round() as usize).clamp(2, extent)
    };
    let sizes: Vec<(usize, usize)> = (0..n).map(|_| (side(rng, w), side(rng, h))).collect();
    let boxes = place_apart(rng, &sizes, w, h, 16)?;
    let color = Symbol::of(rng.range(1, 9) as u8);

    let blank = Grid::blank(w, h).ok()?;
    let answer = blank.paint(boxes.iter().flat_map(|b| b.cells()), color).ok()?;
    let mut question = blank;
    for b in &boxes {
        let (bw, bh) = (b.width(), b.height());
        let share = rng.uniform(knobs.removal.0, knobs.removal.1);
        let remove = (share * (bw * bh) as f64).round() as usize;
        let kept = carve(rng, bw, bh, remove);
        let cells = (0..bw * bh)
            .filter(|&i| kept[i])
            .map(|i| Coord::new(b.min_col + i % bw, b.min_row + i / bw));
        question = question.paint(cells, color).ok()?;
    }
    Some((question, answer))
}
