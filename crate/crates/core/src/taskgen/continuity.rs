use crate::grid::{BBox, Coord, Grid, Symbol};
use crate::rng::Rng;
use crate::task::TaskId;

use super::{place, touching, GenParams};

/// Straight one-color segments of length three or more, kept apart; the
/// question shows only their two endpoints.
pub(super) fn draft(rng: &mut Rng, params: &GenParams) -> Option<(Grid, Grid)> {
    let w = params.draw_side(rng, TaskId::T2);
    let h = params.draw_side(rng, TaskId::T2);
    let knobs = &params.continuity;
    let wanted = rng.range(knobs.segments.0, knobs.segments.1) as usize;
    let mut segments: Vec<BBox> = Vec::with_capacity(wanted);
    for _ in 0..wanted * 8 {
        if segments.len() == wanted {
            break;
        }
        let horizontal = rng.chance(0.5);
        let side = if horizontal { w } else { h };
        let longest = ((knobs.max_length * side as f64).round() as usize).clamp(3, side);
        let len = rng.range_usize(3, longest);
        let (sw, sh) = if horizontal { (len, 1) } else { (1, len) };
        let Some(b) = place(rng, sw, sh, w, h) else {
            continue;
        };
        if segments.iter().all(|o| !touching(o, &b)) {
            segments.push(b);
        }
    }
    if segments.is_empty() {
        return None;
    }
    let color = Symbol::of(rng.range(1, 9) as u8);
    let blank = Grid::blank(w, h).ok()?;
    let answer = blank.paint(segments.iter().flat_map(|b| b.cells()), color).ok()?;
    let ends = segments.iter().flat_map(|b| {
        [
            Coord::new(b.min_col, b.min_row),
            Coord::new(b.max_col, b.max_row),
        ]
    });
    let question = blank.paint(ends, color).ok()?;
    Some((question, answer))
}
