use crate::grid::{mirror, Axis, Coord, Grid, Symbol};
use crate::rng::Rng;
use crate::task::TaskId;

use super::{grow_blob, GenParams};

/// A full axis line with blobs mirrored across it; the question clears one
/// whole side. Content stays within the band both sides share so every
/// symbol has a mirror cell.
pub(super) fn draft(rng: &mut Rng, params: &GenParams) -> Option<(Grid, Grid)> {
    let w = params.draw_side(rng, TaskId::T6);
    let h = params.draw_side(rng, TaskId::T6);
    let vertical = rng.chance(0.5);
    let across = if vertical { w } else { h };
    let k = rng.range_usize(2, across - 3);
    let axis = if vertical { Axis::Column(k) } else { Axis::Row(k) };
    let band = k.min(across - 1 - k);
    let palette: Vec<u8> = (1..=9).collect();
    let colors = rng.sample(&palette, 2);
    let (line, ink) = (Symbol::of(colors[0]), Symbol::of(colors[1]));

    // Offset of a cell from the axis, negative on the low side.
    let offset = |c: Coord| {
        let p = if vertical { c.col } else { c.row };
        p as isize - k as isize
    };
    let in_source = |c: Coord| (-(band as isize)..0).contains(&offset(c));
    let mut canvas = Grid::blank(w, h).ok()?;
    canvas = canvas.map(|c, s| if in_source(c) { s } else { line });
    let band_area = band * if vertical { h } else { w };
    let density = rng.uniform(params.reflection.density.0, params.reflection.density.1);
    let target = ((density * band_area as f64).round() as usize).max(1);
    let mut content: Vec<Coord> = Vec::new();
    while content.len() < target {
        let remaining = target - content.len();
        let size = rng.range_usize(1, remaining.min(12));
        let blob = grow_blob(rng, &canvas, size - 1);
        if blob.is_empty() {
            break;
        }
        canvas = canvas.paint(blob.iter().copied(), ink).ok()?;
        content.extend(blob);
    }

    let mut answer = Grid::blank(w, h).ok()?;
    answer = answer.map(|c, s| if offset(c) == 0 { line } else { s });
    for &c in &content {
        let m = mirror(c, axis, w, h)?;
        answer.put(c.col, c.row, ink);
        answer.put(m.col, m.row, ink);
    }
    let clear_low = rng.chance(0.5);
    let question = answer.map(|c, s| {
        let o = offset(c);
        if (clear_low && o < 0) || (!clear_low && o > 0) {
            crate::grid::BACKGROUND
        } else {
            s
        }
    });
    Some((question, answer))
}
