use crate::grid::{Component, Coord, Grid, Symbol, BACKGROUND};
use crate::oracle::proximity::distance2;
use crate::rng::Rng;
use crate::task::TaskId;

use super::{grow_blob, GenParams};

/// One multi-cell shape plus isolated singletons in distinct colors. The
/// nearest singleton must beat the runner-up by at least half a cell so the
/// winner is visually clear, not just numerically unique.
pub(super) fn draft(rng: &mut Rng, params: &GenParams) -> Option<(Grid, Grid)> {
    let w = params.draw_side(rng, TaskId::T3);
    let h = params.draw_side(rng, TaskId::T3);
    let knobs = &params.proximity;
    let n = rng.range(knobs.singletons.0, knobs.singletons.1) as usize;
    let palette: Vec<u8> = (1..=9).collect();
    let colors = rng.sample(&palette, n + 1);
    let shape_color = Symbol::of(colors[0]);

    let blank = Grid::blank(w, h).ok()?;
    let edit = (rng.uniform(knobs.edit.0, knobs.edit.1) * blank.area() as f64).round() as usize;
    let size = edit.saturating_sub(n).max(2);
    let cells = grow_blob(rng, &blank, size - 1);
    if cells.len() < 2 {
        return None;
    }
    let shape = Component {
        color: shape_color,
        bbox: crate::grid::BBox::enclosing(cells.iter().copied())?,
        cells,
    };

    // Singletons keep a one-cell gap from the shape and from each other.
    let mut blocked = vec![false; w * h];
    let block = |c: Coord, blocked: &mut Vec<bool>| {
        for r in c.row.saturating_sub(1)..=(c.row + 1).min(h - 1) {
            for col in c.col.saturating_sub(1)..=(c.col + 1).min(w - 1) {
                blocked[r * w + col] = true;
            }
        }
    };
    for &c in &shape.cells {
        block(c, &mut blocked);
    }
    let mut singles = Vec::with_capacity(n);
    for &color in &colors[1..] {
        let free: Vec<usize> = (0..w * h).filter(|&i| !blocked[i]).collect();
        if free.is_empty() {
            return None;
        }
        let i = free[rng.index(free.len())];
        let c = Coord::new(i % w, i / w);
        block(c, &mut blocked);
        singles.push((c, Symbol::of(color)));
    }

    let mut dists: Vec<(f64, Symbol)> = singles
        .iter()
        .map(|&(c, s)| ((distance2(&shape, c.col, c.row) as f64).sqrt(), s))
        .collect();
    dists.sort_by(|a, b| a.0.total_cmp(&b.0));
    if dists.len() > 1 && dists[1].0 - dists[0].0 < 0.5 {
        return None;
    }
    let winner = dists[0].1;

    let mut question = blank.paint(shape.cells.iter().copied(), shape_color).ok()?;
    for &(c, s) in &singles {
        question.put(c.col, c.row, s);
    }
    let answer = question.map(|c, s| {
        if shape.cells.contains(&c) {
            winner
        } else if singles.iter().any(|&(p, _)| p == c) {
            BACKGROUND
        } else {
            s
        }
    });
    Some((question, answer))
}
