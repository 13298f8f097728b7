use crate::grid::{Grid, Symbol, BACKGROUND};
use crate::oracle::rotation::orbit;
use crate::rng::Rng;
use crate::task::TaskId;

use super::{place, GenParams};

/// A square, four-color, quarter-turn-invariant tiling; the question cuts
/// rectangular holes, never a whole orbit, and keeps all four colors.
pub(super) fn draft(rng: &mut Rng, params: &GenParams) -> Option<(Grid, Grid)> {
    let n = params.draw_side(rng, TaskId::T7);
    let palette: Vec<u8> = (1..=9).collect();
    let colors: Vec<Symbol> = rng.sample(&palette, 4).into_iter().map(Symbol::of).collect();
    let mut answer = Grid::blank(n, n).ok()?;
    for row in 0..n {
        for col in 0..n {
            if answer.at(col, row).is_background() {
                let s = *rng.choose(&colors);
                for (c, r) in orbit(n, col, row) {
                    answer.put(c, r, s);
                }
            }
        }
    }

    let knobs = &params.rotation;
    let holes = rng.range(knobs.holes.0, knobs.holes.1) as usize;
    let budget = rng.uniform(knobs.hole_area.0, knobs.hole_area.1) * (n * n) as f64;
    let mut question = answer.clone();
    for _ in 0..holes {
        let a = (budget / holes as f64).max(1.0);
        let hw = ((a.sqrt() * rng.uniform(0.6, 1.6)).round() as usize).clamp(1, n / 2);
        let hh = ((a / hw as f64).round() as usize).clamp(1, n / 2);
        let b = place(rng, hw, hh, n, n)?;
        for c in b.cells() {
            question.put(c.col, c.row, BACKGROUND);
        }
    }
    let orbit_survives = (0..n).all(|row| {
        (0..n).all(|col| {
            orbit(n, col, row)
                .iter()
                .any(|&(c, r)| !question.at(c, r).is_background())
        })
    });
    let all_colors = colors
        .iter()
        .all(|s| question.cells().contains(s));
    (orbit_survives && all_colors).then_some((question, answer))
}
