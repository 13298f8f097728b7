use crate::grid::{Coord, Grid, Symbol};
use crate::oracle::pattern::scaled_matches;
use crate::rng::Rng;
use crate::task::TaskId;

use super::{carve, place_apart, GenParams};

/// (target scale, matching-reference scale) relative to a shared base mask.
const RELATIONS: [(usize, usize); 5] = [(1, 1), (2, 1), (3, 1), (1, 2), (1, 3)];

/// Paints `mask` (row-major, `w × h`) with every color of `palette` at least
/// once and random palette colors elsewhere.
fn pattern(rng: &mut Rng, mask: &[bool], w: usize, h: usize, palette: &[u8]) -> Option<Grid> {
    let mut cells: Vec<usize> = (0..w * h).filter(|&i| mask[i]).collect();
    if cells.len() < palette.len() {
        return None;
    }
    rng.shuffle(&mut cells);
    let mut g = Grid::blank(w, h).ok()?;
    for (k, &i) in cells.iter().enumerate() {
        let s = palette.get(k).copied().unwrap_or_else(|| *rng.choose(palette));
        g.put(i % w, i / w, Symbol::of(s));
    }
    Some(g)
}

fn blit(canvas: &mut Grid, sprite: &Grid, at: Coord) {
    for row in 0..sprite.height() {
        for col in 0..sprite.width() {
            let s = sprite.at(col, row);
            if !s.is_background() {
                canvas.put(at.col + col, at.row + row, s);
            }
        }
    }
}

/// A monochrome target and two multi-colored references. Exactly one
/// reference matches the target's shape up to scale; its pattern, rescaled,
/// is the answer's target. Together the references use three colors.
pub(super) fn draft(rng: &mut Rng, params: &GenParams) -> Option<(Grid, Grid)> {
    let w = params.draw_side(rng, TaskId::T5);
    let h = params.draw_side(rng, TaskId::T5);
    let knobs = &params.matching;
    let (st, sr) = *rng.choose(&RELATIONS);
    let carve_share = rng.uniform(knobs.carve.0, knobs.carve.1);
    let desired = rng.uniform(knobs.target.0, knobs.target.1) * (w * h) as f64;
    let side = (desired / ((1.0 - carve_share / 2.0) * (st * st) as f64)).sqrt();
    let dim = |rng: &mut Rng| ((side * rng.uniform(0.7, 1.3)).round() as usize).max(2);
    let (bw, bh) = (dim(rng), dim(rng));
    let (ow, oh) = (dim(rng).max(2), dim(rng).max(2));
    let (ow, oh) = (ow * sr, oh * sr);
    let sizes = [(bw * st, bh * st), (bw * sr, bh * sr), (ow, oh)];
    let boxes = place_apart(rng, &sizes, w, h, 16)?;

    let base = carve(rng, bw, bh, (carve_share * (bw * bh) as f64).round() as usize);
    let other = carve(rng, ow, oh, (carve_share * (ow * oh) as f64).round() as usize);

    let palette: Vec<u8> = (1..=9).collect();
    let colors = rng.sample(&palette, 4);
    let (target_color, inks) = (Symbol::of(colors[0]), &colors[1..]);
    let size_a = rng.range_usize(2, 3);
    let own: Vec<u8> = rng.sample(inks, size_a);
    let mut theirs: Vec<u8> = inks.iter().copied().filter(|c| !own.contains(c)).collect();
    if theirs.len() < 2 {
        let extra: Vec<u8> = own.iter().copied().filter(|c| !theirs.contains(c)).collect();
        theirs.push(*rng.choose(&extra));
    }

    let base_pattern = pattern(rng, &base, bw, bh, &own)?;
    let matching = base_pattern.scale_up(sr).ok()?;
    let target_mask = base_pattern.scale_up(st).ok()?;
    let target = target_mask.map(|_, s| if s.is_background() { s } else { target_color });
    let decoy = pattern(rng, &other, ow, oh, &theirs)?;
    if !scaled_matches(&decoy, &target).is_empty() {
        return None;
    }

    let mut question = Grid::blank(w, h).ok()?;
    let corner = |i: usize| Coord::new(boxes[i].min_col, boxes[i].min_row);
    blit(&mut question, &target, corner(0));
    blit(&mut question, &matching, corner(1));
    blit(&mut question, &decoy, corner(2));
    let mut answer = question.clone();
    blit(&mut answer, &target_mask, corner(0));
    Some((question, answer))
}
