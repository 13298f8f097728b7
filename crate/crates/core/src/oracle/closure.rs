use crate::grid::{Connectivity, Grid, Symbol};

use super::{Rejection, SolveOutcome};

/// Background cells that cannot reach the border through background under
/// 4-connectivity, as a row-major mask.
pub(crate) fn enclosed_mask(q: &Grid) -> Vec<bool> {
    let outside = q.reachable_mask(q.border_cells(), Connectivity::Four, Symbol::is_background);
    q.cells()
        .iter()
        .zip(outside)
        .map(|(s, out)| s.is_background() && !out)
        .collect()
}

/// Fills every enclosed background region with the single color bounding it.
/// A region bounded by more than one color has no well-defined fill.
pub fn solve(q: &Grid) -> SolveOutcome {
    let enclosed = enclosed_mask(q);
    if !enclosed.contains(&true) {
        return Ok(q.clone());
    }
    let (w, h) = (q.width(), q.height());
    let mut out = q.clone();
    let mut seen = vec![false; enclosed.len()];
    let mut stack = Vec::new();
    let mut region = Vec::new();
    for start in 0..enclosed.len() {
        if !enclosed[start] || seen[start] {
            continue;
        }
        seen[start] = true;
        stack.push(start);
        region.clear();
        let mut color: Option<Symbol> = None;
        while let Some(i) = stack.pop() {
            region.push(i);
            let (col, row) = (i % w, i / w);
            let around = [
                (col > 0).then(|| i - 1),
                (col + 1 < w).then(|| i + 1),
                (row > 0).then(|| i - w),
                (row + 1 < h).then(|| i + w),
            ];
            for j in around.into_iter().flatten() {
                if enclosed[j] {
                    if !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                } else {
                    let s = q.cells()[j];
                    match color {
                        None => color = Some(s),
                        Some(c) if c != s => return Err(Rejection::Ambiguous),
                        Some(_) => {}
                    }
                }
            }
        }
        let color = color.expect("enclosed regions are bounded");
        for &i in &region {
            out.put(i % w, i / w, color);
        }
    }
    Ok(out)
}
