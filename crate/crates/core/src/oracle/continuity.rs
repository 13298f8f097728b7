use crate::grid::{Grid, Symbol, BACKGROUND};

use super::{Rejection, SolveOutcome};

/// Marks cells with no foreground cell in their 8-neighborhood.
fn isolated_mask(q: &Grid) -> Vec<bool> {
    let (w, h) = (q.width(), q.height());
    let mut iso = vec![false; w * h];
    for row in 0..h {
        for col in 0..w {
            if q.at(col, row).is_background() {
                continue;
            }
            let mut alone = true;
            'scan: for r in row.saturating_sub(1)..=(row + 1).min(h - 1) {
                for c in col.saturating_sub(1)..=(col + 1).min(w - 1) {
                    if (r, c) != (row, col) && !q.at(c, r).is_background() {
                        alone = false;
                        break 'scan;
                    }
                }
            }
            iso[row * w + col] = alone;
        }
    }
    iso
}

/// Connects isolated same-colored elements that line up along a row or a
/// column with nothing but background between them.
///
/// Endpoints must be isolated cells: parts of larger shapes (rings, blocks)
/// are not "elements" and are left alone. All gaps are found on the input
/// grid; two gaps of different colors crossing at a cell is ambiguous.
pub fn solve(q: &Grid) -> SolveOutcome {
    let (w, h) = (q.width(), q.height());
    let iso = isolated_mask(q);
    let mut claim: Vec<Symbol> = vec![BACKGROUND; w * h];
    let mut claim_cell = |i: usize, s: Symbol| -> Result<(), Rejection> {
        if claim[i].is_background() || claim[i] == s {
            claim[i] = s;
            Ok(())
        } else {
            Err(Rejection::Ambiguous)
        }
    };

    // Rows, then columns. `line` yields the flat indices of one line in order.
    let lines = (0..h)
        .map(|row| (row * w, 1usize, w))
        .chain((0..w).map(|col| (col, w, h)));
    for (start, step, len) in lines {
        let mut prev: Option<usize> = None;
        for k in 0..len {
            let i = start + k * step;
            let s = q.cells()[i];
            if s.is_background() {
                continue;
            }
            if let Some(p) = prev {
                if iso[p] && iso[i] && q.cells()[p] == s && i - p > step {
                    let mut j = p + step;
                    while j < i {
                        claim_cell(j, s)?;
                        j += step;
                    }
                }
            }
            prev = Some(i);
        }
    }

    let mut out = q.clone();
    for (i, s) in claim.into_iter().enumerate() {
        if !s.is_background() {
            out.put(i % w, i / w, s);
        }
    }
    Ok(out)
}
