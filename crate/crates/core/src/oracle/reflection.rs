use crate::grid::{mirror, Axis, Grid, Symbol};

use super::{Rejection, SolveOutcome};

/// The unique full row or column painted in one non-background symbol.
pub(crate) fn find_axis(q: &Grid) -> Option<(Axis, Symbol)> {
    let (w, h) = (q.width(), q.height());
    let mut found = None;
    let mut count = 0;
    for col in 0..w {
        let s = q.at(col, 0);
        if !s.is_background() && (0..h).all(|row| q.at(col, row) == s) {
            found = Some((Axis::Column(col), s));
            count += 1;
        }
    }
    for row in 0..h {
        let s = q.at(0, row);
        if !s.is_background() && (0..w).all(|col| q.at(col, row) == s) {
            found = Some((Axis::Row(row), s));
            count += 1;
        }
    }
    (count == 1).then_some(found).flatten()
}

fn on_axis(col: usize, row: usize, axis: Axis) -> bool {
    match axis {
        Axis::Column(k) => col == k,
        Axis::Row(k) => row == k,
    }
}

/// Mirrors every symbol across the grid's axis line.
pub fn solve(q: &Grid) -> SolveOutcome {
    let (axis, _) = find_axis(q).ok_or(Rejection::NotAnInstance)?;
    let (w, h) = (q.width(), q.height());
    let mut out = q.clone();
    for row in 0..h {
        for col in 0..w {
            let s = q.at(col, row);
            if s.is_background() || on_axis(col, row, axis) {
                continue;
            }
            let m = mirror(crate::grid::Coord::new(col, row), axis, w, h)
                .ok_or(Rejection::NotAnInstance)?;
            let there = q.at(m.col, m.row);
            if there.is_background() {
                out.put(m.col, m.row, s);
            } else if there != s {
                return Err(Rejection::NotAnInstance);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::fixtures::grid;

    #[test]
    fn mirror_across_column() {
        let q = grid(&[&[7, 0, 5, 0, 0], &[0, 0, 5, 0, 0], &[0, 0, 5, 0, 0]]);
        let a = solve(&q).unwrap();
        assert_eq!(a.diff_cells(&q).unwrap(), vec![crate::grid::Coord::new(4, 0)]);
        assert_eq!(a.at(4, 0), Symbol::of(7));
        assert_eq!(solve(&a).unwrap(), a);
    }

    #[test]
    fn mirror_across_row() {
        let q = grid(&[&[0, 2, 0], &[0, 2, 2], &[6, 6, 6], &[0, 0, 0], &[0, 0, 0]]);
        let a = solve(&q).unwrap();
        assert_eq!(a, grid(&[&[0, 2, 0], &[0, 2, 2], &[6, 6, 6], &[0, 2, 2], &[0, 2, 0]]));
    }

    #[test]
    fn rejections() {
        // No full uniform line.
        assert_eq!(solve(&grid(&[&[1, 0], &[0, 1]])), Err(Rejection::NotAnInstance));
        // Two candidate axes.
        assert_eq!(solve(&grid(&[&[5, 0, 5], &[5, 0, 5]])), Err(Rejection::NotAnInstance));
        // Symbol whose mirror falls off the grid.
        assert_eq!(solve(&grid(&[&[0, 3, 0, 5, 0], &[3, 0, 0, 5, 0]])), Err(Rejection::NotAnInstance));
        // Conflicting mirror content.
        assert_eq!(solve(&grid(&[&[1, 5, 2]])), Err(Rejection::NotAnInstance));
    }
}
