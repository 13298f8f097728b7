use crate::grid::{Grid, BACKGROUND};

use super::{Rejection, SolveOutcome};

/// The (up to four) cells mapped onto each other by quarter turns of an
/// `n × n` grid, starting at `(col, row)`.
pub(crate) fn orbit(n: usize, col: usize, row: usize) -> [(usize, usize); 4] {
    let r1 = (n - 1 - row, col);
    let r2 = (n - 1 - col, n - 1 - row);
    let r3 = (row, n - 1 - col);
    [(col, row), r1, r2, r3]
}

/// Fills background holes so the grid becomes invariant under quarter turns.
///
/// An orbit holding only background cannot be filled (ambiguous); one holding
/// two different symbols cannot be symmetric (not an instance).
pub fn solve(q: &Grid) -> SolveOutcome {
    let n = q.width();
    if q.height() != n {
        return Err(Rejection::NotAnInstance);
    }
    let mut out = q.clone();
    for row in 0..n {
        for col in 0..n {
            if !q.at(col, row).is_background() {
                continue;
            }
            let mut value = BACKGROUND;
            for (c, r) in orbit(n, col, row) {
                let s = q.at(c, r);
                if s.is_background() {
                    continue;
                }
                if value.is_background() {
                    value = s;
                } else if value != s {
                    return Err(Rejection::NotAnInstance);
                }
            }
            if value.is_background() {
                return Err(Rejection::Ambiguous);
            }
            out.put(col, row, value);
        }
    }
    // Hole-free orbits must already agree.
    for row in 0..n {
        for col in 0..n {
            let s = out.at(col, row);
            if orbit(n, col, row).iter().any(|&(c, r)| out.at(c, r) != s) {
                return Err(Rejection::NotAnInstance);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Symbol;
    use crate::oracle::fixtures::grid;

    #[test]
    fn orbit_fill() {
        let q = grid(&[&[0, 1, 2, 7], &[2, 3, 3, 1], &[1, 3, 3, 2], &[7, 2, 1, 7]]);
        let a = solve(&q).unwrap();
        assert_eq!(a.at(0, 0), Symbol::of(7));
        assert_eq!(a.diff_count(&q).unwrap(), 1);
        assert_eq!(a.rotate90(), a);
        assert_eq!(solve(&a).unwrap(), a);
    }

    #[test]
    fn rejections() {
        assert_eq!(solve(&grid(&[&[1, 1, 1]])), Err(Rejection::NotAnInstance));
        assert_eq!(solve(&grid(&[&[0, 0], &[0, 0]])), Err(Rejection::Ambiguous));
        assert_eq!(solve(&grid(&[&[1, 2], &[0, 1]])), Err(Rejection::NotAnInstance));
        assert_eq!(solve(&grid(&[&[1, 2], &[2, 2]])), Err(Rejection::NotAnInstance));
    }

    #[test]
    fn odd_center_is_its_own_orbit() {
        let q = grid(&[&[4, 4, 4], &[4, 0, 4], &[4, 4, 4]]);
        assert_eq!(solve(&q), Err(Rejection::Ambiguous));
    }
}
