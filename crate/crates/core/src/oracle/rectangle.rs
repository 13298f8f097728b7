use crate::grid::{Connectivity, Grid};

use super::closure::enclosed_mask;
use super::{Rejection, SolveOutcome};

/// Replaces every 8-connected shape by its filled bounding box.
///
/// Enclosed background belongs to closure filling, not to this task, so any
/// enclosed hole rejects the grid; so do overlapping boxes.
pub fn solve(q: &Grid) -> SolveOutcome {
    if enclosed_mask(q).contains(&true) {
        return Err(Rejection::NotAnInstance);
    }
    let comps = q.components(Connectivity::Eight, |s| !s.is_background());
    let mut owner = vec![usize::MAX; q.area()];
    let mut out = q.clone();
    for (k, comp) in comps.iter().enumerate() {
        for c in comp.bbox.cells() {
            let i = c.row * q.width() + c.col;
            if owner[i] != usize::MAX {
                return Err(Rejection::NotAnInstance);
            }
            owner[i] = k;
            out.put(c.col, c.row, comp.color);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::fixtures::grid;

    #[test]
    fn l_tromino_becomes_square() {
        let q = grid(&[&[2, 0, 0], &[2, 2, 0], &[0, 0, 0]]);
        let a = solve(&q).unwrap();
        assert_eq!(a, grid(&[&[2, 2, 0], &[2, 2, 0], &[0, 0, 0]]));
        // One cell added: bbox area 4 minus shape size 3.
        assert_eq!(a.diff_count(&q).unwrap(), 4 - 3);
    }

    #[test]
    fn solid_rectangle_is_fixed() {
        let q = grid(&[&[0, 0, 0, 0], &[0, 5, 5, 0], &[0, 5, 5, 0]]);
        assert_eq!(solve(&q).unwrap(), q);
    }

    #[test]
    fn overlapping_boxes_rejected() {
        // Separate boxes are fine.
        let q = grid(&[&[1, 0, 0, 0], &[0, 0, 3, 0], &[0, 0, 0, 1]]);
        assert_eq!(solve(&q).unwrap(), q);
        // The 7 sits inside the bounding box of the hook of 4s.
        let q = grid(&[&[4, 4, 4, 4], &[0, 0, 0, 4], &[0, 7, 0, 4]]);
        assert_eq!(solve(&q), Err(Rejection::NotAnInstance));
    }

    #[test]
    fn enclosed_hole_is_not_mine() {
        let ring = grid(&[&[3, 3, 3], &[3, 0, 3], &[3, 3, 3]]);
        assert_eq!(solve(&ring), Err(Rejection::NotAnInstance));
    }
}
