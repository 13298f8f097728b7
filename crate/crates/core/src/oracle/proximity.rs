use crate::grid::{Component, Connectivity, Grid, BACKGROUND};

use super::{Rejection, SolveOutcome};

/// Squared Euclidean distance between cell centers, minimized over `shape`.
pub(crate) fn distance2(shape: &Component, col: usize, row: usize) -> usize {
    shape
        .cells
        .iter()
        .map(|c| {
            let (dc, dr) = (c.col.abs_diff(col), c.row.abs_diff(row));
            dc * dc + dr * dr
        })
        .min()
        .expect("nonempty shape")
}

/// Recolors the one multi-cell shape with the color of its strictly nearest
/// singleton and clears every singleton.
pub fn solve(q: &Grid) -> SolveOutcome {
    let comps = q.components(Connectivity::Eight, |s| !s.is_background());
    let (shapes, singles): (Vec<&Component>, Vec<&Component>) =
        comps.iter().partition(|c| c.len() > 1);
    let [shape] = shapes.as_slice() else {
        return Err(Rejection::NotAnInstance);
    };
    if singles.is_empty() {
        return Err(Rejection::NotAnInstance);
    }
    let dists: Vec<usize> = singles
        .iter()
        .map(|s| distance2(shape, s.cells[0].col, s.cells[0].row))
        .collect();
    let best = *dists.iter().min().expect("nonempty");
    let mut nearest = singles.iter().zip(&dists).filter(|(_, &d)| d == best);
    let (winner, _) = nearest.next().expect("minimum exists");
    if nearest.next().is_some() {
        return Err(Rejection::Ambiguous);
    }
    let mut out = q.clone();
    for c in &shape.cells {
        out.put(c.col, c.row, winner.color);
    }
    for s in &singles {
        out.put(s.cells[0].col, s.cells[0].row, BACKGROUND);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Symbol;
    use crate::oracle::fixtures::grid;

    #[test]
    fn single_candidate() {
        let q = grid(&[
            &[2, 2, 0, 0],
            &[0, 2, 0, 0],
            &[0, 0, 0, 6],
        ]);
        let a = grid(&[
            &[6, 6, 0, 0],
            &[0, 6, 0, 0],
            &[0, 0, 0, 0],
        ]);
        assert_eq!(solve(&q).unwrap(), a);
    }

    /// Brute force over every (shape cell, singleton) pair.
    fn brute_nearest(q: &Grid) -> Vec<(f64, Symbol)> {
        let comps = q.components(Connectivity::Eight, |s| !s.is_background());
        let shape = comps.iter().find(|c| c.len() > 1).unwrap();
        let mut out: Vec<(f64, Symbol)> = comps
            .iter()
            .filter(|c| c.len() == 1)
            .map(|s| {
                let mut best = f64::INFINITY;
                for a in &shape.cells {
                    let dx = a.col as f64 - s.cells[0].col as f64;
                    let dy = a.row as f64 - s.cells[0].row as f64;
                    best = best.min((dx * dx + dy * dy).sqrt());
                }
                (best, s.color)
            })
            .collect();
        out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        out
    }

    #[test]
    fn nearer_singleton_wins() {
        // Shape of 1s in the top-left corner; 6 sits diagonally at sqrt(2)
        // from (1,1); 8 sits 3 cells straight below (0,1).
        let q = grid(&[
            &[1, 1, 0, 0, 0, 0],
            &[1, 1, 0, 0, 0, 0],
            &[0, 0, 6, 0, 0, 0],
            &[0, 0, 0, 0, 0, 0],
            &[8, 0, 0, 0, 0, 0],
            &[0, 0, 0, 0, 0, 0],
        ]);
        let ranked = brute_nearest(&q);
        assert_eq!(ranked[0].1, Symbol::of(6));
        assert!((ranked[0].0 - 2f64.sqrt()).abs() < 1e-12);
        assert!((ranked[1].0 - 3.0).abs() < 1e-12);
        let a = solve(&q).unwrap();
        assert_eq!(a.at(0, 0), Symbol::of(6));
        assert_eq!(a.at(2, 2), BACKGROUND);
        assert_eq!(a.at(0, 4), BACKGROUND);
    }

    #[test]
    fn exact_tie_is_ambiguous() {
        let q = grid(&[
            &[0, 0, 0, 0, 0],
            &[3, 0, 1, 0, 4],
            &[0, 0, 1, 0, 0],
        ]);
        assert_eq!(solve(&q), Err(Rejection::Ambiguous));
    }

    #[test]
    fn needs_shape_and_singletons() {
        assert_eq!(solve(&grid(&[&[1, 1, 0]])), Err(Rejection::NotAnInstance));
        assert_eq!(solve(&grid(&[&[1, 0, 2]])), Err(Rejection::NotAnInstance));
        assert_eq!(
            solve(&grid(&[&[1, 1, 0, 2, 2], &[0, 0, 0, 0, 0], &[0, 0, 7, 0, 0]])),
            Err(Rejection::NotAnInstance)
        );
    }
}
