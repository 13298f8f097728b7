use crate::grid::{Connectivity, Grid, GridError, Region, Symbol, BACKGROUND};

use super::{Rejection, SolveOutcome};

/// Size relation between a reference and the target it matches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scale {
    /// Reference replicated `s × s` (`Up(1)` is the identity).
    Up(usize),
    /// Reference block-sampled by `s`.
    Down(usize),
}

impl Scale {
    pub const ALL: [Scale; 5] = [
        Scale::Up(1),
        Scale::Up(2),
        Scale::Up(3),
        Scale::Down(2),
        Scale::Down(3),
    ];

    pub fn apply(self, g: &Grid) -> Result<Grid, GridError> {
        match self {
            Scale::Up(s) => g.scale_up(s),
            Scale::Down(s) => g.block_sample(s),
        }
    }
}

/// A region cut out to its bounding box; cells outside the region are background.
pub(crate) fn cutout(q: &Grid, region: &Region) -> Grid {
    let b = region.bbox;
    let mut out = Grid::blank(b.width(), b.height()).expect("bbox fits in grid");
    for c in &region.cells {
        out.put(c.col - b.min_col, c.row - b.min_row, q.at(c.col, c.row));
    }
    out
}

/// True when `a` and `b` have the same dimensions and foreground cells.
pub(crate) fn same_mask(a: &Grid, b: &Grid) -> bool {
    a.width() == b.width()
        && a.height() == b.height()
        && a
            .cells()
            .iter()
            .zip(b.cells())
            .all(|(x, y)| x.is_background() == y.is_background())
}

/// Every admissible rescaling of `reference` whose mask equals `target`'s.
pub(crate) fn scaled_matches(reference: &Grid, target: &Grid) -> Vec<(Scale, Grid)> {
    Scale::ALL
        .into_iter()
        .filter_map(|s| s.apply(reference).ok().map(|g| (s, g)))
        .filter(|(_, g)| same_mask(g, target))
        .collect()
}

fn colors(q: &Grid, region: &Region) -> Vec<Symbol> {
    let mut cs: Vec<Symbol> = region.cells.iter().map(|c| q.at(c.col, c.row)).collect();
    cs.sort_unstable();
    cs.dedup();
    cs
}

/// Transfers the pattern of the one reference whose shape matches the
/// target (up to an integer scale of 1, 2 or 3 either way) onto the target.
///
/// The grid must hold exactly three shapes: one monochrome target in a
/// color used nowhere else, and two multi-colored references.
pub fn solve(q: &Grid) -> SolveOutcome {
    let regions = q.regions(Connectivity::Eight, |s| !s.is_background());
    if regions.len() != 3 {
        return Err(Rejection::NotAnInstance);
    }
    let palettes: Vec<Vec<Symbol>> = regions.iter().map(|r| colors(q, r)).collect();
    let mono: Vec<usize> = (0..3).filter(|&i| palettes[i].len() == 1).collect();
    let [target] = mono.as_slice() else {
        return Err(Rejection::NotAnInstance);
    };
    let target_color = palettes[*target][0];
    let references: Vec<usize> = (0..3).filter(|i| i != target).collect();
    if references
        .iter()
        .any(|&r| palettes[r].contains(&target_color))
    {
        return Err(Rejection::NotAnInstance);
    }

    let target_region = &regions[*target];
    let target_cut = cutout(q, target_region);
    let mut found: Vec<Grid> = Vec::new();
    for &r in &references {
        let reference = cutout(q, &regions[r]);
        found.extend(scaled_matches(&reference, &target_cut).into_iter().map(|(_, g)| g));
    }
    let transfer = match found.len() {
        0 => return Err(Rejection::NotAnInstance),
        1 => found.pop().expect("one match"),
        _ => return Err(Rejection::Ambiguous),
    };

    let b = target_region.bbox;
    let mut out = q.clone();
    for c in &target_region.cells {
        let s = transfer.at(c.col - b.min_col, c.row - b.min_row);
        debug_assert_ne!(s, BACKGROUND);
        out.put(c.col, c.row, s);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::fixtures::grid;

    /// Independent check: enumerate all five scales by hand-rolled
    /// replication/sampling and count which reproduce the target mask.
    fn brute_scale_hits(reference: &[Vec<u8>], target: &[Vec<u8>]) -> Vec<(bool, usize)> {
        let rh = reference.len();
        let rw = reference[0].len();
        let th = target.len();
        let tw = target[0].len();
        let mut hits = Vec::new();
        for (up, s) in [(true, 1), (true, 2), (true, 3), (false, 2), (false, 3)] {
            let ok = if up {
                rw * s == tw
                    && rh * s == th
                    && (0..th).all(|r| (0..tw).all(|c| (reference[r / s][c / s] != 0) == (target[r][c] != 0)))
            } else {
                rw == tw * s
                    && rh == th * s
                    && (0..rh).all(|r| (0..rw).all(|c| reference[r][c] == reference[r - r % s][c - c % s]))
                    && (0..th).all(|r| (0..tw).all(|c| (reference[r * s][c * s] != 0) == (target[r][c] != 0)))
            };
            if ok {
                hits.push((up, s));
            }
        }
        hits
    }

    #[test]
    fn same_size_match() {
        let q = grid(&[
            &[5, 5, 0, 3, 4, 0, 0, 0],
            &[5, 5, 0, 4, 3, 0, 0, 0],
            &[0, 0, 0, 0, 0, 0, 0, 0],
            &[0, 0, 0, 0, 0, 0, 3, 0],
            &[0, 0, 0, 0, 0, 0, 4, 4],
        ]);
        let a = grid(&[
            &[3, 4, 0, 3, 4, 0, 0, 0],
            &[4, 3, 0, 4, 3, 0, 0, 0],
            &[0, 0, 0, 0, 0, 0, 0, 0],
            &[0, 0, 0, 0, 0, 0, 3, 0],
            &[0, 0, 0, 0, 0, 0, 4, 4],
        ]);
        let square = vec![vec![5u8, 5], vec![5, 5]];
        assert_eq!(brute_scale_hits(&[vec![3, 4], vec![4, 3]], &square), vec![(true, 1)]);
        assert_eq!(brute_scale_hits(&[vec![3, 0], vec![4, 4]], &square), vec![]);
        assert_eq!(solve(&q).unwrap(), a);
    }

    #[test]
    fn doubled_target_receives_replicated_pattern() {
        let q = grid(&[
            &[7, 7, 7, 7, 0, 1, 2, 0],
            &[7, 7, 7, 7, 0, 2, 0, 0],
            &[7, 7, 0, 0, 0, 0, 0, 0],
            &[7, 7, 0, 0, 0, 0, 0, 0],
            &[0, 0, 0, 0, 0, 0, 0, 0],
            &[0, 0, 0, 0, 0, 2, 2, 1],
        ]);
        let l = vec![vec![1u8, 1, 1, 1], vec![1, 1, 1, 1], vec![1, 1, 0, 0], vec![1, 1, 0, 0]];
        assert_eq!(brute_scale_hits(&[vec![1, 2], vec![2, 0]], &l), vec![(true, 2)]);
        assert_eq!(brute_scale_hits(&[vec![2, 2, 1]], &l), vec![]);
        let a = solve(&q).unwrap();
        assert_eq!(
            a.crop(crate::grid::BBox { min_col: 0, min_row: 0, max_col: 3, max_row: 3 }).unwrap(),
            grid(&[&[1, 1, 2, 2], &[1, 1, 2, 2], &[2, 2, 0, 0], &[2, 2, 0, 0]])
        );
        assert_eq!(a.diff_count(&q).unwrap(), 12);
    }

    #[test]
    fn halved_target_receives_sampled_pattern() {
        let q = grid(&[
            &[1, 1, 2, 2, 0, 9, 9],
            &[1, 1, 2, 2, 0, 9, 9],
            &[2, 2, 1, 1, 0, 0, 0],
            &[2, 2, 1, 1, 0, 0, 0],
            &[0, 0, 0, 0, 0, 0, 0],
            &[3, 4, 3, 0, 0, 0, 0],
        ]);
        let a = solve(&q).unwrap();
        let target = crate::grid::BBox { min_col: 5, min_row: 0, max_col: 6, max_row: 1 };
        assert_eq!(a.crop(target).unwrap(), grid(&[&[1, 2], &[2, 1]]));
        assert_eq!(a.diff_count(&q).unwrap(), 4);
    }

    #[test]
    fn duplicate_masks_are_ambiguous() {
        let q = grid(&[
            &[5, 5, 0, 3, 4, 0, 1, 2],
            &[5, 5, 0, 4, 3, 0, 2, 1],
        ]);
        assert_eq!(solve(&q), Err(Rejection::Ambiguous));
    }

    #[test]
    fn needs_a_triplet() {
        assert_eq!(solve(&grid(&[&[5, 5, 0, 3, 4]])), Err(Rejection::NotAnInstance));
        let q = grid(&[&[5, 5, 0, 3, 4, 0, 5, 3]]);
        assert_eq!(solve(&q), Err(Rejection::NotAnInstance));
    }
}
