//! The grid datum and the geometric primitives built on it.
//!
//! A [`Grid`] is an immutable, row-major rectangle of [`Symbol`]s of at most
//! 30 × 30 cells. Every operation that "changes" a grid returns a new one.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Largest width or height a grid may have.
pub const MAX_DIM: usize = 30;

/// Number of distinct color symbols.
pub const NUM_SYMBOLS: u8 = 10;

/// The background symbol.
pub const BACKGROUND: Symbol = Symbol(0);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("grid dimensions {width}x{height} outside 1..={max}", max = MAX_DIM)]
    InvalidDims { width: usize, height: usize },
    #[error("symbol {0} outside 0..=9")]
    InvalidSymbol(i64),
    #[error("expected {expected} cells, found {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("row {row} has {found} cells, expected {expected}")]
    RaggedRow { row: usize, expected: usize, found: usize },
    #[error("coordinate ({col}, {row}) out of bounds for {width}x{height} grid")]
    OutOfBounds {
        col: usize,
        row: usize,
        width: usize,
        height: usize,
    },
    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("scale factor must be at least 1")]
    ZeroScale,
    #[error("dimensions {width}x{height} not divisible by {scale}")]
    NotDivisible {
        width: usize,
        height: usize,
        scale: usize,
    },
    #[error("block at ({col}, {row}) is not uniform")]
    NonUniformBlock { col: usize, row: usize },
}

/// One of the ten color symbols, `0..=9`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
#[repr(transparent)]
pub struct Symbol(u8);

impl Symbol {
    pub const fn new(value: u8) -> Option<Symbol> {
        if value < NUM_SYMBOLS {
            Some(Symbol(value))
        } else {
            None
        }
    }

    /// # Panics
    /// If `value > 9`.
    pub const fn of(value: u8) -> Symbol {
        match Symbol::new(value) {
            Some(s) => s,
            None => panic!("symbol out of range"),
        }
    }

    pub const fn value(self) -> u8 {
        self.0
    }

    pub const fn is_background(self) -> bool {
        self.0 == 0
    }

    /// All ten symbols in ascending order.
    pub fn all() -> impl Iterator<Item = Symbol> {
        (0..NUM_SYMBOLS).map(Symbol)
    }
}

impl TryFrom<i64> for Symbol {
    type Error = GridError;

    fn try_from(value: i64) -> Result<Self, Self::Error> {
        u8::try_from(value)
            .ok()
            .and_then(Symbol::new)
            .ok_or(GridError::InvalidSymbol(value))
    }
}

impl From<Symbol> for u8 {
    fn from(s: Symbol) -> u8 {
        s.0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A 0-based cell location: column then row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Coord {
    pub col: usize,
    pub row: usize,
}

impl Coord {
    pub const fn new(col: usize, row: usize) -> Coord {
        Coord { col, row }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Connectivity {
    Four,
    #[default]
    Eight,
}

impl Connectivity {
    pub(crate) fn offsets(self) -> &'static [(isize, isize)] {
        const FOUR: [(isize, isize); 4] = [(0, -1), (-1, 0), (1, 0), (0, 1)];
        const EIGHT: [(isize, isize); 8] = [
            (-1, -1),
            (0, -1),
            (1, -1),
            (-1, 0),
            (1, 0),
            (-1, 1),
            (0, 1),
            (1, 1),
        ];
        match self {
            Connectivity::Four => &FOUR,
            Connectivity::Eight => &EIGHT,
        }
    }
}

/// Inclusive axis-aligned bounding box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BBox {
    pub min_col: usize,
    pub min_row: usize,
    pub max_col: usize,
    pub max_row: usize,
}

impl BBox {
    pub fn of_cell(c: Coord) -> BBox {
        BBox {
            min_col: c.col,
            min_row: c.row,
            max_col: c.col,
            max_row: c.row,
        }
    }

    pub fn include(&mut self, c: Coord) {
        self.min_col = self.min_col.min(c.col);
        self.min_row = self.min_row.min(c.row);
        self.max_col = self.max_col.max(c.col);
        self.max_row = self.max_row.max(c.row);
    }

    pub fn width(&self) -> usize {
        self.max_col - self.min_col + 1
    }

    pub fn height(&self) -> usize {
        self.max_row - self.min_row + 1
    }

    pub fn area(&self) -> usize {
        self.width() * self.height()
    }

    pub fn contains(&self, c: Coord) -> bool {
        (self.min_col..=self.max_col).contains(&c.col)
            && (self.min_row..=self.max_row).contains(&c.row)
    }

    pub fn intersects(&self, other: &BBox) -> bool {
        self.min_col <= other.max_col
            && other.min_col <= self.max_col
            && self.min_row <= other.max_row
            && other.min_row <= self.max_row
    }

    pub fn cells(&self) -> impl Iterator<Item = Coord> + '_ {
        (self.min_row..=self.max_row)
            .flat_map(move |row| (self.min_col..=self.max_col).map(move |col| Coord { col, row }))
    }

    /// Smallest box containing every coordinate, `None` when empty.
    pub fn enclosing(cells: impl IntoIterator<Item = Coord>) -> Option<BBox> {
        let mut iter = cells.into_iter();
        let mut bbox = BBox::of_cell(iter.next()?);
        for c in iter {
            bbox.include(c);
        }
        Some(bbox)
    }
}

/// A maximal connected set of same-colored cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub color: Symbol,
    /// Member cells in row-major order.
    pub cells: Vec<Coord>,
    pub bbox: BBox,
}

impl Component {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// A maximal connected set of foreground cells of any colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    /// Member cells in row-major order.
    pub cells: Vec<Coord>,
    pub bbox: BBox,
}

/// A reflection axis: the column or row cells are mirrored across.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    Column(usize),
    Row(usize),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Grid {
    width: usize,
    height: usize,
    cells: Vec<Symbol>,
}

fn check_dims(width: usize, height: usize) -> Result<(), GridError> {
    if (1..=MAX_DIM).contains(&width) && (1..=MAX_DIM).contains(&height) {
        Ok(())
    } else {
        Err(GridError::InvalidDims { width, height })
    }
}

impl Grid {
    /// A grid filled with `fill`.
    pub fn filled(width: usize, height: usize, fill: Symbol) -> Result<Grid, GridError> {
        check_dims(width, height)?;
        Ok(Grid {
            width,
            height,
            cells: vec![fill; width * height],
        })
    }

    pub fn blank(width: usize, height: usize) -> Result<Grid, GridError> {
        Grid::filled(width, height, BACKGROUND)
    }

    pub fn from_cells(width: usize, height: usize, cells: Vec<Symbol>) -> Result<Grid, GridError> {
        check_dims(width, height)?;
        if cells.len() != width * height {
            return Err(GridError::LengthMismatch {
                expected: width * height,
                actual: cells.len(),
            });
        }
        Ok(Grid {
            width,
            height,
            cells,
        })
    }

    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(Coord) -> Symbol,
    ) -> Result<Grid, GridError> {
        check_dims(width, height)?;
        let cells = (0..height)
            .flat_map(|row| (0..width).map(move |col| Coord { col, row }))
            .map(&mut f)
            .collect();
        Ok(Grid {
            width,
            height,
            cells,
        })
    }

    /// Builds a grid from a list of rows, rejecting ragged input and
    /// out-of-range symbols.
    pub fn from_rows<R, T>(rows: &[R]) -> Result<Grid, GridError>
    where
        R: AsRef<[T]>,
        T: Copy + Into<i64>,
    {
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.as_ref().len());
        check_dims(width, height)?;
        let mut cells = Vec::with_capacity(width * height);
        for (row, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != width {
                return Err(GridError::RaggedRow {
                    row,
                    expected: width,
                    found: r.len(),
                });
            }
            for &v in r {
                cells.push(Symbol::try_from(v.into())?);
            }
        }
        Ok(Grid {
            width,
            height,
            cells,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn area(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &[Symbol] {
        &self.cells
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Symbol]> {
        self.cells.chunks(self.width)
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        self.rows()
            .map(|r| r.iter().map(|s| s.value()).collect())
            .collect()
    }

    pub fn in_bounds(&self, c: Coord) -> bool {
        c.col < self.width && c.row < self.height
    }

    fn check(&self, c: Coord) -> Result<usize, GridError> {
        if self.in_bounds(c) {
            Ok(c.row * self.width + c.col)
        } else {
            Err(GridError::OutOfBounds {
                col: c.col,
                row: c.row,
                width: self.width,
                height: self.height,
            })
        }
    }

    pub fn get(&self, c: Coord) -> Result<Symbol, GridError> {
        self.check(c).map(|i| self.cells[i])
    }

    /// Returns a copy of the grid with `c` set to `s`.
    pub fn set(&self, c: Coord, s: Symbol) -> Result<Grid, GridError> {
        let i = self.check(c)?;
        let mut out = self.clone();
        out.cells[i] = s;
        Ok(out)
    }

    /// Unchecked read for coordinates already known to be in bounds.
    #[inline]
    pub(crate) fn at(&self, col: usize, row: usize) -> Symbol {
        self.cells[row * self.width + col]
    }

    #[inline]
    pub(crate) fn put(&mut self, col: usize, row: usize, s: Symbol) {
        self.cells[row * self.width + col] = s;
    }

    pub(crate) fn coord_of(&self, index: usize) -> Coord {
        Coord {
            col: index % self.width,
            row: index / self.width,
        }
    }

    /// In-bounds neighbors of `c` under `conn`.
    pub fn neighbors(&self, c: Coord, conn: Connectivity) -> impl Iterator<Item = Coord> + '_ {
        let (w, h) = (self.width as isize, self.height as isize);
        conn.offsets().iter().filter_map(move |&(dc, dr)| {
            let (col, row) = (c.col as isize + dc, c.row as isize + dr);
            (col >= 0 && row >= 0 && col < w && row < h).then(|| Coord {
                col: col as usize,
                row: row as usize,
            })
        })
    }

    pub fn is_border(&self, c: Coord) -> bool {
        c.col == 0 || c.row == 0 || c.col + 1 == self.width || c.row + 1 == self.height
    }

    /// Number of distinct symbols present, background included.
    pub fn distinct_symbols(&self) -> usize {
        let mut seen = [false; NUM_SYMBOLS as usize];
        for s in &self.cells {
            seen[s.0 as usize] = true;
        }
        seen.iter().filter(|&&b| b).count()
    }

    pub fn map(&self, mut f: impl FnMut(Coord, Symbol) -> Symbol) -> Grid {
        let mut out = self.clone();
        for (i, s) in out.cells.iter_mut().enumerate() {
            let c = Coord {
                col: i % self.width,
                row: i / self.width,
            };
            *s = f(c, *s);
        }
        out
    }

    /// Returns a copy with every listed cell painted `s`.
    pub fn paint(&self, cells: impl IntoIterator<Item = Coord>, s: Symbol) -> Result<Grid, GridError> {
        let mut out = self.clone();
        for c in cells {
            let i = out.check(c)?;
            out.cells[i] = s;
        }
        Ok(out)
    }

    /// Maximal same-colored connected components among cells whose symbol
    /// satisfies `foreground`, ordered by their first cell in row-major order.
    pub fn components(
        &self,
        conn: Connectivity,
        foreground: impl Fn(Symbol) -> bool,
    ) -> Vec<Component> {
        self.label(conn, foreground, |a, b| a == b)
            .into_iter()
            .map(|(cells, bbox)| Component {
                color: self.at(cells[0].col, cells[0].row),
                cells,
                bbox,
            })
            .collect()
    }

    /// Maximal connected sets of foreground cells regardless of color.
    pub fn regions(&self, conn: Connectivity, foreground: impl Fn(Symbol) -> bool) -> Vec<Region> {
        self.label(conn, foreground, |_, _| true)
            .into_iter()
            .map(|(cells, bbox)| Region { cells, bbox })
            .collect()
    }

    fn label(
        &self,
        conn: Connectivity,
        foreground: impl Fn(Symbol) -> bool,
        joins: impl Fn(Symbol, Symbol) -> bool,
    ) -> Vec<(Vec<Coord>, BBox)> {
        let mut seen = vec![false; self.cells.len()];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for start in 0..self.cells.len() {
            let color = self.cells[start];
            if seen[start] || !foreground(color) {
                continue;
            }
            seen[start] = true;
            stack.push(start);
            let mut cells = Vec::new();
            while let Some(i) = stack.pop() {
                let c = self.coord_of(i);
                cells.push(c);
                for n in self.neighbors(c, conn) {
                    let j = n.row * self.width + n.col;
                    let s = self.cells[j];
                    if !seen[j] && foreground(s) && joins(color, s) {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            cells.sort_unstable_by_key(|c| (c.row, c.col));
            let bbox = BBox::enclosing(cells.iter().copied()).expect("nonempty component");
            out.push((cells, bbox));
        }
        out
    }

    /// Repaints every cell reachable from `seed` through cells satisfying
    /// `target`. A seed that fails `target` leaves the grid unchanged.
    pub fn flood_fill(
        &self,
        seed: Coord,
        conn: Connectivity,
        target: impl Fn(Symbol) -> bool,
        paint: Symbol,
    ) -> Result<Grid, GridError> {
        self.check(seed)?;
        let mut out = self.clone();
        for c in self.reachable(std::iter::once(seed), conn, &target) {
            out.put(c.col, c.row, paint);
        }
        Ok(out)
    }

    /// All cells reachable from any of `seeds` through `target` cells,
    /// as a row-major membership mask.
    pub(crate) fn reachable_mask(
        &self,
        seeds: impl IntoIterator<Item = Coord>,
        conn: Connectivity,
        target: impl Fn(Symbol) -> bool,
    ) -> Vec<bool> {
        let mut mask = vec![false; self.cells.len()];
        let mut stack = Vec::new();
        for s in seeds {
            let i = s.row * self.width + s.col;
            if !mask[i] && target(self.cells[i]) {
                mask[i] = true;
                stack.push(s);
            }
        }
        while let Some(c) = stack.pop() {
            for n in self.neighbors(c, conn) {
                let j = n.row * self.width + n.col;
                if !mask[j] && target(self.cells[j]) {
                    mask[j] = true;
                    stack.push(n);
                }
            }
        }
        mask
    }

    fn reachable(
        &self,
        seeds: impl IntoIterator<Item = Coord>,
        conn: Connectivity,
        target: impl Fn(Symbol) -> bool,
    ) -> Vec<Coord> {
        self.reachable_mask(seeds, conn, target)
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| self.coord_of(i))
            .collect()
    }

    /// Border cells in row-major order.
    pub fn border_cells(&self) -> impl Iterator<Item = Coord> + '_ {
        (0..self.height).flat_map(move |row| {
            (0..self.width)
                .map(move |col| Coord { col, row })
                .filter(move |c| self.is_border(*c))
        })
    }

    /// Swaps every cell with its mirror image across `axis`. Cells whose
    /// mirror falls outside the grid stay put.
    pub fn reflect(&self, axis: Axis) -> Result<Grid, GridError> {
        match axis {
            Axis::Column(k) if k >= self.width => Err(GridError::OutOfBounds {
                col: k,
                row: 0,
                width: self.width,
                height: self.height,
            }),
            Axis::Row(k) if k >= self.height => Err(GridError::OutOfBounds {
                col: 0,
                row: k,
                width: self.width,
                height: self.height,
            }),
            _ => Ok(self.map(|c, s| match mirror(c, axis, self.width, self.height) {
                Some(m) => self.at(m.col, m.row),
                None => s,
            })),
        }
    }

    /// Clockwise quarter turn; the output is `height × width`.
    pub fn rotate90(&self) -> Grid {
        let (w, h) = (self.height, self.width);
        let mut cells = Vec::with_capacity(self.cells.len());
        for row in 0..h {
            for col in 0..w {
                cells.push(self.at(row, self.height - 1 - col));
            }
        }
        Grid {
            width: w,
            height: h,
            cells,
        }
    }

    /// Replicates every cell into a `scale × scale` block.
    pub fn scale_up(&self, scale: usize) -> Result<Grid, GridError> {
        if scale == 0 {
            return Err(GridError::ZeroScale);
        }
        let (w, h) = (self.width * scale, self.height * scale);
        check_dims(w, h)?;
        Grid::from_fn(w, h, |c| self.at(c.col / scale, c.row / scale))
    }

    /// Inverse of [`Grid::scale_up`]: one cell per uniform `scale × scale` block.
    pub fn block_sample(&self, scale: usize) -> Result<Grid, GridError> {
        if scale == 0 {
            return Err(GridError::ZeroScale);
        }
        if self.width % scale != 0 || self.height % scale != 0 {
            return Err(GridError::NotDivisible {
                width: self.width,
                height: self.height,
                scale,
            });
        }
        let (w, h) = (self.width / scale, self.height / scale);
        let mut cells = Vec::with_capacity(w * h);
        for br in 0..h {
            for bc in 0..w {
                let s = self.at(bc * scale, br * scale);
                for dr in 0..scale {
                    for dc in 0..scale {
                        if self.at(bc * scale + dc, br * scale + dr) != s {
                            return Err(GridError::NonUniformBlock {
                                col: bc * scale,
                                row: br * scale,
                            });
                        }
                    }
                }
                cells.push(s);
            }
        }
        Ok(Grid {
            width: w,
            height: h,
            cells,
        })
    }

    /// Number of cells at which `self` and `other` differ.
    pub fn diff_count(&self, other: &Grid) -> Result<usize, GridError> {
        self.same_dims(other)?;
        Ok(self
            .cells
            .iter()
            .zip(&other.cells)
            .filter(|(a, b)| a != b)
            .count())
    }

    /// Cells at which `self` and `other` differ, row-major.
    pub fn diff_cells(&self, other: &Grid) -> Result<Vec<Coord>, GridError> {
        self.same_dims(other)?;
        Ok(self
            .cells
            .iter()
            .zip(&other.cells)
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .map(|(i, _)| self.coord_of(i))
            .collect())
    }

    pub fn same_dims(&self, other: &Grid) -> Result<(), GridError> {
        if self.width == other.width && self.height == other.height {
            Ok(())
        } else {
            Err(GridError::DimensionMismatch(
                self.width,
                self.height,
                other.width,
                other.height,
            ))
        }
    }

    /// Copies the `bbox` region into a new grid.
    pub fn crop(&self, bbox: BBox) -> Result<Grid, GridError> {
        self.check(Coord::new(bbox.max_col, bbox.max_row))?;
        Grid::from_fn(bbox.width(), bbox.height(), |c| {
            self.at(bbox.min_col + c.col, bbox.min_row + c.row)
        })
    }
}

/// Mirror image of `c` across `axis`, if it lies within a `width × height` grid.
pub fn mirror(c: Coord, axis: Axis, width: usize, height: usize) -> Option<Coord> {
    match axis {
        Axis::Column(k) => {
            let m = (2 * k).checked_sub(c.col)?;
            (m < width).then_some(Coord { col: m, row: c.row })
        }
        Axis::Row(k) => {
            let m = (2 * k).checked_sub(c.row)?;
            (m < height).then_some(Coord { col: c.col, row: m })
        }
    }
}

impl fmt::Debug for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Grid {}x{}", self.width, self.height)?;
        for row in self.rows() {
            for s in row {
                write!(f, "{}", s.0)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl Serialize for Grid {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Grid {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<i64>>::deserialize(deserializer)?;
        Grid::from_rows(&rows).map_err(serde::de::Error::custom)
    }
}
