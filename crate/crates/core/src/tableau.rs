//! Rectangular standard Young tableaux and the dynamics on them.
//!
//! Coordinates are 1-based: rows run `1..=n` top to bottom, columns run
//! `1..=k` left to right. Entries are stored row-major.

use std::fmt;

use num_bigint::BigUint;
use thiserror::Error;

/// Default cap on the number of tableaux materialised by [`enumerate_syt`].
pub const DEFAULT_BUDGET: u64 = 20_000;

/// A raw rectangular grid of integers, row-major, outer index = row.
pub type Grid = Vec<Vec<u32>>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableauError {
    #[error("shape must have at least one row and one column, got {rows}x{cols}")]
    EmptyShape { rows: usize, cols: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    Ragged { row: usize, found: usize, expected: usize },
    #[error("entries are not a bijection onto 1..={size}: value {value} is {problem}")]
    NotBijective {
        size: u32,
        value: u32,
        problem: &'static str,
    },
    #[error("entries do not increase at cell ({row},{col})")]
    NotIncreasing { row: usize, col: usize },
    #[error("shape {shape} has {count} standard tableaux, over the budget of {budget}")]
    BudgetExceeded {
        shape: Shape,
        count: BigUint,
        budget: u64,
    },
}

/// An `n x k` rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape {
    rows: usize,
    cols: usize,
}

impl Shape {
    pub fn new(rows: usize, cols: usize) -> Result<Self, TableauError> {
        if rows == 0 || cols == 0 {
            return Err(TableauError::EmptyShape { rows, cols });
        }
        Ok(Self { rows, cols })
    }

    /// Number of rows, `n`.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns, `k`.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Total number of boxes, `N = n * k`.
    pub fn size(&self) -> usize {
        self.rows * self.cols
    }

    fn index(&self, cell: Cell) -> usize {
        (cell.row - 1) * self.cols + (cell.col - 1)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.rows, self.cols)
    }
}

/// A cell position, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub const fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// A validated rectangular standard Young tableau.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StandardTableau {
    shape: Shape,
    entries: Vec<u32>,
}

impl StandardTableau {
    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn get(&self, cell: Cell) -> u32 {
        self.entries[self.shape.index(cell)]
    }

    /// Entries of row `row` (1-based), left to right.
    pub fn row(&self, row: usize) -> &[u32] {
        let k = self.shape.cols;
        &self.entries[(row - 1) * k..row * k]
    }

    /// Row-major reading word.
    pub fn reading_word(&self) -> &[u32] {
        &self.entries
    }

    pub fn to_grid(&self) -> Grid {
        self.entries
            .chunks(self.shape.cols)
            .map(<[u32]>::to_vec)
            .collect()
    }

    /// Builds a tableau from a row-major word already known to be standard.
    fn from_word_unchecked(shape: Shape, entries: Vec<u32>) -> Self {
        debug_assert!(check_word(shape, &entries).is_ok());
        Self { shape, entries }
    }
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, row) in self.entries.chunks(self.shape.cols).enumerate() {
            if r > 0 {
                f.write_str("/")?;
            }
            for (c, v) in row.iter().enumerate() {
                if c > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

/// One cell of a tableau in the middle of a sliding procedure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slot {
    Hole,
    Live(u32),
    /// A frozen cell; holds the magnitude of the negative entry.
    Fixed(u32),
}

/// A tableau with at most one hole and some frozen cells.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SlidingTableau {
    shape: Shape,
    cells: Vec<Slot>,
}

impl SlidingTableau {
    pub fn from_tableau(t: &StandardTableau) -> Self {
        Self {
            shape: t.shape,
            cells: t.entries.iter().map(|&v| Slot::Live(v)).collect(),
        }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn get(&self, cell: Cell) -> Slot {
        self.cells[self.shape.index(cell)]
    }

    fn set(&mut self, cell: Cell, slot: Slot) {
        let i = self.shape.index(cell);
        self.cells[i] = slot;
    }

    fn live(&self, cell: Cell) -> Option<u32> {
        if cell.row > self.shape.rows || cell.col > self.shape.cols {
            return None;
        }
        match self.get(cell) {
            Slot::Live(v) => Some(v),
            _ => None,
        }
    }

    /// Removes the entry at `cell`, leaving a hole, and returns it.
    fn take(&mut self, cell: Cell) -> u32 {
        match self.get(cell) {
            Slot::Live(v) => {
                self.set(cell, Slot::Hole);
                v
            }
            other => panic!("cannot remove {other:?} at {cell}"),
        }
    }

    /// Slides the hole at `hole` southeast until no live neighbour remains
    /// to its right or below. Returns every cell the hole visited.
    fn slide(&mut self, mut hole: Cell) -> Vec<Cell> {
        let mut path = vec![hole];
        loop {
            let right = Cell::new(hole.row, hole.col + 1);
            let below = Cell::new(hole.row + 1, hole.col);
            let next = match (self.live(right), self.live(below)) {
                (None, None) => break,
                (Some(_), None) => right,
                (None, Some(_)) => below,
                (Some(a), Some(b)) => {
                    assert_ne!(a, b, "duplicate entry {a} next to hole at {hole}");
                    if a < b {
                        right
                    } else {
                        below
                    }
                }
            };
            let v = self.take(next);
            self.set(hole, Slot::Live(v));
            hole = next;
            path.push(hole);
        }
        path
    }
}

fn check_word(shape: Shape, entries: &[u32]) -> Result<(), TableauError> {
    let size = shape.size() as u32;
    let mut seen = vec![false; shape.size() + 1];
    for &v in entries {
        if v == 0 || v > size {
            return Err(TableauError::NotBijective {
                size,
                value: v,
                problem: "out of range",
            });
        }
        if std::mem::replace(&mut seen[v as usize], true) {
            return Err(TableauError::NotBijective {
                size,
                value: v,
                problem: "repeated",
            });
        }
    }
    for row in 1..=shape.rows {
        for col in 1..=shape.cols {
            let v = entries[shape.index(Cell::new(row, col))];
            let left_ok = col == 1 || entries[shape.index(Cell::new(row, col - 1))] < v;
            let up_ok = row == 1 || entries[shape.index(Cell::new(row - 1, col))] < v;
            if !left_ok || !up_ok {
                return Err(TableauError::NotIncreasing { row, col });
            }
        }
    }
    Ok(())
}

/// Checks that `grid` is a rectangular standard Young tableau.
pub fn validate(grid: &[Vec<u32>]) -> Result<StandardTableau, TableauError> {
    let rows = grid.len();
    let cols = grid.first().map_or(0, Vec::len);
    let shape = Shape::new(rows, cols)?;
    for (r, row) in grid.iter().enumerate() {
        if row.len() != cols {
            return Err(TableauError::Ragged {
                row: r + 1,
                found: row.len(),
                expected: cols,
            });
        }
    }
    let entries: Vec<u32> = grid.iter().flatten().copied().collect();
    check_word(shape, &entries)?;
    Ok(StandardTableau { shape, entries })
}

/// Removes the entry at the northwest corner and slides the hole to rest.
///
/// Returns the resulting sliding tableau together with the path of the hole,
/// starting at `(1,1)`.
pub fn jdt_slide_path(t: &StandardTableau) -> (SlidingTableau, Vec<Cell>) {
    let mut s = SlidingTableau::from_tableau(t);
    let corner = Cell::new(1, 1);
    s.take(corner);
    let path = s.slide(corner);
    (s, path)
}

/// Schützenberger promotion.
pub fn promote(t: &StandardTableau) -> StandardTableau {
    let (s, path) = jdt_slide_path(t);
    let last = *path.last().expect("path starts at the corner");
    debug_assert_eq!(last, Cell::new(t.shape.rows, t.shape.cols));
    let size = t.shape.size() as u32;
    let entries = s
        .cells
        .iter()
        .map(|slot| match *slot {
            Slot::Live(v) => v - 1,
            Slot::Hole => size,
            Slot::Fixed(_) => unreachable!("promotion never fixes cells"),
        })
        .collect();
    StandardTableau::from_word_unchecked(t.shape, entries)
}

/// Evacuation by repeated remove / slide / freeze.
pub fn evacuate(t: &StandardTableau) -> StandardTableau {
    let shape = t.shape;
    let size = shape.size() as u32;
    let mut s = SlidingTableau::from_tableau(t);
    let corner = Cell::new(1, 1);
    for _ in 0..shape.size() {
        let removed = s.take(corner);
        let path = s.slide(corner);
        let rest = *path.last().expect("nonempty path");
        s.set(rest, Slot::Fixed(removed));
    }
    // Each cell holds -v; adding N + 1 gives N + 1 - v.
    let entries = s
        .cells
        .iter()
        .map(|slot| match *slot {
            Slot::Fixed(v) => size + 1 - v,
            other => unreachable!("unfrozen cell {other:?} after evacuation"),
        })
        .collect();
    StandardTableau::from_word_unchecked(shape, entries)
}

/// Rotates a tableau by 180 degrees. The result is decreasing, so it is
/// returned as a raw grid.
pub fn rotate180(t: &StandardTableau) -> Grid {
    let mut grid = t.to_grid();
    grid.reverse();
    for row in &mut grid {
        row.reverse();
    }
    grid
}

/// Replaces every entry `i` by `size + 1 - i`.
pub fn complement(grid: &[Vec<u32>], size: u32) -> Grid {
    grid.iter()
        .map(|row| row.iter().map(|&v| size + 1 - v).collect())
        .collect()
}

/// Evacuation of a rectangle as rotation followed by complement.
pub fn evacuate_fast(t: &StandardTableau) -> StandardTableau {
    let size = t.shape.size() as u32;
    let grid = complement(&rotate180(t), size);
    StandardTableau::from_word_unchecked(t.shape, grid.into_iter().flatten().collect())
}

/// Hook-length count of standard tableaux of the rectangle.
pub fn count_syt(shape: Shape) -> BigUint {
    let (n, k) = (shape.rows, shape.cols);
    let mut num = BigUint::from(1u32);
    for v in 2..=shape.size() {
        num *= v;
    }
    let mut den = BigUint::from(1u32);
    for r in 0..n {
        for c in 0..k {
            // arm + leg + 1
            den *= (k - c - 1) + (n - r - 1) + 1;
        }
    }
    num / den
}

/// Every standard tableau of `shape`, ordered lexicographically by
/// row-major reading word.
pub fn enumerate_syt(shape: Shape, budget: u64) -> Result<Vec<StandardTableau>, TableauError> {
    let count = count_syt(shape);
    if count > BigUint::from(budget) {
        return Err(TableauError::BudgetExceeded {
            shape,
            count,
            budget,
        });
    }
    let mut out = Vec::new();
    let mut lengths = vec![0usize; shape.rows];
    let mut entries = vec![0u32; shape.size()];
    place(shape, 1, &mut lengths, &mut entries, &mut out);
    out.sort_unstable();
    Ok(out)
}

// Places `value` in every row where it can extend the current shape.
fn place(
    shape: Shape,
    value: u32,
    lengths: &mut [usize],
    entries: &mut [u32],
    out: &mut Vec<StandardTableau>,
) {
    if value as usize > shape.size() {
        out.push(StandardTableau::from_word_unchecked(shape, entries.to_vec()));
        return;
    }
    for r in 0..shape.rows {
        let len = lengths[r];
        if len < shape.cols && (r == 0 || lengths[r - 1] > len) {
            entries[r * shape.cols + len] = value;
            lengths[r] += 1;
            place(shape, value + 1, lengths, entries, out);
            lengths[r] -= 1;
        }
    }
}
