//! Cell diagrams and the Kohnert move.
//!
//! A [`Diagram`] is stored column by column: column `c` is a bitmask whose bit
//! `r - 1` is set when the cell `(r, c)` is present. Trailing empty columns are
//! never stored, so two diagrams are equal exactly when their cell sets are.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest row or column index a [`Diagram`] can hold.
pub const MAX_COORD: u32 = 64;

/// A unit cell at 1-based `(row, col)`, rows counted bottom to top.
///
/// Cells order by column first, then row, which is the canonical cell order
/// of a diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cell {
    pub row: u32,
    pub col: u32,
}

impl Cell {
    pub fn new(row: u32, col: u32) -> Result<Self> {
        if row == 0 || col == 0 {
            return Err(Error::ZeroCoordinate { row, col });
        }
        if row > MAX_COORD || col > MAX_COORD {
            return Err(Error::CoordinateLimit {
                row,
                col,
                limit: MAX_COORD,
            });
        }
        Ok(Cell { row, col })
    }
}

impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.col, self.row).cmp(&(other.col, other.row))
    }
}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// Outcome of a single Kohnert move.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveResult {
    pub moved: bool,
    pub from: Option<Cell>,
    pub to: Option<Cell>,
    pub diagram: Diagram,
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Diagram {
    cols: Vec<u64>,
}

#[inline]
fn bit(row: u32) -> u64 {
    1u64 << (row - 1)
}

/// Mask of the rows strictly below `row`.
#[inline]
fn below(row: u32) -> u64 {
    if row <= 1 {
        0
    } else {
        u64::MAX >> (64 - (row - 1))
    }
}

impl Diagram {
    pub fn new() -> Self {
        Diagram { cols: Vec::new() }
    }

    pub fn from_cells<I: IntoIterator<Item = Cell>>(cells: I) -> Self {
        let mut d = Diagram::new();
        for cell in cells {
            d.insert(cell);
        }
        d
    }

    /// Builds a diagram from `(row, col)` pairs, rejecting invalid coordinates.
    /// Repeated pairs collapse into one cell.
    pub fn from_pairs(pairs: &[(u32, u32)]) -> Result<Self> {
        let mut d = Diagram::new();
        for &(row, col) in pairs {
            d.insert(Cell::new(row, col)?);
        }
        Ok(d)
    }

    /// Builds a diagram from per-column row masks (bit `r-1` is row `r`).
    pub fn from_column_masks(masks: &[u64]) -> Self {
        let mut d = Diagram {
            cols: masks.to_vec(),
        };
        d.trim();
        d
    }

    fn trim(&mut self) {
        while self.cols.last() == Some(&0) {
            self.cols.pop();
        }
    }

    pub(crate) fn insert(&mut self, cell: Cell) {
        let c = cell.col as usize;
        if self.cols.len() < c {
            self.cols.resize(c, 0);
        }
        self.cols[c - 1] |= bit(cell.row);
    }

    pub(crate) fn remove(&mut self, cell: Cell) {
        let c = cell.col as usize;
        if c <= self.cols.len() {
            self.cols[c - 1] &= !bit(cell.row);
            self.trim();
        }
    }

    pub fn contains(&self, row: u32, col: u32) -> bool {
        if row == 0 || col == 0 || row > MAX_COORD {
            return false;
        }
        self.column_mask(col) & bit(row) != 0
    }

    /// Row mask of column `col` (zero outside the diagram).
    pub fn column_mask(&self, col: u32) -> u64 {
        if col == 0 {
            return 0;
        }
        self.cols.get(col as usize - 1).copied().unwrap_or(0)
    }

    pub fn column_masks(&self) -> &[u64] {
        &self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.cols.is_empty()
    }

    /// Number of cells, `|D|`.
    pub fn size(&self) -> usize {
        self.cols.iter().map(|m| m.count_ones() as usize).sum()
    }

    /// Sum of the row coordinates of all cells.
    pub fn rowsum(&self) -> u64 {
        self.cells().map(|c| c.row as u64).sum()
    }

    /// Cells per column; the length is the largest nonempty column.
    pub fn column_counts(&self) -> Vec<usize> {
        self.cols.iter().map(|m| m.count_ones() as usize).collect()
    }

    /// Cells per row; the length is the highest nonempty row.
    pub fn row_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.max_row() as usize];
        for cell in self.cells() {
            counts[cell.row as usize - 1] += 1;
        }
        counts
    }

    /// Largest nonempty column index, 0 for the empty diagram.
    pub fn max_col(&self) -> u32 {
        self.cols.len() as u32
    }

    /// Highest nonempty row, 0 for the empty diagram.
    pub fn max_row(&self) -> u32 {
        let all = self.cols.iter().fold(0u64, |acc, m| acc | m);
        64 - all.leading_zeros()
    }

    /// Rows that contain at least one cell, ascending.
    pub fn nonempty_rows(&self) -> Vec<u32> {
        let all = self.cols.iter().fold(0u64, |acc, m| acc | m);
        (1..=64).filter(|&r| all & bit(r) != 0).collect()
    }

    /// Columns occupied in `row`, ascending.
    pub fn row_columns(&self, row: u32) -> Vec<u32> {
        if row == 0 || row > MAX_COORD {
            return Vec::new();
        }
        (1..=self.max_col())
            .filter(|&c| self.column_mask(c) & bit(row) != 0)
            .collect()
    }

    /// Cells in canonical order: column ascending, then row ascending.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.cols.iter().enumerate().flat_map(|(i, &mask)| {
            let col = i as u32 + 1;
            (0..64u32)
                .filter(move |b| mask & (1u64 << b) != 0)
                .map(move |b| Cell { row: b + 1, col })
        })
    }

    /// Cells sorted by row, then column; the order used for display.
    pub fn cells_row_major(&self) -> Vec<Cell> {
        let mut cells: Vec<Cell> = self.cells().collect();
        cells.sort_by_key(|c| (c.row, c.col));
        cells
    }

    /// Column of the rightmost cell in `row`.
    pub fn rightmost_in_row(&self, row: u32) -> Option<u32> {
        if row == 0 || row > MAX_COORD {
            return None;
        }
        let b = bit(row);
        self.cols
            .iter()
            .rposition(|m| m & b != 0)
            .map(|i| i as u32 + 1)
    }

    /// The cell a Kohnert move at `row` would relocate, with its destination.
    pub fn move_target(&self, row: u32) -> Option<(Cell, Cell)> {
        let col = self.rightmost_in_row(row)?;
        let empties = !self.column_mask(col) & below(row);
        if empties == 0 {
            return None;
        }
        let to_row = 64 - empties.leading_zeros();
        Some((Cell { row, col }, Cell { row: to_row, col }))
    }

    /// Applies a Kohnert move at `row`, returning `None` when it is trivial.
    pub fn moved(&self, row: u32) -> Option<Diagram> {
        let (from, to) = self.move_target(row)?;
        let mut next = self.clone();
        let c = from.col as usize - 1;
        next.cols[c] = (next.cols[c] & !bit(from.row)) | bit(to.row);
        Some(next)
    }

    /// Moves the rightmost cell of `row` to the highest empty position below it
    /// in its column. A row that is empty, or whose rightmost cell has nothing
    /// empty below, leaves the diagram unchanged.
    pub fn kohnert_move(&self, row: u32) -> MoveResult {
        match self.move_target(row) {
            Some((from, to)) => {
                let mut diagram = self.clone();
                diagram.remove(from);
                diagram.insert(to);
                MoveResult {
                    moved: true,
                    from: Some(from),
                    to: Some(to),
                    diagram,
                }
            }
            None => MoveResult {
                moved: false,
                from: None,
                to: None,
                diagram: self.clone(),
            },
        }
    }

    pub fn apply_sequence(&self, rows: &[u32]) -> Diagram {
        rows.iter()
            .fold(self.clone(), |d, &r| d.moved(r).unwrap_or(d))
    }

    /// True when no Kohnert move changes the diagram.
    pub fn is_fixed(&self) -> bool {
        self.nonempty_rows()
            .into_iter()
            .all(|r| self.move_target(r).is_none())
    }

    /// Removes empty columns lying to the left of nonempty ones.
    pub fn normalize(&self) -> Diagram {
        Diagram {
            cols: self.cols.iter().copied().filter(|&m| m != 0).collect(),
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.cols.iter().all(|&m| m != 0)
    }

    /// Copy of the diagram keeping only the given columns, renumbered from 1.
    pub fn select_columns(&self, cols: &[u32]) -> Diagram {
        Diagram::from_column_masks(
            &cols.iter().map(|&c| self.column_mask(c)).collect::<Vec<_>>(),
        )
    }

    /// Pair-list form, e.g. `(1,3),(2,1)`, cells sorted by row then column.
    /// The empty diagram renders as `{}`.
    pub fn to_pairs_string(&self) -> String {
        if self.is_empty() {
            return "{}".to_string();
        }
        self.cells_row_major()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl Ord for Diagram {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cells().cmp(other.cells())
    }
}

impl PartialOrd for Diagram {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram{{{}}}", self.to_pairs_string())
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pairs_string())
    }
}

impl Serialize for Diagram {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_pairs_string())
    }
}

impl<'de> Deserialize<'de> for Diagram {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        crate::io::parse_pairs(&s).map_err(serde::de::Error::custom)
    }
}
