//! Diagrams with exactly two nonempty rows `r1 < r2`.
//!
//! Columns split by which rows they occupy: both rows (a block), only `r1`,
//! or only `r2`. Single-row columns split again into those left and right of
//! the rightmost block column. With no block at all, every single-row column
//! counts as right.

use serde::{Deserialize, Serialize};

use crate::diagram::{Cell, Diagram};
use crate::error::{Error, Result};
use crate::families::Family;
use crate::report::AnalysisReport;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoRowProfile {
    pub r1: u32,
    pub r2: u32,
    pub cols_r1: Vec<u32>,
    pub cols_r2: Vec<u32>,
    pub col_both: Vec<u32>,
    pub col_only_r1: Vec<u32>,
    pub col_only_r2: Vec<u32>,
    pub col_left_r1: Vec<u32>,
    pub col_left_r2: Vec<u32>,
    pub col_right_r1: Vec<u32>,
    pub col_right_r2: Vec<u32>,
}

pub fn is_two_row(d: &Diagram) -> bool {
    d.nonempty_rows().len() == 2
}

pub fn two_row_profile(d: &Diagram) -> Result<TwoRowProfile> {
    let rows = d.nonempty_rows();
    let [r1, r2] = rows[..] else {
        return Err(Error::FamilyMismatch {
            family: "two-row",
            reason: format!("diagram has {} nonempty rows", rows.len()),
        });
    };
    let cols_r1 = d.row_columns(r1);
    let cols_r2 = d.row_columns(r2);
    let col_both: Vec<u32> = cols_r1.iter().copied().filter(|c| cols_r2.contains(c)).collect();
    let only = |cols: &[u32]| -> Vec<u32> {
        cols.iter().copied().filter(|c| !col_both.contains(c)).collect()
    };
    let col_only_r1 = only(&cols_r1);
    let col_only_r2 = only(&cols_r2);
    let pivot = col_both.last().copied().unwrap_or(0);
    let split = |cols: &[u32]| -> (Vec<u32>, Vec<u32>) { cols.iter().partition(|&&c| c < pivot) };
    let (col_left_r1, col_right_r1) = split(&col_only_r1);
    let (col_left_r2, col_right_r2) = split(&col_only_r2);
    Ok(TwoRowProfile {
        r1,
        r2,
        cols_r1,
        cols_r2,
        col_both,
        col_only_r1,
        col_only_r2,
        col_left_r1,
        col_left_r2,
        col_right_r1,
        col_right_r2,
    })
}

impl TwoRowProfile {
    pub fn min_count(&self) -> u64 {
        if self.r1 == 1 {
            1
        } else {
            self.col_left_r1.len() as u64 + 1
        }
    }

    pub fn bounded(&self) -> bool {
        self.r1 == 1 || self.col_left_r1.is_empty()
    }

    pub fn ranked(&self) -> bool {
        // Without a block the diagram has one cell per column.
        self.r1 == 1
            || self.col_both.is_empty()
            || (self.col_right_r1.is_empty() && self.col_right_r2.is_empty() && self.col_both.len() <= 1)
    }

    pub fn b(&self) -> u64 {
        let delta = u64::from(!self.col_both.is_empty());
        self.col_only_r1.len() as u64
            + (1 + delta) * self.col_left_r2.len() as u64
            + self.col_right_r2.len() as u64
            + 3 * self.col_both.len() as u64
    }

    /// The minimal elements, ordered by how many left `r1` columns sit in
    /// row 1 (none first). When `r1 = 1` there is exactly one.
    pub fn minimal_elements(&self) -> Vec<Diagram> {
        let mut base = Vec::new();
        for &c in &self.col_both {
            base.push(Cell { row: 1, col: c });
            base.push(Cell { row: 2, col: c });
        }
        for &c in self.col_right_r1.iter().chain(&self.col_right_r2) {
            base.push(Cell { row: 1, col: c });
        }
        for &c in &self.col_left_r2 {
            base.push(Cell { row: 2, col: c });
        }
        let k = self.col_left_r1.len();
        let range = if self.r1 == 1 { k..=k } else { 0..=k };
        range
            .map(|t| {
                let mut cells = base.clone();
                for (i, &c) in self.col_left_r1.iter().enumerate() {
                    let row = if i >= k - t { 1 } else { 2 };
                    cells.push(Cell { row, col: c });
                }
                Diagram::from_cells(cells)
            })
            .collect()
    }

    /// `(2|cols_r1) ∪ (3|cols_r2)`, reachable from the diagram when `1 < r1`.
    pub fn lifted_base(&self) -> Diagram {
        let cells = self
            .cols_r1
            .iter()
            .map(|&c| Cell { row: 2, col: c })
            .chain(self.cols_r2.iter().map(|&c| Cell { row: 3, col: c }));
        Diagram::from_cells(cells)
    }
}

pub fn two_row_min_count(d: &Diagram) -> Result<u64> {
    Ok(two_row_profile(d)?.min_count())
}

pub fn two_row_b(d: &Diagram) -> Result<u64> {
    Ok(two_row_profile(d)?.b())
}

/// Structural test for minimality of `d ∈ KD(d0)`: all cells in rows 1-2,
/// right columns in row 1, left `r2` columns in row 2, and the left `r1`
/// columns in weakly decreasing rows from left to right.
pub fn two_row_is_minimal(d0: &Diagram, d: &Diagram) -> Result<bool> {
    let p = two_row_profile(d0)?;
    if d.max_row() > 2 {
        return Ok(false);
    }
    let rows_in = |c: u32| (1..=2).filter(move |&r| d.contains(r, c));
    let right_ok = p
        .col_right_r1
        .iter()
        .chain(&p.col_right_r2)
        .all(|&c| rows_in(c).all(|r| r == 1));
    let left_r2_ok = p.col_left_r2.iter().all(|&c| rows_in(c).all(|r| r == 2));
    let mut left_rows = Vec::with_capacity(p.col_left_r1.len());
    for &c in &p.col_left_r1 {
        let rows: Vec<u32> = rows_in(c).collect();
        let [r] = rows[..] else { return Ok(false) };
        left_rows.push(r);
    }
    let decreasing = left_rows.windows(2).all(|w| w[0] >= w[1]);
    Ok(right_ok && left_r2_ok && decreasing)
}

pub fn two_row_report(d: &Diagram) -> Result<AnalysisReport> {
    let mut report = AnalysisReport::closed_form(Family::TwoRow, d);
    let p = two_row_profile(&report.diagram)?;
    report.min_count = p.min_count();
    report.bounded = p.bounded();
    report.ranked = p.ranked();
    report.b_value = p.b();
    report.minimal_elements = Some(p.minimal_elements());
    report.rowsum_rank = Some(report.ranked);
    if report.ranked {
        report.root_rank = Some(report.diagram.rowsum() - report.b_value);
    }
    report.two_row_profile = Some(p);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `(r1|cols1) ∪ (r2|cols2)`.
    pub(crate) fn two_row(r1: u32, cols1: &[u32], r2: u32, cols2: &[u32]) -> Diagram {
        let pairs: Vec<(u32, u32)> = cols1
            .iter()
            .map(|&c| (r1, c))
            .chain(cols2.iter().map(|&c| (r2, c)))
            .collect();
        Diagram::from_pairs(&pairs).unwrap()
    }

    fn example() -> Diagram {
        two_row(2, &[2, 3, 4, 6, 8, 11, 13], 4, &[1, 4, 5, 7, 8, 9, 10, 12])
    }

    #[test]
    fn example_profile() {
        let p = two_row_profile(&example()).unwrap();
        assert_eq!(p.col_both, vec![4, 8]);
        assert_eq!(p.col_only_r1, vec![2, 3, 6, 11, 13]);
        assert_eq!(p.col_only_r2, vec![1, 5, 7, 9, 10, 12]);
        assert_eq!(p.col_left_r1, vec![2, 3, 6]);
        assert_eq!(p.col_right_r1, vec![11, 13]);
        assert_eq!(p.col_left_r2, vec![1, 5, 7]);
        assert_eq!(p.col_right_r2, vec![9, 10, 12]);
        assert_eq!(p.min_count(), 4);
        assert_eq!(p.b(), 20);
        assert!(!p.bounded());
        assert!(!p.ranked());
    }

    #[test]
    fn no_block_profile() {
        let p = two_row_profile(&two_row(1, &[1], 2, &[2])).unwrap();
        assert!(p.col_both.is_empty());
        assert!(p.col_left_r1.is_empty() && p.col_left_r2.is_empty());
        assert_eq!(p.col_right_r1, vec![1]);
        assert_eq!(p.col_right_r2, vec![2]);

        let p = two_row_profile(&two_row(2, &[1], 3, &[1])).unwrap();
        assert_eq!(p.col_both, vec![1]);
        assert!(p.col_only_r1.is_empty() && p.col_only_r2.is_empty());
    }

    #[test]
    fn counts_and_b() {
        assert_eq!(two_row_min_count(&two_row(1, &[1, 2], 3, &[1, 3])).unwrap(), 1);
        assert_eq!(two_row_min_count(&two_row(2, &[1], 3, &[2])).unwrap(), 1);
        assert_eq!(two_row_b(&two_row(1, &[1, 2], 3, &[3])).unwrap(), 3);
        assert_eq!(two_row_b(&two_row(2, &[1], 3, &[1])).unwrap(), 3);
        assert!(two_row_profile(&Diagram::from_pairs(&[(1, 1)]).unwrap()).is_err());
    }

    #[test]
    fn reports() {
        let r = two_row_report(&two_row(1, &[1, 2, 3], 4, &[2])).unwrap();
        assert!(r.bounded && r.ranked);
        let r = two_row_report(&two_row(2, &[1, 2], 3, &[1, 2])).unwrap();
        assert!(r.bounded && !r.ranked);
    }

    #[test]
    fn minimality_conditions() {
        let d0 = example();
        let mins = two_row_profile(&d0).unwrap().minimal_elements();
        assert_eq!(mins.len(), 4);
        for m in &mins {
            assert!(two_row_is_minimal(&d0, m).unwrap());
        }
        assert!(!two_row_is_minimal(&d0, &d0).unwrap());
        // Left r1 columns at rows (1, 2): increasing, so not minimal.
        let d0 = two_row(2, &[1, 2, 3], 3, &[3]);
        let bad = Diagram::from_pairs(&[(1, 1), (2, 2), (1, 3), (2, 3)]).unwrap();
        assert!(!two_row_is_minimal(&d0, &bad).unwrap());
        let good = Diagram::from_pairs(&[(2, 1), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(two_row_is_minimal(&d0, &good).unwrap());
    }
}
