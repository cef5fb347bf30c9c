//! Diagrams with at most one cell per column.
//!
//! Every such poset is bounded and ranked: the unique minimal element puts
//! all cells in row 1, and the rank of `D` is `rowsum(D) - |D|`, the number
//! of empty positions below its cells.

use crate::diagram::{Cell, Diagram};
use crate::error::{Error, Result};
use crate::families::Family;
use crate::report::AnalysisReport;

pub fn is_one_per_column(d: &Diagram) -> bool {
    d.column_counts().iter().all(|&n| n <= 1)
}

/// The unique minimal element: every cell dropped to row 1.
pub fn one_per_column_min(d: &Diagram) -> Diagram {
    Diagram::from_cells(d.cells().map(|c| Cell { row: 1, col: c.col }))
}

pub fn one_per_column_report(d: &Diagram) -> Result<AnalysisReport> {
    let mut report = AnalysisReport::closed_form(Family::OnePerColumn, d);
    let d = report.diagram.clone();
    if !is_one_per_column(&d) {
        let col = d.column_counts().iter().position(|&n| n > 1).unwrap() + 1;
        return Err(Error::FamilyMismatch {
            family: "one-per-column",
            reason: format!("column {col} has more than one cell"),
        });
    }
    let b = d.size() as u64;
    report.b_value = b;
    report.minimal_elements = Some(vec![one_per_column_min(&d)]);
    report.rowsum_rank = Some(true);
    report.root_rank = Some(d.rowsum() - b);
    Ok(report)
}
