use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::families::key::Composition;
use crate::families::{checkered, key, one_column, two_row, Family};

/// Grid corpus bounds: every subset of a `max_rows × max_cols` grid with at
/// most `max_cells` cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub max_rows: u32,
    pub max_cols: u32,
    pub max_cells: u32,
    /// Keep only members of this family.
    pub family: Option<Family>,
    /// Largest `max_rows * max_cols` that will be enumerated.
    pub guard: u32,
}

impl CorpusSpec {
    pub const DEFAULT_GUARD: u32 = 20;

    pub fn grid(max_rows: u32, max_cols: u32) -> Self {
        CorpusSpec {
            max_rows,
            max_cols,
            max_cells: max_rows * max_cols,
            family: None,
            guard: Self::DEFAULT_GUARD,
        }
    }

    pub fn with_max_cells(mut self, max_cells: u32) -> Self {
        self.max_cells = max_cells;
        self
    }

    pub fn with_family(mut self, family: Family) -> Self {
        self.family = Some(family);
        self
    }
}

fn in_family(d: &Diagram, family: Family) -> bool {
    match family {
        Family::Generic => true,
        Family::OnePerColumn => one_column::is_one_per_column(d),
        Family::TwoRow => two_row::is_two_row(d),
        Family::Key => key::is_key_diagram(d),
        Family::Checkered => checkered::recognize(d).is_some(),
    }
}

/// All normalized diagrams inside the grid, deduplicated, in canonical order.
pub fn enumerate_corpus(spec: &CorpusSpec) -> Result<Vec<Diagram>> {
    let positions = spec.max_rows * spec.max_cols;
    if positions > spec.guard || spec.max_rows > 64 || spec.max_cols > 64 {
        return Err(Error::CorpusBound {
            rows: spec.max_rows,
            cols: spec.max_cols,
            guard: spec.guard,
        });
    }
    let rows = spec.max_rows;
    let col_mask = if rows == 0 { 0 } else { u64::MAX >> (64 - rows) };
    let mut seen = BTreeSet::new();
    for subset in 0u64..(1u64 << positions) {
        if subset.count_ones() > spec.max_cells {
            continue;
        }
        let masks: Vec<u64> = (0..spec.max_cols)
            .map(|c| (subset >> (c * rows)) & col_mask)
            .collect();
        let d = Diagram::from_column_masks(&masks).normalize();
        if spec.family.is_none_or(|f| in_family(&d, f)) {
            seen.insert(d);
        }
    }
    Ok(seen.into_iter().collect())
}

/// Normalized two-row diagrams with rows `r1 < r2 <= max_r2` and at most
/// `max_cols` columns.
pub fn two_row_corpus(max_r2: u32, max_cols: u32) -> Vec<Diagram> {
    let mut out = Vec::new();
    for r2 in 2..=max_r2 {
        for r1 in 1..r2 {
            let (lo, hi) = (1u64 << (r1 - 1), 1u64 << (r2 - 1));
            for k in 1..=max_cols {
                let total = 3u64.pow(k);
                for code in 0..total {
                    let mut x = code;
                    let masks: Vec<u64> = (0..k)
                        .map(|_| {
                            let digit = x % 3;
                            x /= 3;
                            [lo, hi, lo | hi][digit as usize]
                        })
                        .collect();
                    let d = Diagram::from_column_masks(&masks);
                    if two_row::is_two_row(&d) {
                        out.push(d);
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Every composition of length `len` with entries in `0..=max_entry`.
pub fn compositions(max_entry: u32, len: usize) -> Vec<Composition> {
    let base = max_entry as u64 + 1;
    let total = base.pow(len as u32);
    (0..total)
        .map(|code| {
            let mut x = code;
            let mut v = vec![0; len];
            for slot in v.iter_mut().rev() {
                *slot = (x % base) as u32;
                x /= base;
            }
            Composition::new(v)
        })
        .collect()
}
