//! Local configurations whose presence anywhere in `KD(D0)` forces the
//! Kohnert poset to be unranked.
//!
//! * [`ObstructionKind::Ladder`]: column `c` is filled from row `r` up to row
//!   `r'`, the top cell is rightmost in its row, row `r` holds exactly one more
//!   cell at column `c'` to its right, both `(r,c)` and `(r,c')` have an empty
//!   position below them (rows `r1`, `r2`), and each row strictly between `r`
//!   and `r'` has a cell right of `c`.
//! * [`ObstructionKind::Gap`]: column `c` is filled on rows `r+1..=r'` with a
//!   hole at `r`, `(r',c')` is rightmost in row `r'`, each row strictly
//!   between `r` and `r'-1` has a cell right of `c`, and every column right of
//!   `c` has an empty position below row `r'`.
//! * [`ObstructionKind::SmallLadder`] and [`ObstructionKind::SmallGap`]: the
//!   three-row special cases with base row `r*`, which are cheaper to detect.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::Diagram;
use crate::error::Result;
use crate::poset::kd_closure;
use crate::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObstructionKind {
    Ladder,
    Gap,
    SmallLadder,
    SmallGap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionWitness {
    pub kind: ObstructionKind,
    pub diagram: Diagram,
    pub params: BTreeMap<String, u32>,
}

impl ObstructionWitness {
    fn new(kind: ObstructionKind, diagram: &Diagram, params: &[(&str, u32)]) -> Self {
        ObstructionWitness {
            kind,
            diagram: diagram.clone(),
            params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
        }
    }

    fn param(&self, key: &str) -> Option<u32> {
        self.params.get(key).copied()
    }

    /// Re-evaluates the defining conditions against the stored diagram.
    pub fn validate(&self) -> bool {
        let d = &self.diagram;
        let p = |k| self.param(k);
        match self.kind {
            ObstructionKind::Ladder => match (p("r"), p("r_prime"), p("r1"), p("r2"), p("c"), p("c_prime")) {
                (Some(r), Some(rp), Some(r1), Some(r2), Some(c), Some(cp)) => {
                    ladder_holds(d, r, rp, r1, r2, c, cp)
                }
                _ => false,
            },
            ObstructionKind::Gap => match (p("r"), p("r_prime"), p("c"), p("c_prime")) {
                (Some(r), Some(rp), Some(c), Some(cp)) => gap_holds(d, r, rp, c, cp),
                _ => false,
            },
            ObstructionKind::SmallLadder => match (p("r_star"), p("c1"), p("c2")) {
                (Some(rs), Some(c1), Some(c2)) => small_ladder_holds(d, rs, c1, c2),
                _ => false,
            },
            ObstructionKind::SmallGap => match (p("r_star"), p("c1"), p("c2")) {
                (Some(rs), Some(c1), Some(c2)) => small_gap_holds(d, rs, c1, c2),
                _ => false,
            },
        }
    }

    /// The same configuration read as one of the general forms. Small ladders
    /// map to ladders with `r1 = r2 = r*`, small gaps to gaps with `r = r*`.
    pub fn generalize(&self) -> ObstructionWitness {
        let d = &self.diagram;
        match (self.kind, self.param("r_star"), self.param("c1"), self.param("c2")) {
            (ObstructionKind::SmallLadder, Some(rs), Some(c1), Some(c2)) => ObstructionWitness::new(
                ObstructionKind::Ladder,
                d,
                &[("r", rs + 1), ("r_prime", rs + 2), ("r1", rs), ("r2", rs), ("c", c1), ("c_prime", c2)],
            ),
            (ObstructionKind::SmallGap, Some(rs), Some(c1), Some(c2)) => ObstructionWitness::new(
                ObstructionKind::Gap,
                d,
                &[("r", rs), ("r_prime", rs + 2), ("c", c1), ("c_prime", c2)],
            ),
            _ => self.clone(),
        }
    }
}

fn has(d: &Diagram, row: u32, col: u32) -> bool {
    row >= 1 && col >= 1 && d.contains(row, col)
}

/// True when row `row` has a cell strictly right of column `c`.
fn cell_right_of(d: &Diagram, row: u32, c: u32) -> bool {
    (c + 1..=d.max_col()).any(|x| has(d, row, x))
}

pub fn ladder_holds(d: &Diagram, r: u32, rp: u32, r1: u32, r2: u32, c: u32, cp: u32) -> bool {
    if !(1 <= r1 && 1 <= r2 && r1 < r && r2 < r && r < rp && 1 <= c && c < cp) {
        return false;
    }
    let max_col = d.max_col();
    (r..=rp).all(|x| has(d, x, c))
        && has(d, r, cp)
        && !cell_right_of(d, rp, c)
        && (r + 1..rp).all(|x| cell_right_of(d, x, c))
        && (c + 1..=max_col).all(|x| x == cp || !has(d, r, x))
        && !has(d, r1, c)
        && !has(d, r2, cp)
}

pub fn gap_holds(d: &Diagram, r: u32, rp: u32, c: u32, cp: u32) -> bool {
    if !(1 <= c && c < cp && 1 <= r && r + 1 < rp) {
        return false;
    }
    has(d, rp, cp)
        && !cell_right_of(d, rp, cp)
        && (r + 1..=rp).all(|x| has(d, x, c))
        && !has(d, r, c)
        && (r + 1..rp - 1).all(|x| cell_right_of(d, x, c))
        && (c + 1..=d.max_col()).all(|x| (1..rp).any(|y| !has(d, y, x)))
}

pub fn small_ladder_holds(d: &Diagram, rs: u32, c1: u32, c2: u32) -> bool {
    if !(rs >= 1 && 1 <= c1 && c1 < c2) {
        return false;
    }
    has(d, rs + 1, c1)
        && has(d, rs + 2, c1)
        && has(d, rs + 1, c2)
        && !cell_right_of(d, rs + 2, c1)
        && (c1 + 1..=d.max_col()).all(|x| x == c2 || !has(d, rs + 1, x))
        && !has(d, rs, c1)
        && !has(d, rs, c2)
}

pub fn small_gap_holds(d: &Diagram, rs: u32, c1: u32, c2: u32) -> bool {
    if !(rs >= 1 && 1 <= c1 && c1 < c2) {
        return false;
    }
    has(d, rs + 1, c1)
        && has(d, rs + 2, c1)
        && has(d, rs, c2)
        && has(d, rs + 2, c2)
        && !cell_right_of(d, rs + 2, c2)
        && !cell_right_of(d, rs + 1, c1)
        && !has(d, rs, c1)
}

/// First ladder in scan order `c, c', r, r', r1, r2`.
pub fn detect_ladder(d: &Diagram) -> Option<ObstructionWitness> {
    let (rows, cols) = (d.max_row(), d.max_col());
    for c in 1..=cols {
        for cp in c + 1..=cols {
            for r in 2..=rows {
                if !has(d, r, c) || !has(d, r, cp) {
                    continue;
                }
                for rp in r + 1..=rows {
                    for r1 in 1..r {
                        if has(d, r1, c) {
                            continue;
                        }
                        for r2 in 1..r {
                            if ladder_holds(d, r, rp, r1, r2, c, cp) {
                                return Some(ObstructionWitness::new(
                                    ObstructionKind::Ladder,
                                    d,
                                    &[("r", r), ("r_prime", rp), ("r1", r1), ("r2", r2), ("c", c), ("c_prime", cp)],
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

/// First gap in scan order `c, c', r, r'`.
pub fn detect_gap(d: &Diagram) -> Option<ObstructionWitness> {
    let (rows, cols) = (d.max_row(), d.max_col());
    for c in 1..=cols {
        for cp in c + 1..=cols {
            for r in 1..=rows {
                if has(d, r, c) {
                    continue;
                }
                for rp in r + 2..=rows {
                    if gap_holds(d, r, rp, c, cp) {
                        return Some(ObstructionWitness::new(
                            ObstructionKind::Gap,
                            d,
                            &[("r", r), ("r_prime", rp), ("c", c), ("c_prime", cp)],
                        ));
                    }
                }
            }
        }
    }
    None
}

/// First small ladder or small gap in scan order `r*, c1, c2`, trying the
/// ladder form before the gap form at each position.
pub fn detect_small(d: &Diagram) -> Option<ObstructionWitness> {
    let (rows, cols) = (d.max_row(), d.max_col());
    for rs in 1..=rows.saturating_sub(2) {
        for c1 in 1..=cols {
            for c2 in c1 + 1..=cols {
                let params = [("r_star", rs), ("c1", c1), ("c2", c2)];
                if small_ladder_holds(d, rs, c1, c2) {
                    return Some(ObstructionWitness::new(ObstructionKind::SmallLadder, d, &params));
                }
                if small_gap_holds(d, rs, c1, c2) {
                    return Some(ObstructionWitness::new(ObstructionKind::SmallGap, d, &params));
                }
            }
        }
    }
    None
}

/// Any obstruction in a single diagram, cheapest detector first.
pub fn detect_any(d: &Diagram) -> Option<ObstructionWitness> {
    detect_small(d)
        .or_else(|| detect_ladder(d))
        .or_else(|| detect_gap(d))
}

/// Searches every diagram of `KD(d0)`; the hit at the earliest node in
/// closure order wins.
pub fn scan_closure_for_obstruction(
    d0: &Diagram,
    limits: &Limits,
) -> Result<Option<ObstructionWitness>> {
    let p = kd_closure(d0, limits)?;
    Ok(scan_nodes(p.nodes()))
}

pub fn scan_nodes(nodes: &[Diagram]) -> Option<ObstructionWitness> {
    nodes.par_iter().find_map_first(detect_any)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(pairs: &[(u32, u32)]) -> Diagram {
        Diagram::from_pairs(pairs).unwrap()
    }

    #[test]
    fn ladder_fixture() {
        // Column 1 filled on rows 2..=4, (2,3) beside it, row 3 has a cell
        // right of column 1, empty positions below at row 1.
        let x = d(&[(2, 1), (3, 1), (4, 1), (2, 3), (3, 2), (1, 4)]);
        assert!(ladder_holds(&x, 2, 4, 1, 1, 1, 3));
        let w = detect_ladder(&x).unwrap();
        assert!(w.validate());
        assert_eq!(w.kind, ObstructionKind::Ladder);
    }

    #[test]
    fn single_cell_has_nothing() {
        let x = d(&[(1, 1)]);
        assert_eq!(detect_ladder(&x), None);
        assert_eq!(detect_gap(&x), None);
        assert_eq!(detect_small(&x), None);
        assert_eq!(detect_gap(&d(&[(1, 1), (2, 1)])), None);
    }

    #[test]
    fn small_ladder_generalizes() {
        let x = d(&[(2, 1), (3, 1), (2, 2)]);
        let w = detect_small(&x).unwrap();
        assert_eq!(w.kind, ObstructionKind::SmallLadder);
        assert!(w.validate());
        let g = w.generalize();
        assert_eq!(g.kind, ObstructionKind::Ladder);
        assert!(g.validate());
        assert!(detect_ladder(&x).is_some());
    }

    #[test]
    fn checkered_five_after_one_move_at_row_four() {
        let ch = crate::families::checkered::checkered(5, crate::Variant::One);
        let x = ch.moved(4).unwrap();
        let params = BTreeMap::from([
            ("r_star".to_string(), 1),
            ("c1".to_string(), 4),
            ("c2".to_string(), 5),
        ]);
        assert!(small_gap_holds(&x, 1, 4, 5));
        let w = ObstructionWitness {
            kind: ObstructionKind::SmallGap,
            diagram: x.clone(),
            params,
        };
        assert!(w.validate());
        let g = w.generalize();
        assert!(g.validate());
        assert_eq!(g.params["r"], 1);
        assert_eq!(g.params["r_prime"], 3);
        assert!(detect_small(&x).is_some());
        assert!(detect_gap(&x).is_some());
    }

    #[test]
    fn tampered_witness_fails_validation() {
        let x = d(&[(2, 1), (3, 1), (2, 2)]);
        let mut w = detect_small(&x).unwrap();
        w.diagram = d(&[(2, 1), (3, 1)]);
        assert!(!w.validate());
        w.params.clear();
        assert!(!w.validate());
    }

    #[test]
    fn closure_scans() {
        let limits = Limits::default();
        let one_col = d(&[(2, 1), (3, 2), (2, 3)]);
        assert_eq!(scan_closure_for_obstruction(&one_col, &limits).unwrap(), None);
        let key22 = d(&[(1, 1), (1, 2), (2, 1), (2, 2)]);
        assert_eq!(scan_closure_for_obstruction(&key22, &limits).unwrap(), None);
        let ch4 = crate::families::checkered::checkered(4, crate::Variant::One);
        let w = scan_closure_for_obstruction(&ch4, &limits).unwrap().unwrap();
        assert!(w.validate());
    }
}
