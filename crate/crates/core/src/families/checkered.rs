//! Checkered diagrams on an `n × n` board and the staircase closures
//! `KD(𝔻_m)` that count their minimal elements.

use std::fmt;
use std::str::FromStr;

use num_integer::binomial;
use serde::{Deserialize, Serialize};

use crate::diagram::{Cell, Diagram};
use crate::error::{Error, Result};
use crate::families::key::{key_diagram, Composition};
use crate::families::Family;
use crate::report::AnalysisReport;

/// Which colour class of the board is filled: `One` contains `(1,1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variant {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
}

impl Variant {
    pub fn number(self) -> u32 {
        match self {
            Variant::One => 1,
            Variant::Two => 2,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim() {
            "1" => Ok(Variant::One),
            "2" => Ok(Variant::Two),
            _ => Err(format!("checkered variant must be 1 or 2, got `{s}`")),
        }
    }
}

/// `Ch^1_n` holds the cells with `row + col` even, `Ch^2_n` those with
/// `row + col` odd, both inside the `n × n` board.
pub fn checkered(n: u32, variant: Variant) -> Diagram {
    let parity = match variant {
        Variant::One => 0,
        Variant::Two => 1,
    };
    Diagram::from_cells(
        (1..=n)
            .flat_map(|row| (1..=n).map(move |col| Cell { row, col }))
            .filter(|c| (c.row + c.col) % 2 == parity),
    )
}

/// `(n, variant)` when `d` is exactly a checkered diagram. The empty diagram
/// is `Ch^2_1`.
pub fn recognize(d: &Diagram) -> Option<(u32, Variant)> {
    if d.is_empty() {
        return Some((1, Variant::Two));
    }
    let n = d.max_row().max(d.max_col());
    [Variant::One, Variant::Two]
        .into_iter()
        .find(|&v| &checkered(n, v) == d)
        .map(|v| (n, v))
}

/// `𝔻_m = 𝔻((0, m, ..., m))` with `m` copies of `m`.
pub fn staircase(m: u32) -> Diagram {
    let mut entries = vec![0];
    entries.extend(std::iter::repeat_n(m, m as usize));
    key_diagram(&Composition::new(entries))
}

/// Each column's unique empty row within rows `1..=m+1`.
pub fn er_sequence(t: &Diagram, m: u32) -> Result<Vec<u32>> {
    let shape = |msg: String| Error::Shape(msg);
    if t.max_row() > m + 1 || t.max_col() > m {
        return Err(shape(format!("cells must lie in rows 1..={} and columns 1..={m}", m + 1)));
    }
    (1..=m)
        .map(|col| {
            let empty: Vec<u32> = (1..=m + 1).filter(|&r| !t.contains(r, col)).collect();
            match empty[..] {
                [r] => Ok(r),
                _ => Err(shape(format!("column {col} must hold exactly {m} cells"))),
            }
        })
        .collect()
}

/// The diagram of the given empty-row sequence.
pub fn from_er_sequence(er: &[u32]) -> Diagram {
    let m = er.len() as u32;
    Diagram::from_cells(er.iter().enumerate().flat_map(|(i, &e)| {
        (1..=m + 1)
            .filter(move |&r| r != e)
            .map(move |row| Cell { row, col: i as u32 + 1 })
    }))
}

pub fn is_in_kd_dm(t: &Diagram, m: u32) -> Result<bool> {
    Ok(er_sequence(t, m)?.windows(2).all(|w| w[0] <= w[1]))
}

/// All weakly increasing sequences of length `m` over `1..=m+1`, in
/// lexicographic order.
pub fn weakly_increasing_sequences(m: u32) -> Vec<Vec<u32>> {
    fn extend(prefix: &mut Vec<u32>, m: u32, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == m as usize {
            out.push(prefix.clone());
            return;
        }
        let lo = prefix.last().copied().unwrap_or(1);
        for v in lo..=m + 1 {
            prefix.push(v);
            extend(prefix, m, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), m, &mut out);
    out
}

/// The elements of `KD(𝔻_m)`, built from their empty-row sequences.
pub fn kd_dm_elements(m: u32) -> Vec<Diagram> {
    weakly_increasing_sequences(m)
        .iter()
        .map(|er| from_er_sequence(er))
        .collect()
}

/// `|KD(𝔻_m)| = C(2m, m)`.
pub fn kd_dm_count(m: u32) -> u64 {
    binomial(2 * m as u64, m as u64)
}

fn half(n: u32) -> u32 {
    n / 2
}

fn require_odd(n: u32) -> Result<()> {
    if n.is_multiple_of(2) {
        return Err(Error::Precondition(format!("n must be odd, got {n}")));
    }
    Ok(())
}

/// Keeps the columns with `m` cells (even columns for variant 1, odd columns
/// below `n` for variant 2) and packs them to the left.
pub fn checkered_phi(t: &Diagram, n: u32, variant: Variant) -> Result<Diagram> {
    require_odd(n)?;
    let m = half(n);
    let expected = checkered(n, variant).column_counts();
    if t.column_counts() != expected || t.max_row() > m + 1 {
        return Err(Error::Precondition(
            "diagram is not a minimal element of the checkered closure".into(),
        ));
    }
    let source = |i: u32| match variant {
        Variant::One => 2 * i,
        Variant::Two => 2 * i - 1,
    };
    Ok(Diagram::from_cells((1..=m).flat_map(|i| {
        (1..=m + 1)
            .filter(move |&r| t.contains(r, source(i)))
            .map(move |row| Cell { row, col: i })
    })))
}

/// Interleaves `d` with full columns of height `m + 1` (and, for variant 2,
/// a final column of height `m`).
pub fn checkered_phi_inv(d: &Diagram, n: u32, variant: Variant) -> Result<Diagram> {
    require_odd(n)?;
    let m = half(n);
    if m > 0 && !is_in_kd_dm(d, m).map_err(|e| Error::Precondition(e.to_string()))? {
        return Err(Error::Precondition(format!("diagram is not in KD(D_{m})")));
    }
    if m == 0 && !d.is_empty() {
        return Err(Error::Precondition("only the empty diagram lies in KD(D_0)".into()));
    }
    let mut cells = Vec::new();
    let full = |col: u32, height: u32, cells: &mut Vec<Cell>| {
        cells.extend((1..=height).map(|row| Cell { row, col }));
    };
    match variant {
        Variant::One => {
            for i in 1..=m + 1 {
                full(2 * i - 1, m + 1, &mut cells);
            }
            cells.extend(d.cells().map(|c| Cell { row: c.row, col: 2 * c.col }));
        }
        Variant::Two => {
            for i in 1..=m {
                full(2 * i, m + 1, &mut cells);
            }
            full(n, m, &mut cells);
            cells.extend(d.cells().map(|c| Cell { row: c.row, col: 2 * c.col - 1 }));
        }
    }
    Ok(Diagram::from_cells(cells))
}

/// For each column `i <= n - 2` and each `j`, column `i + 2` has at least
/// `j` cells weakly below the `j`-th cell (from the bottom) of column `i`.
pub fn property_star_holds(t: &Diagram, n: u32) -> bool {
    (1..=n.saturating_sub(2)).all(|i| {
        let target = t.column_mask(i + 2);
        let mut j = 0;
        (1..=t.max_row()).filter(|&r| t.contains(r, i)).all(|r| {
            j += 1;
            let below = target & (u64::MAX >> (64 - r));
            below.count_ones() >= j
        })
    })
}

/// The minimal elements of `KD(Ch^v_n)`.
pub fn checkered_minimal_elements(n: u32, variant: Variant) -> Vec<Diagram> {
    let d0 = checkered(n, variant);
    if n.is_multiple_of(2) || d0.is_empty() {
        let bottom = d0
            .column_counts()
            .iter()
            .enumerate()
            .flat_map(|(i, &h)| (1..=h as u32).map(move |row| Cell { row, col: i as u32 + 1 }))
            .collect::<Vec<_>>();
        return vec![Diagram::from_cells(bottom)];
    }
    let m = half(n);
    let sources = if m == 0 { vec![Diagram::new()] } else { kd_dm_elements(m) };
    sources
        .iter()
        .map(|d| checkered_phi_inv(d, n, variant).expect("sequence diagrams lie in KD(D_m)"))
        .collect()
}

pub fn checkered_min_count(n: u32) -> u64 {
    if n.is_multiple_of(2) {
        1
    } else {
        kd_dm_count(half(n))
    }
}

pub fn checkered_report(n: u32, variant: Variant) -> AnalysisReport {
    let d0 = checkered(n, variant);
    let mut report = AnalysisReport::closed_form(Family::Checkered, &d0);
    report.min_count = checkered_min_count(n);
    report.bounded = n.is_multiple_of(2) || n == 1;
    report.ranked = n <= 3;
    report.b_value = checkered_minimal_elements(n, variant)
        .iter()
        .map(Diagram::rowsum)
        .min()
        .unwrap_or(0);
    if report.min_count <= 10_000 {
        report.minimal_elements = Some(checkered_minimal_elements(n, variant));
    }
    if n == 1 && variant == Variant::Two {
        report.notes.push(
            "Ch^2_1 is empty; its closure is taken to be {∅}, which is bounded and ranked".into(),
        );
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(pairs: &[(u32, u32)]) -> Diagram {
        Diagram::from_pairs(pairs).unwrap()
    }

    #[test]
    fn constructors() {
        assert_eq!(checkered(3, Variant::One), d(&[(1, 1), (1, 3), (3, 1), (3, 3), (2, 2)]));
        assert_eq!(checkered(1, Variant::Two), Diagram::new());
        assert_eq!(checkered(2, Variant::One), d(&[(1, 1), (2, 2)]));
        assert_eq!(checkered(2, Variant::Two), d(&[(1, 2), (2, 1)]));
        assert_eq!(recognize(&checkered(5, Variant::Two)), Some((5, Variant::Two)));
        assert_eq!(recognize(&d(&[(1, 1), (1, 2)])), None);
    }

    #[test]
    fn staircase_and_er() {
        assert_eq!(staircase(1), d(&[(2, 1)]));
        assert_eq!(er_sequence(&staircase(3), 3).unwrap(), vec![1, 1, 1]);
        assert_eq!(er_sequence(&d(&[(1, 1)]), 1).unwrap(), vec![2]);
        let t = d(&[(1, 1), (2, 1), (1, 2), (3, 2)]);
        assert_eq!(er_sequence(&t, 2).unwrap(), vec![3, 2]);
        assert!(!is_in_kd_dm(&t, 2).unwrap());
        assert!(is_in_kd_dm(&from_er_sequence(&[1, 2, 2]), 3).unwrap());
        assert!(is_in_kd_dm(&staircase(2), 2).unwrap());
        assert!(matches!(er_sequence(&d(&[(1, 1)]), 2), Err(Error::Shape(_))));
        assert!(matches!(er_sequence(&d(&[(4, 1)]), 2), Err(Error::Shape(_))));
    }

    #[test]
    fn counts() {
        assert_eq!([1, 2, 3].map(kd_dm_count), [2, 6, 20]);
        for m in 1..=4 {
            assert_eq!(weakly_increasing_sequences(m).len() as u64, kd_dm_count(m));
        }
    }

    #[test]
    fn phi_round_trip() {
        for v in [Variant::One, Variant::Two] {
            let mins = checkered_minimal_elements(5, v);
            assert_eq!(mins.len(), 6);
            for t in &mins {
                let image = checkered_phi(t, 5, v).unwrap();
                assert!(is_in_kd_dm(&image, 2).unwrap());
                assert_eq!(&checkered_phi_inv(&image, 5, v).unwrap(), t);
            }
        }
        let min1 = checkered_minimal_elements(1, Variant::One);
        assert_eq!(min1, vec![d(&[(1, 1)])]);
        assert_eq!(checkered_phi(&min1[0], 1, Variant::One).unwrap(), Diagram::new());
        assert!(checkered_phi(&min1[0], 2, Variant::One).is_err());
    }

    #[test]
    fn property_star() {
        assert!(property_star_holds(&checkered(5, Variant::One), 5));
        assert!(property_star_holds(&checkered(5, Variant::Two), 5));
        assert!(!property_star_holds(&d(&[(1, 1)]), 5));
        assert!(property_star_holds(&d(&[(2, 1), (1, 3)]), 3));
    }

    #[test]
    fn reports() {
        let r = checkered_report(3, Variant::One);
        assert_eq!((r.min_count, r.bounded, r.ranked), (2, false, true));
        let r = checkered_report(4, Variant::One);
        assert_eq!((r.min_count, r.bounded, r.ranked), (1, true, false));
        let r = checkered_report(5, Variant::Two);
        assert_eq!((r.min_count, r.bounded, r.ranked), (6, false, false));
        let r = checkered_report(1, Variant::Two);
        assert!(r.bounded && r.ranked && !r.notes.is_empty());
    }
}
