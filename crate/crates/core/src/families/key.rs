//! Key diagrams `𝔻(a)`: row `i` holds `a_i` left-justified cells.
//!
//! Every key diagram poset is bounded with minimum `𝔻(sort(a))`, and it is
//! ranked exactly when `a` is pure.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::{Cell, Diagram};
use crate::error::{Error, Result};
use crate::families::Family;
use crate::report::AnalysisReport;

/// A weak composition `(a_1, ..., a_n)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(entries: Vec<u32>) -> Self {
        Composition(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Entries sorted weakly decreasing.
    pub fn sorted(&self) -> Composition {
        let mut v = self.0.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Composition(v)
    }

    /// `a` with entries `i` and `j` (1-based) exchanged.
    pub fn swapped(&self, i: usize, j: usize) -> Composition {
        let mut v = self.0.clone();
        v.swap(i - 1, j - 1);
        Composition(v)
    }
}

impl From<Vec<u32>> for Composition {
    fn from(v: Vec<u32>) -> Self {
        Composition(v)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn key_diagram(a: &Composition) -> Diagram {
    Diagram::from_cells(a.0.iter().enumerate().flat_map(|(i, &n)| {
        (1..=n).map(move |col| Cell {
            row: i as u32 + 1,
            col,
        })
    }))
}

/// The unique minimal element `𝔻(sort(a))`.
pub fn key_min(a: &Composition) -> Diagram {
    key_diagram(&a.sorted())
}

/// True when every nonempty row is left-justified.
pub fn is_key_diagram(d: &Diagram) -> bool {
    (1..=d.max_row()).all(|r| {
        let cols = d.row_columns(r);
        cols.iter().enumerate().all(|(i, &c)| c == i as u32 + 1)
    })
}

/// The composition of a key diagram (row counts up to the top nonempty row).
pub fn composition_of(d: &Diagram) -> Result<Composition> {
    if !is_key_diagram(d) {
        return Err(Error::FamilyMismatch {
            family: "key",
            reason: "some row is not left-justified".into(),
        });
    }
    Ok(Composition(d.row_counts().iter().map(|&n| n as u32).collect()))
}

fn any_triple(a: &[u32], pattern: impl Fn(i64, i64, i64) -> bool) -> bool {
    let n = a.len();
    (0..n).any(|i| {
        (i + 1..n).any(|j| (j + 1..n).any(|k| pattern(a[i] as i64, a[j] as i64, a[k] as i64)))
    })
}

/// Purity by the three forbidden patterns `x<y<z`, `x<z<y` and `x+1<y=z`.
pub fn is_pure_three_patterns(a: &Composition) -> bool {
    !any_triple(&a.0, |x, y, z| (x < y && y < z) || (x < z && z < y) || (x + 1 < y && y == z))
}

/// Purity by the two forbidden patterns `x<y<z` and `x+1<y, x<z`.
pub fn is_pure_two_patterns(a: &Composition) -> bool {
    !any_triple(&a.0, |x, y, z| (x < y && y < z) || (x + 1 < y && x < z))
}

pub fn is_pure(a: &Composition) -> bool {
    let pure = is_pure_two_patterns(a);
    debug_assert_eq!(pure, is_pure_three_patterns(a));
    pure
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PartType {
    /// Weakly decreasing.
    #[serde(rename = "i")]
    I,
    /// Entries in `{p, p+1}`, starting with `p`, with `p+1` present.
    #[serde(rename = "ii")]
    Ii,
    /// Weakly decreasing, then a final entry at least two above the one
    /// before it.
    #[serde(rename = "iii")]
    Iii,
    /// A `{p, p+1}` prefix starting with `p`, then a weakly decreasing run
    /// below `p`, then a final `p+1`.
    #[serde(rename = "iv")]
    Iv,
}

impl PartType {
    pub fn name(self) -> &'static str {
        match self {
            PartType::I => "i",
            PartType::Ii => "ii",
            PartType::Iii => "iii",
            PartType::Iv => "iv",
        }
    }

    /// Whether `part` has this shape.
    pub fn matches(self, part: &[u32]) -> bool {
        let decreasing = |s: &[u32]| s.windows(2).all(|w| w[0] >= w[1]);
        let two_valued = |s: &[u32]| {
            let p = s[0];
            s.iter().all(|&x| x == p || x == p + 1) && s.contains(&(p + 1))
        };
        if part.is_empty() {
            return false;
        }
        match self {
            PartType::I => decreasing(part),
            PartType::Ii => two_valued(part),
            PartType::Iii => {
                let n = part.len();
                n >= 2 && decreasing(&part[..n - 1]) && part[n - 1] >= part[n - 2] + 2
            }
            PartType::Iv => {
                let n = part.len();
                let p = part[0];
                if n < 4 || part[n - 1] != p + 1 {
                    return false;
                }
                // The split point is the first entry below p.
                let Some(star) = part.iter().position(|&x| x < p) else {
                    return false;
                };
                star > 1
                    && star < n - 1
                    && two_valued(&part[..star])
                    && decreasing(&part[star..n - 1])
                    && part[star..n - 1].iter().all(|&x| x < p)
            }
        }
    }
}

impl fmt::Display for PartType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionPart {
    pub entries: Vec<u32>,
    #[serde(rename = "type")]
    pub kind: PartType,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PureDecomposition {
    pub parts: Vec<DecompositionPart>,
}

impl PureDecomposition {
    /// Concatenation reproduces `a`, consecutive parts satisfy
    /// `min(previous) >= max(next)`, and every part has its declared shape.
    pub fn is_valid_for(&self, a: &Composition) -> bool {
        let joined: Vec<u32> = self.parts.iter().flat_map(|p| p.entries.iter().copied()).collect();
        let ordered = self.parts.windows(2).all(|w| {
            w[0].entries.iter().min() >= w[1].entries.iter().max()
        });
        joined == a.0 && ordered && self.parts.iter().all(|p| p.kind.matches(&p.entries))
    }
}

/// Splits a pure composition into typed parts, taking at each step the first
/// part dictated by the first ascent of what remains.
pub fn pure_decompose(a: &Composition) -> Result<PureDecomposition> {
    if !is_pure(a) {
        return Err(Error::NotPure(a.to_string()));
    }
    let mut parts = Vec::new();
    let mut rest: &[u32] = &a.0;
    while !rest.is_empty() {
        let (len, kind) = first_part(rest).ok_or_else(|| Error::NotPure(a.to_string()))?;
        parts.push(DecompositionPart {
            entries: rest[..len].to_vec(),
            kind,
        });
        rest = &rest[len..];
    }
    Ok(PureDecomposition { parts })
}

/// Length and type of the leading part of a pure sequence (0-based indices).
fn first_part(a: &[u32]) -> Option<(usize, PartType)> {
    let n = a.len();
    let Some(k1) = (1..n).find(|&k| a[k - 1] < a[k]) else {
        return Some((n, PartType::I));
    };
    let p = a[k1 - 1];
    let top = a[k1];
    if top - p > 1 {
        return Some((k1 + 1, PartType::Iii));
    }
    // Some earlier entry reaches the ascent's top: cut after the last one.
    if let Some(k0) = (0..k1.saturating_sub(1)).rev().find(|&k| a[k] >= top) {
        return Some((k0 + 1, PartType::I));
    }
    if a.iter().all(|&x| x == p || x == top) {
        return Some((n, PartType::Ii));
    }
    let k2 = (k1 + 1..n).find(|&k| a[k] < p)?;
    match (k2 + 1..n).find(|&k| a[k] == top) {
        None => Some((k2, PartType::Ii)),
        Some(k3) => Some((k3 + 1, PartType::Iv)),
    }
}

/// `𝔻(a·s_{i,j})` for 1-based `i < j` with `a_i < a_j`.
pub fn row_swap_member(a: &Composition, i: usize, j: usize) -> Result<Diagram> {
    if !(1 <= i && i < j && j <= a.len()) {
        return Err(Error::Precondition(format!(
            "need 1 <= i < j <= {}, got i={i}, j={j}",
            a.len()
        )));
    }
    if a.0[i - 1] >= a.0[j - 1] {
        return Err(Error::Precondition(format!(
            "need a_i < a_j, got a_{i}={} and a_{j}={}",
            a.0[i - 1],
            a.0[j - 1]
        )));
    }
    Ok(key_diagram(&a.swapped(i, j)))
}

pub fn key_report(a: &Composition) -> AnalysisReport {
    let d = key_diagram(a);
    let mut report = AnalysisReport::closed_form(Family::Key, &d);
    let min = key_min(a);
    report.b_value = min.rowsum();
    report.minimal_elements = Some(vec![min]);
    report.ranked = is_pure(a);
    report.rowsum_rank = Some(report.ranked);
    if report.ranked {
        report.root_rank = Some(d.rowsum() - report.b_value);
        report.decomposition = pure_decompose(a).ok();
    }
    report
}
