use serde::{Deserialize, Serialize};

use crate::diagram::Diagram;
use crate::error::Result;
use crate::families::key::PureDecomposition;
use crate::families::two_row::TwoRowProfile;
use crate::families::{self, Family};
use crate::obstruction::{self, ObstructionWitness};
use crate::poset::{kd_closure, RankCertificate};
use crate::Limits;

/// Bounded and ranked verdicts for one diagram, with whatever certificates
/// the chosen method produces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    /// `generic` for brute force, otherwise the closed-form family used.
    pub method: Family,
    /// The diagram actually analyzed (after normalization).
    pub diagram: Diagram,
    /// True when normalization changed the input.
    pub normalized: bool,
    /// `|KD(D0)|`, present when the closure was enumerated.
    pub node_count: Option<usize>,
    pub min_count: u64,
    pub bounded: bool,
    pub ranked: bool,
    pub b_value: u64,
    /// Minimal elements, when listed explicitly.
    pub minimal_elements: Option<Vec<Diagram>>,
    /// When ranked by `rowsum - b`, the rank of the root.
    pub root_rank: Option<u64>,
    /// True when `rowsum(D) - b` is a rank function.
    pub rowsum_rank: Option<bool>,
    pub rank_certificate: Option<RankCertificate>,
    pub obstruction: Option<ObstructionWitness>,
    pub two_row_profile: Option<TwoRowProfile>,
    pub decomposition: Option<PureDecomposition>,
    pub notes: Vec<String>,
}

impl AnalysisReport {
    pub(crate) fn closed_form(method: Family, d: &Diagram) -> Self {
        let normalized = d.normalize();
        AnalysisReport {
            method,
            normalized: &normalized != d,
            diagram: normalized,
            node_count: None,
            min_count: 1,
            bounded: true,
            ranked: true,
            b_value: 0,
            minimal_elements: None,
            root_rank: None,
            rowsum_rank: None,
            rank_certificate: None,
            obstruction: None,
            two_row_profile: None,
            decomposition: None,
            notes: Vec::new(),
        }
    }
}

/// Brute-force analysis: enumerate `KD(D0)`, build the Hasse diagram and
/// decide both properties directly. Unranked posets also get an obstruction
/// search over the closure.
pub fn analyze_generic(d: &Diagram, limits: &Limits) -> Result<AnalysisReport> {
    let mut report = AnalysisReport::closed_form(Family::Generic, d);
    let p = kd_closure(&report.diagram, limits)?;
    let cert = p.is_ranked();
    report.node_count = Some(p.len());
    report.min_count = p.minimal_ids().len() as u64;
    report.bounded = p.is_bounded();
    report.ranked = cert.ranked;
    report.b_value = p.b_value();
    report.minimal_elements = Some(p.minimal_elements());
    let rowsum_rank = cert.ranked && p.rowsum_labeling_is_rank();
    report.rowsum_rank = Some(rowsum_rank);
    if rowsum_rank {
        report.root_rank = Some(p.rowsum_of(0) - p.b_value());
    }
    if !cert.ranked {
        report.obstruction = obstruction::scan_nodes(p.nodes());
        if report.obstruction.is_none() {
            report
                .notes
                .push("not ranked, but no known obstruction occurs in the closure".into());
        }
    }
    report.rank_certificate = Some(cert);
    Ok(report)
}

/// Analyzes with the requested family, or with the first matching family when
/// `family` is `None`.
pub fn analyze(d: &Diagram, family: Option<Family>, limits: &Limits) -> Result<AnalysisReport> {
    let normalized = d.normalize();
    let family = match family {
        Some(f) => f,
        None => families::detect_family(&normalized),
    };
    let mut report = match family {
        Family::Generic => return analyze_generic(d, limits),
        Family::OnePerColumn => families::one_column::one_per_column_report(&normalized)?,
        Family::TwoRow => families::two_row::two_row_report(&normalized)?,
        Family::Key => {
            let a = families::key::composition_of(&normalized)?;
            families::key::key_report(&a)
        }
        Family::Checkered => {
            let (n, variant) = families::checkered::recognize(&normalized).ok_or_else(|| {
                crate::Error::FamilyMismatch {
                    family: "checkered",
                    reason: "diagram is not Ch^1_n or Ch^2_n for any n".into(),
                }
            })?;
            families::checkered::checkered_report(n, variant)
        }
    };
    report.normalized = &normalized != d;
    report.diagram = normalized;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(pairs: &[(u32, u32)]) -> Diagram {
        Diagram::from_pairs(pairs).unwrap()
    }

    #[test]
    fn generic_figure_two() {
        let r = analyze_generic(&d(&[(1, 3), (2, 1), (2, 2), (3, 2)]), &Limits::default()).unwrap();
        assert_eq!(r.node_count, Some(5));
        // D3 and D4 are both fixed by every move.
        assert_eq!(r.min_count, 2);
        assert!(!r.bounded);
        assert_eq!(r.b_value, 5);
        assert!(!r.normalized);
        assert_eq!(r.bounded, r.min_count == 1);
    }

    #[test]
    fn normalization_is_recorded() {
        let r = analyze_generic(&d(&[(1, 2), (1, 4)]), &Limits::default()).unwrap();
        assert!(r.normalized);
        assert_eq!(r.diagram, d(&[(1, 1), (1, 2)]));
    }

    #[test]
    fn unranked_report_carries_witness() {
        let r = analyze_generic(&d(&[(2, 1), (3, 1), (2, 2)]), &Limits::default()).unwrap();
        assert!(!r.ranked);
        assert!(r.obstruction.unwrap().validate());
        assert!(r.rank_certificate.unwrap().witness.is_some());
    }
}
