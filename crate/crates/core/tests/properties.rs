use std::collections::BTreeSet;

use kohnert::families::{key, one_column};
use kohnert::io::{self, Format};
use kohnert::obstruction::{detect_any, detect_small, ObstructionKind};
use kohnert::polynomial::polynomial_of_poset;
use kohnert::{kd_closure, Composition, Diagram, KohnertPoset, Limits};
use proptest::prelude::*;

/// Diagrams inside a `rows × cols` box, as column bitmasks.
fn diagram(rows: u32, cols: usize) -> impl Strategy<Value = Diagram> {
    prop::collection::vec(0u64..(1 << rows), 1..=cols).prop_map(|m| Diagram::from_column_masks(&m))
}

/// Small diagrams whose closures stay in the low hundreds.
fn small_diagram() -> impl Strategy<Value = Diagram> {
    diagram(4, 3)
}

fn closure(d: &Diagram) -> KohnertPoset {
    kd_closure(d, &Limits::default()).unwrap()
}

fn cells_at_or_above(d: &Diagram, col: u32, t: u32) -> u32 {
    (d.column_mask(col) >> (t - 1)).count_ones()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn moves_preserve_size_and_columns(d in diagram(6, 5), r in 1u32..8) {
        let m = d.kohnert_move(r);
        prop_assert_eq!(m.diagram.size(), d.size());
        prop_assert_eq!(m.diagram.column_counts(), d.column_counts());
    }

    #[test]
    fn nontrivial_moves_lower_rowsum(d in diagram(6, 5), r in 1u32..8) {
        let m = d.kohnert_move(r);
        if m.moved {
            prop_assert!(m.diagram.rowsum() < d.rowsum());
        } else {
            prop_assert_eq!(&m.diagram, &d);
        }
    }

    #[test]
    fn column_mass_above_a_row_never_grows(d in diagram(6, 5), r in 1u32..8) {
        let m = d.kohnert_move(r);
        for c in 1..=d.max_col().max(1) {
            for t in 1..=7 {
                prop_assert!(cells_at_or_above(&m.diagram, c, t) <= cells_at_or_above(&d, c, t));
            }
        }
    }

    #[test]
    fn trivial_moves_stay_trivial(d in diagram(6, 5), r in 1u32..8) {
        let m = d.kohnert_move(r);
        if !m.moved {
            prop_assert!(!m.diagram.kohnert_move(r).moved);
        }
    }

    #[test]
    fn normalize_is_idempotent(d in diagram(6, 6)) {
        let n = d.normalize();
        prop_assert!(n.is_normalized());
        prop_assert_eq!(n.normalize(), n.clone());
        prop_assert_eq!(n.size(), d.size());
    }

    #[test]
    fn text_formats_round_trip(d in diagram(6, 6)) {
        prop_assert_eq!(io::parse_pairs(&io::render_pairs(&d)).unwrap(), d.clone());
        prop_assert_eq!(io::parse_json(&io::render_json(&d)).unwrap(), d.clone());
        if !d.is_empty() {
            let grid = io::render_grid(&d);
            prop_assert_eq!(io::parse_diagram(&grid, Format::Grid).unwrap(), d.clone());
            prop_assert_eq!(io::parse_diagram(&grid, Format::Auto).unwrap(), d.clone());
        }
    }

    #[test]
    fn move_edges_lower_rowsum_and_root_is_unique_source(d in small_diagram()) {
        let p = closure(&d);
        let mut has_parent = vec![false; p.len()];
        for (u, v) in p.move_edges() {
            prop_assert!(p.rowsum_of(v) < p.rowsum_of(u));
            has_parent[v] = true;
        }
        let sources: Vec<usize> = (0..p.len()).filter(|&u| !has_parent[u]).collect();
        prop_assert_eq!(sources, vec![0]);
        prop_assert_eq!(p.root(), &d);
    }

    #[test]
    fn minimal_elements_are_the_fixed_diagrams(d in small_diagram()) {
        let p = closure(&d);
        let fixed: BTreeSet<Diagram> = p
            .nodes()
            .iter()
            .filter(|x| (1..=x.max_row()).all(|r| !x.kohnert_move(r).moved))
            .cloned()
            .collect();
        let mins: BTreeSet<Diagram> = p.minimal_elements().into_iter().collect();
        prop_assert_eq!(&mins, &fixed);
        prop_assert_eq!(p.is_bounded(), mins.len() == 1);
        if d.column_counts().windows(2).all(|w| w[0] >= w[1]) {
            prop_assert!(p.is_bounded());
        }
    }

    #[test]
    fn bounded_ranked_iff_one_chain_length(d in small_diagram()) {
        let p = closure(&d);
        if p.is_bounded() {
            let lengths = p.maximal_chain_lengths(10_000).unwrap();
            prop_assert_eq!(p.is_ranked().ranked, lengths.len() == 1, "lengths {:?}", lengths);
        }
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn intervals_of_ranked_posets_have_one_chain_length(d in diagram(3, 3)) {
        let p = closure(&d);
        if p.is_ranked().ranked {
            let reach = p.reachability();
            for hi in 0..p.len() {
                for lo in 0..p.len() {
                    if hi != lo && reach[hi][lo] {
                        let i = p.interval(p.node(lo), p.node(hi)).unwrap();
                        let lengths = i.maximal_chain_lengths(10_000).unwrap();
                        prop_assert_eq!(lengths.len(), 1);
                    }
                }
            }
        }
    }

    #[test]
    fn rank_certificate_labels_every_cover(d in small_diagram()) {
        let p = closure(&d);
        let cert = p.is_ranked();
        if let Some(ranks) = &cert.ranks {
            prop_assert!(cert.ranked);
            for (u, v) in p.cover_edges() {
                prop_assert_eq!(ranks[u], ranks[v] + 1);
            }
        } else {
            prop_assert!(!cert.ranked);
            prop_assert!(cert.witness.is_some());
        }
    }

    #[test]
    fn polynomial_counts_the_closure(d in small_diagram()) {
        let p = closure(&d);
        let poly = polynomial_of_poset(&p);
        prop_assert_eq!(poly.coefficient_sum(), p.len() as u64);
        for (m, _) in poly.terms() {
            prop_assert_eq!(m.degree() as usize, d.size());
        }
    }

    #[test]
    fn witnesses_validate_and_imply_unranked(d in diagram(4, 4)) {
        if let Some(w) = detect_any(&d) {
            prop_assert!(w.validate());
            prop_assert!(!closure(&d).is_ranked().ranked);
        }
        if let Some(w) = detect_small(&d) {
            let general = w.generalize();
            prop_assert!(general.validate());
            let expected = match w.kind {
                ObstructionKind::SmallLadder => ObstructionKind::Ladder,
                ObstructionKind::SmallGap => ObstructionKind::Gap,
                other => other,
            };
            prop_assert_eq!(general.kind, expected);
        }
    }

    #[test]
    fn one_per_column_closed_form_matches(cols in prop::collection::vec(0u32..5, 1..=5)) {
        let masks: Vec<u64> = cols.iter().map(|&r| if r == 0 { 0 } else { 1 << (r - 1) }).collect();
        let d = Diagram::from_column_masks(&masks).normalize();
        let p = closure(&d);
        prop_assert_eq!(p.minimal_elements(), vec![one_column::one_per_column_min(&d)]);
        prop_assert!(p.is_ranked().ranked);
        prop_assert!(p.rowsum_labeling_is_rank());
    }

    #[test]
    fn key_closures_match_purity(a in prop::collection::vec(0u32..4, 0..=5)) {
        let a = Composition::new(a);
        let p = closure(&key::key_diagram(&a));
        prop_assert_eq!(p.minimal_elements(), vec![key::key_min(&a)]);
        prop_assert_eq!(p.is_ranked().ranked, key::is_pure(&a));
        prop_assert_eq!(key::is_pure_two_patterns(&a), key::is_pure_three_patterns(&a));
        match key::pure_decompose(&a) {
            Ok(dec) => prop_assert!(dec.is_valid_for(&a)),
            Err(_) => prop_assert!(!key::is_pure(&a)),
        }
    }
}
