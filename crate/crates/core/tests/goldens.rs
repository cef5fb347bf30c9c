use std::collections::BTreeSet;

use kohnert::families::{checkered, key};
use kohnert::{kd_closure, AbstractPoset, Composition, Diagram, KohnertPoset, Limits, Variant};

fn d(pairs: &[(u32, u32)]) -> Diagram {
    Diagram::from_pairs(pairs).unwrap()
}

fn closure(x: &Diagram) -> KohnertPoset {
    kd_closure(x, &Limits::default()).unwrap()
}

#[test]
fn abstract_poset_with_one_chain_length() {
    let p = AbstractPoset::from_covers(5, &[(0, 1), (1, 2), (1, 3), (2, 4), (3, 4)]).unwrap();
    let cert = p.is_ranked();
    assert!(cert.ranked);
    assert_eq!(p.maximal_chain_lengths(100).unwrap(), BTreeSet::from([3]));
    assert!(p.is_bounded());
}

#[test]
fn key_012_is_unranked() {
    let p = closure(&key::key_diagram(&Composition::new(vec![0, 1, 2])));
    assert!(p.is_bounded());
    assert!(!p.is_ranked().ranked);
    assert!(p.maximal_chain_lengths(10_000).unwrap().len() >= 2);
}

#[test]
fn small_key_values() {
    let p = closure(&key::key_diagram(&Composition::new(vec![2, 2])));
    assert_eq!(p.b_value(), 6);
    assert!(p.is_ranked().ranked);
    let p = closure(&key::key_diagram(&Composition::new(vec![1, 0])));
    assert_eq!(p.b_value(), 1);
}

#[test]
fn checkered_three_and_four() {
    let p = closure(&checkered::checkered(3, Variant::One));
    assert_eq!(p.minimal_ids().len(), 2);
    assert!(!p.is_bounded());
    assert!(p.is_ranked().ranked);

    let p = closure(&checkered::checkered(4, Variant::One));
    assert_eq!(p.minimal_ids().len(), 1);
    assert!(p.is_bounded());
    assert!(!p.is_ranked().ranked);
}

#[test]
fn er_sequence_example() {
    let t = d(&[(1, 1), (2, 1), (1, 2), (3, 2)]);
    assert_eq!(checkered::er_sequence(&t, 2).unwrap(), vec![3, 2]);
    assert!(!checkered::is_in_kd_dm(&t, 2).unwrap());
}

#[test]
fn property_star_fails_for_single_cell() {
    assert!(!checkered::property_star_holds(&d(&[(1, 1)]), 5));
}

#[test]
fn row_swap_lands_in_closure() {
    let p = closure(&key::key_diagram(&Composition::new(vec![1, 3])));
    assert!(p.contains(&key::key_diagram(&Composition::new(vec![3, 1]))));
}

#[test]
fn staircase_counts() {
    let counts: Vec<u64> = (1..=4).map(checkered::kd_dm_count).collect();
    assert_eq!(counts, vec![2, 6, 20, 70]);
    for m in 1..=3 {
        let brute: BTreeSet<Diagram> = closure(&checkered::staircase(m)).nodes().iter().cloned().collect();
        let formula: BTreeSet<Diagram> = checkered::kd_dm_elements(m).into_iter().collect();
        assert_eq!(brute, formula, "m = {m}");
    }
}

#[test]
fn kohnert_move_examples() {
    let fig1 = d(&[(1, 3), (2, 1), (2, 2), (3, 2)]);
    let m = fig1.kohnert_move(3);
    assert!(m.moved);
    assert_eq!(m.diagram, d(&[(1, 3), (2, 1), (2, 2), (1, 2)]));
    assert!(!d(&[(1, 1)]).kohnert_move(1).moved);
    assert!(!fig1.kohnert_move(7).moved);
}
