//! Kohnert posets: the closure `KD(D0)` ordered by reachability under
//! Kohnert moves.

mod graded;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::OnceLock;

pub use graded::{AbstractPoset, CoverGraph, RankCertificate, RankWitness};

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::Limits;

#[derive(Debug)]
pub struct KohnertPoset {
    nodes: Vec<Diagram>,
    index: HashMap<Diagram, usize>,
    rowsums: Vec<u64>,
    moves: Vec<Vec<usize>>,
    minimals: Vec<usize>,
    covers: OnceLock<CoverGraph>,
    parents: OnceLock<Vec<Vec<usize>>>,
}

/// Enumerates every diagram reachable from `d0` by nontrivial Kohnert moves.
///
/// Node 0 is `d0`. Nodes are numbered by BFS layer, and within a layer by the
/// canonical diagram order, so numbering is deterministic.
pub fn kd_closure(d0: &Diagram, limits: &Limits) -> Result<KohnertPoset> {
    limits.check(d0)?;
    let mut nodes = vec![d0.clone()];
    let mut index = HashMap::from([(d0.clone(), 0usize)]);
    let mut moves: Vec<Vec<usize>> = vec![Vec::new()];
    let mut layer = vec![0usize];

    while !layer.is_empty() {
        let mut fresh: BTreeSet<Diagram> = BTreeSet::new();
        let mut pending: Vec<(usize, Diagram)> = Vec::new();
        for &u in &layer {
            let d = &nodes[u];
            for r in d.nonempty_rows() {
                if let Some(next) = d.moved(r) {
                    if !index.contains_key(&next) {
                        fresh.insert(next.clone());
                    }
                    pending.push((u, next));
                }
            }
        }
        if nodes.len() + fresh.len() > limits.node_cap {
            return Err(Error::NodeCap {
                cap: limits.node_cap,
            });
        }
        let mut next_layer = Vec::with_capacity(fresh.len());
        for d in fresh {
            let id = nodes.len();
            index.insert(d.clone(), id);
            nodes.push(d);
            moves.push(Vec::new());
            next_layer.push(id);
        }
        for (u, d) in pending {
            moves[u].push(index[&d]);
        }
        layer = next_layer;
    }

    for out in &mut moves {
        out.sort_unstable();
        out.dedup();
    }
    let rowsums = nodes.iter().map(Diagram::rowsum).collect();
    let minimals = (0..nodes.len()).filter(|&u| moves[u].is_empty()).collect();
    Ok(KohnertPoset {
        nodes,
        index,
        rowsums,
        moves,
        minimals,
        covers: OnceLock::new(),
        parents: OnceLock::new(),
    })
}

impl KohnertPoset {
    pub fn root(&self) -> &Diagram {
        &self.nodes[0]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Diagram] {
        &self.nodes
    }

    pub fn node(&self, id: usize) -> &Diagram {
        &self.nodes[id]
    }

    pub fn id_of(&self, d: &Diagram) -> Option<usize> {
        self.index.get(d).copied()
    }

    pub fn contains(&self, d: &Diagram) -> bool {
        self.index.contains_key(d)
    }

    fn require(&self, d: &Diagram) -> Result<usize> {
        self.id_of(d)
            .ok_or_else(|| Error::UnknownNode(d.to_pairs_string()))
    }

    /// Targets of the nontrivial single moves out of node `u`.
    pub fn move_targets(&self, u: usize) -> &[usize] {
        &self.moves[u]
    }

    pub fn move_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.moves
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    pub fn move_edge_count(&self) -> usize {
        self.moves.iter().map(Vec::len).sum()
    }

    fn parents(&self) -> &[Vec<usize>] {
        self.parents.get_or_init(|| {
            let mut parents = vec![Vec::new(); self.len()];
            for (u, v) in self.move_edges() {
                parents[v].push(u);
            }
            parents
        })
    }

    /// Node ids of the minimal elements: diagrams fixed by every Kohnert move.
    pub fn minimal_ids(&self) -> &[usize] {
        &self.minimals
    }

    pub fn minimal_elements(&self) -> Vec<Diagram> {
        self.minimals.iter().map(|&u| self.nodes[u].clone()).collect()
    }

    pub fn is_bounded(&self) -> bool {
        self.minimals.len() == 1
    }

    /// Smallest rowsum among the minimal elements.
    pub fn b_value(&self) -> u64 {
        self.minimals
            .iter()
            .map(|&u| self.rowsums[u])
            .min()
            .unwrap_or(0)
    }

    pub fn rowsum_of(&self, u: usize) -> u64 {
        self.rowsums[u]
    }

    /// The Hasse diagram: move edges not implied by a longer path of moves.
    pub fn hasse(&self) -> &CoverGraph {
        self.covers.get_or_init(|| {
            CoverGraph::new(self.transitive_reduction()).expect("move edges form a DAG")
        })
    }

    pub fn cover_edges(&self) -> Vec<(usize, usize)> {
        let g = self.hasse();
        (0..self.len())
            .flat_map(|u| g.lower_covers(u).iter().map(move |&v| (u, v)))
            .collect()
    }

    fn transitive_reduction(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut stamp = vec![usize::MAX; n];
        let mut stack = Vec::new();
        let mut covers = Vec::with_capacity(n);
        for u in 0..n {
            let targets = &self.moves[u];
            if targets.len() <= 1 {
                covers.push(targets.clone());
                continue;
            }
            // Every move lowers rowsum, so a path of two or more moves ending
            // at a target never passes below the lowest target rowsum.
            let floor = targets.iter().map(|&v| self.rowsums[v]).min().unwrap();
            stack.clear();
            for &w in targets {
                stack.extend(self.moves[w].iter().copied());
            }
            while let Some(x) = stack.pop() {
                if stamp[x] == u || self.rowsums[x] < floor {
                    continue;
                }
                stamp[x] = u;
                if self.rowsums[x] > floor {
                    stack.extend(self.moves[x].iter().copied());
                }
            }
            covers.push(targets.iter().copied().filter(|&v| stamp[v] != u).collect());
        }
        covers
    }

    pub fn is_ranked(&self) -> RankCertificate {
        self.hasse().rank_certificate()
    }

    pub fn maximal_chain_lengths(&self, cap: usize) -> Result<BTreeSet<usize>> {
        self.hasse().maximal_chain_lengths(cap)
    }

    /// True when `rowsum(D) - b` satisfies the rank condition on every cover.
    pub fn rowsum_labeling_is_rank(&self) -> bool {
        let g = self.hasse();
        (0..self.len()).all(|u| {
            g.lower_covers(u)
                .iter()
                .all(|&v| self.rowsums[u] == self.rowsums[v] + 1)
        }) && self
            .minimals
            .iter()
            .all(|&u| self.rowsums[u] >= self.b_value())
    }

    fn descendants(&self, from: usize) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.moves[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    fn ancestors(&self, from: usize) -> Vec<bool> {
        let parents = self.parents();
        let mut seen = vec![false; self.len()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            for &v in &parents[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    /// `reach[u][v]` is true when `v ⪯ u`.
    pub fn reachability(&self) -> Vec<Vec<bool>> {
        (0..self.len()).map(|u| self.descendants(u)).collect()
    }

    pub(crate) fn leq_ids(&self, a: usize, b: usize) -> bool {
        if a == b {
            return true;
        }
        if self.rowsums[a] >= self.rowsums[b] {
            return false;
        }
        self.descendants(b)[a]
    }

    /// `a ⪯ b`: `a` is obtained from `b` by a (possibly empty) sequence of moves.
    pub fn order_leq(&self, a: &Diagram, b: &Diagram) -> Result<bool> {
        let a = self.require(a)?;
        let b = self.require(b)?;
        Ok(self.leq_ids(a, b))
    }

    /// Node ids of the interval `[a, b]`, with `b` first.
    pub fn interval_ids(&self, a: usize, b: usize) -> Vec<usize> {
        let below_b = self.descendants(b);
        let above_a = self.ancestors(a);
        let mut ids = vec![b];
        ids.extend((0..self.len()).filter(|&z| z != b && below_b[z] && above_a[z]));
        ids
    }

    /// The subposet `[a, b]` with the inherited order; `b` becomes the root.
    pub fn interval(&self, a: &Diagram, b: &Diagram) -> Result<KohnertPoset> {
        let ia = self.require(a)?;
        let ib = self.require(b)?;
        if !self.leq_ids(ia, ib) {
            return Err(Error::NotRelated {
                lower: a.to_pairs_string(),
                upper: b.to_pairs_string(),
            });
        }
        let ids = self.interval_ids(ia, ib);
        let mut remap = HashMap::with_capacity(ids.len());
        for (new, &old) in ids.iter().enumerate() {
            remap.insert(old, new);
        }
        let nodes: Vec<Diagram> = ids.iter().map(|&u| self.nodes[u].clone()).collect();
        let moves: Vec<Vec<usize>> = ids
            .iter()
            .map(|&u| {
                self.moves[u]
                    .iter()
                    .filter_map(|v| remap.get(v).copied())
                    .collect()
            })
            .collect();
        let index = nodes.iter().cloned().zip(0..).collect();
        let rowsums = ids.iter().map(|&u| self.rowsums[u]).collect();
        let minimals = (0..nodes.len()).filter(|&u| moves[u].is_empty()).collect();
        Ok(KohnertPoset {
            nodes,
            index,
            rowsums,
            moves,
            minimals,
            covers: OnceLock::new(),
            parents: OnceLock::new(),
        })
    }

    /// Rank of each diagram under a successful certificate.
    pub fn rank_map(&self, cert: &RankCertificate) -> Option<Vec<(Diagram, u32)>> {
        let ranks = cert.ranks.as_ref()?;
        Some(
            self.nodes
                .iter()
                .cloned()
                .zip(ranks.iter().copied())
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(pairs: &[(u32, u32)]) -> Diagram {
        Diagram::from_pairs(pairs).unwrap()
    }

    fn closure(pairs: &[(u32, u32)]) -> KohnertPoset {
        kd_closure(&d(pairs), &Limits::default()).unwrap()
    }

    const FIG1: &[(u32, u32)] = &[(1, 3), (2, 1), (2, 2), (3, 2)];
    const D1: &[(u32, u32)] = &[(1, 2), (1, 3), (2, 1), (3, 2)];
    const D2: &[(u32, u32)] = &[(1, 1), (1, 2), (1, 3), (3, 2)];
    const D3: &[(u32, u32)] = &[(1, 2), (1, 3), (2, 1), (2, 2)];
    const D4: &[(u32, u32)] = &[(1, 1), (1, 2), (1, 3), (2, 2)];

    /// Brute-force fixedness: try every row, independent of the poset code.
    fn fixed_by_all_moves(x: &Diagram) -> bool {
        (1..=x.max_row()).all(|r| !x.kohnert_move(r).moved)
    }

    #[test]
    fn figure_two_closure() {
        let p = closure(FIG1);
        assert_eq!(p.len(), 5);
        for pairs in [FIG1, D1, D2, D3, D4] {
            assert!(p.contains(&d(pairs)), "{pairs:?} missing");
        }
        assert_eq!(p.root(), &d(FIG1));
    }

    #[test]
    fn figure_two_minimal_by_brute_force() {
        let p = closure(FIG1);
        let fixed: Vec<_> = p.nodes().iter().filter(|x| fixed_by_all_moves(x)).cloned().collect();
        assert_eq!(fixed, vec![d(D3), d(D4)]);
        assert_eq!(p.minimal_elements(), fixed);
        assert!(!p.is_bounded());
        assert_eq!(p.b_value(), 5);
    }

    #[test]
    fn single_cell() {
        let p = closure(&[(1, 1)]);
        assert_eq!(p.len(), 1);
        assert_eq!(p.minimal_elements(), vec![d(&[(1, 1)])]);
        assert_eq!(p.cover_edges(), vec![]);
        assert_eq!(p.b_value(), 1);
        assert_eq!(p.maximal_chain_lengths(10).unwrap(), BTreeSet::from([0]));
    }

    #[test]
    fn empty_diagram_closure() {
        let p = closure(&[]);
        assert_eq!(p.len(), 1);
        assert!(p.is_bounded());
        assert!(p.is_ranked().ranked);
        assert_eq!(p.b_value(), 0);
    }

    #[test]
    fn cover_subtlety() {
        let p = closure(FIG1);
        let d0 = p.id_of(&d(FIG1)).unwrap();
        let d3 = p.id_of(&d(D3)).unwrap();
        assert!(p.move_targets(d0).contains(&d3));
        assert!(!p.cover_edges().contains(&(d0, d3)));
    }

    #[test]
    fn one_per_column_example() {
        let p = closure(&[(2, 1), (3, 2), (2, 3)]);
        assert_eq!(p.len(), 8);
        // The printed Hasse diagram has 9 cover edges.
        assert_eq!(p.cover_edges().len(), 9);
        let cert = p.is_ranked();
        assert!(cert.ranked);
        assert_eq!(cert.ranks.as_ref().unwrap()[0], 4);
        assert!(p.rowsum_labeling_is_rank());
    }

    #[test]
    fn figure_two_order_and_intervals() {
        let p = closure(FIG1);
        assert!(p.order_leq(&d(D3), &d(FIG1)).unwrap());
        assert!(p.order_leq(&d(D2), &d(D2)).unwrap());
        assert!(!p.order_leq(&d(FIG1), &d(D4)).unwrap());
        assert!(matches!(
            p.order_leq(&d(&[(9, 9)]), &d(FIG1)),
            Err(Error::UnknownNode(_))
        ));

        assert_eq!(p.interval(&d(D4), &d(FIG1)).unwrap().len(), 4);
        assert!(!p.order_leq(&d(D4), &d(D3)).unwrap());
        let single = p.interval(&d(D2), &d(D2)).unwrap();
        assert_eq!(single.len(), 1);
        let pair = p.interval(&d(D2), &d(D1)).unwrap();
        assert_eq!(pair.len(), 2);
        assert_eq!(pair.root(), &d(D1));
        assert!(pair.contains(&d(D2)));
        assert!(matches!(
            p.interval(&d(FIG1), &d(D4)),
            Err(Error::NotRelated { .. })
        ));
    }

    #[test]
    fn node_cap_enforced() {
        let limits = Limits {
            node_cap: 3,
            ..Limits::default()
        };
        assert_eq!(
            kd_closure(&d(FIG1), &limits).unwrap_err(),
            Error::NodeCap { cap: 3 }
        );
    }

    #[test]
    fn move_edges_lower_rowsum_and_root_is_unique_source() {
        let p = closure(&[(3, 1), (2, 2), (3, 2), (1, 3), (3, 3)]);
        let mut has_parent = vec![false; p.len()];
        for (u, v) in p.move_edges() {
            assert!(p.rowsum_of(v) < p.rowsum_of(u));
            has_parent[v] = true;
        }
        assert_eq!(
            has_parent.iter().filter(|&&x| !x).count(),
            1,
            "only the root lacks an incoming move"
        );
        assert!(!has_parent[0]);
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn covers_match_brute_force_reduction() {
        let p = closure(&[(3, 1), (2, 2), (3, 2), (1, 3), (3, 3)]);
        // Warshall closure over move edges.
        let n = p.len();
        let mut reach = vec![vec![false; n]; n];
        for (u, v) in p.move_edges() {
            reach[u][v] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if reach[i][k] {
                    for j in 0..n {
                        if reach[k][j] {
                            reach[i][j] = true;
                        }
                    }
                }
            }
        }
        let mut expected = Vec::new();
        for (u, v) in p.move_edges() {
            let implied = (0..n).any(|w| w != v && reach[u][w] && reach[w][v]);
            if !implied {
                expected.push((u, v));
            }
        }
        let mut got = p.cover_edges();
        got.sort_unstable();
        expected.sort_unstable();
        assert_eq!(got, expected);
    }
}
