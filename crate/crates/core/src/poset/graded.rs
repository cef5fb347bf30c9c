//! Rank functions and maximal chains of a finite poset given by its covers.
//!
//! Nodes are indices `0..n`. A cover edge `upper -> lower` means `lower` is
//! covered by `upper`.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Evidence that no rank function exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RankWitness {
    /// Two saturated chains from `top` down to `bottom` of different lengths.
    /// Each chain lists nodes from `top` to `bottom`.
    UnequalChains {
        top: usize,
        bottom: usize,
        longer: Vec<usize>,
        shorter: Vec<usize>,
    },
    /// A closed walk through cover edges, starting and ending at the same node,
    /// along which the forced rank changes do not sum to zero.
    InconsistentCycle { walk: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankCertificate {
    pub ranked: bool,
    /// Rank of each node, present iff ranked.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ranks: Option<Vec<u32>>,
    /// Present iff not ranked.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<RankWitness>,
}

/// Cover graph of a finite poset.
#[derive(Clone, Debug)]
pub struct CoverGraph {
    down: Vec<Vec<usize>>,
    up: Vec<Vec<usize>>,
    topo: Vec<usize>,
}

impl CoverGraph {
    /// `down[u]` lists the elements covered by `u`. Fails if the edges contain
    /// a directed cycle.
    pub fn new(down: Vec<Vec<usize>>) -> Result<Self> {
        let n = down.len();
        let mut up = vec![Vec::new(); n];
        for (u, lows) in down.iter().enumerate() {
            for &v in lows {
                if v >= n {
                    return Err(Error::InvalidPoset(format!("node {v} out of range")));
                }
                up[v].push(u);
            }
        }
        // Kahn's algorithm, greatest elements first.
        let mut indeg: Vec<usize> = up.iter().map(Vec::len).collect();
        let mut queue: VecDeque<usize> = (0..n).filter(|&u| indeg[u] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(u) = queue.pop_front() {
            topo.push(u);
            for &v in &down[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    queue.push_back(v);
                }
            }
        }
        if topo.len() != n {
            return Err(Error::InvalidPoset("cover relation has a cycle".into()));
        }
        Ok(CoverGraph { down, up, topo })
    }

    pub fn len(&self) -> usize {
        self.down.len()
    }

    pub fn is_empty(&self) -> bool {
        self.down.is_empty()
    }

    pub fn lower_covers(&self, u: usize) -> &[usize] {
        &self.down[u]
    }

    pub fn upper_covers(&self, u: usize) -> &[usize] {
        &self.up[u]
    }

    pub fn edge_count(&self) -> usize {
        self.down.iter().map(Vec::len).sum()
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&u| self.up[u].is_empty()).collect()
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&u| self.down[u].is_empty()).collect()
    }

    /// Decides rankedness by propagating the constraint `rank(upper) =
    /// rank(lower) + 1` across every cover edge, one connected component at a
    /// time, then shifting each component so its lowest rank is zero.
    pub fn rank_certificate(&self) -> RankCertificate {
        let n = self.len();
        let mut rank: Vec<Option<i64>> = vec![None; n];
        let mut parent: Vec<usize> = (0..n).collect();
        let mut conflict = None;

        'components: for seed in 0..n {
            if rank[seed].is_some() {
                continue;
            }
            rank[seed] = Some(0);
            let mut component = vec![seed];
            let mut queue = VecDeque::from([seed]);
            while let Some(u) = queue.pop_front() {
                let ru = rank[u].unwrap();
                let neighbours = self.down[u]
                    .iter()
                    .map(|&v| (v, ru - 1))
                    .chain(self.up[u].iter().map(|&v| (v, ru + 1)));
                for (v, want) in neighbours {
                    match rank[v] {
                        None => {
                            rank[v] = Some(want);
                            parent[v] = u;
                            component.push(v);
                            queue.push_back(v);
                        }
                        Some(have) if have != want => {
                            conflict = Some((u, v));
                            break 'components;
                        }
                        Some(_) => {}
                    }
                }
            }
            let low = component.iter().map(|&u| rank[u].unwrap()).min().unwrap();
            for &u in &component {
                rank[u] = Some(rank[u].unwrap() - low);
            }
        }

        match conflict {
            None => RankCertificate {
                ranked: true,
                ranks: Some(rank.into_iter().map(|r| r.unwrap() as u32).collect()),
                witness: None,
            },
            Some((u, v)) => {
                let witness = self
                    .unequal_chains()
                    .unwrap_or_else(|| cycle_witness(&parent, u, v));
                RankCertificate {
                    ranked: false,
                    ranks: None,
                    witness: Some(witness),
                }
            }
        }
    }

    /// Searches, from each maximal element, for a node reached by two cover
    /// chains of different lengths.
    fn unequal_chains(&self) -> Option<RankWitness> {
        let n = self.len();
        for top in self.maximal() {
            let mut short: Vec<Option<(usize, usize)>> = vec![None; n];
            let mut long: Vec<Option<(usize, usize)>> = vec![None; n];
            short[top] = Some((0, top));
            long[top] = Some((0, top));
            for &u in &self.topo {
                let (Some((su, _)), Some((lu, _))) = (short[u], long[u]) else {
                    continue;
                };
                for &v in &self.down[u] {
                    if short[v].is_none_or(|(s, _)| su + 1 < s) {
                        short[v] = Some((su + 1, u));
                    }
                    if long[v].is_none_or(|(l, _)| lu + 1 > l) {
                        long[v] = Some((lu + 1, u));
                    }
                }
            }
            let bottom = self
                .topo
                .iter()
                .copied()
                .find(|&u| matches!((short[u], long[u]), (Some(s), Some(l)) if s.0 != l.0));
            if let Some(bottom) = bottom {
                let trace = |table: &Vec<Option<(usize, usize)>>| {
                    let mut path = vec![bottom];
                    let mut cur = bottom;
                    while cur != top {
                        cur = table[cur].unwrap().1;
                        path.push(cur);
                    }
                    path.reverse();
                    path
                };
                return Some(RankWitness::UnequalChains {
                    top,
                    bottom,
                    longer: trace(&long),
                    shorter: trace(&short),
                });
            }
        }
        None
    }

    /// Lengths (edge counts) of all maximal chains, computed over the cover DAG.
    pub fn maximal_chain_lengths(&self, cap: usize) -> Result<BTreeSet<usize>> {
        if self.len() > cap {
            return Err(Error::ChainCap {
                cap,
                nodes: self.len(),
            });
        }
        let mut lengths: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); self.len()];
        for &u in self.topo.iter().rev() {
            if self.down[u].is_empty() {
                lengths[u].insert(0);
            } else {
                let mut set = BTreeSet::new();
                for &v in &self.down[u] {
                    set.extend(lengths[v].iter().map(|l| l + 1));
                }
                lengths[u] = set;
            }
        }
        Ok(self
            .maximal()
            .into_iter()
            .flat_map(|u| lengths[u].iter().copied().collect::<Vec<_>>())
            .collect())
    }
}

fn cycle_witness(parent: &[usize], u: usize, v: usize) -> RankWitness {
    let to_root = |mut x: usize| {
        let mut path = vec![x];
        while parent[x] != x {
            x = parent[x];
            path.push(x);
        }
        path
    };
    let pu = to_root(u);
    let pv = to_root(v);
    // Trim the shared tail so the walk passes through the meeting point once.
    let mut i = pu.len();
    let mut j = pv.len();
    while i > 1 && j > 1 && pu[i - 2] == pv[j - 2] {
        i -= 1;
        j -= 1;
    }
    let mut walk: Vec<usize> = pu[..i].to_vec();
    walk.extend(pv[..j - 1].iter().rev());
    walk.push(u);
    RankWitness::InconsistentCycle { walk }
}

/// A poset given directly by its cover relations, independent of diagrams.
#[derive(Clone, Debug)]
pub struct AbstractPoset {
    graph: CoverGraph,
}

impl AbstractPoset {
    /// `covers` lists pairs `(lower, upper)` meaning `lower` is covered by
    /// `upper`.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Self> {
        let mut down = vec![Vec::new(); n];
        for &(lower, upper) in covers {
            if lower >= n || upper >= n {
                return Err(Error::InvalidPoset(format!(
                    "cover ({lower},{upper}) out of range for {n} elements"
                )));
            }
            down[upper].push(lower);
        }
        Ok(AbstractPoset {
            graph: CoverGraph::new(down)?,
        })
    }

    pub fn graph(&self) -> &CoverGraph {
        &self.graph
    }

    pub fn is_ranked(&self) -> RankCertificate {
        self.graph.rank_certificate()
    }

    pub fn maximal_chain_lengths(&self, cap: usize) -> Result<BTreeSet<usize>> {
        self.graph.maximal_chain_lengths(cap)
    }

    pub fn is_bounded(&self) -> bool {
        self.graph.maximal().len() == 1 && self.graph.minimal().len() == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // 1<2<3<5 and 2<4<5, zero-based.
    fn diamond_tail() -> AbstractPoset {
        AbstractPoset::from_covers(5, &[(0, 1), (1, 2), (1, 3), (2, 4), (3, 4)]).unwrap()
    }

    #[test]
    fn example_poset_ranks() {
        let cert = diamond_tail().is_ranked();
        assert!(cert.ranked);
        assert_eq!(cert.ranks, Some(vec![0, 1, 2, 2, 3]));
        assert!(cert.witness.is_none());
        assert!(diamond_tail().is_bounded());
    }

    #[test]
    fn example_poset_chain_lengths() {
        let lens = diamond_tail().maximal_chain_lengths(10_000).unwrap();
        assert_eq!(lens, BTreeSet::from([3]));
    }

    #[test]
    fn single_node() {
        let p = AbstractPoset::from_covers(1, &[]).unwrap();
        assert_eq!(p.maximal_chain_lengths(10).unwrap(), BTreeSet::from([0]));
        assert_eq!(p.is_ranked().ranks, Some(vec![0]));
    }

    #[test]
    fn pentagon_is_not_ranked() {
        // 0 < 1 < 2 < 4 and 0 < 3 < 4.
        let p = AbstractPoset::from_covers(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).unwrap();
        let cert = p.is_ranked();
        assert!(!cert.ranked);
        match cert.witness.unwrap() {
            RankWitness::UnequalChains {
                top,
                bottom,
                longer,
                shorter,
            } => {
                assert_eq!((top, bottom), (4, 0));
                assert_eq!(longer, vec![4, 2, 1, 0]);
                assert_eq!(shorter, vec![4, 3, 0]);
            }
            other => panic!("unexpected witness {other:?}"),
        }
        assert_eq!(p.maximal_chain_lengths(10).unwrap(), BTreeSet::from([2, 3]));
    }

    #[test]
    fn zigzag_needs_cycle_witness() {
        // a<b, c<b, c<d<e, a<e: every interval is a chain yet no rank exists.
        let (a, b, c, d, e) = (0, 1, 2, 3, 4);
        let p = AbstractPoset::from_covers(5, &[(a, b), (c, b), (c, d), (d, e), (a, e)]).unwrap();
        let cert = p.is_ranked();
        assert!(!cert.ranked);
        let Some(RankWitness::InconsistentCycle { walk }) = cert.witness else {
            panic!("expected a cycle witness");
        };
        assert_eq!(walk.first(), walk.last());
        let graph = p.graph();
        let mut net = 0i64;
        for w in walk.windows(2) {
            if graph.lower_covers(w[0]).contains(&w[1]) {
                net -= 1;
            } else {
                assert!(graph.upper_covers(w[0]).contains(&w[1]));
                net += 1;
            }
        }
        assert_ne!(net, 0);
    }

    #[test]
    fn disconnected_components_shift_to_zero() {
        let p = AbstractPoset::from_covers(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(p.is_ranked().ranks, Some(vec![0, 1, 0, 1]));
    }

    #[test]
    fn cycles_rejected() {
        assert!(AbstractPoset::from_covers(2, &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn chain_cap() {
        let p = diamond_tail();
        assert!(matches!(
            p.maximal_chain_lengths(4),
            Err(Error::ChainCap { cap: 4, nodes: 5 })
        ));
    }
}
