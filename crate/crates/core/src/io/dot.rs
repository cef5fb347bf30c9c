use std::collections::BTreeMap;
use std::fmt::Write;

use crate::poset::{KohnertPoset, RankCertificate};

/// Graphviz rendering of the Hasse diagram. Edges run from the greater
/// diagram to the lesser one. When `ranks` holds a successful certificate,
/// nodes of equal rank are grouped with `rank=same`.
pub fn to_dot(p: &KohnertPoset, ranks: Option<&RankCertificate>) -> String {
    let mut out = String::from("digraph kohnert {\n  node [shape=box, fontname=\"monospace\"];\n");
    for (id, d) in p.nodes().iter().enumerate() {
        writeln!(out, "  n{id} [label=\"{}\"];", d.to_pairs_string()).unwrap();
    }
    for (u, v) in p.cover_edges() {
        writeln!(out, "  n{u} -> n{v};").unwrap();
    }
    if let Some(ranks) = ranks.and_then(|c| c.ranks.as_ref()) {
        let mut levels: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (id, &r) in ranks.iter().enumerate() {
            levels.entry(r).or_default().push(id);
        }
        for (r, ids) in levels.iter().rev() {
            let names: Vec<String> = ids.iter().map(|id| format!("n{id};")).collect();
            writeln!(out, "  {{ rank=same; /* rank {r} */ {} }}", names.join(" ")).unwrap();
        }
    }
    out.push_str("}\n");
    out
}
