//! Brute-force cross-checks of the closed-form results.
//!
//! Each claim runs an invariant over a finite, fully enumerated corpus and
//! reports every failing instance. Sweeps never stop at the first failure.

mod corpus;

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use corpus::{compositions, enumerate_corpus, two_row_corpus, CorpusSpec};

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::families::checkered::{self, Variant};
use crate::families::key::{self, Composition};
use crate::families::{one_column, two_row, Family};
use crate::obstruction;
use crate::polynomial::polynomial_of_poset;
use crate::poset::{kd_closure, KohnertPoset};
use crate::Limits;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub instance: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOutcome {
    pub claim: String,
    pub instances: usize,
    pub passed: bool,
    pub failures: Vec<Failure>,
    /// Unranked closures in which no obstruction was found.
    pub obstruction_gaps: Vec<String>,
    /// Free-form observations, such as computed counts.
    pub details: Vec<String>,
}

impl VerifyOutcome {
    fn new(claim: &str, instances: usize, failures: Vec<Failure>) -> Self {
        VerifyOutcome {
            claim: claim.to_string(),
            instances,
            passed: failures.is_empty(),
            failures,
            obstruction_gaps: Vec::new(),
            details: Vec::new(),
        }
    }
}

impl fmt::Display for VerifyOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status}  {:<40} {:>6} instances  {:>3} failures",
            self.claim,
            self.instances,
            self.failures.len()
        )?;
        for d in &self.details {
            write!(f, "\n      {d}")?;
        }
        for fail in self.failures.iter().take(10) {
            write!(
                f,
                "\n      {}: expected {}, got {}",
                fail.instance, fail.expected, fail.actual
            )?;
        }
        if self.failures.len() > 10 {
            write!(f, "\n      ... {} more", self.failures.len() - 10)?;
        }
        if !self.obstruction_gaps.is_empty() {
            write!(f, "\n      {} unranked without a known obstruction", self.obstruction_gaps.len())?;
        }
        Ok(())
    }
}

/// Corpus bounds for every claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    /// Generic diagrams.
    pub grid: CorpusSpec,
    /// Smaller grid for the quadratic interval check.
    pub interval_grid: CorpusSpec,
    pub two_row_max_r2: u32,
    pub two_row_max_cols: u32,
    pub key_max_entry: u32,
    pub key_len: usize,
    /// Compositions checked without closures (pattern and decomposition claims).
    pub pattern_max_entry: u32,
    pub pattern_len: usize,
    pub checkered_max_n: u32,
    pub staircase_max_m: u32,
    #[serde(skip, default)]
    pub limits: Limits,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            grid: CorpusSpec::grid(3, 4),
            interval_grid: CorpusSpec::grid(3, 3),
            two_row_max_r2: 4,
            two_row_max_cols: 6,
            key_max_entry: 3,
            key_len: 4,
            pattern_max_entry: 4,
            pattern_len: 6,
            checkered_max_n: 5,
            staircase_max_m: 3,
            limits: Limits::default(),
        }
    }
}

/// Claim identifiers with a one-line description each.
pub const CLAIMS: &[(&str, &str)] = &[
    ("prop-decreasing-columns-bounded", "weakly decreasing column counts give a bounded poset"),
    ("lem-interval-column-agreement", "diagrams in [D2,D1] agree with both ends wherever the ends agree above (or below) a row in a column"),
    ("cor-obstruction-soundness", "a detected obstruction anywhere in the closure means not ranked"),
    ("thm-one-column-bounded", "one cell per column: bounded, minimum is the bottom row"),
    ("thm-one-column-ranked", "one cell per column: ranked by rowsum - b"),
    ("thm-two-row-min-count", "two rows: |Min| = |left r1 columns| + 1, or 1 when r1 = 1"),
    ("lem-two-row-minimal-structure", "two rows: minimal elements are exactly the closure members meeting the structural conditions"),
    ("lem-two-row-lifted-base", "two rows with 1 < r1: (2|cols r1) ∪ (3|cols r2) is reachable"),
    ("thm-two-row-bounded", "two rows: bounded iff r1 = 1 or no left r1 column"),
    ("thm-two-row-ranked", "two rows: ranked iff r1 = 1 or (no right column and at most one block); rank is rowsum - b"),
    ("rem-two-row-b", "two rows: b matches the column-count formula"),
    ("cor-two-row-ranked-implies-bounded", "two rows: ranked implies bounded"),
    ("thm-key-bounded", "key diagrams: unique minimal element D(sort(a))"),
    ("thm-key-ranked-iff-pure", "key diagrams: ranked iff a is pure, with rank rowsum - b"),
    ("lem-key-row-swap", "key diagrams: D(a s_ij) lies in the closure when i < j and a_i < a_j"),
    ("lem-pure-consequences", "pure compositions: a_j - a_i = 1 caps entries after j at a_j, a_j - a_i > 1 caps them at a_i"),
    ("lem-pure-decomposition", "pure compositions decompose into ordered parts of types i-iv"),
    ("pure-pattern-scans-agree", "three-pattern and two-pattern purity scans agree"),
    ("pure-multiplicity-free", "pure compositions give multiplicity-free Kohnert polynomials"),
    ("thm-checkered-ranked", "checkered: ranked iff n <= 3"),
    ("thm-checkered-min-count", "checkered: |Min| = 1 for even n, C(2m,m) for odd n"),
    ("thm-checkered-bounded", "checkered: bounded iff Ch^1_1 or n even"),
    ("cor-checkered-kd-count", "|KD(D_m)| = C(2m,m)"),
    ("lem-checkered-er-sequence", "T in KD(D_m) iff its empty-row sequence is weakly increasing"),
    ("thm-checkered-bijection", "phi and its inverse are mutually inverse between Min(Ch_n) and KD(D_m)"),
    ("lem-checkered-property-star", "every diagram in KD(Ch_n), n odd, has property (*)"),
    ("rowsum-rank-not-general", "rowsum - b is not a rank function for {(2,1),(3,1),(1,2),(2,2)}"),
];

pub fn claim_ids() -> impl Iterator<Item = &'static str> {
    CLAIMS.iter().map(|&(id, _)| id)
}

fn fail(instance: impl fmt::Display, expected: impl fmt::Display, actual: impl fmt::Display) -> Failure {
    Failure {
        instance: instance.to_string(),
        expected: expected.to_string(),
        actual: actual.to_string(),
    }
}

/// Runs `check` on every instance in parallel; errors become failures.
fn sweep<T: Sync + fmt::Display>(
    claim: &str,
    instances: &[T],
    check: impl Fn(&T) -> Result<Vec<Failure>> + Sync,
) -> VerifyOutcome {
    let failures: Vec<Failure> = instances
        .par_iter()
        .flat_map_iter(|x| match check(x) {
            Ok(fs) => fs,
            Err(e) => vec![fail(x, "successful analysis", format!("error: {e}"))],
        })
        .collect();
    VerifyOutcome::new(claim, instances.len(), failures)
}

fn expect(cond: bool, instance: impl fmt::Display, expected: impl fmt::Display, actual: impl fmt::Display) -> Vec<Failure> {
    if cond {
        Vec::new()
    } else {
        vec![fail(instance, expected, actual)]
    }
}

fn closure(d: &Diagram, cfg: &VerifyConfig) -> Result<KohnertPoset> {
    kd_closure(d, &cfg.limits)
}

fn checkered_cases(cfg: &VerifyConfig) -> Vec<CheckeredCase> {
    (1..=cfg.checkered_max_n)
        .flat_map(|n| [Variant::One, Variant::Two].map(|v| CheckeredCase(n, v)))
        .collect()
}

#[derive(Clone, Copy)]
struct CheckeredCase(u32, Variant);

impl fmt::Display for CheckeredCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ch^{}_{}", self.1, self.0)
    }
}

impl CheckeredCase {
    /// The empty `Ch^2_1` follows a convention rather than the theorems.
    fn is_convention(self) -> bool {
        self.0 == 1 && self.1 == Variant::Two
    }
}

fn rank_labeling_ok(p: &KohnertPoset) -> bool {
    p.rowsum_labeling_is_rank()
}

/// Runs one claim over its default corpus.
pub fn check_claim(id: &str, cfg: &VerifyConfig) -> Result<VerifyOutcome> {
    let out = match id {
        "prop-decreasing-columns-bounded" => {
            let corpus: Vec<Diagram> = enumerate_corpus(&cfg.grid)?
                .into_iter()
                .filter(|d| d.column_counts().windows(2).all(|w| w[0] >= w[1]))
                .collect();
            sweep(id, &corpus, |d| {
                let p = closure(d, cfg)?;
                Ok(expect(p.is_bounded(), d, "bounded", format!("{} minimal elements", p.minimal_ids().len())))
            })
        }
        "lem-interval-column-agreement" => {
            let corpus = enumerate_corpus(&cfg.interval_grid)?;
            sweep(id, &corpus, |d| Ok(interval_agreement_failures(d, &closure(d, cfg)?)))
        }
        "cor-obstruction-soundness" => {
            let corpus = enumerate_corpus(&cfg.grid)?;
            let gaps: Vec<(Vec<Failure>, Option<String>)> = corpus
                .par_iter()
                .map(|d| match closure(d, cfg) {
                    Err(e) => (vec![fail(d, "closure", format!("error: {e}"))], None),
                    Ok(p) => {
                        let ranked = p.is_ranked().ranked;
                        match obstruction::scan_nodes(p.nodes()) {
                            Some(w) if ranked => (
                                vec![fail(d, "not ranked", format!("ranked, yet {:?} found in {}", w.kind, w.diagram))],
                                None,
                            ),
                            Some(w) if !w.validate() => {
                                (vec![fail(d, "self-validating witness", "witness failed validation")], None)
                            }
                            None if !ranked => (Vec::new(), Some(d.to_pairs_string())),
                            _ => (Vec::new(), None),
                        }
                    }
                })
                .collect();
            let mut out = VerifyOutcome::new(
                id,
                corpus.len(),
                gaps.iter().flat_map(|(f, _)| f.iter().cloned()).collect(),
            );
            out.obstruction_gaps = gaps.into_iter().filter_map(|(_, g)| g).collect();
            out
        }
        "thm-one-column-bounded" | "thm-one-column-ranked" => {
            let corpus = enumerate_corpus(&cfg.grid.clone().with_family(Family::OnePerColumn))?;
            let ranked_claim = id == "thm-one-column-ranked";
            sweep(id, &corpus, |d| {
                let p = closure(d, cfg)?;
                if ranked_claim {
                    let cert = p.is_ranked();
                    let root_rank = cert.ranks.as_ref().map(|r| r[0] as u64);
                    let expected = d.rowsum() - d.size() as u64;
                    Ok(expect(
                        cert.ranked && rank_labeling_ok(&p) && root_rank == Some(expected),
                        d,
                        format!("ranked by rowsum - b with root rank {expected}"),
                        format!("ranked={}, root rank {root_rank:?}", cert.ranked),
                    ))
                } else {
                    let want = vec![one_column::one_per_column_min(d)];
                    let got = p.minimal_elements();
                    Ok(expect(got == want, d, fmt_set(&want), fmt_set(&got)))
                }
            })
        }
        "thm-two-row-min-count"
        | "lem-two-row-minimal-structure"
        | "lem-two-row-lifted-base"
        | "thm-two-row-bounded"
        | "thm-two-row-ranked"
        | "rem-two-row-b"
        | "cor-two-row-ranked-implies-bounded" => {
            let corpus = two_row_corpus(cfg.two_row_max_r2, cfg.two_row_max_cols);
            let mut out = sweep(id, &corpus, |d| two_row_check(id, d, cfg));
            if id == "cor-two-row-ranked-implies-bounded" && !out.passed {
                let predicted = out
                    .failures
                    .iter()
                    .filter(|f| {
                        crate::io::parse_pairs(&f.instance)
                            .ok()
                            .and_then(|d| two_row::two_row_profile(&d).ok())
                            .is_some_and(|p| ranked_but_unbounded(&p))
                    })
                    .count();
                out.details.push(format!(
                    "{predicted} of {} failures have r1 > 1, a left r1 column, one block and nothing right of it",
                    out.failures.len()
                ));
            }
            out
        }
        "thm-key-bounded" | "thm-key-ranked-iff-pure" | "lem-key-row-swap" | "pure-multiplicity-free" => {
            let corpus = compositions(cfg.key_max_entry, cfg.key_len);
            sweep(id, &corpus, |a| key_check(id, a, cfg))
        }
        "lem-pure-consequences" | "lem-pure-decomposition" | "pure-pattern-scans-agree" => {
            let corpus = compositions(cfg.pattern_max_entry, cfg.pattern_len);
            sweep(id, &corpus, |a| Ok(pattern_check(id, a)))
        }
        "thm-checkered-ranked" | "thm-checkered-min-count" | "thm-checkered-bounded" => {
            let cases: Vec<CheckeredCase> =
                checkered_cases(cfg).into_iter().filter(|c| !c.is_convention()).collect();
            let mut out = sweep(id, &cases, |&c| {
                let CheckeredCase(n, v) = c;
                let p = closure(&checkered::checkered(n, v), cfg)?;
                let report = checkered::checkered_report(n, v);
                Ok(match id {
                    "thm-checkered-ranked" => {
                        let got = p.is_ranked().ranked;
                        expect(got == report.ranked, c, report.ranked, got)
                    }
                    "thm-checkered-min-count" => {
                        let got = p.minimal_ids().len() as u64;
                        let mut fs = expect(got == report.min_count, c, report.min_count, got);
                        let closed: BTreeSet<Diagram> =
                            checkered::checkered_minimal_elements(n, v).into_iter().collect();
                        let brute: BTreeSet<Diagram> = p.minimal_elements().into_iter().collect();
                        fs.extend(expect(closed == brute, c, "closed-form minimal elements", "a different set"));
                        fs
                    }
                    _ => {
                        let got = p.is_bounded();
                        expect(got == report.bounded, c, report.bounded, got)
                    }
                })
            });
            out.details.push("Ch^2_1 (empty) excluded: handled by the KD(∅) = {∅} convention".into());
            out
        }
        "cor-checkered-kd-count" | "lem-checkered-er-sequence" => {
            let ms: Vec<u32> = (1..=cfg.staircase_max_m).collect();
            let er_claim = id == "lem-checkered-er-sequence";
            let counts: Vec<(u32, usize)> = ms
                .iter()
                .filter_map(|&m| closure(&checkered::staircase(m), cfg).ok().map(|p| (m, p.len())))
                .collect();
            let mut out = sweep(id, &ms, |&m| {
                let p = closure(&checkered::staircase(m), cfg)?;
                if er_claim {
                    let got: BTreeSet<Vec<u32>> = p
                        .nodes()
                        .iter()
                        .map(|t| checkered::er_sequence(t, m))
                        .collect::<Result<_>>()?;
                    let want: BTreeSet<Vec<u32>> =
                        checkered::weakly_increasing_sequences(m).into_iter().collect();
                    let mut fs = expect(got == want, m, format!("{} increasing sequences", want.len()), format!("{} sequences", got.len()));
                    let members = p.nodes().iter().all(|t| checkered::is_in_kd_dm(t, m).unwrap_or(false));
                    fs.extend(expect(members, m, "every node recognized", "some node rejected"));
                    Ok(fs)
                } else {
                    let want = checkered::kd_dm_count(m);
                    Ok(expect(p.len() as u64 == want, format!("m={m}"), want, p.len()))
                }
            });
            if !er_claim {
                let list: Vec<String> = counts.iter().map(|(_, n)| n.to_string()).collect();
                out.details.push(format!("|KD(D_m)| for m = 1..={}: {}", cfg.staircase_max_m, list.join(", ")));
            }
            out
        }
        "thm-checkered-bijection" => {
            let cases: Vec<CheckeredCase> = checkered_cases(cfg)
                .into_iter()
                .filter(|c| c.0 % 2 == 1 && !c.is_convention())
                .collect();
            sweep(id, &cases, |&c| {
                let CheckeredCase(n, v) = c;
                let p = closure(&checkered::checkered(n, v), cfg)?;
                let m = n / 2;
                let target: BTreeSet<Diagram> = if m == 0 {
                    BTreeSet::from([Diagram::new()])
                } else {
                    closure(&checkered::staircase(m), cfg)?.nodes().iter().cloned().collect()
                };
                let mut fs = Vec::new();
                let mut image = BTreeSet::new();
                for t in p.minimal_elements() {
                    let d = checkered::checkered_phi(&t, n, v)?;
                    let back = checkered::checkered_phi_inv(&d, n, v)?;
                    fs.extend(expect(back == t, format!("{c}: {t}"), &t, &back));
                    image.insert(d);
                }
                fs.extend(expect(image == target, c, format!("image KD(D_{m}) of size {}", target.len()), format!("image of size {}", image.len())));
                Ok(fs)
            })
        }
        "lem-checkered-property-star" => {
            let cases: Vec<CheckeredCase> = checkered_cases(cfg)
                .into_iter()
                .filter(|c| c.0 % 2 == 1)
                .collect();
            sweep(id, &cases, |&c| {
                let CheckeredCase(n, v) = c;
                let p = closure(&checkered::checkered(n, v), cfg)?;
                Ok(p.nodes()
                    .iter()
                    .filter(|t| !checkered::property_star_holds(t, n))
                    .map(|t| fail(format!("{c}: {t}"), "property (*)", "violated"))
                    .collect())
            })
        }
        "rowsum-rank-not-general" => {
            let d = Diagram::from_pairs(&[(2, 1), (3, 1), (1, 2), (2, 2)])?;
            let p = closure(&d, cfg)?;
            let mut out = VerifyOutcome::new(
                id,
                1,
                expect(!rank_labeling_ok(&p), &d, "rowsum - b is not a rank function", "it is"),
            );
            out.details.push(format!("brute-force verdict for {d}: ranked = {}", p.is_ranked().ranked));
            out
        }
        _ => return Err(Error::UnknownClaim(id.to_string())),
    };
    Ok(out)
}

fn fmt_set(ds: &[Diagram]) -> String {
    let parts: Vec<String> = ds.iter().map(|d| format!("{{{d}}}")).collect();
    format!("[{}]", parts.join(" "))
}

fn two_row_check(id: &str, d: &Diagram, cfg: &VerifyConfig) -> Result<Vec<Failure>> {
    let profile = two_row::two_row_profile(d)?;
    if id == "lem-two-row-lifted-base" {
        if profile.r1 == 1 {
            return Ok(Vec::new());
        }
        let p = closure(d, cfg)?;
        let base = profile.lifted_base();
        return Ok(expect(p.contains(&base), d, format!("{base} reachable"), "not reachable"));
    }
    let p = closure(d, cfg)?;
    Ok(match id {
        "thm-two-row-min-count" => {
            let got = p.minimal_ids().len() as u64;
            expect(got == profile.min_count(), d, profile.min_count(), got)
        }
        "lem-two-row-minimal-structure" => {
            let mut fs = Vec::new();
            let minimal: BTreeSet<usize> = p.minimal_ids().iter().copied().collect();
            for (u, t) in p.nodes().iter().enumerate() {
                let structural = two_row::two_row_is_minimal(d, t)?;
                if structural != minimal.contains(&u) {
                    fs.push(fail(format!("{d} -> {t}"), minimal.contains(&u), structural));
                }
            }
            let closed: BTreeSet<Diagram> = profile.minimal_elements().into_iter().collect();
            let brute: BTreeSet<Diagram> = p.minimal_elements().into_iter().collect();
            fs.extend(expect(closed == brute, d, "closed-form minimal elements", "a different set"));
            fs
        }
        "thm-two-row-bounded" => expect(p.is_bounded() == profile.bounded(), d, profile.bounded(), p.is_bounded()),
        "thm-two-row-ranked" => {
            let got = p.is_ranked().ranked;
            let mut fs = expect(got == profile.ranked(), d, profile.ranked(), got);
            if profile.ranked() {
                fs.extend(expect(rank_labeling_ok(&p), d, "rank rowsum - b", "labeling fails"));
            }
            fs
        }
        "rem-two-row-b" => expect(p.b_value() == profile.b(), d, profile.b(), p.b_value()),
        _ => {
            let ranked = p.is_ranked().ranked;
            expect(!ranked || p.is_bounded(), d, "bounded when ranked", "ranked but unbounded")
        }
    })
}

/// The two-row shapes that the ranked and bounded characterizations together
/// place on the ranked side but not the bounded side.
pub fn ranked_but_unbounded(p: &two_row::TwoRowProfile) -> bool {
    p.ranked() && !p.bounded()
}

fn key_check(id: &str, a: &Composition, cfg: &VerifyConfig) -> Result<Vec<Failure>> {
    let d = key::key_diagram(a);
    let p = closure(&d, cfg)?;
    Ok(match id {
        "thm-key-bounded" => {
            let want = vec![key::key_min(a)];
            let got = p.minimal_elements();
            expect(got == want, a, fmt_set(&want), fmt_set(&got))
        }
        "thm-key-ranked-iff-pure" => {
            let pure = key::is_pure(a);
            let ranked = p.is_ranked().ranked;
            let mut fs = expect(ranked == pure, a, format!("ranked = {pure}"), ranked);
            if pure {
                fs.extend(expect(rank_labeling_ok(&p), a, "rank rowsum - b", "labeling fails"));
            }
            fs
        }
        "lem-key-row-swap" => {
            let n = a.len();
            let mut fs = Vec::new();
            for i in 1..=n {
                for j in i + 1..=n {
                    if a.entries()[i - 1] < a.entries()[j - 1] {
                        let s = key::row_swap_member(a, i, j)?;
                        if !p.contains(&s) {
                            fs.push(fail(format!("{a} swap ({i},{j})"), "member of closure", "absent"));
                        }
                    }
                }
            }
            fs
        }
        _ => {
            if key::is_pure(a) {
                let poly = polynomial_of_poset(&p);
                expect(poly.is_multiplicity_free(), a, "multiplicity-free", poly)
            } else {
                Vec::new()
            }
        }
    })
}

fn pattern_check(id: &str, a: &Composition) -> Vec<Failure> {
    let e = a.entries();
    match id {
        "pure-pattern-scans-agree" => {
            let (two, three) = (key::is_pure_two_patterns(a), key::is_pure_three_patterns(a));
            expect(two == three, a, format!("three-pattern scan {three}"), format!("two-pattern scan {two}"))
        }
        "lem-pure-decomposition" => match key::pure_decompose(a) {
            Ok(dec) => expect(dec.is_valid_for(a), a, "valid typed decomposition", format!("{dec:?}")),
            Err(Error::NotPure(_)) if !key::is_pure(a) => Vec::new(),
            Err(err) => vec![fail(a, "decomposition", err)],
        },
        _ => {
            if !key::is_pure(a) {
                return Vec::new();
            }
            let n = e.len();
            let mut fs = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    let cap = match e[j].checked_sub(e[i]) {
                        Some(1) => e[j],
                        Some(d) if d > 1 => e[i],
                        _ => continue,
                    };
                    if let Some(k) = (j + 1..n).find(|&k| e[k] > cap) {
                        fs.push(fail(a, format!("a_k <= {cap} for k > {}", j + 1), format!("a_{} = {}", k + 1, e[k])));
                    }
                }
            }
            fs
        }
    }
}

/// Checks, for every related pair `D2 ≺ D1` of the closure, that members of
/// `[D2, D1]` agree with both ends on each column segment where the ends
/// agree (at or above a row, and at or below a row).
fn interval_agreement_failures(d0: &Diagram, p: &KohnertPoset) -> Vec<Failure> {
    let reach = p.reachability();
    let n = p.len();
    let cols = d0.max_col();
    let rows = d0.max_row();
    let at_or_above = |r: u32| if r > 64 { 0 } else { u64::MAX << (r - 1) };
    let at_or_below = |r: u32| u64::MAX >> (64 - r);
    let mut fs = Vec::new();
    for hi in 0..n {
        for lo in 0..n {
            if hi == lo || !reach[hi][lo] {
                continue;
            }
            let between: Vec<usize> = (0..n).filter(|&z| reach[hi][z] && reach[z][lo]).collect();
            let (a, b) = (p.node(lo), p.node(hi));
            for c in 1..=cols {
                let (ma, mb) = (a.column_mask(c), b.column_mask(c));
                // Smallest row with agreement at and above it; largest with
                // agreement at and below it.
                let top = (1..=rows + 1).find(|&r| ma & at_or_above(r) == mb & at_or_above(r));
                let bottom = (1..=rows).rev().find(|&r| ma & at_or_below(r) == mb & at_or_below(r));
                for &z in &between {
                    let mz = p.node(z).column_mask(c);
                    if let Some(r) = top {
                        if mz & at_or_above(r) != ma & at_or_above(r) {
                            fs.push(fail(
                                format!("{d0}: [{a}, {b}] column {c}"),
                                format!("agreement at rows >= {r}"),
                                p.node(z),
                            ));
                        }
                    }
                    if let Some(r) = bottom {
                        if mz & at_or_below(r) != ma & at_or_below(r) {
                            fs.push(fail(
                                format!("{d0}: [{a}, {b}] column {c}"),
                                format!("agreement at rows <= {r}"),
                                p.node(z),
                            ));
                        }
                    }
                }
            }
        }
    }
    fs
}

/// Grid diagrams whose closure is unranked while no obstruction is found,
/// plus the brute-force verdict for the diagram on which `rowsum - b` fails.
pub fn obstruction_gap_probe(spec: &CorpusSpec, limits: &Limits) -> Result<VerifyOutcome> {
    let corpus = enumerate_corpus(spec)?;
    let results: Vec<std::result::Result<Option<String>, Failure>> = corpus
        .par_iter()
        .map(|d| {
            let p = kd_closure(d, limits).map_err(|e| fail(d, "closure", format!("error: {e}")))?;
            let ranked = p.is_ranked().ranked;
            Ok((!ranked && obstruction::scan_nodes(p.nodes()).is_none()).then(|| d.to_pairs_string()))
        })
        .collect();
    let mut failures = Vec::new();
    let mut gaps = Vec::new();
    for r in results {
        match r {
            Ok(Some(g)) => gaps.push(g),
            Ok(None) => {}
            Err(f) => failures.push(f),
        }
    }
    let mut out = VerifyOutcome::new("obstruction-gap-probe", corpus.len(), failures);
    out.obstruction_gaps = gaps;
    let special = Diagram::from_pairs(&[(2, 1), (3, 1), (1, 2), (2, 2)])?;
    let p = kd_closure(&special, limits)?;
    out.details.push(format!(
        "{special}: ranked = {}, rowsum - b is a rank function = {}",
        p.is_ranked().ranked,
        p.rowsum_labeling_is_rank()
    ));
    Ok(out)
}

/// Runs every claim in `ids` (or all claims when `ids` is empty).
pub fn check_claims(ids: &[String], cfg: &VerifyConfig) -> Result<Vec<VerifyOutcome>> {
    let chosen: Vec<String> = if ids.is_empty() || ids.iter().any(|s| s == "all") {
        claim_ids().map(String::from).collect()
    } else {
        ids.to_vec()
    };
    for id in &chosen {
        if !claim_ids().any(|c| c == id) {
            return Err(Error::UnknownClaim(id.clone()));
        }
    }
    chosen.iter().map(|id| check_claim(id, cfg)).collect()
}
