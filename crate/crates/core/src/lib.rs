//! Kohnert posets of cell diagrams.
//!
//! Builds the closure of a diagram under Kohnert moves, orders it by
//! reachability, and decides whether the resulting poset is bounded and
//! ranked. Closed-form analyzers cover one-cell-per-column, two-row, key and
//! checkered diagrams; the `verify` module cross-checks them against brute
//! force.

pub mod diagram;
pub mod error;
pub mod families;
pub mod io;
pub mod obstruction;
pub mod polynomial;
pub mod poset;
pub mod report;
pub mod verify;

pub use diagram::{Cell, Diagram, MoveResult, MAX_COORD};
pub use error::{Error, Result};
pub use families::checkered::Variant;
pub use families::key::{Composition, PartType, PureDecomposition};
pub use families::two_row::TwoRowProfile;
pub use families::Family;
pub use obstruction::{ObstructionKind, ObstructionWitness};
pub use polynomial::{Monomial, Polynomial};
pub use poset::{kd_closure, AbstractPoset, CoverGraph, KohnertPoset, RankCertificate, RankWitness};
pub use report::AnalysisReport;
pub use verify::{CorpusSpec, VerifyOutcome};

/// Resource caps shared by every entry point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest row or column accepted in an input diagram. At most 64.
    pub max_coord: u32,
    /// Largest closure that will be enumerated.
    pub node_cap: usize,
    /// Largest poset for which maximal chains are enumerated.
    pub chain_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_coord: MAX_COORD,
            node_cap: 1_000_000,
            chain_cap: 10_000,
        }
    }
}

impl Limits {
    pub fn with_node_cap(node_cap: usize) -> Self {
        Limits {
            node_cap,
            ..Limits::default()
        }
    }

    pub fn check(&self, d: &Diagram) -> Result<()> {
        let limit = self.max_coord.min(MAX_COORD);
        let (row, col) = (d.max_row(), d.max_col());
        if row > limit || col > limit {
            return Err(Error::CoordinateLimit { row, col, limit });
        }
        Ok(())
    }
}
