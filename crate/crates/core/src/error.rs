use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cell ({row},{col}) is invalid: rows and columns are 1-based")]
    ZeroCoordinate { row: u32, col: u32 },

    #[error("cell ({row},{col}) exceeds the coordinate limit of {limit}")]
    CoordinateLimit { row: u32, col: u32, limit: u32 },

    #[error("closure exceeded the node cap of {cap} diagrams")]
    NodeCap { cap: usize },

    #[error("chain enumeration is capped at {cap} nodes but the poset has {nodes}")]
    ChainCap { cap: usize, nodes: usize },

    #[error("diagram {0} is not a node of this poset")]
    UnknownNode(String),

    #[error("{lower} is not below {upper} in this poset")]
    NotRelated { lower: String, upper: String },

    #[error("diagram is not a {family} diagram: {reason}")]
    FamilyMismatch { family: &'static str, reason: String },

    #[error("composition {0} is not pure")]
    NotPure(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("diagram has the wrong shape: {0}")]
    Shape(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("corpus of {rows}x{cols} grid exceeds the enumeration guard of {guard} positions")]
    CorpusBound { rows: u32, cols: u32, guard: u32 },

    #[error("unknown claim id `{0}`")]
    UnknownClaim(String),

    #[error("invalid poset: {0}")]
    InvalidPoset(String),
}

impl Error {
    /// True for errors caused by exhausting a configured resource cap.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::NodeCap { .. } | Error::ChainCap { .. } | Error::CorpusBound { .. }
        )
    }

    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
