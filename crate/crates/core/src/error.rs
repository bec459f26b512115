use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("duplicate node id `{0}`")]
    DuplicateNode(String),
    #[error("unknown node id `{0}`")]
    UnknownNode(String),
    #[error("invalid node id `{0}`: ids must be non-empty and contain no whitespace")]
    InvalidNodeId(String),
    #[error("duplicate edge `{0}` -> `{1}`")]
    DuplicateEdge(String, String),
    #[error("weight must be finite and strictly positive, got {0}")]
    NonPositiveWeight(f64),
    #[error("graph has no nodes")]
    EmptyGraph,
    #[error("graph has no edges, edge-mode measure is undefined")]
    NoEdges,
    #[error("seed set is empty")]
    EmptySeedSet,
    #[error("subset size {n} outside 1..={total}")]
    CardinalityOutOfRange { n: usize, total: usize },
    #[error("soiled measure {0} outside [0, 1]")]
    MeasureOutOfRange(f64),
    #[error("expected {expected} values, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("gate degree {0} outside [0, 1]")]
    DegreeOutOfRange(f64),
    #[error("score is not finite")]
    NonFiniteScore,
    #[error("unknown constraint `{0}`")]
    UnknownConstraint(String),
    #[error("invalid constraint `{id}`: {reason}")]
    InvalidConstraint { id: String, reason: String },
    #[error("invalid {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("transaction log is empty")]
    EmptyLog,
    #[error("graph has {nodes} nodes, exhaustive search is capped at {cap}")]
    EnumerationCap { nodes: usize, cap: usize },
    #[error("no candidate satisfies the gate constraints")]
    Infeasible,
    #[error("no gate-feasible starting subset found after {0} attempts")]
    NoFeasibleStart(usize),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
