use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// The variants fall into two families: input errors (malformed or
/// inconsistent inputs) and size-cap errors, where the
/// request is well formed but exceeds one of the exhaustive-search limits.
/// [`Error::is_size_cap`] tells them apart.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("schema error: {0}")]
    Schema(String),

    #[error("unknown node id: {0}")]
    UnknownNode(String),

    #[error("unknown edge id: {0}")]
    UnknownEdgeId(String),

    #[error("duplicate id: {0}")]
    DuplicateId(String),

    #[error("cycle detected involving node {0}")]
    CycleDetected(String),

    #[error("source node {0} has an incoming edge")]
    SourceHasInEdge(String),

    #[error("sink node {0} has an outgoing edge")]
    SinkHasOutEdge(String),

    #[error("node {0} has no directed path to the sink")]
    UnreachableNode(String),

    #[error("bad distribution: {0}")]
    BadDistribution(String),

    #[error("target function is constant")]
    ConstantFunction,

    #[error("edge set is not a cut set (I_C is empty)")]
    NotACutSet,

    #[error("source sets overlap")]
    OverlappingSets,

    #[error("message domain of {size} entries exceeds the cap of {cap}")]
    DomainTooLarge { size: u128, cap: u128 },

    #[error("index {0} does not name an equivalence class")]
    NotAClass(usize),

    #[error("{what}: size {size} exceeds the cap of {cap}")]
    TooLarge { what: String, size: usize, cap: usize },

    #[error("empty list of graphs")]
    EmptyList,

    #[error("vertex subset is not autonomous")]
    NotAutonomous,

    #[error("vertex subset has zero probability mass")]
    ZeroMass,

    #[error("graph entropy solver did not converge within {iterations} iterations (gap {gap:e})")]
    NoConvergence { iterations: usize, gap: f64 },

    #[error("search space exceeded: {0}")]
    SearchSpaceExceeded(String),

    #[error("optimizer failed: {0}")]
    OptimizerFailed(String),

    #[error("infeasible distribution spec: {0}")]
    InfeasibleSpec(String),

    #[error("codeword set contains the empty word")]
    EmptyWord,

    #[error("code does not match the model: {0}")]
    DomainMismatch(String),

    #[error("number of shots must be even, got {0}")]
    OddK(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for errors caused by an exhaustive-search size limit rather than
    /// by bad input.
    pub fn is_size_cap(&self) -> bool {
        matches!(
            self,
            Error::DomainTooLarge { .. } | Error::TooLarge { .. } | Error::SearchSpaceExceeded(_)
        )
    }

    /// Variant name, for one-line diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Schema(_) => "Schema",
            Error::UnknownNode(_) => "UnknownNode",
            Error::UnknownEdgeId(_) => "UnknownEdgeId",
            Error::DuplicateId(_) => "DuplicateId",
            Error::CycleDetected(_) => "CycleDetected",
            Error::SourceHasInEdge(_) => "SourceHasInEdge",
            Error::SinkHasOutEdge(_) => "SinkHasOutEdge",
            Error::UnreachableNode(_) => "UnreachableNode",
            Error::BadDistribution(_) => "BadDistribution",
            Error::ConstantFunction => "ConstantFunction",
            Error::NotACutSet => "NotACutSet",
            Error::OverlappingSets => "OverlappingSets",
            Error::DomainTooLarge { .. } => "DomainTooLarge",
            Error::NotAClass(_) => "NotAClass",
            Error::TooLarge { .. } => "TooLarge",
            Error::EmptyList => "EmptyList",
            Error::NotAutonomous => "NotAutonomous",
            Error::ZeroMass => "ZeroMass",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::SearchSpaceExceeded(_) => "SearchSpaceExceeded",
            Error::OptimizerFailed(_) => "OptimizerFailed",
            Error::InfeasibleSpec(_) => "InfeasibleSpec",
            Error::EmptyWord => "EmptyWord",
            Error::DomainMismatch(_) => "DomainMismatch",
            Error::OddK(_) => "OddK",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }

    pub(crate) fn too_large(what: &str, size: usize, cap: usize) -> Self {
        Error::TooLarge { what: what.to_string(), size, cap }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
