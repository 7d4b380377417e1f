//! Crate-wide error type.

/// Errors produced by graph construction, flow counting, and poset operations.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("a DAG needs at least 2 vertices, got {got}")]
    InvalidVertexCount { got: usize },

    #[error("edge ({tail},{head}) is invalid: edges must satisfy 1 <= tail < head <= {vertex_count}")]
    InvalidEdge {
        tail: usize,
        head: usize,
        vertex_count: usize,
    },

    #[error("edge index {index} out of range (graph has {edge_count} edges)")]
    EdgeIndexOutOfRange { index: usize, edge_count: usize },

    #[error("no edge ({tail},{head}) in the graph")]
    NoSuchEdge { tail: usize, head: usize },

    #[error("binary words must have at least one bit")]
    EmptyWord,

    #[error("binary words may only contain '0' and '1', got {ch:?}")]
    InvalidWordChar { ch: char },

    #[error("family operations need n >= 3, got n = {n}")]
    DegenerateFamily { n: usize },

    #[error("graph is not a full DAG with source out-degree {k}")]
    NotInFamily { k: usize },

    #[error("missing consecutive edge ({i},{next})", next = i + 1)]
    MissingSpineEdge { i: usize },

    #[error("the given pair of edges is not nested")]
    PairNotNested,

    #[error("the given pair of edges is not crossed")]
    PairNotCrossed,

    #[error("vertex {vertex} is not interior (need 2 <= i <= {max})")]
    NotInteriorVertex { vertex: usize, max: usize },

    #[error("expected exactly one edge passing over vertex {vertex}, found {found}")]
    OverpassCount { vertex: usize, found: usize },

    #[error("netflow vector has length {got}, the graph needs {want}")]
    NetflowLength { got: usize, want: usize },

    #[error("netflow entries must sum to zero, got {sum}")]
    NetflowSum { sum: i64 },

    #[error("netflow entry a_{vertex} = {value} must be nonnegative here")]
    NegativeNetflowEntry { vertex: usize, value: i64 },

    #[error("partial flow carries {got} values, the edge prefix has {want}")]
    FlowValueCount { got: usize, want: usize },

    #[error("partial flow violates the netflow requirement at vertex {vertex}")]
    FlowInvalidAt { vertex: usize },

    #[error("node at level {level}, but this map only covers levels up to {max}")]
    LevelTooDeep { level: usize, max: usize },

    #[error("node at level {level}, expected level {want}")]
    WrongLevel { level: usize, want: usize },

    #[error("node is not bad: the coordinate swap is only defined on bad nodes")]
    NodeNotBad,

    #[error("graph must have vertex 1 as its only source and its last vertex as its only sink")]
    NotSingleSourceSink,

    #[error("the interior-ones netflow vector needs n >= 2, got n = {n}")]
    WVectorTooSmall { n: usize },

    #[error("count exceeds the 64-bit range")]
    CountOverflow,

    #[error("{what} limit of {limit} exceeded")]
    ResourceLimit { what: &'static str, limit: usize },

    #[error("not a bipartite non-crossing tree: {reason}")]
    InvalidPoset { reason: &'static str },

    #[error("tree is not realizable as a truncated dual: left-most lower element must have degree 1")]
    NotRealizable,

    #[error("relation {index} lies on the spanning path; flips act only on non-path relations")]
    RelationOnPath { index: usize },

    #[error("document schema version {got:?} is not supported (expected {want:?})")]
    SchemaVersion { got: String, want: &'static str },

    #[error("document edge list is not in canonical form")]
    DocumentNotCanonical,

    #[error("document word does not reproduce the document edge list")]
    WordMismatch,

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
