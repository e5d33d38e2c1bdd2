use crate::mesh::{Dart, EdgeId, ValidationError, VertexId};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown format {0:?}")]
    UnknownFormat(String),
    #[error("missing or malformed field: {0}")]
    Field(String),
    #[error("invalid document: {0}")]
    Invalid(String),
}

#[derive(Debug, thiserror::Error)]
pub enum MeshError {
    #[error(transparent)]
    Validation(#[from] ValidationError),
    #[error("cannot build mesh: {0}")]
    Construction(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
}

/// Errors raised by the embedded-graph moves.
#[derive(Debug, thiserror::Error)]
pub enum MoveError {
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error("no face at dart {0}")]
    NoSuchFace(Dart),
    #[error("dart {0} does not name a hole")]
    NotAHole(Dart),
    #[error("anchor vertices must be distinct")]
    AnchorsNotDistinct,
    #[error("vertex {0} is not on the face walk")]
    AnchorNotOnFace(VertexId),
    #[error("vertex {0} does not exist")]
    NoSuchVertex(VertexId),
    #[error("{a} is not adjacent to {v}")]
    NotAdjacent { v: VertexId, a: VertexId },
    #[error("face is not a triangle")]
    NotATriangle,
    #[error("face at {0} is already a hole")]
    AlreadyHole(Dart),
    #[error("face shares vertex {0} with an existing hole")]
    TouchesHole(VertexId),
    #[error("hole walk is not a cycle")]
    HoleNotCycle,
    #[error("edge {0} does not exist")]
    NoSuchEdge(EdgeId),
    #[error("edge {0} is on or next to a hole")]
    EdgeNotInterior(EdgeId),
    #[error("hole lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("alignment vertex {0} is not on the hole")]
    BadAlignment(VertexId),
    #[error("gluing would break simplicity: {0}")]
    Simplicity(String),
    #[error("region boundary does not match the given cycle")]
    RegionBoundary,
    #[error("invalid parameter: {0}")]
    Parameter(String),
}

#[derive(Debug, thiserror::Error)]
pub enum GirthError {
    #[error("girth inequalities presuppose f(G) = 6, got {0}")]
    MaxwellNotSix(i64),
    #[error("{edges} edges exceed the enumeration budget {budget}; use targeted mode")]
    Budget { edges: usize, budget: usize },
    #[error("superface is not balanced and simple")]
    NotBalancedSimple,
    #[error("no interior edge on any violating boundary walk")]
    NoInteriorEdge,
    #[error("graph is not tight but no violating superface was found")]
    NoWitness,
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error(transparent)]
    Mesh(#[from] MeshError),
}

/// Problems with a `tree-spec/1` document.
#[derive(Debug, thiserror::Error)]
pub enum SpecError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("duplicate node id {0}")]
    DuplicateId(usize),
    #[error("root {0} is not a node")]
    MissingRoot(usize),
    #[error("node {parent} lists unknown child {child}")]
    UnknownChild { parent: usize, child: usize },
    #[error("node {0} has more than two children")]
    TooManyChildren(usize),
    #[error("node {0} is reachable twice or is the root's ancestor")]
    NotATree(usize),
    #[error("node {0} is not reachable from the root")]
    Unreachable(usize),
    #[error("root must be labelled S0, found {0}")]
    RootNotSphere(String),
    #[error("node {0} has two children and must be labelled S0")]
    BranchNotSphere(usize),
    #[error("leaf {0} has no tail")]
    MissingTail(usize),
    #[error("node {0} has children and a tail")]
    TailOnInternal(usize),
    #[error("ray tail of node {0} has an empty unit")]
    EmptyUnit(usize),
}
