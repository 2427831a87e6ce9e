use thiserror::Error;

/// Errors raised while constructing or querying an [`EmbeddedMap`](crate::map::EmbeddedMap).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("the map has no edges")]
    EmptyEdgeSet,
    #[error("the underlying graph is disconnected")]
    DisconnectedGraph,
    #[error("dart {0} is listed more than once")]
    DuplicateDart(usize),
    #[error("dart {0} is missing from the rotation system or out of range")]
    DanglingDart(usize),
    #[error("vertex {0} has no darts")]
    IsolatedVertex(usize),
    #[error("Euler characteristic {0} does not give a nonnegative integer genus")]
    NonOrientableInconsistency(i64),
    #[error("the subgraph is not connected")]
    SubgraphNotConnected,
    #[error("face {0} of the subgraph is bridged to another face")]
    FaceNotSimple(usize),
    #[error("face index {0} out of range")]
    UnknownFace(usize),
    #[error("polygon soup is inconsistent: {0}")]
    InvalidSoup(String),
}

/// Errors raised by typed-map operations (barycentric subdivision and friends).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BaryError {
    #[error("map is not a barycentric subdivision")]
    NotBarycentric,
    #[error("map is not chamber structured: {0}")]
    NotChamberStructured(String),
    #[error("vertex {vertex} has type {found}, expected {expected}")]
    WrongType { vertex: usize, expected: u8, found: u8 },
    #[error("type vector has length {found}, map has {expected} vertices")]
    TypeLength { expected: usize, found: usize },
    #[error("vertex {0} has a type outside 0..=2")]
    BadType(usize),
    #[error(transparent)]
    Map(#[from] MapError),
}

/// Errors from queries on an application result.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ApplyError {
    #[error("host vertex {0} does not exist")]
    UnknownVertex(usize),
    #[error("host face {0} does not exist")]
    UnknownFace(usize),
}
