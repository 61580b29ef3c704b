use thiserror::Error;

use crate::graph::{Vertex, VertexPair};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),
    #[error("edge {0} not found")]
    EdgeNotFound(VertexPair),
    #[error("vertex {0} not found")]
    VertexNotFound(Vertex),
    #[error("minor target has {0} vertices; the search supports at most {max}", max = crate::graph::minor::MAX_TARGET_VERTICES)]
    MinorTargetTooLarge(usize),
    #[error("graph is not connected")]
    GraphNotConnected,
    #[error("graph is not a partial {0}-tree")]
    NotPartialKTree(usize),
    #[error("{0} is an edge, expected a non-edge")]
    NotANonEdge(VertexPair),
    #[error("bad parameter set: {0}")]
    BadParameterSet(String),
    #[error("bad interval [{lo}, {hi}] on edge {edge}")]
    BadInterval { edge: VertexPair, lo: f64, hi: f64 },
    #[error("bad edge weight on {edge}: {reason}")]
    BadWeight { edge: VertexPair, reason: String },
    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),
    #[error("classification needs at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("parameter set does not yield a linear polytope; offending components: {0}")]
    NotPolytopeRepresentable(String),
    #[error("empty configuration space at {0}")]
    EmptyConfigurationSpace(String),
    #[error("unbounded configuration space at parameter {0}")]
    UnboundedConfigurationSpace(VertexPair),
    #[error("interval weights must be subdivided first")]
    IntervalWeights,
    #[error("no realization: vertex {vertex} cannot be placed")]
    NotRealizable { vertex: Vertex },
    #[error("configuration lies outside the Cayley configuration space")]
    ConfigOutsideSpace,
    #[error("component {0} is not constructible; a base realization is required")]
    BaseRealizationRequired(String),
    #[error("realization is missing coordinates for vertex {0}")]
    IncompleteRealization(Vertex),
    #[error("no witness: the characterization holds")]
    NoWitness,
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("oracle not applicable: {0}")]
    OracleInapplicable(String),
    #[error("degenerate intersection: infinitely many solutions")]
    Degenerate,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
