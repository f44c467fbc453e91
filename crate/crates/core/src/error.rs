use alloc::string::String;
use alloc::vec::Vec;

use crate::treedec::Violation;
use crate::verify::Ratio;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("source set is empty")]
    EmptySourceSet,
    #[error("vertex set is empty")]
    EmptySet,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not a tree")]
    NotATree,
    #[error("node set does not induce a connected subtree")]
    NotASubtree,
    #[error("subgraph is not a subtree of the host graph: {0}")]
    InvalidSubtree(String),
    #[error("not a spanning tree of the graph")]
    NotSpanningTree,
    #[error("decomposition has {bags} bags but its host tree has {nodes} nodes")]
    BagCountMismatch { bags: usize, nodes: usize },
    #[error("bag of node {node} references vertex {vertex} but the graph has order {order}")]
    BagVertexOutOfRange {
        node: usize,
        vertex: usize,
        order: usize,
    },
    #[error("decomposition is for a graph of order {decomposition}, got order {graph}")]
    OrderMismatch { decomposition: usize, graph: usize },
    #[error("isolated node {0} has an empty bag")]
    EmptyBag(usize),
    #[error("invalid tree decomposition: {} violation(s), first: {}", .0.len(), .0[0])]
    InvalidDecomposition(Vec<Violation>),
    #[error("bags of final-level nodes {0:?} share no vertex")]
    EmptyBagIntersection(Vec<usize>),
    #[error("stretch parameter must be positive")]
    ZeroStretch,
    #[error("tree is not a multiplicative {k}-spanner: pair {}-{} has stretch {measured}", .witness.0, .witness.1)]
    StretchExceeded {
        k: u32,
        measured: Ratio,
        witness: (usize, usize),
    },
    #[error("subtree is not {bound}-additive: pair {}-{} has slack {measured}", .witness.0, .witness.1)]
    NotAdditive {
        bound: u32,
        measured: u32,
        witness: (usize, usize),
    },
    #[error("vertex {vertex} is at distance {measured} from the subtree, more than {bound}")]
    TooFar {
        bound: u32,
        measured: u32,
        vertex: usize,
    },
    #[error("invariant violated at level {level}: {what}")]
    InvariantViolated { level: usize, what: String },
    #[error("instance too large for exhaustive enumeration: {0}")]
    InstanceTooLarge(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
