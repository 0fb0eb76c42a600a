//! Splitting a k-graph in one color: every vertex reachable from the base
//! through non-base edges is duplicated once per outgoing base edge.

mod pairing;
mod split;

pub(crate) use pairing::require_paired;
pub use pairing::{copy_path, is_paired, parent_path, sibling_set, PairedReport};
pub use split::{
    compute_s_w, default_partition, limar_split, n_function, SplitResult, SplitSpec,
};

use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LimarError {
    #[error(transparent)]
    Graph(#[from] crate::skeleton::GraphError),
    #[error("base vertex {vertex} has {count} outgoing {color} edges, need at least 2")]
    TooFewBaseEdges {
        vertex: String,
        color: String,
        count: usize,
    },
    #[error("no partition given for {0}")]
    MissingPartition(String),
    #[error("{0} has no outgoing base edges and must not be partitioned")]
    UnexpectedPartition(String),
    #[error("{vertex} needs {expected} blocks, got {got}")]
    BlockCount {
        vertex: String,
        expected: usize,
        got: usize,
    },
    #[error("empty block in the partition of {0}")]
    EmptyBlock(String),
    #[error("{edge} is not a base-colored edge leaving {vertex}")]
    ForeignEdge { edge: String, vertex: String },
    #[error("{edge} appears twice in the partition of {vertex}")]
    RepeatedEdge { edge: String, vertex: String },
    #[error("{edge} is missing from the partition of {vertex}")]
    UncoveredEdge { edge: String, vertex: String },
    #[error("{0} is a degree sink in the split color; k >= 3 requires none")]
    SinkHypothesis(String),
    #[error("{vertex} receives no {color} edge; the input must be source-free")]
    NotSourceFree { vertex: String, color: String },
    #[error("source of {edge}.{copy} depends on the chosen block edge: {detail}")]
    IllDefinedSource {
        edge: String,
        copy: usize,
        detail: String,
    },
    #[error("lifted square {0} has mismatched sources")]
    LiftMismatch(String),
    #[error("split graph failed validation:\n{0}")]
    GammaInvalid(String),
    #[error("split graph is not source-free at {0}")]
    GammaNotSourceFree(String),
    #[error("{edge} has the split color; sibling sets are for the other colors")]
    BaseColoredEdge { edge: String },
    #[error("not paired in the split color: {edge} has siblings {{{}}}",
        .siblings.iter().cloned().collect::<Vec<_>>().join(", "))]
    NotPaired {
        edge: String,
        siblings: BTreeSet<String>,
    },
    #[error("copy index {index} out of range 1..={max} for {path}")]
    CopyIndex {
        path: String,
        index: usize,
        max: usize,
    },
    #[error("bad parent map: {0}")]
    BadParents(String),
}
