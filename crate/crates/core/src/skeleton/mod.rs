//! Finite k-colored graphs with factorization squares.
//!
//! Paths are written right-to-left: in `f e` the edge `e` is traversed first.

mod kgraph;
mod path;
mod product;
mod squares;
mod types;

pub use kgraph::{
    build_kgraph, validate, BuildError, KGraph, Kg2Violation, Kg3Violation, SourceFreeReport,
    ValidationReport,
};
pub use path::Path;
pub use product::product_graph;
pub use squares::{check_square, Square, SquareDefect, SquareSet, TwoPath};
pub use types::{
    is_valid_identifier, Color, Degree, Edge, EdgeId, Skeleton, SkeletonBuilder, VertexId,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("a graph needs at least one color")]
    NoColors,
    #[error("invalid identifier {0:?}")]
    BadIdentifier(String),
    #[error("duplicate color {0}")]
    DuplicateColor(String),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(String),
    #[error("duplicate edge {0}")]
    DuplicateEdge(String),
    #[error("unknown color {0}")]
    UnknownColor(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown edge {0}")]
    UnknownEdge(String),
    #[error("color index {0} out of range")]
    BadColor(usize),
    #[error("a path needs at least one edge")]
    EmptyPath,
    #[error("{outer} cannot follow {inner} (position {position})")]
    NotComposable {
        outer: String,
        inner: String,
        position: usize,
    },
    #[error("malformed square {square}: {defect}")]
    MalformedSquare { square: String, defect: SquareDefect },
    #[error("cannot swap {0}: both edges have the same color")]
    SameColorSwap(String),
    #[error("degree {part} is not below {whole}")]
    NotSubDegree { part: String, whole: String },
    #[error("degree has {got} components, graph has {expected} colors")]
    DegreeLength { expected: usize, got: usize },
    #[error("product factor {0} is empty")]
    EmptyFactor(usize),
    #[error("product factor {0} must have exactly one color")]
    FactorNotSingleColor(usize),
}
