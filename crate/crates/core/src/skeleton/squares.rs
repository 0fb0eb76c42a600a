use std::fmt;

use super::{EdgeId, GraphError, Skeleton};

/// A composable two-edge path `outer · inner` (`inner` traversed first).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwoPath {
    pub outer: EdgeId,
    pub inner: EdgeId,
}

impl TwoPath {
    pub fn new(outer: EdgeId, inner: EdgeId) -> Self {
        TwoPath { outer, inner }
    }

    pub fn display(&self, skeleton: &Skeleton) -> String {
        format!(
            "{} {}",
            skeleton.edge_name(self.outer),
            skeleton.edge_name(self.inner)
        )
    }
}

/// Why a proposed square cannot be a factorization square.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SquareDefect {
    DegreeMismatch,
    SameColor,
    NotComposable,
    EndpointMismatch,
}

impl fmt::Display for SquareDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SquareDefect::DegreeMismatch => "d-preservation violated (colors are not swapped)",
            SquareDefect::SameColor => "both edges of a side have the same color",
            SquareDefect::NotComposable => "a side is not a composable 2-path",
            SquareDefect::EndpointMismatch => "the two sides have different source or range",
        };
        f.write_str(s)
    }
}

/// One identification `left ∼ right`. Stored with `left` the side whose inner
/// edge has the smaller color.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Square {
    pub left: TwoPath,
    pub right: TwoPath,
}

impl Square {
    pub fn display(&self, skeleton: &Skeleton) -> String {
        format!(
            "{} = {}",
            self.left.display(skeleton),
            self.right.display(skeleton)
        )
    }
}

/// Checks one proposed pair and returns it in canonical orientation.
pub fn check_square(skeleton: &Skeleton, a: TwoPath, b: TwoPath) -> Result<Square, SquareDefect> {
    let col = |e: EdgeId| skeleton.color(e);
    if col(a.outer) != col(b.inner) || col(a.inner) != col(b.outer) {
        return Err(SquareDefect::DegreeMismatch);
    }
    if col(a.outer) == col(a.inner) {
        return Err(SquareDefect::SameColor);
    }
    for side in [a, b] {
        if skeleton.source(side.outer) != skeleton.range(side.inner) {
            return Err(SquareDefect::NotComposable);
        }
    }
    if skeleton.range(a.outer) != skeleton.range(b.outer)
        || skeleton.source(a.inner) != skeleton.source(b.inner)
    {
        return Err(SquareDefect::EndpointMismatch);
    }
    let (left, right) = if col(a.inner) < col(a.outer) { (a, b) } else { (b, a) };
    Ok(Square { left, right })
}

/// The generating set of the path relation: finitely many squares, deduplicated
/// and sorted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SquareSet {
    squares: Vec<Square>,
}

impl SquareSet {
    pub fn empty() -> Self {
        SquareSet::default()
    }

    pub fn new(
        skeleton: &Skeleton,
        pairs: impl IntoIterator<Item = (TwoPath, TwoPath)>,
    ) -> Result<Self, GraphError> {
        let mut squares = Vec::new();
        for (a, b) in pairs {
            for e in [a.outer, a.inner, b.outer, b.inner] {
                if e.0 >= skeleton.edge_count() {
                    return Err(GraphError::UnknownEdge(format!("#{}", e.0)));
                }
            }
            let sq = check_square(skeleton, a, b).map_err(|defect| GraphError::MalformedSquare {
                square: format!("{} = {}", a.display(skeleton), b.display(skeleton)),
                defect,
            })?;
            squares.push(sq);
        }
        squares.sort();
        squares.dedup();
        Ok(SquareSet { squares })
    }

    pub fn iter(&self) -> impl Iterator<Item = &Square> {
        self.squares.iter()
    }

    pub fn len(&self) -> usize {
        self.squares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }

    /// A copy with the `index`-th square removed.
    pub fn without(&self, index: usize) -> SquareSet {
        let mut squares = self.squares.clone();
        squares.remove(index);
        SquareSet { squares }
    }

    pub fn pairs(&self) -> impl Iterator<Item = (TwoPath, TwoPath)> + '_ {
        self.squares.iter().map(|s| (s.left, s.right))
    }
}
