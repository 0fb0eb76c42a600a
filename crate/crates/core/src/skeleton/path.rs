use super::{Color, Degree, EdgeId, GraphError, Skeleton, VertexId};

/// A finite path, written right-to-left: `edges[0]` is the last edge traversed
/// (it touches the range) and the final entry is traversed first. The empty
/// path at a vertex has `range == source`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    edges: Vec<EdgeId>,
    range: VertexId,
    source: VertexId,
}

impl Path {
    pub fn vertex(v: VertexId) -> Path {
        Path {
            edges: Vec::new(),
            range: v,
            source: v,
        }
    }

    pub fn edge(skeleton: &Skeleton, e: EdgeId) -> Path {
        Path {
            edges: vec![e],
            range: skeleton.range(e),
            source: skeleton.source(e),
        }
    }

    /// Builds a path from edges in written order, checking that consecutive
    /// edges compose.
    pub fn from_edges(skeleton: &Skeleton, edges: Vec<EdgeId>) -> Result<Path, GraphError> {
        let (first, last) = match (edges.first(), edges.last()) {
            (Some(f), Some(l)) => (*f, *l),
            _ => return Err(GraphError::EmptyPath),
        };
        if let Some(e) = edges.iter().find(|e| e.0 >= skeleton.edge_count()) {
            return Err(GraphError::UnknownEdge(format!("#{}", e.0)));
        }
        for (i, w) in edges.windows(2).enumerate() {
            if skeleton.source(w[0]) != skeleton.range(w[1]) {
                return Err(GraphError::NotComposable {
                    outer: skeleton.edge_name(w[0]).to_string(),
                    inner: skeleton.edge_name(w[1]).to_string(),
                    position: i,
                });
            }
        }
        Ok(Path {
            range: skeleton.range(first),
            source: skeleton.source(last),
            edges,
        })
    }

    /// Parses whitespace- or `·`-separated edge names in written order.
    pub fn parse(skeleton: &Skeleton, text: &str) -> Result<Path, GraphError> {
        let tokens: Vec<&str> = text
            .split(|c: char| c.is_whitespace() || c == '·')
            .filter(|t| !t.is_empty())
            .collect();
        if tokens.len() == 1 {
            if let Some(v) = skeleton.vertex(tokens[0]) {
                return Ok(Path::vertex(v));
            }
        }
        let edges = tokens
            .iter()
            .map(|t| {
                skeleton
                    .edge(t)
                    .ok_or_else(|| GraphError::UnknownEdge(t.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Path::from_edges(skeleton, edges)
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn range(&self) -> VertexId {
        self.range
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn degree(&self, skeleton: &Skeleton) -> Degree {
        let mut d = vec![0u32; skeleton.k()];
        for e in &self.edges {
            d[skeleton.color(*e).0] += 1;
        }
        Degree::from_components(d)
    }

    /// Colors in written order.
    pub fn colors(&self, skeleton: &Skeleton) -> Vec<Color> {
        self.edges.iter().map(|e| skeleton.color(*e)).collect()
    }

    /// Juxtaposition `self · inner`: `inner` is traversed first. No
    /// normalization happens here.
    pub fn concat(&self, skeleton: &Skeleton, inner: &Path) -> Result<Path, GraphError> {
        if self.source != inner.range {
            return Err(GraphError::NotComposable {
                outer: self.display(skeleton),
                inner: inner.display(skeleton),
                position: self.len(),
            });
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&inner.edges);
        Ok(Path {
            edges,
            range: self.range,
            source: inner.source,
        })
    }

    pub fn display(&self, skeleton: &Skeleton) -> String {
        if self.edges.is_empty() {
            return skeleton.vertex_name(self.range).to_string();
        }
        self.edges
            .iter()
            .map(|e| skeleton.edge_name(*e))
            .collect::<Vec<_>>()
            .join("·")
    }
}
