use std::collections::HashMap;
use std::fmt;

use super::GraphError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

/// Zero-based color index. Color `i` is the `i`-th axis of the degree monoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Color(pub usize);

/// An element of the monoid of `k`-tuples of non-negative integers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Degree(Vec<u32>);

impl Degree {
    pub fn zero(k: usize) -> Self {
        Degree(vec![0; k])
    }

    pub fn basis(k: usize, color: Color) -> Self {
        let mut d = vec![0; k];
        d[color.0] = 1;
        Degree(d)
    }

    /// The all-ones degree; paths of this degree are the rainbow paths.
    pub fn ones(k: usize) -> Self {
        Degree(vec![1; k])
    }

    pub fn from_components(components: Vec<u32>) -> Self {
        Degree(components)
    }

    pub fn components(&self) -> &[u32] {
        &self.0
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Degree) -> Degree {
        debug_assert_eq!(self.k(), other.k());
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other`, or `None` unless `other <= self` componentwise.
    pub fn checked_sub(&self, other: &Degree) -> Option<Degree> {
        if self.k() != other.k() {
            return None;
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Degree)
    }

    /// Componentwise maximum.
    pub fn join(&self, other: &Degree) -> Degree {
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn le(&self, other: &Degree) -> bool {
        self.k() == other.k() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Colors with multiplicity, ascending.
    pub fn colors(&self) -> Vec<Color> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &n)| std::iter::repeat_n(Color(i), n as usize))
            .collect()
    }

    /// Signed difference `self - other`, used for the Z^k grading.
    pub fn signed_diff(&self, other: &Degree) -> Vec<i64> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| i64::from(*a) - i64::from(*b))
            .collect()
    }

    /// Every degree with total length exactly `total`, in lexicographic order.
    pub fn all_with_total(k: usize, total: u32) -> Vec<Degree> {
        fn rec(k: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Degree>) {
            if prefix.len() + 1 == k {
                prefix.push(left);
                out.push(Degree(prefix.clone()));
                prefix.pop();
                return;
            }
            for n in 0..=left {
                prefix.push(n);
                rec(k, left - n, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if k > 0 {
            rec(k, total, &mut Vec::with_capacity(k), &mut out);
        }
        out
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub name: String,
    pub color: Color,
    pub source: VertexId,
    pub range: VertexId,
}

/// Identifiers are whitespace-free tokens that avoid the document syntax characters.
pub fn is_valid_identifier(name: &str) -> bool {
    !name.is_empty()
        && !name
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '{' | '}' | ',' | '=' | '#' | ':'))
}

/// A finite k-colored directed multigraph. Vertices and edges are stored sorted
/// by name, so ids coincide with the identifier order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skeleton {
    color_names: Vec<String>,
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_lookup: HashMap<String, VertexId>,
    edge_lookup: HashMap<String, EdgeId>,
    // [vertex][color] -> edge ids, ascending
    incoming: Vec<Vec<Vec<EdgeId>>>,
    outgoing: Vec<Vec<Vec<EdgeId>>>,
}

#[derive(Debug, Clone, Default)]
pub struct SkeletonBuilder {
    color_names: Vec<String>,
    vertices: Vec<String>,
    edges: Vec<(String, String, String, String)>,
}

impl SkeletonBuilder {
    pub fn new<S: Into<String>>(color_names: impl IntoIterator<Item = S>) -> Self {
        SkeletonBuilder {
            color_names: color_names.into_iter().map(Into::into).collect(),
            ..Default::default()
        }
    }

    pub fn vertex(&mut self, name: impl Into<String>) -> &mut Self {
        self.vertices.push(name.into());
        self
    }

    /// Adds an edge `source -> range` of the named color.
    pub fn edge(
        &mut self,
        name: impl Into<String>,
        color: impl Into<String>,
        source: impl Into<String>,
        range: impl Into<String>,
    ) -> &mut Self {
        self.edges
            .push((name.into(), color.into(), source.into(), range.into()));
        self
    }

    pub fn build(&self) -> Result<Skeleton, GraphError> {
        if self.color_names.is_empty() {
            return Err(GraphError::NoColors);
        }
        for (i, c) in self.color_names.iter().enumerate() {
            if !is_valid_identifier(c) {
                return Err(GraphError::BadIdentifier(c.clone()));
            }
            if self.color_names[..i].contains(c) {
                return Err(GraphError::DuplicateColor(c.clone()));
            }
        }

        let mut vertices = self.vertices.clone();
        vertices.sort();
        for w in vertices.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateVertex(w[0].clone()));
            }
        }
        if let Some(bad) = vertices.iter().find(|v| !is_valid_identifier(v)) {
            return Err(GraphError::BadIdentifier(bad.clone()));
        }
        let vertex_lookup: HashMap<String, VertexId> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), VertexId(i)))
            .collect();

        let mut raw = self.edges.clone();
        raw.sort();
        let k = self.color_names.len();
        let mut edges = Vec::with_capacity(raw.len());
        for (i, (name, color, source, range)) in raw.iter().enumerate() {
            if i > 0 && raw[i - 1].0 == *name {
                return Err(GraphError::DuplicateEdge(name.clone()));
            }
            if !is_valid_identifier(name) {
                return Err(GraphError::BadIdentifier(name.clone()));
            }
            let color = self
                .color_names
                .iter()
                .position(|c| c == color)
                .ok_or_else(|| GraphError::UnknownColor(color.clone()))?;
            let lookup = |v: &String| {
                vertex_lookup
                    .get(v)
                    .copied()
                    .ok_or_else(|| GraphError::UnknownVertex(v.clone()))
            };
            edges.push(Edge {
                name: name.clone(),
                color: Color(color),
                source: lookup(source)?,
                range: lookup(range)?,
            });
        }
        Ok(Skeleton::assemble(
            self.color_names.clone(),
            vertices,
            edges,
            vertex_lookup,
            k,
        ))
    }
}

impl Skeleton {
    fn assemble(
        color_names: Vec<String>,
        vertices: Vec<String>,
        edges: Vec<Edge>,
        vertex_lookup: HashMap<String, VertexId>,
        k: usize,
    ) -> Skeleton {
        let mut incoming = vec![vec![Vec::new(); k]; vertices.len()];
        let mut outgoing = vec![vec![Vec::new(); k]; vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            incoming[e.range.0][e.color.0].push(EdgeId(i));
            outgoing[e.source.0][e.color.0].push(EdgeId(i));
        }
        let edge_lookup = edges
            .iter()
            .enumerate()
            .map(|(i, e)| (e.name.clone(), EdgeId(i)))
            .collect();
        Skeleton {
            color_names,
            vertices,
            edges,
            vertex_lookup,
            edge_lookup,
            incoming,
            outgoing,
        }
    }

    pub fn k(&self) -> usize {
        self.color_names.len()
    }

    pub fn color_names(&self) -> &[String] {
        &self.color_names
    }

    pub fn color_name(&self, c: Color) -> &str {
        &self.color_names[c.0]
    }

    pub fn color_by_name(&self, name: &str) -> Option<Color> {
        self.color_names.iter().position(|c| c == name).map(Color)
    }

    pub fn check_color(&self, c: Color) -> Result<(), GraphError> {
        if c.0 < self.k() {
            Ok(())
        } else {
            Err(GraphError::BadColor(c.0))
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.vertex_lookup.get(name).copied()
    }

    pub fn edge(&self, name: &str) -> Option<EdgeId> {
        self.edge_lookup.get(name).copied()
    }

    pub fn edge_data(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.0].name
    }

    pub fn color(&self, e: EdgeId) -> Color {
        self.edges[e.0].color
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].source
    }

    pub fn range(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].range
    }

    /// Edges of the given color with range `v`.
    pub fn incoming(&self, v: VertexId, c: Color) -> &[EdgeId] {
        &self.incoming[v.0][c.0]
    }

    /// Edges of the given color with source `v`.
    pub fn outgoing(&self, v: VertexId, c: Color) -> &[EdgeId] {
        &self.outgoing[v.0][c.0]
    }

    pub fn outgoing_all(&self, v: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.outgoing[v.0].iter().flatten().copied()
    }
}
