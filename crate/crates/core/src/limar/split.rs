use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{is_paired, LimarError};
use crate::skeleton::{
    build_kgraph, BuildError, Color, EdgeId, GraphError, KGraph, SkeletonBuilder, SquareSet,
    TwoPath, VertexId,
};

/// The choices that determine a split: the split color `B`, the base vertex
/// `w`, and for every vertex with outgoing `B` edges an ordered partition of
/// those edges into blocks `E_1^v, …, E_{n(v)}^v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitSpec {
    pub color: Color,
    pub base: VertexId,
    pub partitions: BTreeMap<VertexId, Vec<Vec<EdgeId>>>,
}

impl SplitSpec {
    /// Uses [`default_partition`].
    pub fn with_default_partition(
        g: &KGraph,
        color: Color,
        base: VertexId,
    ) -> Result<SplitSpec, LimarError> {
        let s_w = compute_s_w(g, color, base)?;
        Ok(SplitSpec {
            color,
            base,
            partitions: default_partition(g, &s_w, color),
        })
    }

    /// Checks the spec against `g` and returns `S_w` and `n`.
    pub fn check(
        &self,
        g: &KGraph,
    ) -> Result<(BTreeSet<VertexId>, BTreeMap<VertexId, usize>), LimarError> {
        let sk = g.skeleton();
        let s_w = compute_s_w(g, self.color, self.base)?;
        let n = n_function(g, &s_w, self.color);
        let name = |v: VertexId| sk.vertex_name(v).to_string();
        for &v in self.partitions.keys() {
            if v.0 >= sk.vertex_count() {
                return Err(GraphError::UnknownVertex(format!("#{}", v.0)).into());
            }
            if sk.outgoing(v, self.color).is_empty() {
                return Err(LimarError::UnexpectedPartition(name(v)));
            }
        }
        for v in sk.vertex_ids() {
            let fan = sk.outgoing(v, self.color);
            if fan.is_empty() {
                continue;
            }
            let blocks = self
                .partitions
                .get(&v)
                .ok_or_else(|| LimarError::MissingPartition(name(v)))?;
            if blocks.len() != n[&v] {
                return Err(LimarError::BlockCount {
                    vertex: name(v),
                    expected: n[&v],
                    got: blocks.len(),
                });
            }
            let mut seen = BTreeSet::new();
            for block in blocks {
                if block.is_empty() {
                    return Err(LimarError::EmptyBlock(name(v)));
                }
                for &e in block {
                    if e.0 >= sk.edge_count() || !fan.contains(&e) {
                        let edge = if e.0 < sk.edge_count() {
                            sk.edge_name(e).to_string()
                        } else {
                            format!("#{}", e.0)
                        };
                        return Err(LimarError::ForeignEdge {
                            edge,
                            vertex: name(v),
                        });
                    }
                    if !seen.insert(e) {
                        return Err(LimarError::RepeatedEdge {
                            edge: sk.edge_name(e).to_string(),
                            vertex: name(v),
                        });
                    }
                }
            }
            if let Some(e) = fan.iter().find(|e| !seen.contains(e)) {
                return Err(LimarError::UncoveredEdge {
                    edge: sk.edge_name(*e).to_string(),
                    vertex: name(v),
                });
            }
        }
        Ok((s_w, n))
    }
}

/// Least set containing `w` and closed under following a non-`B` edge into a
/// vertex with at least two outgoing `B` edges.
pub fn compute_s_w(g: &KGraph, color: Color, w: VertexId) -> Result<BTreeSet<VertexId>, LimarError> {
    let sk = g.skeleton();
    sk.check_color(color)?;
    if w.0 >= sk.vertex_count() {
        return Err(GraphError::UnknownVertex(format!("#{}", w.0)).into());
    }
    let count = sk.outgoing(w, color).len();
    if count < 2 {
        return Err(LimarError::TooFewBaseEdges {
            vertex: sk.vertex_name(w).to_string(),
            color: sk.color_name(color).to_string(),
            count,
        });
    }
    let mut s = BTreeSet::from([w]);
    let mut stack = vec![w];
    while let Some(x) = stack.pop() {
        for e in sk.outgoing_all(x).filter(|e| sk.color(*e) != color) {
            let r = sk.range(e);
            if sk.outgoing(r, color).len() >= 2 && s.insert(r) {
                stack.push(r);
            }
        }
    }
    Ok(s)
}

pub fn n_function(
    g: &KGraph,
    s_w: &BTreeSet<VertexId>,
    color: Color,
) -> BTreeMap<VertexId, usize> {
    let sk = g.skeleton();
    sk.vertex_ids()
        .map(|v| {
            let n = if s_w.contains(&v) {
                sk.outgoing(v, color).len()
            } else {
                1
            };
            (v, n)
        })
        .collect()
}

/// Singleton blocks in edge order on `S_w`; one block elsewhere.
pub fn default_partition(
    g: &KGraph,
    s_w: &BTreeSet<VertexId>,
    color: Color,
) -> BTreeMap<VertexId, Vec<Vec<EdgeId>>> {
    let sk = g.skeleton();
    sk.vertex_ids()
        .filter_map(|v| {
            let fan = sk.outgoing(v, color);
            if fan.is_empty() {
                None
            } else if s_w.contains(&v) {
                Some((v, fan.iter().map(|e| vec![*e]).collect()))
            } else {
                Some((v, vec![fan.to_vec()]))
            }
        })
        .collect()
}

/// A split together with the parent morphism. Copy indices are 1-based.
#[derive(Debug, Clone)]
pub struct SplitResult {
    pub(crate) lambda: KGraph,
    pub(crate) gamma: KGraph,
    pub(crate) color: Color,
    pub(crate) n: BTreeMap<VertexId, usize>,
    pub(crate) vertex_parent: Vec<(VertexId, usize)>,
    pub(crate) edge_parent: Vec<(EdgeId, usize)>,
    pub(crate) vertex_copy: HashMap<(VertexId, usize), VertexId>,
    pub(crate) edge_copy: HashMap<(EdgeId, usize), EdgeId>,
    pub(crate) paired: bool,
}

impl SplitResult {
    pub fn lambda(&self) -> &KGraph {
        &self.lambda
    }

    pub fn gamma(&self) -> &KGraph {
        &self.gamma
    }

    pub fn color(&self) -> Color {
        self.color
    }

    pub fn n(&self, v: VertexId) -> usize {
        self.n[&v]
    }

    pub fn n_map(&self) -> &BTreeMap<VertexId, usize> {
        &self.n
    }

    /// Vertices with more than one copy.
    pub fn s_w(&self) -> BTreeSet<VertexId> {
        self.n.iter().filter(|(_, n)| **n >= 2).map(|(v, _)| *v).collect()
    }

    pub fn is_paired(&self) -> bool {
        self.paired
    }

    /// `(par(v), i)` for the Γ vertex `v = par(v)^i`.
    pub fn vertex_parent(&self, v: VertexId) -> (VertexId, usize) {
        self.vertex_parent[v.0]
    }

    pub fn edge_parent(&self, e: EdgeId) -> (EdgeId, usize) {
        self.edge_parent[e.0]
    }

    pub fn vertex_copy(&self, v: VertexId, i: usize) -> Option<VertexId> {
        self.vertex_copy.get(&(v, i)).copied()
    }

    pub fn edge_copy(&self, e: EdgeId, i: usize) -> Option<EdgeId> {
        self.edge_copy.get(&(e, i)).copied()
    }

    /// Rebuilds the split bookkeeping for an existing pair `(Λ, Γ)` from a
    /// parent list of `(Γ name, Λ name)`. Copy indices come from the `.i`
    /// suffix of each Γ name.
    pub fn from_parts(
        lambda: KGraph,
        gamma: KGraph,
        color: Color,
        parents: &[(String, String)],
    ) -> Result<SplitResult, LimarError> {
        let ls = lambda.skeleton();
        let gs = gamma.skeleton();
        lambda.skeleton().check_color(color)?;
        if ls.color_names() != gs.color_names() {
            return Err(LimarError::BadParents("the graphs have different colors".into()));
        }
        let bad = |s: String| LimarError::BadParents(s);
        let index_of = |name: &str| -> Result<usize, LimarError> {
            name.rsplit_once('.')
                .and_then(|(_, i)| i.parse::<usize>().ok())
                .filter(|i| *i >= 1)
                .ok_or_else(|| bad(format!("{name} has no .i copy suffix")))
        };
        let mut vertex_parent = vec![None; gs.vertex_count()];
        let mut edge_parent = vec![None; gs.edge_count()];
        for (child, parent) in parents {
            let i = index_of(child)?;
            if let Some(v) = gs.vertex(child) {
                let p = ls
                    .vertex(parent)
                    .ok_or_else(|| bad(format!("{parent} is not a vertex of the original")))?;
                if vertex_parent[v.0].replace((p, i)).is_some() {
                    return Err(bad(format!("{child} has two parents")));
                }
            } else if let Some(e) = gs.edge(child) {
                let p = ls
                    .edge(parent)
                    .ok_or_else(|| bad(format!("{parent} is not an edge of the original")))?;
                if edge_parent[e.0].replace((p, i)).is_some() {
                    return Err(bad(format!("{child} has two parents")));
                }
            } else {
                return Err(bad(format!("{child} is not in the split graph")));
            }
        }
        let vertex_parent: Vec<(VertexId, usize)> = vertex_parent
            .into_iter()
            .enumerate()
            .map(|(i, p)| p.ok_or_else(|| bad(format!("{} has no parent", gs.vertex_name(VertexId(i))))))
            .collect::<Result<_, _>>()?;
        let edge_parent: Vec<(EdgeId, usize)> = edge_parent
            .into_iter()
            .enumerate()
            .map(|(i, p)| p.ok_or_else(|| bad(format!("{} has no parent", gs.edge_name(EdgeId(i))))))
            .collect::<Result<_, _>>()?;

        let vertex_copy: HashMap<_, _> = vertex_parent
            .iter()
            .enumerate()
            .map(|(i, p)| (*p, VertexId(i)))
            .collect();
        let edge_copy: HashMap<_, _> = edge_parent
            .iter()
            .enumerate()
            .map(|(i, p)| (*p, EdgeId(i)))
            .collect();
        let mut n = BTreeMap::new();
        for v in ls.vertex_ids() {
            let count = vertex_parent.iter().filter(|(p, _)| *p == v).count();
            if count == 0 || (1..=count).any(|i| !vertex_copy.contains_key(&(v, i))) {
                return Err(bad(format!(
                    "copies of {} are not numbered 1..n",
                    ls.vertex_name(v)
                )));
            }
            n.insert(v, count);
        }
        for e in gs.edge_ids() {
            let (p, i) = edge_parent[e.0];
            let (r, ri) = vertex_parent[gs.range(e).0];
            let (s, _) = vertex_parent[gs.source(e).0];
            if gs.color(e) != ls.color(p) || r != ls.range(p) || ri != i || s != ls.source(p) {
                return Err(bad(format!(
                    "{} does not cover {}",
                    gs.edge_name(e),
                    ls.edge_name(p)
                )));
            }
        }
        for e in ls.edge_ids() {
            let count = edge_parent.iter().filter(|(p, _)| *p == e).count();
            if count != n[&ls.range(e)] {
                return Err(bad(format!("{} has {count} copies", ls.edge_name(e))));
            }
        }
        let paired = is_paired(&lambda, color)?.paired;
        Ok(SplitResult {
            lambda,
            gamma,
            color,
            n,
            vertex_parent,
            edge_parent,
            vertex_copy,
            edge_copy,
            paired,
        })
    }

    /// `(Γ name, Λ name)` for every vertex, then every edge.
    pub fn parent_lines(&self) -> Vec<(String, String)> {
        let gs = self.gamma.skeleton();
        let ls = self.lambda.skeleton();
        let vertices = gs.vertex_ids().map(|v| {
            (
                gs.vertex_name(v).to_string(),
                ls.vertex_name(self.vertex_parent(v).0).to_string(),
            )
        });
        let edges = gs.edge_ids().map(|e| {
            (
                gs.edge_name(e).to_string(),
                ls.edge_name(self.edge_parent(e).0).to_string(),
            )
        });
        vertices.chain(edges).collect()
    }
}

pub fn limar_split(g: &KGraph, spec: &SplitSpec) -> Result<SplitResult, LimarError> {
    let sk = g.skeleton();
    let color = spec.color;
    let (_, n) = spec.check(g)?;
    if let Some((v, c)) = g.is_source_free().witnesses.first() {
        return Err(LimarError::NotSourceFree {
            vertex: sk.vertex_name(*v).to_string(),
            color: sk.color_name(*c).to_string(),
        });
    }
    if g.k() >= 3 {
        if let Some(v) = g.degree_sinks(color)?.into_iter().next() {
            return Err(LimarError::SinkHypothesis(sk.vertex_name(v).to_string()));
        }
    }

    let mut block_of: HashMap<EdgeId, usize> = HashMap::new();
    for blocks in spec.partitions.values() {
        for (j, block) in blocks.iter().enumerate() {
            for e in block {
                block_of.insert(*e, j + 1);
            }
        }
    }

    // copy index of s_Γ(e^i), for every edge e and 1 <= i <= n(r(e))
    let mut source_index: HashMap<(EdgeId, usize), usize> = HashMap::new();
    for e in sk.edge_ids() {
        let r = sk.range(e);
        for i in 1..=n[&r] {
            let j = if sk.color(e) == color {
                block_of[&e]
            } else if let Some(blocks) = spec.partitions.get(&r) {
                let mut found: Option<(EdgeId, usize)> = None;
                for &f in &blocks[i - 1] {
                    let (_, c) = g.swap(f, e)?;
                    let j = block_of[&c];
                    match found {
                        None => found = Some((f, j)),
                        Some((f0, j0)) if j0 != j => {
                            return Err(LimarError::IllDefinedSource {
                                edge: sk.edge_name(e).to_string(),
                                copy: i,
                                detail: format!(
                                    "{} gives block {j0}, {} gives block {j}",
                                    sk.edge_name(f0),
                                    sk.edge_name(f)
                                ),
                            })
                        }
                        Some(_) => {}
                    }
                }
                found.expect("blocks are nonempty").1
            } else {
                1
            };
            source_index.insert((e, i), j);
        }
    }

    let vname = |v: VertexId, i: usize| format!("{}.{}", sk.vertex_name(v), i);
    let ename = |e: EdgeId, i: usize| format!("{}.{}", sk.edge_name(e), i);
    let mut b = SkeletonBuilder::new(sk.color_names().iter().cloned());
    for v in sk.vertex_ids() {
        for i in 1..=n[&v] {
            b.vertex(vname(v, i));
        }
    }
    for e in sk.edge_ids() {
        for i in 1..=n[&sk.range(e)] {
            b.edge(
                ename(e, i),
                sk.color_name(sk.color(e)),
                vname(sk.source(e), source_index[&(e, i)]),
                vname(sk.range(e), i),
            );
        }
    }
    let gs = b.build()?;
    let gid = |e: EdgeId, i: usize| gs.edge(&ename(e, i)).expect("declared above");

    let mut pairs = Vec::new();
    for sq in g.squares().iter() {
        let (f, e) = (sq.left.outer, sq.left.inner);
        let (gg, h) = (sq.right.outer, sq.right.inner);
        for i in 1..=n[&sk.range(f)] {
            let a = source_index[&(f, i)];
            let c = source_index[&(gg, i)];
            let left = TwoPath::new(gid(f, i), gid(e, a));
            let right = TwoPath::new(gid(gg, i), gid(h, c));
            if gs.source(left.inner) != gs.source(right.inner) {
                return Err(LimarError::LiftMismatch(format!(
                    "{} = {}",
                    left.display(&gs),
                    right.display(&gs)
                )));
            }
            pairs.push((left, right));
        }
    }
    let squares = SquareSet::new(&gs, pairs)?;
    let gamma = match build_kgraph(gs, squares) {
        Ok(gamma) => gamma,
        Err(BuildError::Structural(e)) => return Err(e.into()),
        Err(BuildError::Invalid(r)) => return Err(LimarError::GammaInvalid(r.to_string())),
    };
    if let Some((v, c)) = gamma.is_source_free().witnesses.first() {
        let gs = gamma.skeleton();
        return Err(LimarError::GammaNotSourceFree(format!(
            "{} ({})",
            gs.vertex_name(*v),
            gs.color_name(*c)
        )));
    }

    let gs = gamma.skeleton();
    let mut vertex_parent = vec![(VertexId(0), 0); gs.vertex_count()];
    let mut vertex_copy = HashMap::new();
    for v in sk.vertex_ids() {
        for i in 1..=n[&v] {
            let id = gs.vertex(&vname(v, i)).expect("declared above");
            vertex_parent[id.0] = (v, i);
            vertex_copy.insert((v, i), id);
        }
    }
    let mut edge_parent = vec![(EdgeId(0), 0); gs.edge_count()];
    let mut edge_copy = HashMap::new();
    for e in sk.edge_ids() {
        for i in 1..=n[&sk.range(e)] {
            let id = gs.edge(&ename(e, i)).expect("declared above");
            edge_parent[id.0] = (e, i);
            edge_copy.insert((e, i), id);
        }
    }
    let paired = is_paired(g, color)?.paired;
    Ok(SplitResult {
        lambda: g.clone(),
        gamma,
        color,
        n,
        vertex_parent,
        edge_parent,
        vertex_copy,
        edge_copy,
        paired,
    })
}
