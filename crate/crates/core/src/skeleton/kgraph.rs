use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};

use super::squares::check_square;
use super::{Color, Degree, EdgeId, GraphError, Path, Skeleton, SquareSet, TwoPath, VertexId};

/// A bicolored 2-path with no partner, or with more than one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kg2Violation {
    pub path: TwoPath,
    pub partners: Vec<TwoPath>,
    pub text: String,
}

/// A trichromatic 3-path whose two reduction routes disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kg3Violation {
    pub path: [EdgeId; 3],
    pub route1: [EdgeId; 3],
    pub route2: [EdgeId; 3],
    pub text: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub kg2: Vec<Kg2Violation>,
    pub kg3: Vec<Kg3Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.kg2.is_empty() && self.kg3.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return writeln!(f, "KG2 ok, KG3 ok");
        }
        for v in &self.kg2 {
            writeln!(f, "KG2: {}", v.text)?;
        }
        for v in &self.kg3 {
            writeln!(f, "KG3: {}", v.text)?;
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum BuildError {
    #[error(transparent)]
    Structural(#[from] GraphError),
    #[error("not a k-graph:\n{0}")]
    Invalid(ValidationReport),
}

/// Source-freeness result: every vertex must receive an edge of every color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceFreeReport {
    pub witnesses: Vec<(VertexId, Color)>,
}

impl SourceFreeReport {
    pub fn is_source_free(&self) -> bool {
        self.witnesses.is_empty()
    }
}

/// A skeleton together with a square set satisfying KG2 and KG3. KG1 holds
/// because edges are compared by id, KG0 because the path relation is the
/// congruence generated by the squares.
#[derive(Debug, Clone)]
pub struct KGraph {
    skeleton: Skeleton,
    squares: SquareSet,
    swaps: HashMap<TwoPath, TwoPath>,
    fingerprint: u64,
}

fn partner_table(skeleton: &Skeleton, squares: &SquareSet) -> HashMap<TwoPath, Vec<TwoPath>> {
    let mut table: HashMap<TwoPath, Vec<TwoPath>> = HashMap::new();
    for (a, b) in squares.pairs() {
        table.entry(a).or_default().push(b);
        table.entry(b).or_default().push(a);
    }
    for partners in table.values_mut() {
        partners.sort_by_key(|p| (skeleton.edge_name(p.outer), skeleton.edge_name(p.inner)));
    }
    table
}

/// Validates the factorization data. Structural problems (a square that does
/// not fit the skeleton) are errors; KG2/KG3 failures come back as a report.
pub fn build_kgraph(skeleton: Skeleton, squares: SquareSet) -> Result<KGraph, BuildError> {
    for sq in squares.iter() {
        check_square(&skeleton, sq.left, sq.right).map_err(|defect| {
            GraphError::MalformedSquare {
                square: sq.display(&skeleton),
                defect,
            }
        })?;
    }
    let report = validate(&skeleton, &squares);
    if !report.is_valid() {
        return Err(BuildError::Invalid(report));
    }
    let swaps = partner_table(&skeleton, &squares)
        .into_iter()
        .map(|(k, v)| (k, v[0]))
        .collect();
    let fingerprint = fingerprint(&skeleton, &squares);
    Ok(KGraph {
        skeleton,
        squares,
        swaps,
        fingerprint,
    })
}

/// Runs the KG2 and KG3 checks without building anything.
pub fn validate(skeleton: &Skeleton, squares: &SquareSet) -> ValidationReport {
    let table = partner_table(skeleton, squares);
    let mut report = ValidationReport::default();

    for inner in skeleton.edge_ids() {
        for outer in skeleton.outgoing_all(skeleton.range(inner)) {
            if skeleton.color(outer) == skeleton.color(inner) {
                continue;
            }
            let path = TwoPath::new(outer, inner);
            let partners = table.get(&path).cloned().unwrap_or_default();
            let text = match partners.len() {
                1 => continue,
                0 => format!(
                    "2-path {} ({} then {}) has no swap partner",
                    path.display(skeleton),
                    skeleton.edge_name(inner),
                    skeleton.edge_name(outer)
                ),
                _ => format!(
                    "2-path {} has {} partners: {}",
                    path.display(skeleton),
                    partners.len(),
                    partners
                        .iter()
                        .map(|p| p.display(skeleton))
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
            };
            report.kg2.push(Kg2Violation {
                path,
                partners,
                text,
            });
        }
    }

    let swap = |outer: EdgeId, inner: EdgeId| -> Option<(EdgeId, EdgeId)> {
        match table.get(&TwoPath::new(outer, inner)).map(Vec::as_slice) {
            Some([p]) => Some((p.outer, p.inner)),
            _ => None,
        }
    };
    let names = |p: [EdgeId; 3]| {
        p.iter()
            .map(|e| skeleton.edge_name(*e))
            .collect::<Vec<_>>()
            .join(" ")
    };
    for c in skeleton.edge_ids() {
        for b in skeleton.outgoing_all(skeleton.range(c)) {
            for a in skeleton.outgoing_all(skeleton.range(b)) {
                let (ca, cb, cc) = (skeleton.color(a), skeleton.color(b), skeleton.color(c));
                if ca == cb || cb == cc || ca == cc {
                    continue;
                }
                let route1 = (|| {
                    let (d, e) = swap(a, b)?;
                    let (f, g) = swap(e, c)?;
                    let (h, j) = swap(d, f)?;
                    Some([h, j, g])
                })();
                let route2 = (|| {
                    let (k, m) = swap(b, c)?;
                    let (n, p) = swap(a, k)?;
                    let (r, q) = swap(p, m)?;
                    Some([n, r, q])
                })();
                // Missing swaps are already KG2 violations.
                if let (Some(r1), Some(r2)) = (route1, route2) {
                    if r1 != r2 {
                        report.kg3.push(Kg3Violation {
                            path: [a, b, c],
                            route1: r1,
                            route2: r2,
                            text: format!(
                                "3-path {}: route 1 gives {}, route 2 gives {}",
                                names([a, b, c]),
                                names(r1),
                                names(r2)
                            ),
                        });
                    }
                }
            }
        }
    }
    report
}

fn fingerprint(skeleton: &Skeleton, squares: &SquareSet) -> u64 {
    let mut h = DefaultHasher::new();
    skeleton.color_names().hash(&mut h);
    for v in skeleton.vertex_ids() {
        skeleton.vertex_name(v).hash(&mut h);
    }
    for e in skeleton.edge_ids() {
        skeleton.edge_data(e).hash(&mut h);
    }
    for sq in squares.iter() {
        sq.hash(&mut h);
    }
    h.finish()
}

impl KGraph {
    pub fn skeleton(&self) -> &Skeleton {
        &self.skeleton
    }

    pub fn squares(&self) -> &SquareSet {
        &self.squares
    }

    pub fn k(&self) -> usize {
        self.skeleton.k()
    }

    /// Identifies the graph structurally; used to reject mixed-graph algebra.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// The unique `(g, h)` with `g·h ∼ outer·inner` and the colors swapped.
    pub fn swap(&self, outer: EdgeId, inner: EdgeId) -> Result<(EdgeId, EdgeId), GraphError> {
        let sk = &self.skeleton;
        for e in [outer, inner] {
            if e.0 >= sk.edge_count() {
                return Err(GraphError::UnknownEdge(format!("#{}", e.0)));
            }
        }
        if sk.source(outer) != sk.range(inner) {
            return Err(GraphError::NotComposable {
                outer: sk.edge_name(outer).to_string(),
                inner: sk.edge_name(inner).to_string(),
                position: 0,
            });
        }
        if sk.color(outer) == sk.color(inner) {
            return Err(GraphError::SameColorSwap(format!(
                "{} {}",
                sk.edge_name(outer),
                sk.edge_name(inner)
            )));
        }
        let p = self.swaps[&TwoPath::new(outer, inner)];
        Ok((p.outer, p.inner))
    }

    /// Rewrites `path` to the equivalent path whose colors, in written order,
    /// are `target`. `target` must be a rearrangement of the path's colors.
    pub fn reorder(&self, path: &Path, target: &[Color]) -> Path {
        let sk = &self.skeleton;
        let mut edges = path.edges().to_vec();
        debug_assert_eq!(edges.len(), target.len());
        let mut slots: HashMap<Color, VecDeque<usize>> = HashMap::new();
        for (i, c) in target.iter().enumerate() {
            slots.entry(*c).or_default().push_back(i);
        }
        // Same-colored edges never swap with each other, so the m-th edge of a
        // color goes to the m-th slot of that color.
        let mut rank: Vec<usize> = edges
            .iter()
            .map(|e| {
                slots
                    .get_mut(&sk.color(*e))
                    .and_then(VecDeque::pop_front)
                    .expect("target must be a rearrangement of the path colors")
            })
            .collect();
        loop {
            let mut changed = false;
            for i in 0..edges.len().saturating_sub(1) {
                if rank[i] > rank[i + 1] {
                    let p = self.swaps[&TwoPath::new(edges[i], edges[i + 1])];
                    edges[i] = p.outer;
                    edges[i + 1] = p.inner;
                    rank.swap(i, i + 1);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if edges.is_empty() {
            path.clone()
        } else {
            Path::from_edges(sk, edges).expect("swaps preserve composability")
        }
    }

    /// The canonical representative: colors non-decreasing in traversal order,
    /// i.e. non-increasing in written order.
    pub fn normal_form(&self, path: &Path) -> Path {
        let mut target = path.colors(&self.skeleton);
        target.sort_by(|a, b| b.cmp(a));
        self.reorder(path, &target)
    }

    pub fn equivalent(&self, a: &Path, b: &Path) -> bool {
        self.normal_form(a) == self.normal_form(b)
    }

    /// Composes `outer · inner` and normalizes.
    pub fn compose(&self, outer: &Path, inner: &Path) -> Result<Path, GraphError> {
        Ok(self.normal_form(&outer.concat(&self.skeleton, inner)?))
    }

    /// Unique factorization `path = outer · inner` with `d(inner) = inner_degree`.
    /// Both parts come back in normal form.
    pub fn factor(&self, path: &Path, inner_degree: &Degree) -> Result<(Path, Path), GraphError> {
        let sk = &self.skeleton;
        let total = path.degree(sk);
        let outer_degree = total
            .checked_sub(inner_degree)
            .ok_or_else(|| GraphError::NotSubDegree {
                part: inner_degree.to_string(),
                whole: total.to_string(),
            })?;
        let mut target: Vec<Color> = outer_degree.colors();
        target.reverse();
        let mut inner_colors = inner_degree.colors();
        inner_colors.reverse();
        let split = target.len();
        target.extend(inner_colors);
        let arranged = self.reorder(path, &target);
        let (o, i) = arranged.edges().split_at(split);
        let outer = if o.is_empty() {
            Path::vertex(arranged.range())
        } else {
            Path::from_edges(sk, o.to_vec())?
        };
        let inner = if i.is_empty() {
            Path::vertex(arranged.source())
        } else {
            Path::from_edges(sk, i.to_vec())?
        };
        Ok((outer, inner))
    }

    fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if v.0 < self.skeleton.vertex_count() {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(format!("#{}", v.0)))
        }
    }

    fn check_degree(&self, n: &Degree) -> Result<(), GraphError> {
        if n.k() == self.k() {
            Ok(())
        } else {
            Err(GraphError::DegreeLength {
                expected: self.k(),
                got: n.k(),
            })
        }
    }

    /// `vΛ^n` as normal forms, ordered lexicographically by edge sequence.
    pub fn paths_with_range(&self, v: VertexId, n: &Degree) -> Result<Vec<Path>, GraphError> {
        self.check_vertex(v)?;
        self.check_degree(n)?;
        let sk = &self.skeleton;
        let mut pattern = n.colors();
        pattern.reverse();
        let mut out = Vec::new();
        let mut stack = Vec::with_capacity(pattern.len());
        fn rec(
            sk: &Skeleton,
            pattern: &[Color],
            at: VertexId,
            stack: &mut Vec<EdgeId>,
            out: &mut Vec<Path>,
        ) {
            if stack.len() == pattern.len() {
                out.push(Path::from_edges(sk, stack.clone()).expect("built by composition"));
                return;
            }
            for &e in sk.incoming(at, pattern[stack.len()]) {
                stack.push(e);
                rec(sk, pattern, sk.source(e), stack, out);
                stack.pop();
            }
        }
        if pattern.is_empty() {
            return Ok(vec![Path::vertex(v)]);
        }
        rec(sk, &pattern, v, &mut stack, &mut out);
        Ok(out)
    }

    /// `Λ^n v` as normal forms, ordered lexicographically by edge sequence.
    pub fn paths_with_source(&self, v: VertexId, n: &Degree) -> Result<Vec<Path>, GraphError> {
        self.check_vertex(v)?;
        self.check_degree(n)?;
        let sk = &self.skeleton;
        let pattern = n.colors();
        if pattern.is_empty() {
            return Ok(vec![Path::vertex(v)]);
        }
        let mut out = Vec::new();
        fn rec(
            sk: &Skeleton,
            pattern: &[Color],
            at: VertexId,
            stack: &mut Vec<EdgeId>,
            out: &mut Vec<Path>,
        ) {
            if stack.len() == pattern.len() {
                let written: Vec<EdgeId> = stack.iter().rev().copied().collect();
                out.push(Path::from_edges(sk, written).expect("built by composition"));
                return;
            }
            for &e in sk.outgoing(at, pattern[stack.len()]) {
                stack.push(e);
                rec(sk, pattern, sk.range(e), stack, out);
                stack.pop();
            }
        }
        rec(sk, &pattern, v, &mut Vec::new(), &mut out);
        out.sort();
        Ok(out)
    }

    /// All normal-form paths with `min_len <= |λ| <= max_len`, grouped by
    /// length, then range, then degree.
    pub fn all_paths(&self, min_len: u32, max_len: u32) -> Vec<Path> {
        let mut out = Vec::new();
        for len in min_len..=max_len {
            for v in self.skeleton.vertex_ids() {
                for n in Degree::all_with_total(self.k(), len) {
                    out.extend(self.paths_with_range(v, &n).expect("valid vertex and degree"));
                }
            }
        }
        out
    }

    pub fn is_source_free(&self) -> SourceFreeReport {
        let sk = &self.skeleton;
        let witnesses = sk
            .vertex_ids()
            .flat_map(|v| (0..sk.k()).map(move |c| (v, Color(c))))
            .filter(|(v, c)| sk.incoming(*v, *c).is_empty())
            .collect();
        SourceFreeReport { witnesses }
    }

    /// Vertices that no edge of `color` leaves.
    pub fn degree_sinks(&self, color: Color) -> Result<BTreeSet<VertexId>, GraphError> {
        self.skeleton.check_color(color)?;
        Ok(self
            .skeleton
            .vertex_ids()
            .filter(|v| self.skeleton.outgoing(*v, color).is_empty())
            .collect())
    }
}
