use super::{build_kgraph, GraphError, KGraph, Skeleton, SkeletonBuilder, SquareSet, TwoPath};

/// Cartesian product of single-color graphs. Factor `i` supplies color `i`;
/// vertex `(v_1, …, v_k)` is named `v_1/…/v_k` and the copy of factor edge `e`
/// leaving tuple `x` is named `e@x`. Edge names must differ across factors.
pub fn product_graph(factors: &[Skeleton]) -> Result<KGraph, GraphError> {
    if factors.is_empty() {
        return Err(GraphError::NoColors);
    }
    for (i, f) in factors.iter().enumerate() {
        if f.k() != 1 {
            return Err(GraphError::FactorNotSingleColor(i));
        }
        if f.vertex_count() == 0 {
            return Err(GraphError::EmptyFactor(i));
        }
    }
    let k = factors.len();
    let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
    for f in factors {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                (0..f.vertex_count()).map(move |v| {
                    let mut t = t.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    let name = |t: &[usize]| {
        t.iter()
            .zip(factors)
            .map(|(v, f)| f.vertex_name(super::VertexId(*v)))
            .collect::<Vec<_>>()
            .join("/")
    };
    let moved = |t: &[usize], i: usize, to: usize| {
        let mut t = t.to_vec();
        t[i] = to;
        t
    };
    let edge_name = |e: &str, t: &[usize]| format!("{e}@{}", name(t));

    let mut b = SkeletonBuilder::new(factors.iter().map(|f| f.color_name(super::Color(0))));
    for t in &tuples {
        b.vertex(name(t));
    }
    for t in &tuples {
        for (i, f) in factors.iter().enumerate() {
            for e in f.edge_ids() {
                if f.source(e).0 == t[i] {
                    b.edge(
                        edge_name(f.edge_name(e), t),
                        f.color_name(super::Color(0)),
                        name(t),
                        name(&moved(t, i, f.range(e).0)),
                    );
                }
            }
        }
    }
    let sk = b.build()?;
    let id = |e: &str, t: &[usize]| sk.edge(&edge_name(e, t)).expect("edge was declared");

    let mut pairs = Vec::new();
    for t in &tuples {
        for i in 0..k {
            for j in (i + 1)..k {
                let (fi, fj) = (&factors[i], &factors[j]);
                for a in fi.edge_ids().filter(|a| fi.source(*a).0 == t[i]) {
                    for c in fj.edge_ids().filter(|c| fj.source(*c).0 == t[j]) {
                        let ta = moved(t, i, fi.range(a).0);
                        let tc = moved(t, j, fj.range(c).0);
                        // a first then c, against c first then a
                        let first = TwoPath::new(id(fj.edge_name(c), &ta), id(fi.edge_name(a), t));
                        let second =
                            TwoPath::new(id(fi.edge_name(a), &tc), id(fj.edge_name(c), t));
                        pairs.push((first, second));
                    }
                }
            }
        }
    }
    let squares = SquareSet::new(&sk, pairs)?;
    match build_kgraph(sk, squares) {
        Ok(g) => Ok(g),
        Err(super::BuildError::Structural(e)) => Err(e),
        Err(super::BuildError::Invalid(r)) => {
            unreachable!("product squares always satisfy KG2 and KG3:\n{r}")
        }
    }
}
