#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::path::PathBuf;

use kgraph::cli::parse;
use kgraph::limar::{compute_s_w, limar_split, SplitResult, SplitSpec};
use kgraph::skeleton::{
    build_kgraph, product_graph, Color, EdgeId, KGraph, Path, Skeleton, SkeletonBuilder,
    SquareSet, TwoPath, VertexId,
};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub const BLUE: Color = Color(0);

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

pub fn read(name: &str) -> String {
    std::fs::read_to_string(data(name)).unwrap()
}

pub fn load(name: &str) -> KGraph {
    parse(&read(name)).unwrap().build().unwrap()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn example_split(name: &str) -> SplitResult {
    let g = load(name);
    let spec = kgraph::cli::parse_partition(&read("example.part"), g.skeleton()).unwrap();
    limar_split(&g, &spec).unwrap()
}

/// The full class of a path, by rewriting length-2 windows with the squares.
pub fn class_by_rewriting(g: &KGraph, path: &Path) -> BTreeSet<Vec<EdgeId>> {
    let pairs: Vec<(TwoPath, TwoPath)> = g.squares().pairs().collect();
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([path.edges().to_vec()]);
    while let Some(cur) = queue.pop_front() {
        if !seen.insert(cur.clone()) {
            continue;
        }
        for i in 0..cur.len().saturating_sub(1) {
            let w = TwoPath::new(cur[i], cur[i + 1]);
            for (a, b) in &pairs {
                for (from, to) in [(a, b), (b, a)] {
                    if *from == w {
                        let mut next = cur.clone();
                        next[i] = to.outer;
                        next[i + 1] = to.inner;
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    seen
}

/// Every edge sequence of length exactly `len` ending at `range`.
pub fn raw_paths(sk: &Skeleton, len: usize, range: VertexId) -> Vec<Vec<EdgeId>> {
    let mut frontier: Vec<Vec<EdgeId>> = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &frontier {
            let at = match w.last() {
                Some(e) => sk.source(*e),
                None => range,
            };
            for e in sk.edge_ids().filter(|e| sk.range(*e) == at) {
                let mut n = w.clone();
                n.push(e);
                next.push(n);
            }
        }
        frontier = next;
    }
    frontier
}

fn class_of(g: &KGraph, p: &Path) -> BTreeSet<Vec<EdgeId>> {
    if p.is_vertex() {
        BTreeSet::from([vec![]])
    } else {
        class_by_rewriting(g, p)
    }
}

/// Minimal common extensions read off the rewriting classes: every class of
/// degree `d(μ) ∨ d(ν)` at `r(μ)` that has representatives starting with `μ`
/// and with `ν`.
pub fn mce_oracle(g: &KGraph, mu: &Path, nu: &Path) -> BTreeSet<(Path, Path)> {
    let sk = g.skeleton();
    if mu.range() != nu.range() {
        return BTreeSet::new();
    }
    let join = mu.degree(sk).join(&nu.degree(sk));
    let (mu_class, nu_class) = (class_of(g, mu), class_of(g, nu));
    let mut out = BTreeSet::new();
    let mut seen = HashSet::new();
    for w in raw_paths(sk, join.total() as usize, mu.range()) {
        let p = if w.is_empty() {
            Path::vertex(mu.range())
        } else {
            Path::from_edges(sk, w.clone()).unwrap()
        };
        if p.degree(sk) != join {
            continue;
        }
        let class = class_of(g, &p);
        if !seen.insert(class.clone()) {
            continue;
        }
        let tail = |x: &[EdgeId]| {
            if x.is_empty() {
                Path::vertex(p.source())
            } else {
                g.normal_form(&Path::from_edges(sk, x.to_vec()).unwrap())
            }
        };
        let split_off = |prefixes: &BTreeSet<Vec<EdgeId>>, n: usize| {
            class
                .iter()
                .find(|x| prefixes.contains(&x[..n].to_vec()))
                .map(|x| tail(&x[n..]))
        };
        if let (Some(a), Some(b)) = (split_off(&mu_class, mu.len()), split_off(&nu_class, nu.len())) {
            out.insert((a, b));
        }
    }
    out
}

/// A twisted pullback of a blue graph `H` built as an `m`-fold cyclic cover
/// of a random base graph. Color `c > 0` has one edge per blue edge `x`,
/// from `s(x)` to `r(x)` shifted by `c` around the cover, and the squares
/// pair the blue and shifted edges. Every vertex receives and emits a blue
/// edge and some vertex emits at least two, so the result is source-free,
/// free of blue sinks, paired in blue and splittable. `k` is 2 or 3.
pub fn twisted_pullback(rng: &mut StdRng, k: usize) -> KGraph {
    twisted_pullback_sized(rng, k, 3)
}

/// As [`twisted_pullback`], with at most `max` base vertices and cover sheets.
pub fn twisted_pullback_sized(rng: &mut StdRng, k: usize, max: usize) -> KGraph {
    assert!((2..=3).contains(&k));
    let base = rng.gen_range(1..=max);
    let m = rng.gen_range(1..=max);
    // (from, to, offset)
    let mut base_edges: Vec<(usize, usize, usize)> = Vec::new();
    for u in 0..base {
        base_edges.push((rng.gen_range(0..base), u, rng.gen_range(0..m)));
        base_edges.push((u, rng.gen_range(0..base), rng.gen_range(0..m)));
    }
    for _ in 0..rng.gen_range(0..=max) {
        base_edges.push((rng.gen_range(0..base), rng.gen_range(0..base), rng.gen_range(0..m)));
    }
    let b0 = base_edges[0].0;
    base_edges.push((b0, rng.gen_range(0..base), rng.gen_range(0..m)));

    let vname = |u: usize, i: usize| format!("p{u}_{}", i % m);
    let colors = ["blue", "red", "green"];
    let mut b = SkeletonBuilder::new(colors[..k].iter().copied());
    for u in 0..base {
        for i in 0..m {
            b.vertex(vname(u, i));
        }
    }
    // blue edge (j, i): (from, i) -> (to, i + offset)
    let edge_name = |c: usize, j: usize, i: usize| format!("{}{j}_{}", ["b", "r", "g"][c], i % m);
    for (j, &(from, to, off)) in base_edges.iter().enumerate() {
        for i in 0..m {
            for (c, color) in colors[..k].iter().enumerate() {
                b.edge(edge_name(c, j, i), *color, vname(from, i), vname(to, i + off + c));
            }
        }
    }
    let sk = b.build().unwrap();
    let id = |c: usize, j: usize, i: usize| sk.edge(&edge_name(c, j, i)).unwrap();
    let shift = |c: usize| c % m.max(1);

    let mut pairs = Vec::new();
    for (j, &(_, to, off)) in base_edges.iter().enumerate() {
        for i in 0..m {
            let x_range = (i + off) % m;
            for c in 1..k {
                // f e_x = e_{φ⁻¹f} x, f blue leaving the shifted range of x
                let at = (x_range + c) % m;
                for (jf, &(from_f, _, _)) in base_edges.iter().enumerate() {
                    if from_f != to {
                        continue;
                    }
                    let back = (at + m - shift(c)) % m;
                    pairs.push((
                        TwoPath::new(id(0, jf, at), id(c, j, i)),
                        TwoPath::new(id(c, jf, back), id(0, j, i)),
                    ));
                }
            }
            if k == 3 {
                // g_d e_x = e_{ψφ⁻¹d} g_x
                let at = (x_range + 1) % m;
                for (jd, &(from_d, _, _)) in base_edges.iter().enumerate() {
                    if from_d != to {
                        continue;
                    }
                    let moved = (at + 1) % m;
                    pairs.push((
                        TwoPath::new(id(2, jd, at), id(1, j, i)),
                        TwoPath::new(id(1, jd, moved), id(2, j, i)),
                    ));
                }
            }
        }
    }
    let squares = SquareSet::new(&sk, pairs).unwrap();
    build_kgraph(sk, squares).unwrap()
}

/// A random single-color graph with at most `max_vertices` vertices; edge
/// names carry `prefix` so factors stay distinct.
pub fn random_one_graph(rng: &mut StdRng, prefix: &str, color: &str, max_vertices: usize) -> Skeleton {
    let n = rng.gen_range(1..=max_vertices);
    let mut b = SkeletonBuilder::new([color]);
    for v in 0..n {
        b.vertex(format!("{prefix}{v}"));
    }
    for e in 0..rng.gen_range(0..=2 * n) {
        b.edge(
            format!("{prefix}e{e}"),
            color,
            format!("{prefix}{}", rng.gen_range(0..n)),
            format!("{prefix}{}", rng.gen_range(0..n)),
        );
    }
    b.build().unwrap()
}

pub fn random_factors(rng: &mut StdRng, k: usize, max_vertices: usize) -> Vec<Skeleton> {
    let names = ["a", "b", "c"];
    let colors = ["blue", "red", "green"];
    (0..k)
        .map(|i| random_one_graph(rng, names[i], colors[i], max_vertices))
        .collect()
}

pub fn random_product(rng: &mut StdRng, k: usize, max_vertices: usize) -> KGraph {
    product_graph(&random_factors(rng, k, max_vertices)).unwrap()
}

/// A blue split of `g` at a random admissible base vertex, with the
/// singleton blocks on the base set in random order.
pub fn random_split(rng: &mut StdRng, g: &KGraph) -> SplitResult {
    let sk = g.skeleton();
    let bases: Vec<VertexId> = sk
        .vertex_ids()
        .filter(|v| sk.outgoing(*v, BLUE).len() >= 2)
        .collect();
    let base = *bases.choose(rng).expect("generator guarantees a base vertex");
    let s_w = compute_s_w(g, BLUE, base).unwrap();
    let mut spec = SplitSpec::with_default_partition(g, BLUE, base).unwrap();
    for (v, blocks) in spec.partitions.iter_mut() {
        if s_w.contains(v) {
            blocks.shuffle(rng);
        }
    }
    limar_split(g, &spec).unwrap()
}

/// Random normal-form paths of length at most `max_len`, vertices included.
pub fn random_path(rng: &mut StdRng, g: &KGraph, max_len: usize) -> Path {
    let sk = g.skeleton();
    let mut at = VertexId(rng.gen_range(0..sk.vertex_count()));
    let len = rng.gen_range(0..=max_len);
    let mut edges = Vec::new();
    for _ in 0..len {
        let incoming: Vec<EdgeId> = sk.edge_ids().filter(|e| sk.range(*e) == at).collect();
        let Some(e) = incoming.choose(rng) else { break };
        edges.push(*e);
        at = sk.source(*e);
    }
    if edges.is_empty() {
        return Path::vertex(at);
    }
    // edges were chosen outermost first
    g.normal_form(&Path::from_edges(sk, edges).unwrap())
}
