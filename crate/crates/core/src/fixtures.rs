use std::collections::{BTreeSet, VecDeque};

use crate::skeleton::{
    build_kgraph, EdgeId, KGraph, Path, Skeleton, SkeletonBuilder, SquareSet, TwoPath,
};

pub fn lambda_skeleton() -> Skeleton {
    let mut b = SkeletonBuilder::new(["blue", "red"]);
    for v in ["v", "x", "y", "z"] {
        b.vertex(v);
    }
    for (name, color, s, r) in [
        ("alpha", "blue", "v", "v"),
        ("i", "blue", "v", "z"),
        ("h", "blue", "v", "x"),
        ("l", "blue", "x", "z"),
        ("n", "blue", "z", "z"),
        ("k", "blue", "x", "y"),
        ("beta", "red", "v", "v"),
        ("c", "red", "v", "z"),
        ("b", "red", "v", "x"),
        ("f", "red", "x", "z"),
        ("m", "red", "z", "z"),
        ("e", "red", "x", "y"),
    ] {
        b.edge(name, color, s, r);
    }
    b.build().unwrap()
}

pub fn squares(sk: &Skeleton, rules: &[[&str; 4]]) -> SquareSet {
    let e = |n: &str| sk.edge(n).unwrap();
    SquareSet::new(
        sk,
        rules.iter().map(|[a, b, c, d]| {
            (TwoPath::new(e(a), e(b)), TwoPath::new(e(c), e(d)))
        }),
    )
    .unwrap()
}

pub const RULES1: [[&str; 4]; 8] = [
    ["beta", "alpha", "alpha", "beta"],
    ["b", "alpha", "h", "beta"],
    ["c", "alpha", "i", "beta"],
    ["e", "h", "k", "b"],
    ["f", "h", "l", "b"],
    ["m", "l", "n", "f"],
    ["m", "n", "n", "m"],
    ["m", "i", "n", "c"],
];

pub fn rules2() -> Vec<[&'static str; 4]> {
    let mut r = RULES1.to_vec();
    r[4] = ["f", "h", "n", "c"];
    r[7] = ["m", "i", "l", "b"];
    r
}

pub fn lambda1() -> KGraph {
    let sk = lambda_skeleton();
    let sq = squares(&sk, &RULES1);
    build_kgraph(sk, sq).unwrap()
}

pub fn lambda2() -> KGraph {
    let sk = lambda_skeleton();
    let sq = squares(&sk, &rules2());
    build_kgraph(sk, sq).unwrap()
}

/// The full ∼-class of a path, by rewriting every length-2 window with the
/// raw square list.
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

/// Every edge sequence of length 1..=max_len, unnormalized.
pub fn all_raw_paths(sk: &Skeleton, max_len: usize) -> Vec<Path> {
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<EdgeId>> = sk.edge_ids().map(|e| vec![e]).collect();
    for _ in 0..max_len {
        out.extend(frontier.iter().map(|w| Path::from_edges(sk, w.clone()).unwrap()));
        let mut next = Vec::new();
        for w in &frontier {
            let first = *w.last().unwrap();
            for inner in sk.edge_ids().filter(|x| sk.range(*x) == sk.source(first)) {
                let mut n = w.clone();
                n.push(inner);
                next.push(n);
            }
        }
        frontier = next;
    }
    out
}

