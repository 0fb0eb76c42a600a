use std::collections::BTreeSet;

use super::{LimarError, SplitResult};
use crate::skeleton::{Color, EdgeId, KGraph, Path};

/// `W_e^B`: the `B`-colored edges `c` with `f·e ∼ a·c` for some edges `f, a`.
pub fn sibling_set(g: &KGraph, e: EdgeId, color: Color) -> Result<BTreeSet<EdgeId>, LimarError> {
    let sk = g.skeleton();
    sk.check_color(color)?;
    if sk.color(e) == color {
        return Err(LimarError::BaseColoredEdge {
            edge: sk.edge_name(e).to_string(),
        });
    }
    let mut out = BTreeSet::new();
    for &f in sk.outgoing(sk.range(e), color) {
        out.insert(g.swap(f, e)?.1);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairedReport {
    pub paired: bool,
    /// First edge whose sibling set is too large, with that set.
    pub witness: Option<(EdgeId, BTreeSet<EdgeId>)>,
}

/// Every non-`B` edge must have exactly one sibling. An edge whose range is a
/// degree-`B` sink has none and is exempt.
pub fn is_paired(g: &KGraph, color: Color) -> Result<PairedReport, LimarError> {
    let sk = g.skeleton();
    sk.check_color(color)?;
    for e in sk.edge_ids().filter(|e| sk.color(*e) != color) {
        let w = sibling_set(g, e, color)?;
        let sink = sk.outgoing(sk.range(e), color).is_empty();
        if w.len() != 1 && !(w.is_empty() && sink) {
            return Ok(PairedReport {
                paired: false,
                witness: Some((e, w)),
            });
        }
    }
    Ok(PairedReport {
        paired: true,
        witness: None,
    })
}

/// The lift `f^j` of a Λ-path: the outermost edge goes to its `j`-th copy and
/// every further edge to the copy ranging at the previous copy's source. The
/// edge order of `f` is kept.
pub fn copy_path(result: &SplitResult, f: &Path, j: usize) -> Result<Path, LimarError> {
    let ls = result.lambda.skeleton();
    let max = result.n(f.range());
    if j == 0 || j > max {
        return Err(LimarError::CopyIndex {
            path: f.display(ls),
            index: j,
            max,
        });
    }
    require_paired(result)?;
    let gs = result.gamma.skeleton();
    if f.is_vertex() {
        return Ok(Path::vertex(
            result.vertex_copy(f.range(), j).expect("j is in range"),
        ));
    }
    let mut index = j;
    let mut edges = Vec::with_capacity(f.len());
    for &e in f.edges() {
        let lifted = result.edge_copy(e, index).expect("copies exist up to n(r(e))");
        index = result.vertex_parent(gs.source(lifted)).1;
        edges.push(lifted);
    }
    Ok(Path::from_edges(gs, edges)?)
}

pub(crate) fn require_paired(result: &SplitResult) -> Result<(), LimarError> {
    if result.paired {
        return Ok(());
    }
    let ls = result.lambda.skeleton();
    let report = is_paired(&result.lambda, result.color)?;
    let (e, w) = report.witness.expect("unpaired graphs have a witness");
    Err(LimarError::NotPaired {
        edge: ls.edge_name(e).to_string(),
        siblings: w.iter().map(|x| ls.edge_name(*x).to_string()).collect(),
    })
}

/// Edgewise parent of a Γ-path.
pub fn parent_path(result: &SplitResult, lambda: &Path) -> Path {
    if lambda.is_vertex() {
        return Path::vertex(result.vertex_parent(lambda.range()).0);
    }
    let edges = lambda
        .edges()
        .iter()
        .map(|e| result.edge_parent(*e).0)
        .collect();
    Path::from_edges(result.lambda.skeleton(), edges).expect("parents of composable edges compose")
}
