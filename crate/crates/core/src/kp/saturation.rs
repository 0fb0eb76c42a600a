use std::collections::BTreeSet;

use super::KpError;
use crate::skeleton::{Color, Degree, GraphError, KGraph, VertexId};

/// Smallest hereditary saturated set containing `x`. Heredity is closed
/// edgewise; saturation is tried at each basis degree, which reaches the same
/// fixed point as trying every degree, and the all-ones degree is checked
/// once more on the result.
pub fn saturation(g: &KGraph, x: &BTreeSet<VertexId>) -> Result<BTreeSet<VertexId>, KpError> {
    let sk = g.skeleton();
    if let Some(v) = x.iter().find(|v| v.0 >= sk.vertex_count()) {
        return Err(GraphError::UnknownVertex(format!("#{}", v.0)).into());
    }
    let mut s = x.clone();
    let mut degrees: Vec<Degree> = (0..g.k()).map(|i| Degree::basis(g.k(), Color(i))).collect();
    degrees.push(Degree::ones(g.k()));
    loop {
        let mut stack: Vec<VertexId> = s.iter().copied().collect();
        while let Some(v) = stack.pop() {
            for c in 0..g.k() {
                for &e in sk.incoming(v, Color(c)) {
                    if s.insert(sk.source(e)) {
                        stack.push(sk.source(e));
                    }
                }
            }
        }
        let mut grew = false;
        for v in sk.vertex_ids().filter(|v| !s.contains(v)).collect::<Vec<_>>() {
            for n in &degrees {
                let paths = g.paths_with_range(v, n)?;
                if paths.iter().all(|p| s.contains(&p.source())) {
                    s.insert(v);
                    grew = true;
                    break;
                }
            }
        }
        if !grew {
            return Ok(s);
        }
    }
}
