use std::fmt::Write as _;

use crate::skeleton::{Color, KGraph};

const STYLES: [&str; 3] = ["solid", "dashed", "dotted"];

pub fn style_for(c: Color) -> &'static str {
    STYLES[c.0 % STYLES.len()]
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz rendering of the skeleton. Edges point from source to range; the
/// squares are listed in a comment block.
pub fn to_dot(g: &KGraph) -> String {
    let sk = g.skeleton();
    let mut out = String::from("digraph kgraph {\n");
    for (i, name) in sk.color_names().iter().enumerate() {
        let _ = writeln!(out, "  // color {name}: {}", style_for(Color(i)));
    }
    if !g.squares().is_empty() {
        out.push_str("  /* squares (right-to-left paths):\n");
        for sq in g.squares().iter() {
            let _ = writeln!(out, "     {}", sq.display(sk).replace("*/", "* /"));
        }
        out.push_str("  */\n");
    }
    for v in sk.vertex_ids() {
        let _ = writeln!(out, "  {};", quote(sk.vertex_name(v)));
    }
    for e in sk.edge_ids() {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}, style={}];",
            quote(sk.vertex_name(sk.source(e))),
            quote(sk.vertex_name(sk.range(e))),
            quote(sk.edge_name(e)),
            style_for(sk.color(e))
        );
    }
    out.push_str("}\n");
    out
}
