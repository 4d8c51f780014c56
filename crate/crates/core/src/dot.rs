//! Graphviz export.

use std::fmt::Write;

use crate::tree::{BroadcastAssignment, Tree, Vertex};

/// DOT text for `tree` with the `spine` vertices held on one rank. Each
/// vertex is labelled with its value under `f`, or left blank without one.
pub fn to_dot(tree: &Tree, spine: &[Vertex], f: Option<&BroadcastAssignment>) -> String {
    let mut out =
        String::from("graph lobster {\n  node [shape=circle, fixedsize=true, width=0.35];\n");
    if !spine.is_empty() {
        let ids: Vec<String> = spine.iter().map(|v| v.to_string()).collect();
        writeln!(out, "  {{ rank=same; {}; }}", ids.join("; ")).unwrap();
    }
    for v in 0..tree.n() {
        let label = f.map(|f| f.get(v).to_string()).unwrap_or_default();
        writeln!(out, "  {v} [label=\"{label}\"];").unwrap();
    }
    for &(u, v) in tree.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}
