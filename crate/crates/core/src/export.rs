//! Graphviz rendering of module graphs.

use std::fmt::Write;

use crate::structure::{ModuleGraph, NodeKind};

fn label(kind: NodeKind, x: crate::Weight) -> String {
    match kind {
        NodeKind::G1BSimple => format!("L̂{x}"),
        NodeKind::NablaL => format!("∇_l{x}"),
    }
}

/// One node per factor, edges directed upper to lower, nodes of a layer
/// kept on one rank.
pub fn to_dot(g: &ModuleGraph) -> String {
    let mut out = String::new();
    let name = match g.kind() {
        NodeKind::G1BSimple => "zhat",
        NodeKind::NablaL => "nabla",
    };
    writeln!(out, "digraph {name} {{").unwrap();
    writeln!(
        out,
        "  label=\"{name} {} l={} case {}\";",
        g.lam, g.l, g.case
    )
    .unwrap();
    writeln!(out, "  rankdir=TB;").unwrap();
    for n in &g.nodes {
        writeln!(
            out,
            "  n{} [label=\"{}\", layer={}];",
            n.id,
            label(n.kind, n.weight),
            n.layer
        )
        .unwrap();
    }
    let top = g.nodes.iter().map(|n| n.layer).max().unwrap_or(0);
    for layer in 0..=top {
        let ids: Vec<String> = g
            .nodes
            .iter()
            .filter(|n| n.layer == layer)
            .map(|n| format!("n{}", n.id))
            .collect();
        if ids.len() > 1 {
            writeln!(out, "  {{ rank=same; {}; }}", ids.join("; ")).unwrap();
        }
    }
    for (u, v) in &g.edges {
        writeln!(out, "  n{u} -> n{v};").unwrap();
    }
    out.push_str("}\n");
    out
}
