use alloc::string::String;
use core::fmt::Write as _;

use super::WhiteheadGraph;
use crate::freegroup::{Basis, Letter};

/// Renders `graph` in DOT. Vertices are named `g+` for the letter `g` and
/// `g-` for `g⁻¹`; edges keep their multiplicity and carry a
/// `curve:position` label. Output depends only on the graph.
pub fn to_dot(graph: &WhiteheadGraph, basis: &Basis, curve_names: &[String]) -> String {
    let mut out = String::from("graph whitehead {\n");
    for v in 0..graph.vertex_count() {
        let _ = writeln!(out, "  \"{}\";", basis.vertex_name(Letter::from_vertex(v)));
    }
    for e in graph.edges() {
        let a = basis.vertex_name(Letter::from_vertex(e.ends.0));
        let b = basis.vertex_name(Letter::from_vertex(e.ends.1));
        let curve = curve_names.get(e.curve).map_or_else(|| alloc::format!("{}", e.curve), Clone::clone);
        let _ = writeln!(out, "  \"{a}\" -- \"{b}\" [label=\"{curve}:{}\"];", e.position);
    }
    out.push_str("}\n");
    out
}
