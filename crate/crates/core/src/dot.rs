//! Graphviz output for LOGs and their auxiliary graphs.

use std::fmt::Write;

use crate::adian::LabeledEdgeGraph;
use crate::log_tools::UndirectedGraph;
use crate::presentation::Log;
use crate::whitehead::WhiteheadGraph;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Directed edges from initial to terminal vertex, labeled by the label.
pub fn log_dot(g: &Log) -> String {
    let mut out = String::from("digraph log {\n");
    for v in g.vertices() {
        let _ = writeln!(out, "  {};", quote(v));
    }
    for e in g.edges() {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(&g.vertices()[e.init]),
            quote(&g.vertices()[e.terminal]),
            quote(&g.vertices()[e.label])
        );
    }
    out.push_str("}\n");
    out
}

pub fn undirected_dot(g: &UndirectedGraph, name: &str) -> String {
    let mut out = format!("graph {} {{\n", quote(name));
    for v in &g.vertices {
        let _ = writeln!(out, "  {};", quote(v));
    }
    for &(a, b) in &g.edges {
        let _ = writeln!(
            out,
            "  {} -- {};",
            quote(&g.vertices[a]),
            quote(&g.vertices[b])
        );
    }
    out.push_str("}\n");
    out
}

/// Left or right graph; the endpoint labels are left out as in the usual
/// drawings.
pub fn labeled_dot(g: &LabeledEdgeGraph, name: &str) -> String {
    let mut out = format!("graph {} {{\n", quote(name));
    for v in &g.vertices {
        let _ = writeln!(out, "  {};", quote(v));
    }
    for e in &g.edges {
        let mut labels = e.labels.clone();
        for end in [e.a, e.b] {
            if let Some(k) = labels.iter().position(|&x| x == end) {
                labels.remove(k);
            }
        }
        let text: Vec<&str> = labels.iter().map(|&x| g.vertices[x].as_str()).collect();
        let _ = write!(
            out,
            "  {} -- {}",
            quote(&g.vertices[e.a]),
            quote(&g.vertices[e.b])
        );
        if text.is_empty() {
            out.push_str(";\n");
        } else {
            let _ = writeln!(out, " [label={}];", quote(&text.join(",")));
        }
    }
    out.push_str("}\n");
    out
}

pub fn whitehead_dot(g: &WhiteheadGraph) -> String {
    let mut out = String::from("graph whitehead {\n");
    for e in g.edges() {
        let _ = writeln!(
            out,
            "  {} -- {} [label={}];",
            quote(&g.vertex_name(e.a)),
            quote(&g.vertex_name(e.b)),
            quote(&format!("r{}.{}", e.relator + 1, e.corner + 1))
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adian::left_graph;
    use crate::presentation::{detect_adian, parse_log, parse_presentation};

    #[test]
    fn log_and_left_graph() {
        let g = parse_log("vertices: a b c\na c b").unwrap();
        assert!(log_dot(&g).contains("\"a\" -> \"b\" [label=\"c\"];"));
        let a = detect_adian(&parse_presentation("x, y, u | x u = y x").unwrap()).unwrap();
        let dot = labeled_dot(&left_graph(&a), "L");
        assert!(dot.contains("\"x\" -- \"y\" [label=\"u\"];"), "{dot}");
    }
}
