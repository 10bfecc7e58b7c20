//! DOT and plain-text renderings.

use std::fmt::Write as _;

use singlink::resgraph::{OrbifoldDiagram, ResolutionGraph};
use singlink::NewtonDiagram;

pub fn graph_dot(g: &ResolutionGraph) -> String {
    let mut s = String::from("graph resolution {\n");
    for (v, b) in g.weights.iter().enumerate() {
        let _ = writeln!(s, "  v{v} [label=\"{b}\"];");
    }
    let mut edges: Vec<(usize, usize)> = g.edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    edges.sort();
    for (a, b) in edges {
        let _ = writeln!(s, "  v{a} -- v{b};");
    }
    s.push_str("}\n");
    s
}

pub fn graph_text(g: &ResolutionGraph) -> String {
    let mut s = String::new();
    for (v, b) in g.weights.iter().enumerate() {
        let _ = writeln!(s, "vertex {v} {b}");
    }
    for (a, b) in &g.edges {
        let _ = writeln!(s, "edge {a} {b}");
    }
    s
}

pub fn orbifold_dot(go: &OrbifoldDiagram) -> String {
    let mut s = String::from("graph orbifold {\n");
    if let Some(n) = &go.free_edge {
        let _ = writeln!(s, "  a [shape=point];\n  b [shape=point];\n  a -- b [label=\"{n}\"];");
    }
    for (v, e) in go.euler.iter().enumerate() {
        let _ = writeln!(s, "  n{v} [label=\"{e}\"];");
    }
    for (a, b, d) in &go.edges {
        let _ = writeln!(s, "  n{} -- n{} [label=\"{d}\"];", a.min(b), a.max(b));
    }
    for (i, (v, d)) in go.legs.iter().enumerate() {
        let _ = writeln!(s, "  l{i} [shape=point];\n  n{v} -- l{i} [label=\"{d}\"];");
    }
    s.push_str("}\n");
    s
}

pub fn orbifold_text(go: &OrbifoldDiagram) -> String {
    let mut s = String::new();
    if let Some(n) = &go.free_edge {
        let _ = writeln!(s, "free edge {n}");
    }
    for (v, e) in go.euler.iter().enumerate() {
        let _ = writeln!(s, "node {v} e={e}");
    }
    for (a, b, d) in &go.edges {
        let _ = writeln!(s, "edge {a} {b} det={d}");
    }
    for (v, d) in &go.legs {
        let _ = writeln!(s, "leg {v} det={d}");
    }
    s
}

/// Faces as vertices labeled by normal and face value; adjacent faces joined by their edge determinant.
pub fn diagram_dot(g: &NewtonDiagram) -> String {
    let mut s = String::from("graph diagram {\n");
    for (i, f) in g.compact_faces() {
        let _ = writeln!(s, "  f{i} [label=\"{} m={}\"];", f.normal, f.value);
    }
    for e in &g.edges {
        let [a, b] = e.faces;
        if g.faces[a].compact && g.faces[b].compact {
            let _ = writeln!(s, "  f{} -- f{} [label=\"{}\"];", a.min(b), a.max(b), e.det);
        }
    }
    s.push_str("}\n");
    s
}

pub fn diagram_text(g: &NewtonDiagram) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "vertices {g}");
    for (_, f) in g.compact_faces() {
        let v: Vec<String> = f.polygon.vertices.iter().map(|p| p.to_string()).collect();
        let _ = writeln!(s, "face normal={} m={} [{}]", f.normal, f.value, v.join(" "));
    }
    for e in &g.edges {
        let _ = writeln!(s, "edge {} {} det={} mult={}", e.ends[0], e.ends[1], e.det, e.mult);
    }
    s
}
