//! Graphviz output for proof structures and abstract proof structures.

use std::collections::BTreeMap;
use std::fmt::Write;

use super::{AbstractEdge, AbstractStructure, LinkKind, ProofStructure};
use crate::term::Substitution;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Occurrences as nodes, links as edges from the main formula to its active
/// formulas, and matched atoms joined by axiom edges.
pub fn structure_to_dot(ps: &ProofStructure, pairs: &BTreeMap<usize, usize>, subst: &Substitution) -> String {
    let mut out = String::from("digraph structure {\n  node [shape=plaintext];\n");
    for o in &ps.occurrences {
        let sign = match o.polarity {
            super::Polarity::Positive => "+",
            super::Polarity::Negative => "-",
        };
        let _ = writeln!(out, "  n{} [label={}];", o.id, quote(&format!("{}{sign}", subst.apply(&o.formula))));
    }
    for l in &ps.links {
        for &a in &l.active {
            let attrs = match l.kind {
                LinkKind::Tensor | LinkKind::Existential => "dir=none".to_string(),
                LinkKind::Par => "dir=none, style=dashed".to_string(),
                LinkKind::Universal => {
                    let x = l.var.as_ref().and_then(|t| t.name()).unwrap_or_default();
                    format!("style=dashed, label={}", quote(x))
                }
            };
            let _ = match l.kind {
                LinkKind::Universal => writeln!(out, "  n{a} -> n{} [{attrs}];", l.main),
                _ => writeln!(out, "  n{} -> n{a} [{attrs}];", l.main),
            };
        }
    }
    for (p, q) in pairs {
        let _ = writeln!(out, "  n{p} -> n{q} [dir=none, style=bold, color=gray];");
    }
    out.push_str("}\n");
    out
}

/// Vertices labelled with eigenvariable sets; solid edges plain, par pairs
/// dashed, universal edges dashed with an arrowhead and the eigenvariable.
pub fn abstract_to_dot(aps: &AbstractStructure) -> String {
    let mut out = String::from("digraph abstract {\n  node [shape=ellipse];\n");
    for (v, label) in aps.labels.iter().enumerate() {
        let text = format!("{{{}}}", label.iter().cloned().collect::<Vec<_>>().join(","));
        let _ = writeln!(out, "  v{v} [label={}];", quote(&text));
    }
    for (i, e) in aps.edges.iter().enumerate() {
        let _ = match e {
            AbstractEdge::Solid(a, b) => writeln!(out, "  v{a} -> v{b} [dir=none];"),
            AbstractEdge::Par { main, left, right } => writeln!(
                out,
                "  v{main} -> v{left} [dir=none, style=dashed, label=\"p{i}\"];\n  v{main} -> v{right} [dir=none, style=dashed, label=\"p{i}\"];"
            ),
            AbstractEdge::Universal { premiss, conclusion, eigen } => {
                writeln!(out, "  v{premiss} -> v{conclusion} [style=dashed, label={}];", quote(eigen))
            }
        };
    }
    out.push_str("}\n");
    out
}
