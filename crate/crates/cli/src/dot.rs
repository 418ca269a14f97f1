//! Hasse diagrams in Graphviz DOT, one record node per subgroup.

use std::fmt::Write as _;

use serde::Serialize;

use crate::document::AnalysisDocument;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Annotate {
    Measure,
    Fiber,
}

const PALETTE: [&str; 8] = [
    "#e6f2ff", "#ffe6cc", "#e6ffe6", "#f2e6ff", "#ffffcc", "#ffe6f2", "#e6ffff", "#f2f2f2",
];

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        if matches!(c, '"' | '\\' | '{' | '}' | '|' | '<' | '>') {
            out.push('\\');
        }
        out.push(c);
    }
    out
}

/// Fill colour of each fiber, largest measure first.
pub fn fiber_colors(doc: &AnalysisDocument) -> Vec<(u64, &'static str)> {
    doc.measure
        .fibers
        .iter()
        .rev()
        .enumerate()
        .map(|(i, f)| (f.measure, PALETTE[i % PALETTE.len()]))
        .collect()
}

pub fn render_dot(doc: &AnalysisDocument, annotate: Annotate) -> String {
    let mut out = String::new();
    let name = doc.group.name.replace('\\', "\\\\").replace('"', "\\\"");
    let _ = writeln!(out, "digraph \"{name}\" {{");
    out.push_str("  rankdir=BT;\n  node [shape=record, fontname=\"Helvetica\"];\n");
    let colors = fiber_colors(doc);
    for s in &doc.subgroups {
        let label = format!("{}|{}|{}", escape(&s.label), s.order, s.measure);
        let mut attrs = format!("label=\"{label}\"");
        match annotate {
            Annotate::Fiber => {
                let color = colors
                    .iter()
                    .find(|(m, _)| *m == s.measure)
                    .map_or(PALETTE[0], |(_, c)| *c);
                let _ = write!(attrs, ", style=filled, fillcolor=\"{color}\"");
            }
            Annotate::Measure if s.in_cd => attrs.push_str(", penwidth=2"),
            Annotate::Measure => {}
        }
        let _ = writeln!(out, "  n{} [{attrs}];", s.id);
    }
    for [lo, hi] in &doc.hasse {
        let _ = writeln!(out, "  n{lo} -> n{hi};");
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize)]
struct LatticeNode<'a> {
    id: usize,
    label: &'a str,
    order: usize,
    measure: u64,
    fiber: usize,
}

#[derive(Serialize)]
struct LatticeJson<'a> {
    group: &'a str,
    nodes: Vec<LatticeNode<'a>>,
    edges: &'a [[usize; 2]],
}

/// The Hasse diagram as JSON; `fiber` ranks measures from the largest.
pub fn render_lattice_json(doc: &AnalysisDocument) -> String {
    let ranks: Vec<u64> = doc.measure.fibers.iter().rev().map(|f| f.measure).collect();
    let nodes = doc
        .subgroups
        .iter()
        .map(|s| LatticeNode {
            id: s.id,
            label: &s.label,
            order: s.order,
            measure: s.measure,
            fiber: ranks.iter().position(|&m| m == s.measure).unwrap_or(0),
        })
        .collect();
    serde_json::to_string_pretty(&LatticeJson {
        group: &doc.group.name,
        nodes,
        edges: &doc.hasse,
    })
    .expect("lattice serializes")
}
