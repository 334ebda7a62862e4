use std::fmt::Write;

use super::{Anchor, DualGraph, MsfCut, RelativeForest};

/// Fixed attributes for the three highlighted element kinds.
#[derive(Debug, Clone, Copy)]
pub struct DotStyle {
    pub minimum: &'static str,
    pub forest_edge: &'static str,
    pub cut_edge: &'static str,
    pub other_edge: &'static str,
}

impl Default for DotStyle {
    fn default() -> Self {
        DotStyle {
            minimum: "style=filled, fillcolor=lightblue",
            forest_edge: "color=blue, penwidth=2",
            cut_edge: "color=red, style=dashed",
            other_edge: "color=gray",
        }
    }
}

/// Graphviz rendering of the dual graph. Nodes are d-simplices, edges are
/// labelled with the shared face and its altitude.
pub fn to_dot(
    dg: &DualGraph,
    anchor: Option<&Anchor>,
    forest: Option<&RelativeForest>,
    cut: Option<&MsfCut>,
    style: &DotStyle,
) -> String {
    let space = dg.space();
    let mut out = String::from("graph dual {\n  node [shape=box];\n");
    for v in dg.vertices() {
        let extra = match anchor {
            Some(a) if a.vertices.contains(&v) => format!(", {}", style.minimum),
            _ => String::new(),
        };
        writeln!(out, "  n{v} [label=\"{}\"{extra}];", space.simplex(v)).unwrap();
    }
    for e in dg.edges() {
        let attrs = if forest.is_some_and(|f| f.edges().contains(&e.ridge)) {
            style.forest_edge
        } else if cut.is_some_and(|c| c.cut_edges.contains(&e.ridge)) {
            style.cut_edge
        } else {
            style.other_edge
        };
        writeln!(
            out,
            "  n{} -- n{} [label=\"{} : {}\", {attrs}];",
            e.ends[0],
            e.ends[1],
            space.simplex(e.ridge),
            e.weight
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
