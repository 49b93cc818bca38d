//! Graphviz export. Node shapes follow the outermost construction tag.

use std::fmt::Write as _;
use std::path::Path;

use crate::digraph::Digraph;
use crate::error::Result;
use crate::label::LabelTag;

fn shape(tag: LabelTag) -> &'static str {
    match tag {
        LabelTag::Atom => "ellipse",
        LabelTag::Pair => "box",
        LabelTag::Base => "rectangle",
        LabelTag::Cyl => "circle",
        LabelTag::Mid => "diamond",
        LabelTag::Src => "hexagon",
        LabelTag::Cone => "triangle",
        LabelTag::Apex => "doublecircle",
        LabelTag::Star => "star",
        LabelTag::Class => "octagon",
    }
}

/// Renders `g` with one node line per vertex and one arc per edge, both in
/// label order.
pub fn to_dot(g: &Digraph, name: &str) -> String {
    let mut out = format!("digraph \"{name}\" {{\n");
    for v in g.vertices() {
        let _ = writeln!(out, "  \"{v}\" [shape={}];", shape(v.tag()));
    }
    for (x, y) in g.edges() {
        let _ = writeln!(out, "  \"{x}\" -> \"{y}\";");
    }
    out.push_str("}\n");
    out
}

pub fn export_dot(g: &Digraph, path: &Path) -> Result<()> {
    let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("G");
    std::fs::write(path, to_dot(g, name))?;
    Ok(())
}
