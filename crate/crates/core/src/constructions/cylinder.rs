use std::sync::Arc;

use super::{ConstructionResult, Draft};
use crate::digraph::{is_subdigraph, vertex_boundary, Digraph};
use crate::error::{Error, Result};
use crate::label::{LabelTag, VertexLabel};
use crate::map::DigraphMap;

/// Mapping cylinder `M_f` of `f: G -> H`.
///
/// Vertices are `Cyl(g)` for the free slice and `Base(h)` for `H`; the glued
/// slice is `Base(Im f)`. Edges: `E_H` on `Base`, `E_G` on `Cyl`, and the
/// fibers `Cyl(g) -> Base(f(g))`.
///
/// Maps: `base_inclusion` (H), `top_inclusion` (G, `g ↦ Cyl(g)`),
/// `retraction` (`M_f -> H`, crushing each fiber).
pub fn mapping_cylinder(f: &DigraphMap) -> Result<ConstructionResult> {
    f.require_valid()?;
    let (g, h) = (f.domain(), f.codomain());
    let mut d = Draft::default();
    add_base(&mut d, h);
    add_cyl(&mut d, f);
    let mut res = ConstructionResult::new(d.finish());
    res = res
        .with_map("base_inclusion", h.clone(), VertexLabel::base)
        .with_map("top_inclusion", g.clone(), VertexLabel::cyl);
    let retraction = DigraphMap::from_fn(res.digraph.clone(), h.clone(), |v| {
        retract(f, v)
    })?;
    res.maps.insert("retraction".into(), retraction);
    Ok(res)
}

fn retract(f: &DigraphMap, v: &VertexLabel) -> VertexLabel {
    match v.tag() {
        LabelTag::Base => v.unwrap_unary(LabelTag::Base).expect("base label"),
        LabelTag::Cyl => {
            let g = v.unwrap_unary(LabelTag::Cyl).expect("cylinder label");
            f.image(&g).expect("domain vertex").clone()
        }
        _ => unreachable!("mapping cylinder labels are Base or Cyl"),
    }
}

fn add_base(d: &mut Draft, h: &Digraph) {
    for v in h.vertices() {
        d.vertex(VertexLabel::base(v));
    }
    for (x, y) in h.edges() {
        d.edge(VertexLabel::base(x), VertexLabel::base(y));
    }
}

fn add_cyl(d: &mut Draft, f: &DigraphMap) {
    let g = f.domain();
    for (x, y) in g.edges() {
        d.edge(VertexLabel::cyl(x), VertexLabel::cyl(y));
    }
    for (v, fv) in f.pairs() {
        d.edge(VertexLabel::cyl(v), VertexLabel::base(fv));
    }
}

/// Extension edges of `f` between a free copy of `G` (labeled by `top`) and
/// `H` (labeled by `base`): `base(u) -> top(v)` iff `u -> f(v)`, and
/// `top(v) -> base(u)` iff `f(v) -> u`.
pub(crate) fn add_extension(
    d: &mut Draft,
    f: &DigraphMap,
    top: &impl Fn(&VertexLabel) -> VertexLabel,
    base: &impl Fn(&VertexLabel) -> VertexLabel,
) {
    let h = f.codomain();
    for (v, fv) in f.pairs() {
        d.vertex(top(v));
        for u in h.in_neighbors(fv) {
            d.edge(base(u), top(v));
        }
        for u in h.out_neighbors(fv) {
            d.edge(top(v), base(u));
        }
    }
}

/// Extension `E_f` on the vertices `Cyl(G) ∪ Base(H)`.
pub fn cylinder_extension(f: &DigraphMap) -> Result<Digraph> {
    f.require_valid()?;
    let mut d = Draft::default();
    for h in f.codomain().vertices() {
        d.vertex(VertexLabel::base(h));
    }
    add_extension(&mut d, f, &VertexLabel::cyl, &VertexLabel::base);
    Ok(d.finish())
}

/// `EM_f = M_f ∪ E_f`.
pub fn extended_mapping_cylinder(f: &DigraphMap) -> Result<Digraph> {
    f.require_valid()?;
    let mut d = Draft::default();
    add_base(&mut d, f.codomain());
    add_cyl(&mut d, f);
    add_extension(&mut d, f, &VertexLabel::cyl, &VertexLabel::base);
    Ok(d.finish())
}

/// Cone over `G`: `Cone(g)` with `E_G`, plus `Cone(g) -> Apex` for every `g`.
/// The map `top_inclusion` sends `g ↦ Cone(g)`.
pub fn cone(g: &Arc<Digraph>) -> ConstructionResult {
    let mut d = Draft::default();
    add_cone(&mut d, g, &VertexLabel::cone);
    ConstructionResult::new(d.finish()).with_map("top_inclusion", g.clone(), VertexLabel::cone)
}

fn add_cone(d: &mut Draft, g: &Digraph, name: &impl Fn(&VertexLabel) -> VertexLabel) {
    d.vertex(VertexLabel::apex());
    for (x, y) in g.edges() {
        d.edge(name(x), name(y));
    }
    for v in g.vertices() {
        d.edge(name(v), VertexLabel::apex());
    }
}

/// Apex edges towards the boundary of `X` in `H`.
///
/// `Apex -> y` iff some `x ∈ X` has `x -> y`; `y -> Apex` iff some `x ∈ X`
/// has `y -> x`. Vertices of `X` and their boundary keep `H`'s labels after
/// passing through `name`.
pub(crate) fn add_cone_extension(
    d: &mut Draft,
    x: &Digraph,
    h: &Digraph,
    name: &impl Fn(&VertexLabel) -> VertexLabel,
) -> Result<()> {
    let apex = VertexLabel::apex();
    d.vertex(apex.clone());
    for y in vertex_boundary(x, h)? {
        d.vertex(name(&y));
        if h.in_neighbors(&y).any(|s| x.contains(s)) {
            d.edge(apex.clone(), name(&y));
        }
        if h.out_neighbors(&y).any(|t| x.contains(t)) {
            d.edge(name(&y), apex.clone());
        }
    }
    Ok(())
}

/// `B_X`: the boundary `∂X` in `H` plus `Apex`, with apex edges mimicking
/// the edges between `X` and its boundary.
pub fn cone_extension(x: &Digraph, h: &Digraph) -> Result<Digraph> {
    if !is_subdigraph(x, h) {
        return Err(Error::NotSubdigraph);
    }
    let mut d = Draft::default();
    add_cone_extension(&mut d, x, h, &VertexLabel::clone)?;
    Ok(d.finish())
}

/// `CX ∪ B_X`. The free slice of the cone is labeled by `X`'s own labels, so
/// the result shares `X ∪ ∂X` with `H`.
pub fn extended_cone(x: &Digraph, h: &Digraph) -> Result<Digraph> {
    if !is_subdigraph(x, h) {
        return Err(Error::NotSubdigraph);
    }
    let mut d = Draft::default();
    add_cone(&mut d, x, &VertexLabel::clone);
    add_cone_extension(&mut d, x, h, &VertexLabel::clone)?;
    Ok(d.finish())
}
