use std::collections::BTreeSet;

use super::cylinder::add_extension;
use super::products::disjoint_union;
use super::quotient::{identification, IdentificationSpec};
use super::{mapping_cylinder, ConstructionResult, Draft};
use crate::error::Result;
use crate::label::VertexLabel;
use crate::map::DigraphMap;

/// Cofiber `C(f)` of `f: G -> H`: a two-step extended cone keeping a middle
/// copy `Mid(G)` between `Base(H)` and `Apex`.
///
/// Edges:
/// - `E_H` on `Base` and `E_G` on `Mid`;
/// - `Base(f(g)) -> Mid(g)` for every `g`;
/// - extension edges between `Mid(G)` and `Base(H)` through `f`;
/// - `Mid(g) -> Apex` for every `g`, and `Base(h) -> Apex` for `h ∈ Im f`;
/// - for `y ∉ Im f`: `Apex -> Base(y)` if some `x ∈ Im f` has `x -> y`, and
///   `Base(y) -> Apex` if some `x ∈ Im f` has `y -> x`.
///
/// Maps: `inclusion` (`h ↦ Base(h)`) and `mid_inclusion` (`g ↦ Mid(g)`).
pub fn paper_cofiber(f: &DigraphMap) -> Result<ConstructionResult> {
    f.require_valid()?;
    let (g, h) = (f.domain(), f.codomain());
    let apex = VertexLabel::apex();
    let image: BTreeSet<&VertexLabel> = f.pairs().map(|(_, y)| y).collect();

    let mut d = Draft::default();
    d.vertex(apex.clone());
    for v in h.vertices() {
        d.vertex(VertexLabel::base(v));
    }
    for (x, y) in h.edges() {
        d.edge(VertexLabel::base(x), VertexLabel::base(y));
    }
    for (x, y) in g.edges() {
        d.edge(VertexLabel::mid(x), VertexLabel::mid(y));
    }
    for (v, fv) in f.pairs() {
        d.edge(VertexLabel::base(fv), VertexLabel::mid(v));
        d.edge(VertexLabel::mid(v), apex.clone());
    }
    add_extension(&mut d, f, &VertexLabel::mid, &VertexLabel::base);
    for x in &image {
        d.edge(VertexLabel::base(x), apex.clone());
    }
    for y in h.vertices().filter(|y| !image.contains(y)) {
        if h.in_neighbors(y).any(|x| image.contains(x)) {
            d.edge(apex.clone(), VertexLabel::base(y));
        }
        if h.out_neighbors(y).any(|x| image.contains(x)) {
            d.edge(VertexLabel::base(y), apex.clone());
        }
    }
    Ok(ConstructionResult::new(d.finish())
        .with_map("inclusion", h.clone(), VertexLabel::base)
        .with_map("mid_inclusion", g.clone(), VertexLabel::mid))
}

/// Gluing locus for [`gat`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GatGlue {
    /// Identify only the slice `Base(Im f)`.
    Image,
    /// Identify all of `Base(H)`.
    Base,
}

/// `M_f ⊔ C(f)` with the two copies of `Base(h)` identified, for `h ∈ Im f`
/// or for every `h` depending on `glue`. `M_f` is tagged `Pair(0,-)` and
/// `C(f)` is tagged `Pair(1,-)`.
///
/// Maps: `cylinder_inclusion` and `cofiber_inclusion`.
pub fn gat(f: &DigraphMap, glue: GatGlue) -> Result<ConstructionResult> {
    let cyl = mapping_cylinder(f)?;
    let cof = paper_cofiber(f)?;
    let parts = disjoint_union(&[cyl.digraph.clone(), cof.digraph.clone()]);
    let (t0, t1) = (VertexLabel::index(0), VertexLabel::index(1));
    let glued: BTreeSet<&VertexLabel> = match glue {
        GatGlue::Image => f.pairs().map(|(_, y)| y).collect(),
        GatGlue::Base => f.codomain().vertices().collect(),
    };
    let mut spec = IdentificationSpec::new(parts.digraph.clone());
    for h in glued {
        let b = VertexLabel::base(h);
        spec.identify(VertexLabel::pair(&t0, &b), VertexLabel::pair(&t1, &b));
    }
    let mut res = identification(&spec)?;
    let q = res.map("quotient").clone();
    res.maps.insert("cylinder_inclusion".into(), q.after(parts.map("inclusion_0"))?);
    res.maps.insert("cofiber_inclusion".into(), q.after(parts.map("inclusion_1"))?);
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::tests::*;
    use crate::digraph::is_induced;
    use crate::label::LabelTag;

    #[test]
    fn cofiber_of_point_identity() {
        let p = point("p");
        let c = paper_cofiber(&DigraphMap::identity(p)).unwrap();
        assert_eq!(c.digraph.vertex_count(), 3);
        assert_eq!(
            edges_of(&c.digraph),
            ["Base(p)->Apex", "Base(p)->Mid(p)", "Mid(p)->Apex"]
        );
    }

    #[test]
    fn cofiber_of_point_into_interval() {
        let f = map(&point("p"), &iplus(), &[("p", "0")]);
        let c = paper_cofiber(&f).unwrap();
        assert!(c.digraph.has_edge(&l("Apex"), &l("Base(1)")));
        assert!(!c.digraph.has_edge(&l("Base(1)"), &l("Apex")));
        assert!(c.maps.values().all(|m| m.is_valid()));
    }

    #[test]
    fn cofiber_contains_codomain_induced() {
        let f = map(&iplus(), &c3(), &[("0", "a"), ("1", "b")]);
        let c = paper_cofiber(&f).unwrap();
        let h = c3().relabel(VertexLabel::base);
        assert!(is_induced(&h, &c.digraph));
        assert!(c.digraph.vertices().all(|v| v.tag() != LabelTag::Cyl));
    }

    #[test]
    fn gat_variants_differ_off_the_image() {
        let f = map(&point("p"), &iplus(), &[("p", "0")]);
        let im = gat(&f, GatGlue::Image).unwrap();
        let all = gat(&f, GatGlue::Base).unwrap();
        assert_eq!(im.digraph.vertex_count(), all.digraph.vertex_count() + 1);
        assert!(im.maps.values().chain(all.maps.values()).all(|m| m.is_valid()));
    }
}
