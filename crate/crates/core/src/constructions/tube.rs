use std::sync::Arc;

use super::cylinder::add_extension;
use super::{ConstructionResult, Draft};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::label::VertexLabel;
use crate::map::DigraphMap;

/// Reduced mapping cylinder `T_f`: `Src(G)` with fibers `Src(v) -> Base(f(v))`
/// onto `Base(Im f)`, keeping only the image edges of `H`.
pub fn reduced_cylinder(f: &DigraphMap) -> Result<Digraph> {
    f.require_valid()?;
    let mut d = Draft::default();
    add_reduced(&mut d, f, &VertexLabel::src, &VertexLabel::base);
    Ok(d.finish())
}

fn add_reduced(
    d: &mut Draft,
    f: &DigraphMap,
    src: &impl Fn(&VertexLabel) -> VertexLabel,
    base: &impl Fn(&VertexLabel) -> VertexLabel,
) {
    let g = f.domain();
    for v in g.vertices() {
        d.vertex(src(v));
    }
    for (x, y) in g.edges() {
        d.edge(src(x), src(y));
        let (fx, fy) = (f.image(x).unwrap(), f.image(y).unwrap());
        if fx != fy {
            d.edge(base(fx), base(fy));
        }
    }
    for (v, fv) in f.pairs() {
        d.edge(src(v), base(fv));
    }
}

fn check_pair(f: &DigraphMap, g: &DigraphMap) -> Result<()> {
    if !f.same_signature(g) {
        return Err(Error::SignatureMismatch);
    }
    f.require_valid()?;
    g.require_valid()
}

fn add_tube(
    d: &mut Draft,
    f: &DigraphMap,
    g: &DigraphMap,
    src: &impl Fn(&VertexLabel) -> VertexLabel,
    base: &impl Fn(&VertexLabel) -> VertexLabel,
) {
    for h in f.codomain().vertices() {
        d.vertex(base(h));
    }
    add_reduced(d, f, src, base);
    add_reduced(d, g, src, base);
    add_extension(d, f, src, base);
    add_extension(d, g, src, base);
}

/// Mapping tube `MT_{f,g} = T_f ∪ T_g ∪ E_f ∪ E_g` over one shared `Src(G)`.
/// Every vertex of `H` appears as `Base(h)`, since the extensions reach
/// outside the images. The tube alone does not contain `H`'s edges off the
/// images, so the only canonical map is `src_inclusion` (`v ↦ Src(v)`).
pub fn mapping_tube(f: &DigraphMap, g: &DigraphMap) -> Result<ConstructionResult> {
    check_pair(f, g)?;
    let mut d = Draft::default();
    add_tube(&mut d, f, g, &VertexLabel::src, &VertexLabel::base);
    Ok(ConstructionResult::new(d.finish())
        .with_map("src_inclusion", f.domain().clone(), VertexLabel::src))
}

/// `H ∪ MT_{f,g}` with `H` on the `Base` labels, so that `inclusion` is the
/// map `i` under which `i∘f ≃ i∘g`.
pub fn tube_union(f: &DigraphMap, g: &DigraphMap) -> Result<ConstructionResult> {
    check_pair(f, g)?;
    let mut d = Draft::default();
    for (x, y) in f.codomain().edges() {
        d.edge(VertexLabel::base(x), VertexLabel::base(y));
    }
    add_tube(&mut d, f, g, &VertexLabel::src, &VertexLabel::base);
    Ok(ConstructionResult::new(d.finish())
        .with_map("inclusion", f.codomain().clone(), VertexLabel::base)
        .with_map("src_inclusion", f.domain().clone(), VertexLabel::src))
}

/// Attaches `MT_{f,g}` to the codomain `Y` of `f, g` in place: `Y` keeps its
/// labels and the shared copy of the domain is named `Src(Pair(tag, v))`.
/// Maps: `inclusion` (`Y` into the result) and `src_inclusion`.
pub fn attach_tube(f: &DigraphMap, g: &DigraphMap, tag: &VertexLabel) -> Result<ConstructionResult> {
    check_pair(f, g)?;
    let y: &Arc<Digraph> = f.codomain();
    let src = |v: &VertexLabel| VertexLabel::src(&VertexLabel::pair(tag, v));
    let mut d = Draft::default();
    d.absorb(y);
    add_tube(&mut d, f, g, &src, &VertexLabel::clone);
    let res = ConstructionResult::new(d.finish());
    if res.digraph.vertex_count() != y.vertex_count() + f.domain().vertex_count() {
        return Err(Error::PreconditionFailed(format!(
            "tube tag {tag} collides with existing vertices"
        )));
    }
    Ok(res
        .with_map("inclusion", y.clone(), VertexLabel::clone)
        .with_map("src_inclusion", f.domain().clone(), src))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::tests::*;

    #[test]
    fn reduced_cylinder_of_interval_identity() {
        let t = reduced_cylinder(&DigraphMap::identity(iplus())).unwrap();
        assert_eq!(t.vertex_count(), 4);
        assert_eq!(
            edges_of(&t),
            ["Base(0)->Base(1)", "Src(0)->Base(0)", "Src(0)->Src(1)", "Src(1)->Base(1)"]
        );
    }

    #[test]
    fn tube_of_equal_constants_into_c3() {
        let f = map(&point("p"), &c3(), &[("p", "a")]);
        let mt = mapping_tube(&f, &f).unwrap();
        assert_eq!(
            edges_of(&mt.digraph),
            ["Base(c)->Src(p)", "Src(p)->Base(a)", "Src(p)->Base(b)"]
        );
        assert!(mt.maps.values().all(|m| m.is_valid()));
    }

    #[test]
    fn tube_signature_mismatch() {
        let f = map(&point("p"), &c3(), &[("p", "a")]);
        let g = map(&point("p"), &iplus(), &[("p", "0")]);
        assert_eq!(mapping_tube(&f, &g).unwrap_err(), Error::SignatureMismatch);
    }

    #[test]
    fn attach_keeps_codomain_labels() {
        let y = Arc::new(Digraph::from_atoms(&["p", "q"], &[]).unwrap());
        let f = map(&point("k"), &y, &[("k", "p")]);
        let g = map(&point("k"), &y, &[("k", "q")]);
        let r = attach_tube(&f, &g, &l("t0")).unwrap();
        assert_eq!(edges_of(&r.digraph), ["Src(Pair(t0,k))->p", "Src(Pair(t0,k))->q"]);
        assert!(r.maps.values().all(|m| m.is_valid()));
    }
}
