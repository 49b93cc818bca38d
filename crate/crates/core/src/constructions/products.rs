use std::sync::Arc;

use super::{ConstructionResult, Draft};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::label::VertexLabel;
use crate::map::DigraphMap;

/// Graph Cartesian product `G □ H` with its two projections `p1`, `p2`.
///
/// `(u1,v1) -> (u2,v2)` iff `u1 = u2` and `v1 -> v2`, or `u1 -> u2` and `v1 = v2`.
pub fn box_product(g: &Arc<Digraph>, h: &Arc<Digraph>) -> ConstructionResult {
    let mut d = Draft::default();
    for u in g.vertices() {
        for v in h.vertices() {
            d.vertex(VertexLabel::pair(u, v));
        }
    }
    for u in g.vertices() {
        for (v1, v2) in h.edges() {
            d.edge(VertexLabel::pair(u, v1), VertexLabel::pair(u, v2));
        }
    }
    for (u1, u2) in g.edges() {
        for v in h.vertices() {
            d.edge(VertexLabel::pair(u1, v), VertexLabel::pair(u2, v));
        }
    }
    let res = ConstructionResult::new(d.finish());
    let product = res.digraph.clone();
    let mut res = res;
    res.maps.insert("p1".into(), projection(&product, g, true));
    res.maps.insert("p2".into(), projection(&product, h, false));
    res
}

fn projection(product: &Arc<Digraph>, factor: &Arc<Digraph>, left: bool) -> DigraphMap {
    DigraphMap::from_fn(product.clone(), factor.clone(), |p| {
        let (a, b) = p.split_pair().expect("product vertices are pairs");
        if left {
            a
        } else {
            b
        }
    })
    .expect("projection lands in the factor")
}

/// Inclusion of the slice `G □ {v0}` into `G □ H`.
pub fn slice_inclusion(g: &Arc<Digraph>, h: &Arc<Digraph>, v0: &VertexLabel) -> Result<DigraphMap> {
    if !h.contains(v0) {
        return Err(Error::UnknownLabel(v0.clone()));
    }
    let product = box_product(g, h).digraph;
    DigraphMap::from_fn(g.clone(), product, |u| VertexLabel::pair(u, v0))
}

/// Tensor product `G ⊗ H`: edges are pairs of simultaneous edges.
pub fn tensor_product(g: &Digraph, h: &Digraph) -> Digraph {
    let mut d = Draft::default();
    for u in g.vertices() {
        for v in h.vertices() {
            d.vertex(VertexLabel::pair(u, v));
        }
    }
    for (u1, u2) in g.edges() {
        for (v1, v2) in h.edges() {
            d.edge(VertexLabel::pair(u1, v1), VertexLabel::pair(u2, v2));
        }
    }
    d.finish()
}

/// Coproduct of the parts. Part `k` is tagged `Pair(k, v)`; the component
/// inclusions are named `inclusion_k`.
pub fn disjoint_union(parts: &[Arc<Digraph>]) -> ConstructionResult {
    let mut d = Draft::default();
    for (k, part) in parts.iter().enumerate() {
        let tag = VertexLabel::index(k);
        for v in part.vertices() {
            d.vertex(VertexLabel::pair(&tag, v));
        }
        for (x, y) in part.edges() {
            d.edge(VertexLabel::pair(&tag, x), VertexLabel::pair(&tag, y));
        }
    }
    let mut res = ConstructionResult::new(d.finish());
    for (k, part) in parts.iter().enumerate() {
        let tag = VertexLabel::index(k);
        res = res.with_map(&format!("inclusion_{k}"), part.clone(), |v| VertexLabel::pair(&tag, v));
    }
    res
}

/// `(V1 ∪ V2, E1 ∪ E2)`; shared labels denote shared vertices.
pub fn union(g: &Digraph, h: &Digraph) -> Digraph {
    let mut d = Draft::default();
    d.absorb(g);
    d.absorb(h);
    d.finish()
}

/// `(V1 ∩ V2, E1 ∩ E2)`.
pub fn intersection(g: &Digraph, h: &Digraph) -> Digraph {
    let mut d = Draft::default();
    for v in g.vertices().filter(|v| h.contains(v)) {
        d.vertex(v.clone());
    }
    for (x, y) in g.edges().filter(|(x, y)| h.has_edge(x, y)) {
        d.edge(x.clone(), y.clone());
    }
    d.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::tests::*;
    use crate::digraph::tests::arb_digraph;
    use proptest::prelude::*;

    #[test]
    fn tensor_of_c3_and_interval() {
        let t = tensor_product(&c3(), &iplus());
        assert_eq!(t.vertex_count(), 6);
        assert_eq!(
            edges_of(&t),
            ["Pair(a,0)->Pair(b,1)", "Pair(b,0)->Pair(c,1)", "Pair(c,0)->Pair(a,1)"]
        );
    }

    #[test]
    fn box_of_c3_and_interval() {
        let b = box_product(&c3(), &iplus());
        assert_eq!(b.digraph.vertex_count(), 6);
        assert_eq!(b.digraph.edge_count(), 9);
        assert!(b.maps.values().all(|m| m.is_valid()));
    }

    #[test]
    fn box_with_point_is_a_relabeling() {
        let g = c3();
        let b = box_product(&g, &point("p"));
        assert_eq!(b.digraph.edge_count(), g.edge_count());
        let inc = slice_inclusion(&g, &point("p"), &l("p")).unwrap();
        assert!(inc.is_valid());
        assert_eq!(*inc.codomain().as_ref(), *b.digraph);
    }

    #[test]
    fn tensor_with_edgeless_is_edgeless() {
        let edgeless = Digraph::from_atoms(&["x", "y"], &[]).unwrap();
        assert_eq!(tensor_product(&c3(), &edgeless).edge_count(), 0);
    }

    #[test]
    fn union_and_intersection() {
        let g = c3();
        let h = Digraph::from_atoms(&[], &[("a", "d")]).unwrap();
        let u = union(&g, &h);
        assert_eq!((u.vertex_count(), u.edge_count()), (4, 4));
        assert_eq!(intersection(&g, &g), *g);
        let i = intersection(&g, &h);
        assert_eq!((i.vertex_count(), i.edge_count()), (1, 0));
    }

    #[test]
    fn disjoint_copies_of_interval() {
        let r = disjoint_union(&[iplus(), iplus()]);
        assert_eq!((r.digraph.vertex_count(), r.digraph.edge_count()), (4, 2));
        assert_eq!(r.maps.len(), 2);
        assert!(r.maps.values().all(|m| m.is_valid()));
    }

    proptest! {
        #[test]
        fn product_edge_counts(g in arb_digraph(5), h in arb_digraph(5)) {
            let (g, h) = (Arc::new(g), Arc::new(h));
            let b = box_product(&g, &h);
            prop_assert_eq!(
                b.digraph.edge_count(),
                g.vertex_count() * h.edge_count() + g.edge_count() * h.vertex_count()
            );
            prop_assert!(b.maps.values().all(|m| m.is_valid()));
            prop_assert_eq!(tensor_product(&g, &h).edge_count(), g.edge_count() * h.edge_count());
        }
    }
}
