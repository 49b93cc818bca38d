use std::collections::BTreeMap;
use std::sync::Arc;

use super::products::disjoint_union;
use super::{mapping_cylinder, ConstructionResult, Draft, Warning};
use crate::digraph::{is_subdigraph, Digraph};
use crate::error::{Error, Result};
use crate::label::{LabelTag, LabelTree, VertexLabel};
use crate::map::{same_digraph, DigraphMap};

/// Generating pairs of an equivalence relation on an ambient digraph.
#[derive(Debug, Clone)]
pub struct IdentificationSpec {
    pub ambient: Arc<Digraph>,
    pub pairs: Vec<(VertexLabel, VertexLabel)>,
}

impl IdentificationSpec {
    pub fn new(ambient: Arc<Digraph>) -> Self {
        IdentificationSpec { ambient, pairs: Vec::new() }
    }

    pub fn identify(&mut self, a: VertexLabel, b: VertexLabel) -> &mut Self {
        self.pairs.push((a, b));
        self
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut cur = x;
        while self.0[cur] != root {
            let next = self.0[cur];
            self.0[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Identification digraph of the equivalence closure of `spec.pairs`.
///
/// Singleton classes keep their label; larger classes become `Class{..}`.
/// Edges are the images of ambient edges between distinct classes; edges
/// inside a class are dropped. The map `quotient` sends the ambient digraph
/// onto the result.
///
/// Each generating pair `(a, b)` is read as "`a` is glued onto `b`". An
/// ambient edge `x -> y` whose endpoints are both glued onto partners
/// `h1`, `h2` must have `h1 = h2` or `h1 -> h2`; every edge breaking this is
/// reported as a warning and the construction proceeds.
pub fn identification(spec: &IdentificationSpec) -> Result<ConstructionResult> {
    let g = &spec.ambient;
    let n = g.vertex_count();
    let mut uf = UnionFind::new(n);
    let mut partners: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for (a, b) in &spec.pairs {
        let pa = g.position(a).ok_or_else(|| Error::UnknownLabel(a.clone()))?;
        let pb = g.position(b).ok_or_else(|| Error::UnknownLabel(b.clone()))?;
        uf.union(pa as usize, pb as usize);
        partners.entry(pa).or_default().push(pb);
    }
    let roots: Vec<usize> = (0..n).map(|i| uf.find(i)).collect();
    let mut members: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
    for (i, &r) in roots.iter().enumerate() {
        members.entry(r).or_default().push(i as u32);
    }
    let mut names: BTreeMap<usize, VertexLabel> = BTreeMap::new();
    for (&r, ms) in &members {
        let name = if ms.len() == 1 {
            g.label_at(ms[0]).clone()
        } else {
            VertexLabel::class(ms.iter().map(|&m| g.label_at(m)))?
        };
        names.insert(r, name);
    }

    let mut d = Draft::default();
    for name in names.values() {
        d.vertex(name.clone());
    }
    let mut warnings = Vec::new();
    for (x, y) in g.edge_positions() {
        let (rx, ry) = (roots[x as usize], roots[y as usize]);
        if rx == ry {
            continue;
        }
        d.edge(names[&rx].clone(), names[&ry].clone());
        let (Some(px), Some(py)) = (partners.get(&x), partners.get(&y)) else {
            continue;
        };
        if let Some(pair) = incompatible(g, px, py) {
            warnings.push(Warning::IncompatibleRelation {
                edge: (g.label_at(x).clone(), g.label_at(y).clone()),
                pair,
            });
        }
    }

    let mut res = ConstructionResult::new(d.finish());
    res.warnings = warnings;
    let quotient_of = |v: &VertexLabel| {
        let p = g.position(v).expect("ambient vertex") as usize;
        names[&roots[p]].clone()
    };
    Ok(res.with_map("quotient", g.clone(), quotient_of))
}

fn incompatible(g: &Digraph, xs: &[u32], ys: &[u32]) -> Option<(VertexLabel, VertexLabel)> {
    for &h1 in xs {
        for &h2 in ys {
            if h1 != h2 && !g.has_edge_at(h1, h2) {
                return Some((g.label_at(h1).clone(), g.label_at(h2).clone()));
            }
        }
    }
    None
}

/// `G / X`: the vertices of `X` and an added vertex `Star` form one class.
/// The map `quotient` is defined on `G`.
pub fn quotient(g: &Arc<Digraph>, x: &Digraph) -> Result<ConstructionResult> {
    if !is_subdigraph(x, g) {
        return Err(Error::NotSubdigraph);
    }
    let star = VertexLabel::star();
    if g.contains(&star) {
        return Err(Error::PreconditionFailed(
            "digraph already has a vertex named Star".into(),
        ));
    }
    let mut d = Draft::default();
    d.absorb(g);
    d.vertex(star.clone());
    let mut spec = IdentificationSpec::new(Arc::new(d.finish()));
    for v in x.vertices() {
        spec.identify(v.clone(), star.clone());
    }
    let mut res = identification(&spec)?;
    let q = res.maps.remove("quotient").expect("identification map");
    let restricted = q.restrict(g.clone())?;
    res.maps.insert("quotient".into(), restricted);
    Ok(res)
}

/// Pushout of `H2 <- G -> H1` as an identification of `H1 ⊔ H2`.
///
/// `H1` is tagged `Pair(0,-)` and `H2` is tagged `Pair(1,-)`; the maps `i1`,
/// `i2` are the two legs into the result.
pub fn pushout(f1: &DigraphMap, f2: &DigraphMap) -> Result<ConstructionResult> {
    if !same_digraph(f1.domain(), f2.domain()) {
        return Err(Error::DomainMismatch);
    }
    let coproduct = disjoint_union(&[f1.codomain().clone(), f2.codomain().clone()]);
    let (t0, t1) = (VertexLabel::index(0), VertexLabel::index(1));
    let mut spec = IdentificationSpec::new(coproduct.digraph.clone());
    for (g, y1) in f1.pairs() {
        let y2 = f2.image(g).expect("shared domain");
        spec.identify(VertexLabel::pair(&t0, y1), VertexLabel::pair(&t1, y2));
    }
    let res = identification(&spec)?;
    let q = res.map("quotient").clone();
    let i1 = q.after(coproduct.map("inclusion_0"))?;
    let i2 = q.after(coproduct.map("inclusion_1"))?;
    let mut res = res;
    res.maps.insert("i1".into(), i1);
    res.maps.insert("i2".into(), i2);
    Ok(res)
}

/// Categorical cofiber: `M_f` with the top slice `Cyl(G)` crushed to `Star`.
///
/// This is the pushout of `point <- G -> M_f` along the top inclusion, with
/// the collapsed class named `Star`. The map `inclusion` sends `H` in by
/// `h ↦ Base(h)`.
pub fn categorical_cofiber(f: &DigraphMap) -> Result<ConstructionResult> {
    let cyl = mapping_cylinder(f)?;
    let slice_vertices: Vec<VertexLabel> = cyl
        .digraph
        .vertices()
        .filter(|v| v.tag() == LabelTag::Cyl)
        .cloned()
        .collect();
    let slice = cyl.digraph.induced(slice_vertices.iter());
    let mut res = quotient(&cyl.digraph, &slice)?;
    let q = res.maps.remove("quotient").expect("quotient map");
    res = res.with_map("inclusion", f.codomain().clone(), |h| {
        q.image(&VertexLabel::base(h)).expect("base vertex").clone()
    });
    res.maps.insert("quotient".into(), q);
    Ok(rename_star_class(res))
}

fn rename_star_class(res: ConstructionResult) -> ConstructionResult {
    let star = VertexLabel::star();
    let rename = |v: &VertexLabel| {
        let crushed = matches!(v.tree(), LabelTree::Class(ms) if ms.contains(&LabelTree::Star));
        if crushed {
            star.clone()
        } else {
            v.clone()
        }
    };
    let renamed = Arc::new(res.digraph.relabel(rename));
    let maps = res
        .maps
        .iter()
        .map(|(k, m)| {
            let moved = DigraphMap::from_fn(m.domain().clone(), renamed.clone(), |v| {
                rename(m.image(v).expect("total map"))
            })
            .expect("renaming is a bijection");
            (k.clone(), moved)
        })
        .collect();
    ConstructionResult { digraph: renamed, maps, warnings: res.warnings }
}
