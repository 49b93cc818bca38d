//! Digraph maps: vertex functions that collapse or preserve every edge.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::label::VertexLabel;

/// A total vertex function between two digraphs.
///
/// Construction only checks totality and that images exist; whether the
/// edge condition holds is answered by [`DigraphMap::is_valid`].
#[derive(Clone)]
pub struct DigraphMap {
    domain: Arc<Digraph>,
    codomain: Arc<Digraph>,
    images: Vec<u32>,
}

impl DigraphMap {
    /// Builds a map from `(source, image)` pairs.
    pub fn from_pairs<I>(domain: Arc<Digraph>, codomain: Arc<Digraph>, pairs: I) -> Result<DigraphMap>
    where
        I: IntoIterator<Item = (VertexLabel, VertexLabel)>,
    {
        let mut table: BTreeMap<VertexLabel, VertexLabel> = BTreeMap::new();
        for (x, y) in pairs {
            if !domain.contains(&x) {
                return Err(Error::UnknownSource(x));
            }
            table.insert(x, y);
        }
        let mut images = Vec::with_capacity(domain.vertex_count());
        for v in domain.vertices() {
            let target = table
                .get(v)
                .ok_or_else(|| Error::AssignmentIncomplete(v.clone()))?;
            let pos = codomain
                .position(target)
                .ok_or_else(|| Error::UnknownTarget(target.clone()))?;
            images.push(pos);
        }
        Ok(DigraphMap { domain, codomain, images })
    }

    /// Like [`from_pairs`](Self::from_pairs) but also rejects assignments
    /// that break the edge condition.
    pub fn checked<I>(domain: Arc<Digraph>, codomain: Arc<Digraph>, pairs: I) -> Result<DigraphMap>
    where
        I: IntoIterator<Item = (VertexLabel, VertexLabel)>,
    {
        let m = Self::from_pairs(domain, codomain, pairs)?;
        m.require_valid()?;
        Ok(m)
    }

    /// Builds a map by applying `f` to every domain label.
    pub fn from_fn(
        domain: Arc<Digraph>,
        codomain: Arc<Digraph>,
        f: impl Fn(&VertexLabel) -> VertexLabel,
    ) -> Result<DigraphMap> {
        let pairs: Vec<_> = domain.vertices().map(|v| (v.clone(), f(v))).collect();
        Self::from_pairs(domain, codomain, pairs)
    }

    pub(crate) fn from_positions(domain: Arc<Digraph>, codomain: Arc<Digraph>, images: Vec<u32>) -> DigraphMap {
        debug_assert_eq!(images.len(), domain.vertex_count());
        DigraphMap { domain, codomain, images }
    }

    pub fn identity(g: Arc<Digraph>) -> DigraphMap {
        let images = (0..g.vertex_count() as u32).collect();
        DigraphMap { domain: g.clone(), codomain: g, images }
    }

    /// Constant map onto `target`.
    pub fn constant(domain: Arc<Digraph>, codomain: Arc<Digraph>, target: &VertexLabel) -> Result<DigraphMap> {
        let pos = codomain
            .position(target)
            .ok_or_else(|| Error::UnknownTarget(target.clone()))?;
        let images = vec![pos; domain.vertex_count()];
        Ok(DigraphMap { domain, codomain, images })
    }

    /// Inclusion of a sub-digraph (by label).
    pub fn inclusion(sub: Arc<Digraph>, ambient: Arc<Digraph>) -> Result<DigraphMap> {
        Self::from_fn(sub, ambient, |v| v.clone())
    }

    pub fn domain(&self) -> &Arc<Digraph> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Digraph> {
        &self.codomain
    }

    pub fn image(&self, v: &VertexLabel) -> Option<&VertexLabel> {
        let i = self.domain.position(v)?;
        Some(self.codomain.label_at(self.images[i as usize]))
    }

    /// `(source, image)` pairs in domain label order.
    pub fn pairs(&self) -> impl Iterator<Item = (&VertexLabel, &VertexLabel)> + '_ {
        self.domain
            .vertices()
            .zip(self.images.iter().map(|&j| self.codomain.label_at(j)))
    }

    pub(crate) fn positions(&self) -> &[u32] {
        &self.images
    }

    /// First edge that is neither collapsed nor preserved, if any.
    pub fn violation(&self) -> Option<(&VertexLabel, &VertexLabel)> {
        self.domain
            .edge_positions()
            .find(|&(x, y)| {
                let (fx, fy) = (self.images[x as usize], self.images[y as usize]);
                fx != fy && !self.codomain.has_edge_at(fx, fy)
            })
            .map(|(x, y)| (self.domain.label_at(x), self.domain.label_at(y)))
    }

    /// Collapse-or-preserve holds on every edge.
    pub fn is_valid(&self) -> bool {
        self.violation().is_none()
    }

    pub fn require_valid(&self) -> Result<()> {
        match self.violation() {
            None => Ok(()),
            Some((x, y)) => Err(Error::InvalidMap(x.clone(), y.clone())),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.images.windows(2).all(|w| w[0] == w[1])
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &DigraphMap) -> Result<DigraphMap> {
        if !same_digraph(&first.codomain, &self.domain) {
            return Err(Error::SignatureMismatch);
        }
        let images = first.images.iter().map(|&j| self.images[j as usize]).collect();
        Ok(DigraphMap {
            domain: first.domain.clone(),
            codomain: self.codomain.clone(),
            images,
        })
    }

    /// Restriction to a sub-digraph of the domain.
    pub fn restrict(&self, sub: Arc<Digraph>) -> Result<DigraphMap> {
        let inc = DigraphMap::inclusion(sub, self.domain.clone())?;
        self.after(&inc)
    }

    /// Same map with the codomain replaced by a digraph containing the image
    /// labels (typically a super-digraph).
    pub fn with_codomain(&self, codomain: Arc<Digraph>) -> Result<DigraphMap> {
        let pairs: Vec<_> = self.pairs().map(|(x, y)| (x.clone(), y.clone())).collect();
        DigraphMap::from_pairs(self.domain.clone(), codomain, pairs)
    }

    pub fn same_signature(&self, other: &DigraphMap) -> bool {
        same_digraph(&self.domain, &other.domain) && same_digraph(&self.codomain, &other.codomain)
    }
}

pub(crate) fn same_digraph(a: &Arc<Digraph>, b: &Arc<Digraph>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for DigraphMap {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images && self.same_signature(other)
    }
}

impl Eq for DigraphMap {}

impl fmt::Debug for DigraphMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs().map(|(x, y)| format!("{x}↦{y}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Whether the assignment is a digraph map.
pub fn validate_map(m: &DigraphMap) -> bool {
    m.is_valid()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::tests::arb_digraph;
    use crate::digraph::LineDigraph;
    use proptest::prelude::*;

    fn l(s: &str) -> VertexLabel {
        s.parse().unwrap()
    }

    fn c3() -> Arc<Digraph> {
        Arc::new(Digraph::cycle(&["a", "b", "c"]).unwrap())
    }

    #[test]
    fn identity_on_c3_is_valid() {
        assert!(validate_map(&DigraphMap::identity(c3())));
    }

    #[test]
    fn c3_into_interval_breaks_edge_b_c() {
        let ip = Arc::new(LineDigraph::plus());
        let m = DigraphMap::from_pairs(
            c3(),
            ip,
            [(l("a"), l("0")), (l("b"), l("1")), (l("c"), l("0"))],
        )
        .unwrap();
        assert!(!validate_map(&m));
        assert_eq!(m.violation(), Some((&l("b"), &l("c"))));
    }

    #[test]
    fn constant_to_point_is_valid() {
        let p = Arc::new(Digraph::point(l("p")));
        assert!(validate_map(&DigraphMap::constant(c3(), p, &l("p")).unwrap()));
    }

    #[test]
    fn incomplete_and_unknown_targets() {
        let p = Arc::new(Digraph::point(l("p")));
        assert_eq!(
            DigraphMap::from_pairs(c3(), p.clone(), [(l("a"), l("p"))]).unwrap_err(),
            Error::AssignmentIncomplete(l("b"))
        );
        assert_eq!(
            DigraphMap::from_pairs(c3(), p, [(l("a"), l("p")), (l("b"), l("q")), (l("c"), l("p"))])
                .unwrap_err(),
            Error::UnknownTarget(l("q"))
        );
    }

    fn arb_map() -> impl Strategy<Value = (Arc<Digraph>, Arc<Digraph>, Vec<u32>)> {
        (arb_digraph(4), arb_digraph(4)).prop_flat_map(|(g, h)| {
            let n = g.vertex_count();
            let m = h.vertex_count().max(1) as u32;
            let h = if h.is_empty() { Digraph::point(l("z")) } else { h };
            (Just(Arc::new(g)), Just(Arc::new(h)), proptest::collection::vec(0..m, n))
        })
    }

    proptest! {
        #[test]
        fn identity_is_always_valid(g in arb_digraph(6)) {
            prop_assert!(DigraphMap::identity(Arc::new(g)).is_valid());
        }

        #[test]
        fn composition_of_valid_maps_is_valid((g, h, imgs) in arb_map(), seed in proptest::collection::vec(any::<u32>(), 4)) {
            let f = DigraphMap::from_positions(g, h.clone(), imgs);
            let n = h.vertex_count() as u32;
            let shuffled: Vec<u32> = (0..n).map(|i| seed[i as usize % seed.len()] % n).collect();
            let k = DigraphMap::from_positions(h.clone(), h.clone(), shuffled);
            for second in [DigraphMap::identity(h.clone()), k] {
                if f.is_valid() && second.is_valid() {
                    prop_assert!(second.after(&f).unwrap().is_valid());
                }
            }
        }
    }
}
