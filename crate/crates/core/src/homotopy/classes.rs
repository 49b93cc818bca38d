use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use super::space::MapSpace;
use crate::digraph::{Digraph, Orientation};
use crate::error::Result;
use crate::map::DigraphMap;
use crate::Budget;

/// The maps `G -> H` partitioned into homotopy classes.
///
/// Maps are stored in lexicographic order; classes are numbered by their
/// least member, which is the class representative.
#[derive(Debug, Clone)]
pub struct ClassTable {
    domain: Arc<Digraph>,
    codomain: Arc<Digraph>,
    maps: Vec<DigraphMap>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    index: HashMap<Vec<u32>, usize>,
}

impl ClassTable {
    pub fn domain(&self) -> &Arc<Digraph> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Digraph> {
        &self.codomain
    }

    pub fn map_count(&self) -> usize {
        self.maps.len()
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn maps(&self) -> &[DigraphMap] {
        &self.maps
    }

    /// Least member of class `c`.
    pub fn representative(&self, c: usize) -> &DigraphMap {
        &self.maps[self.classes[c][0]]
    }

    pub fn representatives(&self) -> impl Iterator<Item = &DigraphMap> + '_ {
        (0..self.classes.len()).map(|c| self.representative(c))
    }

    pub fn members(&self, c: usize) -> impl Iterator<Item = &DigraphMap> + '_ {
        self.classes[c].iter().map(|&i| &self.maps[i])
    }

    /// Class of `f`, if `f` is a digraph map with this table's signature.
    pub fn class_of(&self, f: &DigraphMap) -> Option<usize> {
        if !super::same_space(f, &self.domain, &self.codomain) {
            return None;
        }
        self.index.get(f.positions()).map(|&i| self.class_of[i])
    }

    /// Whether class `c` contains a constant map.
    pub fn is_constant_class(&self, c: usize) -> bool {
        self.members(c).any(|m| m.is_constant())
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
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
            // Keep the smaller index as root so roots are class minima.
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Enumerates `Map(G, H)` and joins one-step neighbors by union-find.
pub fn homotopy_classes(g: &Arc<Digraph>, h: &Arc<Digraph>, budget: &Budget) -> Result<ClassTable> {
    let maps = super::enumerate_maps(g, h, budget)?;
    let index: HashMap<Vec<u32>, usize> = maps
        .iter()
        .enumerate()
        .map(|(i, m)| (m.positions().to_vec(), i))
        .collect();
    let space = MapSpace::new(g.clone(), h.clone());
    let mut uf = UnionFind((0..maps.len()).collect());
    for (i, m) in maps.iter().enumerate() {
        // Minus neighbors are Plus neighbors seen from the other side.
        let _ = space.for_each_step(m.positions(), Orientation::Plus, None, |img| {
            let j = index[img];
            uf.union(i, j);
            ControlFlow::Continue(())
        });
    }
    let mut class_of = vec![0; maps.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut root_class: HashMap<usize, usize> = HashMap::new();
    for (i, slot) in class_of.iter_mut().enumerate() {
        let r = uf.find(i);
        let c = *root_class.entry(r).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[c].push(i);
        *slot = c;
    }
    Ok(ClassTable {
        domain: g.clone(),
        codomain: h.clone(),
        maps,
        class_of,
        classes,
        index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::tests::*;

    #[test]
    fn point_into_c3_has_one_class() {
        let t = homotopy_classes(&point("p"), &c3(), &Budget::default()).unwrap();
        assert_eq!((t.map_count(), t.class_count()), (3, 1));
    }

    #[test]
    fn c3_into_interval_has_one_class() {
        let t = homotopy_classes(&c3(), &iplus(), &Budget::default()).unwrap();
        assert_eq!((t.map_count(), t.class_count()), (2, 1));
        assert!(t.is_constant_class(0));
    }

    #[test]
    fn c3_self_maps_split_into_constants_and_rotations() {
        let g = c3();
        let t = homotopy_classes(&g, &g, &Budget::default()).unwrap();
        assert_eq!((t.map_count(), t.class_count()), (6, 2));
        let id = DigraphMap::identity(g.clone());
        let rot = map(&g, &g, &[("a", "b"), ("b", "c"), ("c", "a")]);
        assert_eq!(t.class_of(&id), t.class_of(&rot));
        assert!(!t.is_constant_class(t.class_of(&id).unwrap()));
        // Representatives are class minima.
        for c in 0..t.class_count() {
            let rep = t.representative(c).positions().to_vec();
            assert!(t.members(c).all(|m| m.positions().to_vec() >= rep));
        }
    }
}
