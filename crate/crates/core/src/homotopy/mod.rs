//! Homotopy of digraph maps on finite digraphs.
//!
//! Two maps `G -> H` are homotopic exactly when they are connected under
//! one-step adjacency, because line digraphs concatenate. Every positive
//! answer comes with a [`Homotopy`] certificate that can be replayed as a
//! digraph map `G □ I_n -> H`.

use std::fmt;
use std::ops::ControlFlow;
use std::sync::Arc;

use crate::constructions::box_product;
use crate::digraph::{word_string, Digraph, LineDigraph, Orientation};
use crate::error::{Error, Result};
use crate::label::VertexLabel;
use crate::map::{same_digraph, DigraphMap};
use crate::Budget;

mod classes;
mod equivalence;
mod hep;
mod search;
pub(crate) mod space;
mod witness;

pub use classes::{homotopy_classes, ClassTable};
pub use equivalence::{are_equivalent, Equivalence};
pub use hep::{check_hep, HepInstance, HepOptions};
pub use witness::{cofiber_nullhomotopy, cylinder_homotopy, tube_homotopy};

use search::Explorer;
use space::MapSpace;

/// An orientation word with the maps `f_0, ..., f_n` at the slices of
/// `I_n`; consecutive maps are one-step adjacent in the stated direction.
#[derive(Clone, PartialEq, Eq)]
pub struct Homotopy {
    word: Vec<Orientation>,
    maps: Vec<DigraphMap>,
}

impl Homotopy {
    /// Checks signatures and stepwise adjacency.
    pub fn new(word: Vec<Orientation>, maps: Vec<DigraphMap>) -> Result<Homotopy> {
        if maps.len() != word.len() + 1 {
            return Err(Error::PreconditionFailed(format!(
                "a word of length {} needs {} maps, got {}",
                word.len(),
                word.len() + 1,
                maps.len()
            )));
        }
        if maps.windows(2).any(|w| !w[0].same_signature(&w[1])) {
            return Err(Error::SignatureMismatch);
        }
        for m in &maps {
            m.require_valid()?;
        }
        let h = Homotopy { word, maps };
        match h.first_bad_step() {
            None => Ok(h),
            Some(i) => Err(Error::PreconditionFailed(format!(
                "step {} is not a one-step homotopy in direction {}",
                i + 1,
                h.word[i].symbol()
            ))),
        }
    }

    pub(crate) fn from_parts(word: Vec<Orientation>, maps: Vec<DigraphMap>) -> Homotopy {
        debug_assert_eq!(maps.len(), word.len() + 1);
        Homotopy { word, maps }
    }

    pub(crate) fn from_assignments(
        domain: &Arc<Digraph>,
        codomain: &Arc<Digraph>,
        imgs: Vec<Vec<u32>>,
        word: Vec<Orientation>,
    ) -> Homotopy {
        let maps = imgs
            .into_iter()
            .map(|img| DigraphMap::from_positions(domain.clone(), codomain.clone(), img))
            .collect();
        Homotopy::from_parts(word, maps)
    }

    /// The length-0 homotopy at `f`.
    pub fn constant(f: DigraphMap) -> Homotopy {
        Homotopy { word: Vec::new(), maps: vec![f] }
    }

    pub fn word(&self) -> &[Orientation] {
        &self.word
    }

    pub fn word_string(&self) -> String {
        word_string(&self.word)
    }

    pub fn maps(&self) -> &[DigraphMap] {
        &self.maps
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn start(&self) -> &DigraphMap {
        &self.maps[0]
    }

    pub fn end(&self) -> &DigraphMap {
        self.maps.last().expect("a homotopy has at least one map")
    }

    fn first_bad_step(&self) -> Option<usize> {
        (0..self.word.len()).find(|&i| !one_step_holds(&self.maps[i], &self.maps[i + 1], self.word[i]))
    }

    /// Rebuilds `F: G □ I_n -> H` with `F(g, i) = f_i(g)`. The line digraph
    /// has vertices `0..=n`.
    pub fn replay(&self) -> Result<DigraphMap> {
        let g = self.start().domain().clone();
        let line = Arc::new(LineDigraph::new(self.word.clone()).to_digraph());
        let product = box_product(&g, &line).digraph;
        DigraphMap::from_fn(product, self.start().codomain().clone(), |p| {
            let (v, i) = p.split_pair().expect("product vertex");
            let i: usize = i.as_str().parse().expect("line digraph vertex");
            self.maps[i].image(&v).expect("domain vertex").clone()
        })
    }

    /// Replays the certificate and checks that the result is a digraph map
    /// restricting to the endpoints.
    pub fn verify(&self) -> bool {
        if self.maps.windows(2).any(|w| !w[0].same_signature(&w[1])) {
            return false;
        }
        match self.replay() {
            Ok(f) => f.is_valid() && self.first_bad_step().is_none(),
            Err(_) => false,
        }
    }

    /// The same homotopy run backwards.
    pub fn reversed(&self) -> Homotopy {
        let word = self.word.iter().rev().map(|o| o.flip()).collect();
        let maps = self.maps.iter().rev().cloned().collect();
        Homotopy { word, maps }
    }

    /// `self` followed by `next`; the endpoints must agree.
    pub fn concat(&self, next: &Homotopy) -> Result<Homotopy> {
        if self.end() != next.start() {
            return Err(Error::PreconditionFailed("homotopies do not meet".into()));
        }
        let mut word = self.word.clone();
        word.extend_from_slice(&next.word);
        let mut maps = self.maps.clone();
        maps.extend_from_slice(&next.maps[1..]);
        Ok(Homotopy { word, maps })
    }

    /// `k ∘ F`.
    pub fn then(&self, k: &DigraphMap) -> Result<Homotopy> {
        let maps = self.maps.iter().map(|m| k.after(m)).collect::<Result<_>>()?;
        Ok(Homotopy { word: self.word.clone(), maps })
    }

    /// `F ∘ m`.
    pub fn precompose(&self, m: &DigraphMap) -> Result<Homotopy> {
        let maps = self.maps.iter().map(|f| f.after(m)).collect::<Result<_>>()?;
        Ok(Homotopy { word: self.word.clone(), maps })
    }

    /// Same homotopy with `extra` stationary steps of orientation `+` at the
    /// end.
    pub fn padded(&self, extra: usize) -> Homotopy {
        let mut h = self.clone();
        for _ in 0..extra {
            h.word.push(Orientation::Plus);
            h.maps.push(self.end().clone());
        }
        h
    }
}

impl fmt::Debug for Homotopy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Homotopy[{}] {:?}", self.word_string(), self.maps)
    }
}

fn one_step_holds(f: &DigraphMap, g: &DigraphMap, o: Orientation) -> bool {
    let h = f.codomain();
    f.positions().iter().zip(g.positions()).all(|(&a, &b)| {
        a == b
            || match o {
                Orientation::Plus => h.has_edge_at(a, b),
                Orientation::Minus => h.has_edge_at(b, a),
            }
    })
}

fn require_same_signature(f: &DigraphMap, g: &DigraphMap) -> Result<()> {
    if f.same_signature(g) {
        Ok(())
    } else {
        Err(Error::SignatureMismatch)
    }
}

/// All digraph maps `G -> H` in lexicographic order of their images.
pub fn enumerate_maps(g: &Arc<Digraph>, h: &Arc<Digraph>, budget: &Budget) -> Result<Vec<DigraphMap>> {
    let space = MapSpace::new(g.clone(), h.clone());
    let mut out = Vec::new();
    let mut overflow = None;
    let _ = space.for_each_map(|img| {
        if let Err(e) = budget.check(out.len() + 1) {
            overflow = Some(e);
            return ControlFlow::Break(());
        }
        out.push(DigraphMap::from_positions(g.clone(), h.clone(), img.to_vec()));
        ControlFlow::Continue(())
    });
    match overflow {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Number of digraph maps `G -> H`.
pub fn count_maps(g: &Arc<Digraph>, h: &Arc<Digraph>, budget: &Budget) -> Result<usize> {
    let space = MapSpace::new(g.clone(), h.clone());
    let mut n = 0usize;
    let mut overflow = None;
    let _ = space.for_each_map(|_| {
        n += 1;
        match budget.check(n) {
            Ok(()) => ControlFlow::Continue(()),
            Err(e) => {
                overflow = Some(e);
                ControlFlow::Break(())
            }
        }
    });
    overflow.map_or(Ok(n), Err)
}

/// Directions in which `g` is one step from `f`: `+` when every vertex has
/// `f(v) = g(v)` or `f(v) -> g(v)`, `-` when `f(v) = g(v)` or `g(v) -> f(v)`.
pub fn one_step(f: &DigraphMap, g: &DigraphMap) -> Result<Vec<Orientation>> {
    require_same_signature(f, g)?;
    Ok([Orientation::Plus, Orientation::Minus]
        .into_iter()
        .filter(|&o| one_step_holds(f, g, o))
        .collect())
}

/// A certificate that `f ≃ g`, or `None`. The search is breadth-first from
/// `f`, so the certificate is as short as possible.
pub fn are_homotopic(f: &DigraphMap, g: &DigraphMap, budget: &Budget) -> Result<Option<Homotopy>> {
    require_same_signature(f, g)?;
    f.require_valid()?;
    g.require_valid()?;
    let space = MapSpace::new(f.domain().clone(), f.codomain().clone());
    let mut ex = Explorer::new(&space, f.positions().to_vec(), *budget);
    let target = g.positions();
    Ok(ex.search(|img| img == target)?.map(|i| {
        let (imgs, word) = ex.path(i);
        Homotopy::from_assignments(f.domain(), f.codomain(), imgs, word)
    }))
}

/// On finite domains weak homotopy coincides with homotopy.
pub fn are_weakly_homotopic(f: &DigraphMap, g: &DigraphMap, budget: &Budget) -> Result<bool> {
    Ok(are_homotopic(f, g, budget)?.is_some())
}

/// A homotopy from `id_G` to a constant map, or `None`. The empty digraph
/// has no constant map and is reported as not contractible.
pub fn is_contractible(g: &Arc<Digraph>, budget: &Budget) -> Result<Option<Homotopy>> {
    if g.is_empty() {
        return Ok(None);
    }
    let space = MapSpace::new(g.clone(), g.clone());
    let id = DigraphMap::identity(g.clone());
    let mut ex = Explorer::new(&space, id.positions().to_vec(), *budget);
    Ok(ex.search(|img| img.windows(2).all(|w| w[0] == w[1]))?.map(|i| {
        let (imgs, word) = ex.path(i);
        Homotopy::from_assignments(g, g, imgs, word)
    }))
}

/// Class of constant maps at `target`.
pub fn constant_map(g: &Arc<Digraph>, h: &Arc<Digraph>, target: &VertexLabel) -> Result<DigraphMap> {
    DigraphMap::constant(g.clone(), h.clone(), target)
}

pub(crate) fn same_space(a: &DigraphMap, g: &Arc<Digraph>, h: &Arc<Digraph>) -> bool {
    same_digraph(a.domain(), g) && same_digraph(a.codomain(), h)
}
