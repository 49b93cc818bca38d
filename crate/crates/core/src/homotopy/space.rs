//! Backtracking over vertex functions `G -> H` with incremental edge checks.

use std::ops::ControlFlow;
use std::sync::Arc;

use crate::digraph::{Digraph, Orientation};

/// Vertex assignments are vectors of codomain positions, indexed by domain
/// position. Their lexicographic order is the label order of the images.
pub(crate) type Assignment = Vec<u32>;

/// Precomputed constraint structure for maps between two fixed digraphs.
pub(crate) struct MapSpace {
    pub(crate) domain: Arc<Digraph>,
    pub(crate) codomain: Arc<Digraph>,
    /// For each domain vertex `v`, the earlier vertices `u < v` adjacent to
    /// it, with `true` when the edge is `u -> v`.
    back_edges: Vec<Vec<(u32, bool)>>,
    all_targets: Vec<u32>,
}

impl MapSpace {
    pub(crate) fn new(domain: Arc<Digraph>, codomain: Arc<Digraph>) -> Self {
        let n = domain.vertex_count();
        let mut back_edges = vec![Vec::new(); n];
        for (x, y) in domain.edge_positions() {
            if x < y {
                back_edges[y as usize].push((x, true));
            } else {
                back_edges[x as usize].push((y, false));
            }
        }
        for list in &mut back_edges {
            list.sort_unstable();
        }
        let all_targets = (0..codomain.vertex_count() as u32).collect();
        MapSpace { domain, codomain, back_edges, all_targets }
    }

    pub(crate) fn n(&self) -> usize {
        self.domain.vertex_count()
    }

    fn fits(&self, img: &[u32], v: usize, c: u32) -> bool {
        self.back_edges[v].iter().all(|&(u, forward)| {
            let iu = img[u as usize];
            iu == c
                || if forward {
                    self.codomain.has_edge_at(iu, c)
                } else {
                    self.codomain.has_edge_at(c, iu)
                }
        })
    }

    /// Visits every valid assignment whose value at `v` lies in
    /// `candidates(v)`, in lexicographic order. Candidate lists must be
    /// sorted ascending.
    pub(crate) fn search<'a, C, V>(&self, candidates: C, mut visit: V) -> ControlFlow<()>
    where
        C: Fn(usize) -> std::borrow::Cow<'a, [u32]>,
        V: FnMut(&[u32]) -> ControlFlow<()>,
    {
        let mut img = vec![0u32; self.n()];
        self.descend(0, &mut img, &candidates, &mut visit)
    }

    fn descend<'a, C, V>(&self, v: usize, img: &mut Vec<u32>, candidates: &C, visit: &mut V) -> ControlFlow<()>
    where
        C: Fn(usize) -> std::borrow::Cow<'a, [u32]>,
        V: FnMut(&[u32]) -> ControlFlow<()>,
    {
        if v == img.len() {
            return visit(img);
        }
        for &c in candidates(v).iter() {
            if self.fits(img, v, c) {
                img[v] = c;
                self.descend(v + 1, img, candidates, visit)?;
            }
        }
        ControlFlow::Continue(())
    }

    /// All valid assignments, in lexicographic order.
    pub(crate) fn for_each_map(&self, visit: impl FnMut(&[u32]) -> ControlFlow<()>) -> ControlFlow<()> {
        let all = &self.all_targets;
        self.search(|_| std::borrow::Cow::Borrowed(all.as_slice()), visit)
    }

    /// Candidate images of `v` one step away from `f` in direction `o`:
    /// `f(v)` itself plus its out-neighbors (`+`) or in-neighbors (`-`).
    pub(crate) fn step_candidates(&self, f: &[u32], v: usize, o: Orientation) -> Vec<u32> {
        let fv = f[v];
        let nbrs = match o {
            Orientation::Plus => self.codomain.out_at(fv),
            Orientation::Minus => self.codomain.in_at(fv),
        };
        let mut c = Vec::with_capacity(nbrs.len() + 1);
        c.push(fv);
        c.extend_from_slice(nbrs);
        c.sort_unstable();
        c
    }

    /// Valid maps one step from `f` in direction `o`. Where `fixed[v]` is
    /// set, the image of `v` is forced.
    pub(crate) fn for_each_step(
        &self,
        f: &[u32],
        o: Orientation,
        fixed: Option<&[Option<u32>]>,
        visit: impl FnMut(&[u32]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let lists: Vec<Vec<u32>> = (0..self.n())
            .map(|v| {
                let c = self.step_candidates(f, v, o);
                match fixed.and_then(|fx| fx[v]) {
                    Some(t) => c.into_iter().filter(|&x| x == t).collect(),
                    None => c,
                }
            })
            .collect();
        self.search(|v| std::borrow::Cow::Borrowed(lists[v].as_slice()), visit)
    }
}
