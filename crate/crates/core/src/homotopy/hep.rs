use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use super::space::{Assignment, MapSpace};
use super::Homotopy;
use crate::digraph::{is_subdigraph, Digraph, Orientation};
use crate::error::{Error, Result};
use crate::map::{same_digraph, DigraphMap};
use crate::Budget;

/// A homotopy on a sub-digraph `X ⊆ G` together with a map `G -> H` to
/// extend it from.
#[derive(Debug, Clone)]
pub struct HepInstance {
    pub graph: Arc<Digraph>,
    pub sub: Arc<Digraph>,
    pub target: Arc<Digraph>,
    pub start: DigraphMap,
    pub steps: Homotopy,
}

/// Search options for [`check_hep`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct HepOptions {
    /// Allow up to this many inserted steps that are stationary on `X`,
    /// each with either orientation.
    pub pad: usize,
}

impl HepInstance {
    fn validate(&self) -> Result<()> {
        if !is_subdigraph(&self.sub, &self.graph) {
            return Err(Error::NotSubdigraph);
        }
        if !same_digraph(self.start.domain(), &self.graph) || !same_digraph(self.start.codomain(), &self.target) {
            return Err(Error::SignatureMismatch);
        }
        let f0 = self.steps.start();
        if !same_digraph(f0.domain(), &self.sub) || !same_digraph(f0.codomain(), &self.target) {
            return Err(Error::SignatureMismatch);
        }
        self.start.require_valid()?;
        let restricted = self.start.restrict(self.sub.clone())?;
        if restricted.positions() != f0.positions() {
            return Err(Error::RestrictionMismatch);
        }
        Ok(())
    }
}

struct Hep<'a> {
    space: MapSpace,
    inst: &'a HepInstance,
    /// Position in `G` of every vertex of `X`, in `X`'s order.
    sub_pos: Vec<usize>,
    /// Largest number of spare pads known to fail from `(progress, map)`.
    failed: HashMap<(usize, Assignment), usize>,
    explored: usize,
    budget: Budget,
}

impl Hep<'_> {
    fn fixed_for(&self, step: usize) -> Vec<Option<u32>> {
        let mut fixed = vec![None; self.space.n()];
        let target = self.inst.steps.maps()[step].positions();
        for (k, &p) in self.sub_pos.iter().enumerate() {
            fixed[p] = Some(target[k]);
        }
        fixed
    }

    /// Extends from `cur` having matched `done` steps, with `spare` pads
    /// left. On success returns the remaining assignments and word.
    fn extend(&mut self, cur: &[u32], done: usize, spare: usize) -> Result<Option<(Vec<Assignment>, Vec<Orientation>)>> {
        let total = self.inst.steps.len();
        if done == total {
            return Ok(Some((Vec::new(), Vec::new())));
        }
        if let Some(&known) = self.failed.get(&(done, cur.to_vec())) {
            if known >= spare {
                return Ok(None);
            }
        }
        let mut moves: Vec<(usize, Orientation)> = vec![(done + 1, self.inst.steps.word()[done])];
        if spare > 0 {
            moves.push((done, Orientation::Plus));
            moves.push((done, Orientation::Minus));
        }
        for (next_done, o) in moves {
            let spare_next = if next_done == done { spare - 1 } else { spare };
            let fixed = self.fixed_for(next_done);
            let mut candidates = Vec::new();
            let _ = self.space.for_each_step(cur, o, Some(&fixed), |img| {
                candidates.push(img.to_vec());
                ControlFlow::Continue(())
            });
            for next in candidates {
                if next_done == done && next == cur {
                    continue;
                }
                self.explored += 1;
                self.budget.check(self.explored)?;
                if let Some((mut imgs, mut word)) = self.extend(&next, next_done, spare_next)? {
                    imgs.insert(0, next);
                    word.insert(0, o);
                    return Ok(Some((imgs, word)));
                }
            }
        }
        let entry = self.failed.entry((done, cur.to_vec())).or_insert(0);
        *entry = (*entry).max(spare);
        Ok(None)
    }
}

/// Searches for a homotopy on `G` starting at `inst.start` whose restriction
/// to `X` follows `inst.steps`.
///
/// With the default options the extension must use the same orientation
/// word, so `None` is exact for that word. With `pad = d` up to `d` extra
/// steps that are stationary on `X` may be inserted anywhere.
pub fn check_hep(inst: &HepInstance, opts: HepOptions, budget: &Budget) -> Result<Option<Homotopy>> {
    inst.validate()?;
    let sub_pos = inst
        .sub
        .vertices()
        .map(|v| inst.graph.position(v).expect("sub-digraph vertex") as usize)
        .collect();
    let mut hep = Hep {
        space: MapSpace::new(inst.graph.clone(), inst.target.clone()),
        inst,
        sub_pos,
        failed: HashMap::new(),
        explored: 0,
        budget: *budget,
    };
    let start = inst.start.positions().to_vec();
    Ok(hep.extend(&start, 0, opts.pad)?.map(|(mut imgs, word)| {
        imgs.insert(0, start);
        Homotopy::from_assignments(&inst.graph, &inst.target, imgs, word)
    }))
}
