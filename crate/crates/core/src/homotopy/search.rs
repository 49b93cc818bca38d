//! Layered breadth-first exploration of one connected component of the map
//! space under one-step adjacency.

use std::collections::HashMap;
use std::ops::ControlFlow;

use super::space::{Assignment, MapSpace};
use crate::digraph::Orientation;
use crate::error::{Error, Result};
use crate::Budget;

struct Node {
    img: Assignment,
    parent: Option<(usize, Orientation)>,
}

pub(crate) struct Explorer<'s> {
    space: &'s MapSpace,
    budget: Budget,
    nodes: Vec<Node>,
    index: HashMap<Assignment, usize>,
    /// Nodes `layer_start..` form the most recent layer.
    layer_start: usize,
    depth: usize,
}

impl<'s> Explorer<'s> {
    pub(crate) fn new(space: &'s MapSpace, start: Assignment, budget: Budget) -> Self {
        let mut index = HashMap::new();
        index.insert(start.clone(), 0);
        Explorer {
            space,
            budget,
            nodes: vec![Node { img: start, parent: None }],
            index,
            layer_start: 0,
            depth: 0,
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.nodes.len()
    }

    pub(crate) fn find(&self, img: &[u32]) -> Option<usize> {
        self.index.get(img).copied()
    }

    /// Adds the next layer. Returns the range of new nodes (empty once the
    /// component is exhausted).
    pub(crate) fn expand(&mut self) -> Result<std::ops::Range<usize>> {
        let old_end = self.nodes.len();
        let mut fresh: Vec<Node> = Vec::new();
        let mut overflow = None;
        for p in self.layer_start..old_end {
            for o in [Orientation::Plus, Orientation::Minus] {
                let parent_img = self.nodes[p].img.clone();
                let index = &mut self.index;
                let total = old_end;
                let budget = &self.budget;
                let flow = self.space.for_each_step(&parent_img, o, None, |img| {
                    if index.contains_key(img) {
                        return ControlFlow::Continue(());
                    }
                    let id = total + fresh.len();
                    if let Err(e) = budget.check(id + 1) {
                        overflow = Some(e);
                        return ControlFlow::Break(());
                    }
                    index.insert(img.to_vec(), id);
                    fresh.push(Node { img: img.to_vec(), parent: Some((p, o)) });
                    ControlFlow::Continue(())
                });
                if flow.is_break() {
                    return Err(overflow.expect("break only on budget"));
                }
            }
        }
        if let Some(max_len) = self.budget.max_len {
            if !fresh.is_empty() && self.depth >= max_len {
                return Err(Error::LengthExceeded { max_len });
            }
        }
        self.nodes.extend(fresh);
        self.layer_start = old_end;
        if self.layer_start < self.nodes.len() {
            self.depth += 1;
        }
        Ok(old_end..self.nodes.len())
    }

    /// Path from the start to node `i`: the assignments and the orientation
    /// word between consecutive ones.
    pub(crate) fn path(&self, mut i: usize) -> (Vec<Assignment>, Vec<Orientation>) {
        let mut imgs = vec![self.nodes[i].img.clone()];
        let mut word = Vec::new();
        while let Some((p, o)) = self.nodes[i].parent {
            imgs.push(self.nodes[p].img.clone());
            word.push(o);
            i = p;
        }
        imgs.reverse();
        word.reverse();
        (imgs, word)
    }

    /// Expands until `pred` holds for a node, returning the first such node
    /// in BFS order, or `None` once the component is exhausted.
    pub(crate) fn search(&mut self, pred: impl Fn(&[u32]) -> bool) -> Result<Option<usize>> {
        if pred(&self.nodes[0].img) {
            return Ok(Some(0));
        }
        loop {
            let layer = self.expand()?;
            if layer.is_empty() {
                return Ok(None);
            }
            if let Some(i) = layer.clone().find(|&i| pred(&self.nodes[i].img)) {
                return Ok(Some(i));
            }
        }
    }
}
