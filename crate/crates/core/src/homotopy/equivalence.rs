use std::sync::Arc;

use super::search::Explorer;
use super::space::MapSpace;
use super::{homotopy_classes, Homotopy};
use crate::digraph::Digraph;
use crate::error::Result;
use crate::map::DigraphMap;
use crate::Budget;

/// Witnesses of a homotopy equivalence `G ≃ H`.
#[derive(Debug, Clone)]
pub struct Equivalence {
    /// `g: G -> H`.
    pub forward: DigraphMap,
    /// `h: H -> G`.
    pub backward: DigraphMap,
    /// `h∘g ≃ id_G`.
    pub on_domain: Homotopy,
    /// `g∘h ≃ id_H`.
    pub on_codomain: Homotopy,
}

/// Searches for `g: G -> H`, `h: H -> G` with `h∘g ≃ id_G` and
/// `g∘h ≃ id_H`.
///
/// Candidates are class representatives of `[G,H]` and `[H,G]`, since the
/// conditions only depend on classes. The components of `id_G` and `id_H`
/// are explored one layer at a time, and after each layer every candidate
/// pair is tested against what has been reached so far, so short witnesses
/// are found without exploring the full components.
pub fn are_equivalent(g: &Arc<Digraph>, h: &Arc<Digraph>, budget: &Budget) -> Result<Option<Equivalence>> {
    let gh = homotopy_classes(g, h, budget)?;
    let hg = homotopy_classes(h, g, budget)?;
    let pairs: Vec<(DigraphMap, DigraphMap, DigraphMap, DigraphMap)> = gh
        .representatives()
        .flat_map(|f| {
            hg.representatives().map(move |k| {
                let kf = k.after(f).expect("composable");
                let fk = f.after(k).expect("composable");
                (f.clone(), k.clone(), kf, fk)
            })
        })
        .collect();
    if pairs.is_empty() {
        return Ok(None);
    }

    let space_g = MapSpace::new(g.clone(), g.clone());
    let space_h = MapSpace::new(h.clone(), h.clone());
    let id_g = DigraphMap::identity(g.clone());
    let id_h = DigraphMap::identity(h.clone());
    let mut ex_g = Explorer::new(&space_g, id_g.positions().to_vec(), *budget);
    let mut ex_h = Explorer::new(&space_h, id_h.positions().to_vec(), *budget);
    loop {
        for (f, k, kf, fk) in &pairs {
            let (Some(i), Some(j)) = (ex_g.find(kf.positions()), ex_h.find(fk.positions())) else {
                continue;
            };
            let (imgs, word) = ex_g.path(i);
            let on_domain = Homotopy::from_assignments(g, g, imgs, word).reversed();
            let (imgs, word) = ex_h.path(j);
            let on_codomain = Homotopy::from_assignments(h, h, imgs, word).reversed();
            return Ok(Some(Equivalence {
                forward: f.clone(),
                backward: k.clone(),
                on_domain,
                on_codomain,
            }));
        }
        let grew_g = !ex_g.expand()?.is_empty();
        let grew_h = !ex_h.expand()?.is_empty();
        if !grew_g && !grew_h {
            return Ok(None);
        }
        budget.check(ex_g.len() + ex_h.len())?;
    }
}
