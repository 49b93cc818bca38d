//! Explicit certificates that the constructions are built to carry.

use super::Homotopy;
use crate::constructions::ConstructionResult;
use crate::digraph::Orientation::{Minus, Plus};
use crate::error::Result;
use crate::label::VertexLabel;
use crate::map::DigraphMap;

/// In `M_f`: `top_inclusion ≃ base_inclusion ∘ f` along the fibers
/// `Cyl(v) -> Base(f(v))`, word `+`.
pub fn cylinder_homotopy(f: &DigraphMap, cylinder: &ConstructionResult) -> Result<Homotopy> {
    let j = cylinder.map("top_inclusion").clone();
    let i_f = cylinder.map("base_inclusion").after(f)?;
    Homotopy::new(vec![Plus], vec![j, i_f])
}

/// In a digraph carrying `MT_{f,g}` (from `tube_union` or `attach_tube`):
/// `i∘f <- src_inclusion -> i∘g`, word `-+`.
pub fn tube_homotopy(f: &DigraphMap, g: &DigraphMap, tube: &ConstructionResult) -> Result<Homotopy> {
    let i = tube.map("inclusion");
    Homotopy::new(
        vec![Minus, Plus],
        vec![i.after(f)?, tube.map("src_inclusion").clone(), i.after(g)?],
    )
}

/// In `C(f)`: `i∘f -> mid_inclusion -> const Apex`, word `++`.
pub fn cofiber_nullhomotopy(f: &DigraphMap, cofiber: &ConstructionResult) -> Result<Homotopy> {
    let c = &cofiber.digraph;
    let apex = DigraphMap::constant(f.domain().clone(), c.clone(), &VertexLabel::apex())?;
    Homotopy::new(
        vec![Plus, Plus],
        vec![cofiber.map("inclusion").after(f)?, cofiber.map("mid_inclusion").clone(), apex],
    )
}
