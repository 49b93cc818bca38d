//! Homotopy theory of finite directed graphs.
//!
//! The crate provides the combinatorial constructions (products, quotients,
//! cylinders, cones, cofibers, mapping tubes), exact decision procedures for
//! homotopy of digraph maps, an inverse-limit calculator for finite systems
//! of finite sets, and auditors for the representable functor `[-, Z]`.

pub mod brown;
pub mod census;
pub mod constructions;
pub mod digraph;
pub mod dot;
pub mod error;
pub mod format;
pub mod homotopy;
pub mod label;
pub mod limits;
pub mod map;

pub use digraph::{is_induced, is_subdigraph, vertex_boundary, Digraph, LineDigraph, Orientation};
pub use error::{Error, Result};
pub use label::{LabelTag, VertexLabel};
pub use map::{validate_map, DigraphMap};

/// Default cap on the number of maps a search may generate.
pub const DEFAULT_MAX_STATES: usize = 5_000_000;

/// Hard cap on generated states for the enumerators and searches, and an
/// optional cap on the depth of breadth-first homotopy searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_states: usize,
    pub max_len: Option<usize>,
}

impl Budget {
    pub fn new(max_states: usize) -> Self {
        Budget { max_states, max_len: None }
    }

    pub fn with_max_len(self, max_len: usize) -> Self {
        Budget { max_len: Some(max_len), ..self }
    }

    pub(crate) fn check(&self, explored: usize) -> Result<()> {
        if explored > self.max_states {
            Err(Error::BudgetExceeded {
                budget: self.max_states,
                explored,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_MAX_STATES)
    }
}
