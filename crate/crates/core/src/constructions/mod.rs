//! Combinatorial constructions on digraphs.
//!
//! Every construction emits canonically tagged labels (`Base`, `Cyl`, `Mid`,
//! `Src`, `Cone`, `Apex`, `Star`, `Pair`, `Class`) so results can be glued by
//! plain label union, and returns the canonical maps later arguments need.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::digraph::Digraph;
use crate::label::VertexLabel;
use crate::map::DigraphMap;

mod cofiber;
mod cylinder;
mod products;
mod quotient;
mod tube;

pub use cofiber::{gat, paper_cofiber, GatGlue};
pub use cylinder::{
    cone, cone_extension, cylinder_extension, extended_cone, extended_mapping_cylinder, mapping_cylinder,
};
pub use products::{box_product, disjoint_union, intersection, slice_inclusion, tensor_product, union};
pub use quotient::{categorical_cofiber, identification, pushout, quotient, IdentificationSpec};
pub use tube::{attach_tube, mapping_tube, reduced_cylinder, tube_union};

/// Non-fatal findings raised while building a construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Warning {
    /// The generating relation is not edge compatible: the ambient edge
    /// `edge` relates two classes, but the representatives `pair` are
    /// neither equal nor joined by an edge.
    IncompatibleRelation {
        edge: (VertexLabel, VertexLabel),
        pair: (VertexLabel, VertexLabel),
    },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::IncompatibleRelation { edge, pair } => write!(
                f,
                "INCOMPATIBLE_RELATION: edge {} -> {} but {} -> {} is missing",
                edge.0, edge.1, pair.0, pair.1
            ),
        }
    }
}

/// A constructed digraph together with its named canonical maps.
#[derive(Debug, Clone)]
pub struct ConstructionResult {
    pub digraph: Arc<Digraph>,
    pub maps: BTreeMap<String, DigraphMap>,
    pub warnings: Vec<Warning>,
}

impl ConstructionResult {
    pub(crate) fn new(digraph: Digraph) -> Self {
        ConstructionResult {
            digraph: Arc::new(digraph),
            maps: BTreeMap::new(),
            warnings: Vec::new(),
        }
    }

    pub(crate) fn with_map(
        mut self,
        name: &str,
        domain: Arc<Digraph>,
        f: impl Fn(&VertexLabel) -> VertexLabel,
    ) -> Self {
        let m = DigraphMap::from_fn(domain, self.digraph.clone(), f)
            .expect("canonical maps land in the construction");
        self.maps.insert(name.to_owned(), m);
        self
    }

    /// Canonical map by name; panics if the construction does not provide it.
    pub fn map(&self, name: &str) -> &DigraphMap {
        self.maps
            .get(name)
            .unwrap_or_else(|| panic!("construction has no map named {name}"))
    }
}

/// Vertex and edge sets accumulated before freezing into a [`Digraph`].
#[derive(Default)]
pub(crate) struct Draft {
    vertices: BTreeSet<VertexLabel>,
    edges: BTreeSet<(VertexLabel, VertexLabel)>,
}

impl Draft {
    pub(crate) fn vertex(&mut self, v: VertexLabel) {
        self.vertices.insert(v);
    }

    pub(crate) fn edge(&mut self, x: VertexLabel, y: VertexLabel) {
        debug_assert_ne!(x, y);
        self.vertices.insert(x.clone());
        self.vertices.insert(y.clone());
        self.edges.insert((x, y));
    }

    pub(crate) fn absorb(&mut self, g: &Digraph) {
        self.vertices.extend(g.vertices().cloned());
        self.edges.extend(g.edges().map(|(x, y)| (x.clone(), y.clone())));
    }

    pub(crate) fn finish(self) -> Digraph {
        Digraph::new(self.vertices, self.edges).expect("constructions never emit loops")
    }
}
