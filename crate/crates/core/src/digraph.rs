//! Finite digraphs and the basic sub-digraph predicates.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::label::VertexLabel;

/// A finite directed graph without loops.
///
/// Vertices are kept in label order; positions in that order are used
/// internally by the search code but never exposed.
#[derive(Clone)]
pub struct Digraph {
    labels: Vec<VertexLabel>,
    lookup: BTreeMap<VertexLabel, u32>,
    out: Vec<Vec<u32>>,
    inn: Vec<Vec<u32>>,
    stride: usize,
    adj: Vec<u64>,
    edge_count: usize,
}

impl Digraph {
    /// Builds a digraph from explicit vertex and edge sets. Loops and
    /// edges with undeclared endpoints are rejected, not repaired.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Digraph>
    where
        V: IntoIterator<Item = VertexLabel>,
        E: IntoIterator<Item = (VertexLabel, VertexLabel)>,
    {
        let vertices: BTreeSet<VertexLabel> = vertices.into_iter().collect();
        let edges: BTreeSet<(VertexLabel, VertexLabel)> = edges.into_iter().collect();
        for (x, y) in &edges {
            if x == y {
                return Err(Error::LoopEdge(x.clone()));
            }
            for end in [x, y] {
                if !vertices.contains(end) {
                    return Err(Error::DanglingEdge(end.clone()));
                }
            }
        }
        Ok(Self::assemble(vertices, edges))
    }

    /// Builds a digraph whose vertex set also contains every edge endpoint.
    pub fn from_edges<V, E>(isolated: V, edges: E) -> Result<Digraph>
    where
        V: IntoIterator<Item = VertexLabel>,
        E: IntoIterator<Item = (VertexLabel, VertexLabel)>,
    {
        let edges: Vec<(VertexLabel, VertexLabel)> = edges.into_iter().collect();
        let mut vertices: BTreeSet<VertexLabel> = isolated.into_iter().collect();
        for (x, y) in &edges {
            vertices.insert(x.clone());
            vertices.insert(y.clone());
        }
        Self::new(vertices, edges)
    }

    /// Shorthand used by fixtures: atoms for vertices and `(src, dst)` edges.
    pub fn from_atoms(vertices: &[&str], edges: &[(&str, &str)]) -> Result<Digraph> {
        let vs = vertices
            .iter()
            .map(|v| VertexLabel::atom(v))
            .collect::<Result<Vec<_>>>()?;
        let es = edges
            .iter()
            .map(|(x, y)| Ok((VertexLabel::atom(x)?, VertexLabel::atom(y)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_edges(vs, es)
    }

    fn assemble(vertices: BTreeSet<VertexLabel>, edges: BTreeSet<(VertexLabel, VertexLabel)>) -> Digraph {
        let labels: Vec<VertexLabel> = vertices.into_iter().collect();
        let lookup: BTreeMap<VertexLabel, u32> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i as u32))
            .collect();
        let n = labels.len();
        let stride = n.div_ceil(64).max(1);
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        let mut adj = vec![0u64; n * stride];
        for (x, y) in &edges {
            let (i, j) = (lookup[x], lookup[y]);
            out[i as usize].push(j);
            inn[j as usize].push(i);
            adj[i as usize * stride + j as usize / 64] |= 1 << (j % 64);
        }
        for list in out.iter_mut().chain(inn.iter_mut()) {
            list.sort_unstable();
        }
        Digraph {
            labels,
            lookup,
            out,
            inn,
            stride,
            adj,
            edge_count: edges.len(),
        }
    }

    pub fn empty() -> Digraph {
        Self::assemble(BTreeSet::new(), BTreeSet::new())
    }

    /// The one-vertex digraph on the given label.
    pub fn point(label: VertexLabel) -> Digraph {
        Self::assemble(std::iter::once(label).collect(), BTreeSet::new())
    }

    /// Directed cycle on the given atoms, `v0 -> v1 -> ... -> v0`.
    pub fn cycle(atoms: &[&str]) -> Result<Digraph> {
        let edges: Vec<(&str, &str)> = (0..atoms.len())
            .map(|i| (atoms[i], atoms[(i + 1) % atoms.len()]))
            .collect();
        Self::from_atoms(atoms, &edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Vertices in label order.
    pub fn vertices(&self) -> impl Iterator<Item = &VertexLabel> + '_ {
        self.labels.iter()
    }

    /// Edges in lexicographic `(source, target)` order.
    pub fn edges(&self) -> impl Iterator<Item = (&VertexLabel, &VertexLabel)> + '_ {
        self.out.iter().enumerate().flat_map(move |(i, targets)| {
            targets
                .iter()
                .map(move |&j| (&self.labels[i], &self.labels[j as usize]))
        })
    }

    pub fn contains(&self, v: &VertexLabel) -> bool {
        self.lookup.contains_key(v)
    }

    pub fn has_edge(&self, x: &VertexLabel, y: &VertexLabel) -> bool {
        match (self.lookup.get(x), self.lookup.get(y)) {
            (Some(&i), Some(&j)) => self.has_edge_at(i, j),
            _ => false,
        }
    }

    pub fn out_neighbors(&self, v: &VertexLabel) -> impl Iterator<Item = &VertexLabel> + '_ {
        let list = self.lookup.get(v).map(|&i| self.out[i as usize].as_slice()).unwrap_or(&[]);
        list.iter().map(move |&j| &self.labels[j as usize])
    }

    pub fn in_neighbors(&self, v: &VertexLabel) -> impl Iterator<Item = &VertexLabel> + '_ {
        let list = self.lookup.get(v).map(|&i| self.inn[i as usize].as_slice()).unwrap_or(&[]);
        list.iter().map(move |&j| &self.labels[j as usize])
    }

    pub(crate) fn position(&self, v: &VertexLabel) -> Option<u32> {
        self.lookup.get(v).copied()
    }

    pub(crate) fn label_at(&self, i: u32) -> &VertexLabel {
        &self.labels[i as usize]
    }

    #[inline]
    pub(crate) fn has_edge_at(&self, i: u32, j: u32) -> bool {
        self.adj[i as usize * self.stride + j as usize / 64] >> (j % 64) & 1 == 1
    }

    pub(crate) fn out_at(&self, i: u32) -> &[u32] {
        &self.out[i as usize]
    }

    pub(crate) fn in_at(&self, i: u32) -> &[u32] {
        &self.inn[i as usize]
    }

    /// Edges as position pairs, in order.
    pub(crate) fn edge_positions(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(i, ts)| ts.iter().map(move |&j| (i as u32, j)))
    }

    /// Owned edge set, convenient for set algebra.
    pub fn edge_set(&self) -> BTreeSet<(VertexLabel, VertexLabel)> {
        self.edges().map(|(x, y)| (x.clone(), y.clone())).collect()
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexLabel> {
        self.labels.iter().cloned().collect()
    }

    /// The sub-digraph induced on the given vertices (those not present are ignored).
    pub fn induced<'a, I>(&self, vertices: I) -> Digraph
    where
        I: IntoIterator<Item = &'a VertexLabel>,
    {
        let keep: BTreeSet<VertexLabel> = vertices
            .into_iter()
            .filter(|v| self.contains(v))
            .cloned()
            .collect();
        let edges = self
            .edges()
            .filter(|(x, y)| keep.contains(*x) && keep.contains(*y))
            .map(|(x, y)| (x.clone(), y.clone()))
            .collect();
        Self::assemble(keep, edges)
    }

    /// Applies `rename` to every label. The renaming must be injective.
    pub fn relabel(&self, rename: impl Fn(&VertexLabel) -> VertexLabel) -> Digraph {
        let vertices: BTreeSet<VertexLabel> = self.labels.iter().map(&rename).collect();
        assert_eq!(vertices.len(), self.labels.len(), "relabeling must be injective");
        let edges = self.edges().map(|(x, y)| (rename(x), rename(y))).collect();
        Self::assemble(vertices, edges)
    }
}

impl PartialEq for Digraph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.out == other.out
    }
}

impl Eq for Digraph {}

impl Hash for Digraph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.labels.hash(state);
        self.out.hash(state);
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self.edges().map(|(x, y)| format!("{x}->{y}")).collect();
        write!(f, "Digraph({:?}, [{}])", self.labels, edges.join(", "))
    }
}

/// `V_X ⊆ V_G` and `E_X ⊆ E_G`.
pub fn is_subdigraph(x: &Digraph, g: &Digraph) -> bool {
    x.vertices().all(|v| g.contains(v)) && x.edges().all(|(a, b)| g.has_edge(a, b))
}

/// Sub-digraph that also contains every `G`-edge between its own vertices.
pub fn is_induced(x: &Digraph, g: &Digraph) -> bool {
    is_subdigraph(x, g)
        && x.vertices()
            .all(|a| g.out_neighbors(a).all(|b| !x.contains(b) || x.has_edge(a, b)))
}

/// Vertices of `G` outside `X` joined by an edge, in either direction, to `X`.
pub fn vertex_boundary(x: &Digraph, g: &Digraph) -> Result<BTreeSet<VertexLabel>> {
    if !is_subdigraph(x, g) {
        return Err(Error::NotSubdigraph);
    }
    let mut boundary = BTreeSet::new();
    for v in x.vertices() {
        for w in g.out_neighbors(v).chain(g.in_neighbors(v)) {
            if !x.contains(w) {
                boundary.insert(w.clone());
            }
        }
    }
    Ok(boundary)
}

/// Orientation of one step of a line digraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orientation {
    /// Edge `i-1 -> i`.
    Plus,
    /// Edge `i -> i-1`.
    Minus,
}

impl Orientation {
    pub fn flip(self) -> Orientation {
        match self {
            Orientation::Plus => Orientation::Minus,
            Orientation::Minus => Orientation::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Orientation::Plus => '+',
            Orientation::Minus => '-',
        }
    }

    pub fn from_symbol(c: char) -> Option<Orientation> {
        match c {
            '+' => Some(Orientation::Plus),
            '-' | '−' => Some(Orientation::Minus),
            _ => None,
        }
    }
}

/// Renders an orientation word as a string of `+` and `-`.
pub fn word_string(word: &[Orientation]) -> String {
    word.iter().map(|o| o.symbol()).collect()
}

pub fn parse_word(s: &str) -> Option<Vec<Orientation>> {
    s.chars().map(Orientation::from_symbol).collect()
}

/// An `n`-step line digraph `0 - 1 - ... - n`, each step oriented by the word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LineDigraph {
    pub word: Vec<Orientation>,
}

impl LineDigraph {
    pub fn new(word: Vec<Orientation>) -> Self {
        LineDigraph { word }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn to_digraph(&self) -> Digraph {
        let vertices = (0..=self.word.len()).map(VertexLabel::index);
        let edges = self.word.iter().enumerate().map(|(k, o)| {
            let (a, b) = (VertexLabel::index(k), VertexLabel::index(k + 1));
            match o {
                Orientation::Plus => (a, b),
                Orientation::Minus => (b, a),
            }
        });
        Digraph::new(vertices, edges).expect("line digraphs are well formed")
    }

    /// `I⁺ = 0 -> 1`.
    pub fn plus() -> Digraph {
        LineDigraph::new(vec![Orientation::Plus]).to_digraph()
    }

    /// `I⁻ = 0 <- 1`.
    pub fn minus() -> Digraph {
        LineDigraph::new(vec![Orientation::Minus]).to_digraph()
    }
}
