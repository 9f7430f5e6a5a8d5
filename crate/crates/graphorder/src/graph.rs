//! Labelled graphs and isomorphism types.
//!
//! Vertices are `0..n` internally; the label of vertex `v` is `v + 1`.
//! Adjacency is stored as one `u64` row per vertex, which caps graphs at
//! [`MAX_VERTICES`] vertices.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::canon;
use crate::error::{Error, Result};

/// Largest vertex count a [`LabelledGraph`] can hold.
pub const MAX_VERTICES: usize = 64;

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// A simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LabelledGraph {
    n: usize,
    adj: Vec<u64>,
}

impl LabelledGraph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Resource(format!(
                "{n} vertices exceeds the limit of {MAX_VERTICES}"
            )));
        }
        Ok(LabelledGraph { n, adj: vec![0; n] })
    }

    /// Builds a graph from 0-based edge pairs.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Validation(format!(
                    "edge ({u},{v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::Validation(format!("self-loop at vertex {u}")));
            }
            if g.has_edge(u, v) {
                return Err(Error::Validation(format!("duplicate edge ({u},{v})")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub(crate) fn from_rows(n: usize, adj: Vec<u64>) -> Self {
        debug_assert_eq!(adj.len(), n);
        LabelledGraph { n, adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    /// Neighbourhood of `v` as a bit mask.
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Edges as pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in bits(self.adj[u] >> (u + 1)) {
                out.push((u, u + 1 + v));
            }
        }
        out
    }

    /// Adds the edge `uv`. Panics on a self-loop.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loop");
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    /// Adds an isolated vertex and returns its index.
    pub fn add_vertex(&mut self) -> Result<usize> {
        if self.n >= MAX_VERTICES {
            return Err(Error::Resource(format!(
                "cannot exceed {MAX_VERTICES} vertices"
            )));
        }
        self.adj.push(0);
        self.n += 1;
        Ok(self.n - 1)
    }

    /// The subgraph induced on the vertices of `mask`, relabelled in order.
    pub fn induced(&self, mask: u64) -> LabelledGraph {
        let verts: Vec<usize> = bits(mask & full_mask(self.n)).collect();
        let mut pos = [usize::MAX; MAX_VERTICES];
        for (i, &v) in verts.iter().enumerate() {
            pos[v] = i;
        }
        let adj = verts
            .iter()
            .map(|&v| {
                let mut row = 0u64;
                for w in bits(self.adj[v] & mask) {
                    row |= 1 << pos[w];
                }
                row
            })
            .collect();
        LabelledGraph::from_rows(verts.len(), adj)
    }

    pub fn delete_vertex(&self, v: usize) -> LabelledGraph {
        self.induced(full_mask(self.n) & !(1 << v))
    }

    /// Contracts edge `uv`: `v` is merged into `u` and removed.
    pub fn contract_edge(&self, u: usize, v: usize) -> LabelledGraph {
        let mut g = self.clone();
        let merged = (g.adj[u] | g.adj[v]) & !(1 << u) & !(1 << v);
        for w in bits(merged) {
            g.add_edge(u, w);
        }
        g.delete_vertex(v)
    }

    /// Relabels so that old vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> LabelledGraph {
        let mut adj = vec![0u64; self.n];
        for u in 0..self.n {
            let mut row = 0u64;
            for w in bits(self.adj[u]) {
                row |= 1 << perm[w];
            }
            adj[perm[u]] = row;
        }
        LabelledGraph::from_rows(self.n, adj)
    }

    pub fn complement(&self) -> LabelledGraph {
        let full = full_mask(self.n);
        let adj = (0..self.n).map(|v| !self.adj[v] & full & !(1 << v)).collect();
        LabelledGraph::from_rows(self.n, adj)
    }

    /// `self` on vertices `0..n`, followed by `other` shifted by `n`.
    pub fn disjoint_union(&self, other: &LabelledGraph) -> Result<LabelledGraph> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(Error::Resource(format!(
                "disjoint union has {n} vertices, limit is {MAX_VERTICES}"
            )));
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|r| r << self.n));
        Ok(LabelledGraph::from_rows(n, adj))
    }

    /// Vertex masks of the connected components, ordered by least vertex.
    pub fn component_masks(&self) -> Vec<u64> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen >> s & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << s;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0u64;
                for v in bits(frontier) {
                    next |= self.adj[v];
                }
                frontier = next & !comp;
                comp |= next;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    /// At most one component. The null graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.component_masks().len() <= 1
    }

    /// Degrees in non-increasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// Bits of the number representation after the leading 1: tuples
    /// `(v_i, v_j)` with `j < i`, `i` descending then `j` descending.
    pub fn representation_bits(&self) -> impl Iterator<Item = bool> + '_ {
        (1..self.n)
            .rev()
            .flat_map(move |i| (0..i).rev().map(move |j| self.has_edge(i, j)))
    }

    pub fn canonicalize(&self) -> CanonicalGraph {
        CanonicalGraph::new(self)
    }

    /// Graphviz rendering with 1-based vertex labels.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("graph \"{}\" {{\n", name.replace('"', "\\\""));
        for v in 0..self.n {
            s.push_str(&format!("  {};\n", v + 1));
        }
        for (u, v) in self.edges() {
            s.push_str(&format!("  {} -- {};\n", u + 1, v + 1));
        }
        s.push_str("}\n");
        s
    }
}

/// An isomorphism type, held as its canonical labelled representative.
///
/// Equality, hashing and ordering use only the representative. Types are
/// ordered by vertex count, then by the representative's number
/// representation, so for small graphs the order agrees with `≤_t`.
#[derive(Clone, Debug)]
pub struct CanonicalGraph {
    repr: LabelledGraph,
    edges: usize,
    degrees: Vec<usize>,
}

impl CanonicalGraph {
    fn new(g: &LabelledGraph) -> Self {
        let order = canon::canonical_order(g);
        let mut perm = vec![0; g.n];
        for (pos, &v) in order.iter().enumerate() {
            perm[v] = g.n - 1 - pos;
        }
        Self::from_canonical_repr(g.permuted(&perm))
    }

    pub(crate) fn from_canonical_repr(repr: LabelledGraph) -> Self {
        CanonicalGraph {
            edges: repr.edge_count(),
            degrees: repr.degree_sequence(),
            repr,
        }
    }

    /// The null graph ∅_g.
    pub fn null() -> Self {
        Self::from_canonical_repr(LabelledGraph::from_rows(0, Vec::new()))
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Ok(LabelledGraph::from_edges(n, edges)?.canonicalize())
    }

    pub fn repr(&self) -> &LabelledGraph {
        &self.repr
    }

    /// Vertex count `|g|`.
    pub fn order(&self) -> usize {
        self.repr.n
    }

    /// Edge count `||g||`.
    pub fn size(&self) -> usize {
        self.edges
    }

    pub fn degree_sequence(&self) -> &[usize] {
        &self.degrees
    }

    pub fn is_connected(&self) -> bool {
        self.repr.is_connected()
    }

    pub fn disjoint_union(&self, other: &CanonicalGraph) -> Result<CanonicalGraph> {
        Ok(self.repr.disjoint_union(&other.repr)?.canonicalize())
    }

    /// Connected components, sorted.
    pub fn components(&self) -> Vec<CanonicalGraph> {
        let mut out: Vec<CanonicalGraph> = self
            .repr
            .component_masks()
            .into_iter()
            .map(|m| self.repr.induced(m).canonicalize())
            .collect();
        out.sort();
        out
    }

    pub fn complement(&self) -> CanonicalGraph {
        self.repr.complement().canonicalize()
    }

    /// Disjoint union of a list of graphs.
    pub fn union_all<'a>(parts: impl IntoIterator<Item = &'a CanonicalGraph>) -> Result<Self> {
        let mut acc = LabelledGraph::from_rows(0, Vec::new());
        for p in parts {
            acc = acc.disjoint_union(&p.repr)?;
        }
        Ok(acc.canonicalize())
    }
}

impl PartialEq for CanonicalGraph {
    fn eq(&self, other: &Self) -> bool {
        self.repr == other.repr
    }
}

impl Eq for CanonicalGraph {}

impl Hash for CanonicalGraph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.repr.hash(state);
    }
}

impl Ord for CanonicalGraph {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order().cmp(&other.order()).then_with(|| {
            self.repr
                .representation_bits()
                .cmp(other.repr.representation_bits())
        })
    }
}

impl PartialOrd for CanonicalGraph {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CanonicalGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::graph6::encode(&self.repr))
    }
}
