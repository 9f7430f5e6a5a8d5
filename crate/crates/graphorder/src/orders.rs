//! The subgraph, induced-subgraph and minor orders, and their covers.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bits, CanonicalGraph, LabelledGraph};
use crate::graph6;
use crate::universe::Universe;

/// Which graph order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    /// `≤_s`: delete vertices and edges.
    Subgraph = 0,
    /// `≤_i`: delete vertices.
    Induced = 1,
    /// `≤_m`: delete vertices and edges, contract edges.
    Minor = 2,
}

impl OrderKind {
    pub const ALL: [OrderKind; 3] = [OrderKind::Subgraph, OrderKind::Induced, OrderKind::Minor];

    pub fn suffix(self) -> &'static str {
        match self {
            OrderKind::Subgraph => "s",
            OrderKind::Induced => "i",
            OrderKind::Minor => "m",
        }
    }
}

impl FromStr for OrderKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "s" | "subgraph" => Ok(OrderKind::Subgraph),
            "i" | "induced" => Ok(OrderKind::Induced),
            "m" | "minor" => Ok(OrderKind::Minor),
            _ => Err(Error::Domain(format!("unknown order kind {s:?}"))),
        }
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.suffix())
    }
}

/// Kind of a `≤_s` cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum CoverKindS {
    EdgeCover,
    VertexCover,
    NotCover,
}

/// Backtracking search for an injective map from `pattern` into `target`
/// that preserves edges (and non-edges when `induced`).
pub fn find_embedding(
    pattern: &LabelledGraph,
    target: &LabelledGraph,
    induced: bool,
) -> Option<Vec<usize>> {
    let (p, t) = (pattern.n(), target.n());
    if p > t || pattern.edge_count() > target.edge_count() {
        return None;
    }
    let pd = pattern.degree_sequence();
    let td = target.degree_sequence();
    if pd.iter().zip(&td).any(|(a, b)| a > b) {
        return None;
    }
    if p == 0 {
        return Some(Vec::new());
    }
    let order = search_order(pattern);
    let mut pos = vec![0; p];
    for (k, &v) in order.iter().enumerate() {
        pos[v] = k;
    }
    // For each step, the earlier steps adjacent to it, as step masks.
    let earlier_nbrs: Vec<u64> = order
        .iter()
        .enumerate()
        .map(|(k, &v)| {
            let mut m = 0u64;
            for w in bits(pattern.neighbors(v)) {
                if pos[w] < k {
                    m |= 1 << pos[w];
                }
            }
            m
        })
        .collect();
    let degrees: Vec<usize> = order.iter().map(|&v| pattern.degree(v)).collect();
    let mut images = vec![0usize; p];
    if extend(target, induced, &earlier_nbrs, &degrees, &mut images, 0, 0) {
        let mut out = vec![0; p];
        for (k, &v) in order.iter().enumerate() {
            out[v] = images[k];
        }
        Some(out)
    } else {
        None
    }
}

/// Components largest first, each in BFS order from a maximum-degree vertex.
fn search_order(g: &LabelledGraph) -> Vec<usize> {
    let mut comps = g.component_masks();
    comps.sort_by_key(|m| std::cmp::Reverse(m.count_ones()));
    let mut order = Vec::with_capacity(g.n());
    for comp in comps {
        let start = bits(comp).max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v))).unwrap();
        let mut seen = 1u64 << start;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            let mut next: Vec<usize> = bits(g.neighbors(v) & !seen).collect();
            next.sort_by_key(|&w| std::cmp::Reverse(g.degree(w)));
            for w in next {
                seen |= 1 << w;
                queue.push_back(w);
            }
        }
    }
    order
}

fn extend(
    target: &LabelledGraph,
    induced: bool,
    earlier_nbrs: &[u64],
    degrees: &[usize],
    images: &mut [usize],
    used: u64,
    k: usize,
) -> bool {
    if k == earlier_nbrs.len() {
        return true;
    }
    let mut needed = 0u64;
    for q in bits(earlier_nbrs[k]) {
        needed |= 1 << images[q];
    }
    let mut forbidden = 0u64;
    if induced {
        let non = ((1u64 << k) - 1) & !earlier_nbrs[k];
        for q in bits(non) {
            forbidden |= 1 << images[q];
        }
    }
    let candidates = match bits(earlier_nbrs[k]).next() {
        Some(q) => target.neighbors(images[q]) & !used,
        None => crate::graph::full_mask(target.n()) & !used,
    };
    for c in bits(candidates) {
        let nc = target.neighbors(c);
        if target.degree(c) < degrees[k] || nc & needed != needed || nc & forbidden != 0 {
            continue;
        }
        images[k] = c;
        if extend(target, induced, earlier_nbrs, degrees, images, used | 1 << c, k + 1) {
            return true;
        }
    }
    false
}

/// `g ≤_s h`.
pub fn is_subgraph(g: &CanonicalGraph, h: &CanonicalGraph) -> bool {
    find_embedding(g.repr(), h.repr(), false).is_some()
}

/// `g ≤_i h`.
pub fn is_induced_subgraph(g: &CanonicalGraph, h: &CanonicalGraph) -> bool {
    find_embedding(g.repr(), h.repr(), true).is_some()
}

/// `g ≤_m h`. Every minor is a subgraph of some edge contraction of `h`, so
/// the search walks contractions (memoized by canonical form) and tests
/// subgraph containment at each.
pub fn is_minor(g: &CanonicalGraph, h: &CanonicalGraph) -> bool {
    if g.order() > h.order() || g.size() > h.size() {
        return false;
    }
    let mut seen: HashSet<CanonicalGraph> = HashSet::new();
    let mut stack = vec![h.clone()];
    seen.insert(h.clone());
    while let Some(x) = stack.pop() {
        if is_subgraph(g, &x) {
            return true;
        }
        if x.order() == g.order() {
            continue;
        }
        for (u, v) in x.repr().edges() {
            let c = x.repr().contract_edge(u, v).canonicalize();
            if c.size() >= g.size() && seen.insert(c.clone()) {
                stack.push(c);
            }
        }
    }
    false
}

/// Whether `g` is obtainable from `h` by the operations of `kind`.
pub fn leq(kind: OrderKind, g: &CanonicalGraph, h: &CanonicalGraph) -> bool {
    match kind {
        OrderKind::Subgraph => is_subgraph(g, h),
        OrderKind::Induced => is_induced_subgraph(g, h),
        OrderKind::Minor => is_minor(g, h),
    }
}

/// Graphs obtained from `g` by one operation of `kind`.
pub fn children(kind: OrderKind, g: &LabelledGraph) -> Vec<LabelledGraph> {
    let mut out: Vec<LabelledGraph> = (0..g.n()).map(|v| g.delete_vertex(v)).collect();
    if kind != OrderKind::Induced {
        for (u, v) in g.edges() {
            let mut h = g.clone();
            h.remove_edge(u, v);
            out.push(h);
        }
    }
    if kind == OrderKind::Minor {
        for (u, v) in g.edges() {
            out.push(g.contract_edge(u, v));
        }
    }
    out
}

/// Comparability and cover tables of one order over a universe.
pub struct OrderMatrix {
    kind: OrderKind,
    len: usize,
    down: Vec<Vec<u64>>,
    lower_covers: Vec<Vec<u64>>,
}

fn has(row: &[u64], i: usize) -> bool {
    row[i / 64] >> (i % 64) & 1 == 1
}

fn set(row: &mut [u64], i: usize) {
    row[i / 64] |= 1 << (i % 64);
}

impl OrderMatrix {
    /// Builds down-sets by dynamic programming over single operations.
    pub fn build(u: &Universe, kind: OrderKind) -> OrderMatrix {
        let len = u.len();
        let words = len.div_ceil(64).max(1);
        let kids: Vec<Vec<usize>> = u
            .members()
            .par_iter()
            .map(|g| {
                let mut ks: Vec<usize> = children(kind, g.repr())
                    .into_iter()
                    .map(|c| u.position(&c.canonicalize()).expect("universe is down-closed"))
                    .collect();
                ks.sort_unstable();
                ks.dedup();
                ks
            })
            .collect();
        // Every operation lowers |g| + ||g||, so process by that rank.
        let max_rank = u.members().iter().map(|g| g.order() + g.size()).max().unwrap_or(0);
        let mut by_rank: Vec<Vec<usize>> = vec![Vec::new(); max_rank + 1];
        for (i, g) in u.members().iter().enumerate() {
            by_rank[g.order() + g.size()].push(i);
        }
        let mut down: Vec<Vec<u64>> = vec![Vec::new(); len];
        for layer in by_rank {
            let rows: Vec<(usize, Vec<u64>)> = layer
                .par_iter()
                .map(|&i| {
                    let mut row = vec![0u64; words];
                    set(&mut row, i);
                    for &c in &kids[i] {
                        for (w, x) in row.iter_mut().zip(&down[c]) {
                            *w |= x;
                        }
                    }
                    (i, row)
                })
                .collect();
            for (i, row) in rows {
                down[i] = row;
            }
        }
        let lower_covers = (0..len)
            .into_par_iter()
            .map(|i| {
                let mut below = vec![0u64; words];
                for &c in &kids[i] {
                    for (w, x) in below.iter_mut().zip(&down[c]) {
                        *w |= x;
                    }
                }
                // Strict down-sets of the children.
                let mut strict = vec![0u64; words];
                for &c in &kids[i] {
                    for &d in &kids[c] {
                        for (w, x) in strict.iter_mut().zip(&down[d]) {
                            *w |= x;
                        }
                    }
                }
                let mut row = vec![0u64; words];
                for &c in &kids[i] {
                    if !has(&strict, c) {
                        set(&mut row, c);
                    }
                }
                row
            })
            .collect();
        OrderMatrix { kind, len, down, lower_covers }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Member `i` is below member `j`.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        has(&self.down[j], i)
    }

    /// Member `j` covers member `i`.
    pub fn covers(&self, i: usize, j: usize) -> bool {
        has(&self.lower_covers[j], i)
    }

    /// Indices of the members below member `j`.
    pub fn down_set(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.leq(i, j))
    }

    /// Indices of the members covered by member `j`.
    pub fn lower_covers(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.covers(i, j))
    }

    /// JSON export: `{"kind", "n", "members", "leq", "covers"}` where
    /// `members` is a graph6 list in universe order and `leq[i]` / `covers[i]`
    /// are strings whose `j`-th character is `1` iff member `i` is below /
    /// covered by member `j`.
    pub fn to_json(&self, u: &Universe) -> serde_json::Value {
        let row = |f: &dyn Fn(usize, usize) -> bool, i: usize| -> String {
            (0..self.len).map(|j| if f(i, j) { '1' } else { '0' }).collect()
        };
        serde_json::json!({
            "format": "graphorder-order-matrix/1",
            "kind": self.kind,
            "n": u.max_vertices(),
            "members": u.members().iter().map(|g| graph6::encode(g.repr())).collect::<Vec<_>>(),
            "leq": (0..self.len).map(|i| row(&|a, b| self.leq(a, b), i)).collect::<Vec<_>>(),
            "covers": (0..self.len).map(|i| row(&|a, b| self.covers(a, b), i)).collect::<Vec<_>>(),
        })
    }
}

fn certify(u: &Universe, h: &CanonicalGraph) -> Result<usize> {
    if h.order() > u.max_vertices() {
        return Err(Error::Precondition(format!(
            "universe U_{} cannot certify covers below a {}-vertex graph",
            u.max_vertices(),
            h.order()
        )));
    }
    Ok(u.position(h).expect("universe holds every small graph"))
}

/// `g ⋖ h` in the order, certified over `universe`.
pub fn covers(kind: OrderKind, g: &CanonicalGraph, h: &CanonicalGraph, universe: &Universe) -> Result<bool> {
    let j = certify(universe, h)?;
    let Some(i) = universe.position(g) else {
        return Ok(false);
    };
    Ok(universe.matrix(kind).covers(i, j))
}

/// Classifies a `≤_s` cover as adding an edge or an isolated vertex.
pub fn cover_kind_s(g: &CanonicalGraph, h: &CanonicalGraph) -> CoverKindS {
    let edge_step = h.order() == g.order() && h.size() == g.size() + 1;
    let vertex_step = h.order() == g.order() + 1 && h.size() == g.size();
    if (edge_step || vertex_step) && is_subgraph(g, h) {
        if edge_step {
            CoverKindS::EdgeCover
        } else {
            CoverKindS::VertexCover
        }
    } else {
        CoverKindS::NotCover
    }
}

/// A chain `g = w_0 ⋖ w_1 ⋖ … ⋖ w_n = h` exists.
pub fn cover_n(kind: OrderKind, g: &CanonicalGraph, h: &CanonicalGraph, n: usize, universe: &Universe) -> Result<bool> {
    let j = certify(universe, h)?;
    let Some(i) = universe.position(g) else {
        return Ok(false);
    };
    let m = universe.matrix(kind);
    let mut frontier: Vec<usize> = vec![i];
    for _ in 0..n {
        let mut next: Vec<usize> = frontier
            .iter()
            .flat_map(|&a| m.down_set(j).filter(move |&z| m.covers(a, z)))
            .collect();
        next.sort_unstable();
        next.dedup();
        frontier = next;
        if frontier.is_empty() {
            return Ok(false);
        }
    }
    Ok(frontier.contains(&j))
}

/// `|g| = |h|`.
pub fn same_card(g: &CanonicalGraph, h: &CanonicalGraph) -> bool {
    g.order() == h.order()
}

/// `||g|| = ||h||`.
pub fn same_size(g: &CanonicalGraph, h: &CanonicalGraph) -> bool {
    g.size() == h.size()
}

/// `∃z g ≤_m z ∧ sameSize(g, z) ∧ z ≤_m h ∧ |z| = |h|`, searched over `universe`.
pub fn subgraph_via_minor(g: &CanonicalGraph, h: &CanonicalGraph, universe: &Universe) -> Result<bool> {
    let j = certify(universe, h)?;
    let Some(i) = universe.position(g) else {
        return Ok(false);
    };
    let m = universe.matrix(OrderKind::Minor);
    Ok(universe
        .range_of_order(h.order())
        .any(|z| universe.get(z).size() == g.size() && m.leq(i, z) && m.leq(z, j)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::{make_named, NamedFamily::*};
    use crate::universe::enumerate_universe;

    fn g(f: crate::named::NamedFamily, k: usize) -> CanonicalGraph {
        make_named(f, k).unwrap()
    }

    #[test]
    fn examples() {
        assert!(leq(OrderKind::Induced, &g(K, 2), &g(P, 3)));
        assert!(!leq(OrderKind::Induced, &g(P, 3), &g(K, 3)));
        assert!(leq(OrderKind::Subgraph, &g(P, 3), &g(K, 3)));
        assert!(leq(OrderKind::Minor, &g(K, 3), &g(C, 4)));
        assert!(!leq(OrderKind::Subgraph, &g(K, 3), &g(C, 4)));
    }

    #[test]
    fn cover_examples() {
        let u = enumerate_universe(4).unwrap();
        assert!(covers(OrderKind::Induced, &g(K, 2), &g(P, 3), &u).unwrap());
        assert!(covers(OrderKind::Subgraph, &g(N, 2), &g(K, 2), &u).unwrap());
        assert!(!covers(OrderKind::Induced, &g(N, 1), &g(K, 3), &u).unwrap());
        assert!(covers(OrderKind::Induced, &g(N, 1), &g(K, 5), &u).is_err());
        assert_eq!(cover_kind_s(&g(N, 2), &g(K, 2)), CoverKindS::EdgeCover);
        let k2n1 = g(K, 2).disjoint_union(&g(N, 1)).unwrap();
        assert_eq!(cover_kind_s(&g(K, 2), &k2n1), CoverKindS::VertexCover);
        assert_eq!(cover_kind_s(&g(K, 2), &g(K, 3)), CoverKindS::NotCover);
    }

    #[test]
    fn cover_chains() {
        let u = enumerate_universe(3).unwrap();
        let i = OrderKind::Induced;
        assert!(cover_n(i, &g(K, 2), &g(P, 3), 1, &u).unwrap());
        assert!(cover_n(i, &g(N, 1), &g(P, 3), 2, &u).unwrap());
        assert!(cover_n(i, &g(P, 3), &g(P, 3), 0, &u).unwrap());
        assert!(!cover_n(i, &g(N, 1), &g(P, 3), 1, &u).unwrap());
    }

    #[test]
    fn via_minor_examples() {
        let u = enumerate_universe(4).unwrap();
        assert!(subgraph_via_minor(&g(P, 3), &g(K, 3), &u).unwrap());
        assert!(!subgraph_via_minor(&g(K, 3), &g(C, 4), &u).unwrap());
        assert!(subgraph_via_minor(&g(C, 4), &g(C, 4), &u).unwrap());
    }

    #[test]
    fn matrix_matches_direct_checks() {
        let u = enumerate_universe(5).unwrap();
        for kind in OrderKind::ALL {
            let m = u.matrix(kind);
            for (i, a) in u.members().iter().enumerate() {
                for (j, b) in u.members().iter().enumerate() {
                    assert_eq!(m.leq(i, j), leq(kind, a, b), "{kind} {a} {b}");
                }
            }
        }
    }
}
