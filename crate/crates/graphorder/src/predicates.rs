//! Structural oracles for the named families and relations.
//!
//! Nothing here evaluates formulas: every answer comes from degrees,
//! connectivity, components or embedding search. The null graph is treated
//! as connected, as a tree, a path, a star, a clique and a forest, and as a
//! member of `𝒩`. It is not a disjoint union of cycles.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{bits, CanonicalGraph, LabelledGraph};
use crate::named::{self, make_named, NamedFamily};
use crate::orders::is_subgraph;
use crate::Sequence;

/// The families with a structural membership test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyId {
    EmptyG,
    N,
    T,
    P,
    C,
    K,
    S,
    Forest,
    Pac,
    Soc,
    Conn,
    C1,
    C2,
    Bicycle,
    UnionOfCliques,
    Double3star,
}

impl FamilyId {
    pub const ALL: [FamilyId; 16] = [
        FamilyId::EmptyG,
        FamilyId::N,
        FamilyId::T,
        FamilyId::P,
        FamilyId::C,
        FamilyId::K,
        FamilyId::S,
        FamilyId::Forest,
        FamilyId::Pac,
        FamilyId::Soc,
        FamilyId::Conn,
        FamilyId::C1,
        FamilyId::C2,
        FamilyId::Bicycle,
        FamilyId::UnionOfCliques,
        FamilyId::Double3star,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::EmptyG => "EmptyG",
            FamilyId::N => "N",
            FamilyId::T => "T",
            FamilyId::P => "P",
            FamilyId::C => "C",
            FamilyId::K => "K",
            FamilyId::S => "S",
            FamilyId::Forest => "Forest",
            FamilyId::Pac => "Pac",
            FamilyId::Soc => "Soc",
            FamilyId::Conn => "Conn",
            FamilyId::C1 => "C1",
            FamilyId::C2 => "C2",
            FamilyId::Bicycle => "Bicycle",
            FamilyId::UnionOfCliques => "UnionOfCliques",
            FamilyId::Double3star => "Double3star",
        }
    }
}

impl FromStr for FamilyId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FamilyId::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Domain(format!("unknown family {s:?}")))
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn max_degree(g: &LabelledGraph) -> usize {
    (0..g.n()).map(|v| g.degree(v)).max().unwrap_or(0)
}

fn is_forest(g: &LabelledGraph) -> bool {
    g.edge_count() + g.component_masks().len() == g.n()
}

fn all_degree(g: &LabelledGraph, d: usize) -> bool {
    (0..g.n()).all(|v| g.degree(v) == d)
}

fn is_cycle(g: &LabelledGraph) -> bool {
    g.n() >= 3 && g.is_connected() && all_degree(g, 2)
}

/// Connected, unicyclic, with a unique leaf whose removal leaves a cycle.
fn is_cycle_pendant(g: &LabelledGraph) -> bool {
    if g.n() < 4 || !g.is_connected() || g.edge_count() != g.n() {
        return false;
    }
    let leaves: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) == 1).collect();
    leaves.len() == 1 && is_cycle(&g.delete_vertex(leaves[0]))
}

fn is_cycle_pendant2(g: &LabelledGraph) -> bool {
    if g.n() < 5 || !g.is_connected() || g.edge_count() != g.n() {
        return false;
    }
    let leaves: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) == 1).collect();
    if leaves.len() != 1 {
        return false;
    }
    let u = bits(g.neighbors(leaves[0])).next().expect("leaf has a neighbour");
    g.degree(u) == 2 && is_cycle_pendant(&g.delete_vertex(leaves[0]))
}

fn is_bicycle(g: &LabelledGraph) -> bool {
    if g.n() < 6 || !g.is_connected() || g.edge_count() != g.n() + 1 {
        return false;
    }
    g.edges().into_iter().any(|(u, v)| {
        let mut h = g.clone();
        h.remove_edge(u, v);
        let comps = h.component_masks();
        comps.len() == 2 && comps.iter().all(|&m| is_cycle(&h.induced(m)))
    })
}

fn components_all(g: &LabelledGraph, test: impl Fn(&LabelledGraph) -> bool) -> bool {
    g.component_masks().into_iter().all(|m| test(&g.induced(m)))
}

fn is_clique(g: &LabelledGraph) -> bool {
    let n = g.n();
    g.edge_count() == n * n.saturating_sub(1) / 2
}

/// Structural family membership.
pub fn in_family(g: &CanonicalGraph, f: FamilyId) -> bool {
    let r = g.repr();
    match f {
        FamilyId::EmptyG => r.n() == 0,
        FamilyId::N => r.edge_count() == 0,
        FamilyId::Conn => r.is_connected(),
        FamilyId::Forest => is_forest(r),
        FamilyId::T => r.is_connected() && is_forest(r),
        FamilyId::P => r.is_connected() && is_forest(r) && max_degree(r) <= 2,
        FamilyId::S => {
            r.is_connected() && is_forest(r) && (r.n() <= 2 || max_degree(r) == r.n() - 1)
        }
        FamilyId::C => is_cycle(r),
        FamilyId::K => is_clique(r),
        FamilyId::Pac => max_degree(r) <= 2,
        FamilyId::Soc => r.n() >= 1 && all_degree(r, 2),
        FamilyId::C1 => is_cycle_pendant(r),
        FamilyId::C2 => is_cycle_pendant2(r),
        FamilyId::Bicycle => is_bicycle(r),
        FamilyId::UnionOfCliques => components_all(r, is_clique),
        FamilyId::Double3star => g == &named::make_double3star(),
    }
}

/// The index `k` when `g = N_k`.
pub fn as_number(g: &CanonicalGraph) -> Option<usize> {
    (g.size() == 0).then_some(g.order())
}

/// `x` is a component of `y`.
pub fn comp(y: &CanonicalGraph, x: &CanonicalGraph) -> bool {
    y.components().contains(x)
}

/// `x` is a component of `y` not strictly below any other component.
pub fn maximal_comp(y: &CanonicalGraph, x: &CanonicalGraph) -> bool {
    let comps = y.components();
    comps.contains(x) && !comps.iter().any(|c| c != x && is_subgraph(x, c))
}

/// `x` is a component of `y` above every component.
pub fn maximum_comp(y: &CanonicalGraph, x: &CanonicalGraph) -> bool {
    let comps = y.components();
    comps.contains(x) && comps.iter().all(|c| is_subgraph(c, x))
}

/// `x` is a disjoint union of copies of the connected graph `y`.
pub fn mult(x: &CanonicalGraph, y: &CanonicalGraph) -> bool {
    if y.order() == 0 {
        return x.order() == 0;
    }
    y.is_connected() && x.components().iter().all(|c| c == y)
}

/// `x = n·y`, with `n = |x|/|y|` derived arithmetically.
pub fn mult_n(x: &CanonicalGraph, y: &CanonicalGraph, n: usize) -> bool {
    if y.order() == 0 {
        return x.order() == 0;
    }
    x.order() == n * y.order() && mult(x, y)
}

/// Largest number of vertex-disjoint copies of the connected graph `y` in `x`.
pub fn max_copies(x: &CanonicalGraph, y: &CanonicalGraph) -> Result<usize> {
    if y.order() == 0 || !y.is_connected() {
        return Err(Error::Domain(format!("max_copies needs a non-null connected pattern, got {y}")));
    }
    // Copies of a connected pattern never straddle components.
    let mut memo: HashMap<CanonicalGraph, usize> = HashMap::new();
    let mut total = 0;
    for c in x.components() {
        if let Some(&k) = memo.get(&c) {
            total += k;
            continue;
        }
        let k = copies_in_connected(c.repr(), y.repr());
        memo.insert(c, k);
        total += k;
    }
    Ok(total)
}

fn copies_in_connected(host: &LabelledGraph, pattern: &LabelledGraph) -> usize {
    let p = pattern.n();
    if p > host.n() {
        return 0;
    }
    // Vertex sets carrying a copy of the pattern.
    let mut sets: Vec<u64> = Vec::new();
    connected_subsets(host, p, |mask| {
        if crate::orders::find_embedding(pattern, &host.induced(mask), false).is_some() {
            sets.push(mask);
        }
    });
    let mut memo: HashMap<u64, usize> = HashMap::new();
    best_packing(crate::graph::full_mask(host.n()), &sets, &mut memo)
}

fn best_packing(avail: u64, sets: &[u64], memo: &mut HashMap<u64, usize>) -> usize {
    if avail == 0 {
        return 0;
    }
    if let Some(&v) = memo.get(&avail) {
        return v;
    }
    let v = avail.trailing_zeros();
    let rest = avail & !(1 << v);
    // Either the lowest available vertex stays unused, or a copy covers it.
    let mut best = best_packing(rest, sets, memo);
    for &s in sets {
        if s >> v & 1 == 1 && s & !avail == 0 {
            best = best.max(1 + best_packing(avail & !s, sets, memo));
        }
    }
    memo.insert(avail, best);
    best
}

/// Calls `f` on every connected vertex set of size `k`.
fn connected_subsets(g: &LabelledGraph, k: usize, mut f: impl FnMut(u64)) {
    fn grow(g: &LabelledGraph, k: usize, set: u64, frontier: u64, banned: u64, f: &mut dyn FnMut(u64)) {
        if set.count_ones() as usize == k {
            f(set);
            return;
        }
        let mut banned = banned;
        for v in bits(frontier & !banned) {
            let next = set | 1 << v;
            let nf = (frontier | g.neighbors(v)) & !next;
            grow(g, k, next, nf, banned, f);
            banned |= 1 << v;
        }
    }
    for s in 0..g.n() {
        // Sets whose least vertex is s.
        let banned = (1u64 << s) - 1;
        let start = 1u64 << s;
        grow(g, k, start, g.neighbors(s) & !banned, banned | start, &mut f);
    }
}

/// `(maxCopies(x, K_1), …, maxCopies(x, K_|x|))`.
pub fn make_sequence(x: &CanonicalGraph) -> Sequence {
    let entries = (1..=x.order())
        .map(|i| {
            let k = make_named(NamedFamily::K, i).expect("clique");
            max_copies(x, &k).expect("cliques are connected") as u64
        })
        .collect();
    Sequence::new(entries)
}

/// `z ≅ x ∪ y`, decided on component multisets.
pub fn disjoint_union_check(z: &CanonicalGraph, x: &CanonicalGraph, y: &CanonicalGraph) -> bool {
    let mut parts = x.components();
    parts.extend(y.components());
    parts.sort();
    parts == z.components()
}

/// `x` is connected and arises from the connected `y` by adding a pendant vertex.
pub fn add_vert(x: &CanonicalGraph, y: &CanonicalGraph) -> bool {
    if y.order() == 0 || !y.is_connected() || !x.is_connected() {
        return false;
    }
    if x.order() != y.order() + 1 || x.size() != y.size() + 1 {
        return false;
    }
    let r = x.repr();
    (0..r.n()).any(|v| r.degree(v) == 1 && &r.delete_vertex(v).canonicalize() == y)
}

fn need_increasing(i: usize, j: usize) -> Result<()> {
    if !(3 < i && i < j) {
        return Err(Error::Domain(format!("parameters ({i},{j}) must satisfy 3 < i < j")));
    }
    Ok(())
}

/// `x = C_i ∪ C_j`.
pub fn soc2(x: &CanonicalGraph, i: usize, j: usize) -> Result<bool> {
    Ok(x == &named::soc2_graph(i, j)?)
}

/// `x = C_{i→1} ∪ C_{j→1}`.
pub fn two_c1s(x: &CanonicalGraph, i: usize, j: usize) -> Result<bool> {
    need_increasing(i, j)?;
    Ok(x == &named::two_c1s_graph(i, j)?)
}

/// `x = C_i +_p C_j`.
pub fn pointed_cycle_sum(x: &CanonicalGraph, i: usize, j: usize) -> Result<bool> {
    Ok(x == &named::pointed_cycle_sum_graph(i, j)?)
}

/// `x` is `C_i` and `C_j` joined by an edge.
pub fn bicycle_of(x: &CanonicalGraph, i: usize, j: usize) -> Result<bool> {
    Ok(x == &named::bicycle_graph(i, j)?)
}

/// `x = CP4C(i, j)`.
pub fn cp4c(x: &CanonicalGraph, i: usize, j: usize) -> Result<bool> {
    need_increasing(i, j)?;
    Ok(x == &named::cp4c_graph(i, j)?)
}

/// The empty union at `n = 0` is the null graph.
fn sized_match(x: &CanonicalGraph, n: usize, expected_order: usize, build: fn(usize) -> Result<CanonicalGraph>) -> bool {
    if n == 0 {
        return x.order() == 0;
    }
    x.order() == expected_order && build(n).is_ok_and(|g| &g == x)
}

/// `x = C_{n+3} ∪ … ∪ C_{2n+2}`.
pub fn csum(x: &CanonicalGraph, n: usize) -> bool {
    sized_match(x, n, n * n + n * (n + 1) / 2 + 2 * n, named::csum_graph)
}

/// `x = P_{n+2} ∪ … ∪ P_{2n+1}`.
pub fn psum(x: &CanonicalGraph, n: usize) -> bool {
    sized_match(x, n, n * n + n * (n + 1) / 2 + n, named::psum_graph)
}

/// `x = C_{n+3→1} ∪ … ∪ C_{2n+2→1}`.
pub fn csum_hook(x: &CanonicalGraph, n: usize) -> bool {
    sized_match(x, n, n * n + n * (n + 1) / 2 + 3 * n, named::csum_hook_graph)
}

pub use named::stree;

/// `x, y ∈ 𝒩` and `|x| = |y|²`.
pub fn psi_sq(x: &CanonicalGraph, y: &CanonicalGraph) -> bool {
    matches!((as_number(x), as_number(y)), (Some(a), Some(b)) if a == b * b)
}

/// `x, y, z ∈ 𝒩` and `|x| + |y| = |z|`.
pub fn psi_plus(x: &CanonicalGraph, y: &CanonicalGraph, z: &CanonicalGraph) -> bool {
    matches!((as_number(x), as_number(y), as_number(z)), (Some(a), Some(b), Some(c)) if a + b == c)
}

/// `x, y, z ∈ 𝒩` and `|x| · |y| = |z|`.
pub fn psi_times(x: &CanonicalGraph, y: &CanonicalGraph, z: &CanonicalGraph) -> bool {
    matches!((as_number(x), as_number(y), as_number(z)), (Some(a), Some(b), Some(c)) if a * b == c)
}

pub fn union_of_cliques(x: &CanonicalGraph) -> bool {
    in_family(x, FamilyId::UnionOfCliques)
}

/// Replaces every component by the clique on its vertices.
pub fn extend_to_cliques(x: &CanonicalGraph) -> CanonicalGraph {
    let r = x.repr();
    let mut g = r.clone();
    for m in r.component_masks() {
        let vs: Vec<usize> = bits(m).collect();
        for (a, &u) in vs.iter().enumerate() {
            for &v in &vs[a + 1..] {
                if !g.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
    }
    g.canonicalize()
}

/// Number of components.
pub fn count_comps(x: &CanonicalGraph) -> usize {
    x.repr().component_masks().len()
}

/// Component count through clique extension and sequence arithmetic.
pub fn count_comps_by_sequence(x: &CanonicalGraph) -> Result<u64> {
    let seq = make_sequence(&extend_to_cliques(x));
    Ok(seq.f1_inv()?.sum())
}

/// Edge count of a connected graph.
pub fn count_edges_conn(x: &CanonicalGraph) -> Result<usize> {
    if !x.is_connected() {
        return Err(Error::Domain(format!("{x} is not connected")));
    }
    Ok(x.size())
}

/// Edge count.
pub fn count_edges(x: &CanonicalGraph) -> usize {
    x.size()
}

/// The chain `c_0 = g, c_1, …, c_m = K_|g|`, each step adding one edge.
pub fn count_edges_chain(g: &CanonicalGraph) -> Result<Vec<CanonicalGraph>> {
    if g.order() == 0 || !g.is_connected() {
        return Err(Error::Domain(format!("gadget needs a non-null connected graph, got {g}")));
    }
    let mut chain = vec![g.clone()];
    loop {
        let cur = chain.last().expect("non-empty").repr().clone();
        let n = cur.n();
        let missing = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).find(|&(u, v)| !cur.has_edge(u, v));
        let Some((u, v)) = missing else { break };
        let mut next = cur;
        next.add_edge(u, v);
        chain.push(next.canonicalize());
    }
    Ok(chain)
}

/// The disjoint union of [`count_edges_chain`].
pub fn build_count_edges_gadget(g: &CanonicalGraph) -> Result<CanonicalGraph> {
    let chain = count_edges_chain(g)?;
    CanonicalGraph::union_all(&chain)
}

/// `||g||` for connected `g` from the gadget's component count.
pub fn count_edges_conn_by_gadget(g: &CanonicalGraph) -> Result<usize> {
    let n = g.order();
    let comps = count_edges_chain(g)?.len();
    Ok(n * (n - 1) / 2 + 1 - comps)
}

/// `||g||` by the chain law: connect the `m₂` components with `m₂ − 1` edges,
/// count edges of the result through its gadget, subtract the added edges.
pub fn count_edges_by_gadget(g: &CanonicalGraph) -> Result<usize> {
    if g.order() == 0 {
        return Ok(0);
    }
    let r = g.repr();
    let comps = r.component_masks();
    let mut joined = r.clone();
    for w in comps.windows(2) {
        let a = w[0].trailing_zeros() as usize;
        let b = w[1].trailing_zeros() as usize;
        joined.add_edge(a, b);
    }
    let m2 = count_comps_by_sequence(g)? as usize;
    Ok(count_edges_conn_by_gadget(&joined.canonicalize())? + 1 - m2)
}
