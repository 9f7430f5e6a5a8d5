//! Named decision procedures that corpus entries are checked against.
//!
//! Every oracle is structural (components, degrees, embeddings) and never
//! consults a universe, so the same procedures serve as ground truth in
//! conformance runs and as stand-ins for helper definitions when a formula
//! is evaluated on graphs outside the universe.
//!
//! Numeric parameters are edgeless graphs; an oracle given a graph with an
//! edge where a number is expected answers `false`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fo::eval::Oracle;
use crate::graph::CanonicalGraph;
use crate::named;
use crate::notation::parse_graph;
use crate::opres;
use crate::orders::{cover_kind_s, is_induced_subgraph, is_subgraph, CoverKindS};
use crate::predicates::{self as p, as_number, in_family, FamilyId};

/// An oracle and the number of arguments it takes.
#[derive(Clone)]
pub struct Entry {
    pub arity: usize,
    pub decide: Oracle,
}

impl std::fmt::Debug for Entry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Entry {{ arity: {} }}", self.arity)
    }
}

fn entry(arity: usize, f: impl Fn(&[CanonicalGraph]) -> bool + Send + Sync + 'static) -> Entry {
    Entry { arity, decide: Arc::new(f) }
}

/// Numbers of the arguments from position 1 on, all of which must be in 𝒩.
fn nums<const K: usize>(a: &[CanonicalGraph]) -> Option<[usize; K]> {
    let mut out = [0; K];
    for (k, slot) in out.iter_mut().enumerate() {
        *slot = as_number(&a[k + 1])?;
    }
    Some(out)
}

fn lt_s(x: &CanonicalGraph, y: &CanonicalGraph) -> bool {
    x != y && is_subgraph(x, y)
}

/// `x` is a component of `y` and no connected induced subgraph of `y` lies
/// strictly above it.
pub fn maximal_comp_induced(y: &CanonicalGraph, x: &CanonicalGraph) -> bool {
    let comps = y.components();
    comps.contains(x) && !comps.iter().any(|c| c != x && is_induced_subgraph(x, c))
}

/// A bicycle whose two cycles have different lengths.
pub fn bicycle_unequal(x: &CanonicalGraph) -> bool {
    let n = x.order();
    in_family(x, FamilyId::Bicycle)
        && (3..n).any(|i| n - i > i && p::bicycle_of(x, i, n - i).unwrap_or(false))
}

/// The null graph, with no vertices and no indicator cycles, is taken as
/// the o-presentation of itself, as `csum` and `psum` take it as the sum at
/// `n = 0`.
fn null_pair(a: &[CanonicalGraph]) -> bool {
    a[0].order() == 0 && a[1].order() == 0
}

/// The minimal edge counting gadget of `g`: components `g = c_0, …, c_m =
/// K_|g|`, one for each edge count, each an edge cover of the previous one.
pub fn is_count_edges_gadget(h: &CanonicalGraph, g: &CanonicalGraph) -> bool {
    let n = g.order();
    if n == 0 || !g.is_connected() {
        return false;
    }
    let mut comps = h.components();
    comps.sort_by_key(|c| c.size());
    let top = n * (n - 1) / 2;
    comps.len() == top - g.size() + 1
        && comps.first() == Some(g)
        && comps.iter().enumerate().all(|(k, c)| c.order() == n && c.size() == g.size() + k)
        && comps.windows(2).all(|w| is_subgraph(&w[0], &w[1]))
}

/// The gadget conditions without minimality: `g` is a component, every
/// component has `|g|` vertices and lies above `g`, and every component
/// other than a clique has an edge cover among the components.
pub fn is_count_edges_gadget_pre(h: &CanonicalGraph, g: &CanonicalGraph) -> bool {
    if g.order() == 0 || !g.is_connected() {
        return false;
    }
    let comps = h.components();
    comps.contains(g)
        && comps.iter().all(|c| {
            c.order() == g.order()
                && is_subgraph(g, c)
                && (in_family(c, FamilyId::K)
                    || comps.iter().any(|d| cover_kind_s(c, d) == CoverKindS::EdgeCover))
        })
}

/// The packed copy-count sequence of a union of cliques.
pub fn make_sequence_holds(x: &CanonicalGraph, s: &CanonicalGraph) -> bool {
    let Some(s) = as_number(s) else { return false };
    p::union_of_cliques(x) && p::make_sequence(x).packed().is_ok_and(|v| v == s as u64)
}

/// Looks up an oracle by its corpus name.
///
/// Besides the fixed names, `equals(<graph>)` holds of exactly the graph
/// written in [`crate::notation`], and every [`FamilyId`] name is a unary
/// family test.
pub fn lookup(name: &str) -> Result<Entry> {
    if let Some(text) = name.strip_prefix("equals(").and_then(|r| r.strip_suffix(')')) {
        let target = parse_graph(text)?;
        return Ok(entry(1, move |a| a[0] == target));
    }
    if let Ok(f) = name.parse::<FamilyId>() {
        return Ok(entry(1, move |a| in_family(&a[0], f)));
    }
    Ok(match name {
        "sameCard" => entry(2, |a| a[0].order() == a[1].order()),
        "sameSize" => entry(2, |a| a[0].size() == a[1].size()),
        "leq_s" => entry(2, |a| is_subgraph(&a[0], &a[1])),
        "lt_s" => entry(2, |a| lt_s(&a[0], &a[1])),
        "cover_s" => entry(2, |a| cover_kind_s(&a[0], &a[1]) != CoverKindS::NotCover),
        "cover_se" => entry(2, |a| cover_kind_s(&a[0], &a[1]) == CoverKindS::EdgeCover),
        "cover_sv" => entry(2, |a| cover_kind_s(&a[0], &a[1]) == CoverKindS::VertexCover),
        "maximalComp_s" => entry(2, |a| p::maximal_comp(&a[0], &a[1])),
        "maximalComp_i" => entry(2, |a| maximal_comp_induced(&a[0], &a[1])),
        "maximumComp" => entry(2, |a| p::maximum_comp(&a[0], &a[1])),
        "comp" => entry(2, |a| p::comp(&a[0], &a[1])),
        "addVert" => entry(2, |a| p::add_vert(&a[0], &a[1])),
        "mult" => entry(2, |a| p::mult(&a[0], &a[1])),
        "multN" => entry(3, |a| as_number(&a[2]).is_some_and(|n| p::mult_n(&a[0], &a[1], n))),
        "maxCopies" => entry(3, |a| {
            as_number(&a[2]).is_some_and(|n| p::max_copies(&a[0], &a[1]).is_ok_and(|c| c == n))
        }),
        "disjointUnion" => entry(3, |a| p::disjoint_union_check(&a[0], &a[1], &a[2])),
        "twoC1s" => entry(3, |a| nums::<2>(a).is_some_and(|[i, j]| p::two_c1s(&a[0], i, j).unwrap_or(false))),
        "cp4c" => entry(3, |a| nums::<2>(a).is_some_and(|[i, j]| p::cp4c(&a[0], i, j).unwrap_or(false))),
        "soc2" => entry(3, |a| nums::<2>(a).is_some_and(|[i, j]| p::soc2(&a[0], i, j).unwrap_or(false))),
        "bicycleOf" => entry(3, |a| nums::<2>(a).is_some_and(|[i, j]| p::bicycle_of(&a[0], i, j).unwrap_or(false))),
        "pointedCycleSum" => entry(3, |a| {
            nums::<2>(a).is_some_and(|[i, j]| p::pointed_cycle_sum(&a[0], i, j).unwrap_or(false))
        }),
        "bicycleUnequal" => entry(1, |a| bicycle_unequal(&a[0])),
        "csum" => entry(2, |a| nums::<1>(a).is_some_and(|[n]| p::csum(&a[0], n))),
        "psum" => entry(2, |a| nums::<1>(a).is_some_and(|[n]| p::psum(&a[0], n))),
        "csumHook" => entry(2, |a| nums::<1>(a).is_some_and(|[n]| p::csum_hook(&a[0], n))),
        "stree" => entry(2, |a| nums::<1>(a).is_some_and(|[n]| named::stree(n).is_ok_and(|t| t == a[0]))),
        "Gt" => entry(1, |a| a[0].order() == 0 || opres::recognize_opres(&a[0]).is_some()),
        "psiOpres" => entry(2, |a| null_pair(a) || opres::psi_opres(&a[0], &a[1])),
        "constructFromCycles" => entry(2, |a| null_pair(a) || opres::construct_from_cycles(&a[0], &a[1])),
        "psiEdgeOp" => entry(3, |a| nums::<2>(a).is_some_and(|[i, j]| opres::psi_edge_op(&a[0], i, j))),
        "psiSq" => entry(2, |a| p::psi_sq(&a[0], &a[1])),
        "psiPlus" => entry(3, |a| p::psi_plus(&a[0], &a[1], &a[2])),
        "psiTimes" => entry(3, |a| p::psi_times(&a[0], &a[1], &a[2])),
        "extendToCliques" => entry(2, |a| p::extend_to_cliques(&a[1]) == a[0]),
        "countEdgesGadgetP" => entry(2, |a| is_count_edges_gadget_pre(&a[0], &a[1])),
        "countEdgesGadget" => entry(2, |a| is_count_edges_gadget(&a[0], &a[1])),
        "countEdgesConn" => entry(2, |a| a[0].is_connected() && as_number(&a[1]) == Some(a[0].size())),
        "countComps" => entry(2, |a| as_number(&a[1]) == Some(p::count_comps(&a[0]))),
        "countEdges" => entry(2, |a| as_number(&a[1]) == Some(a[0].size())),
        "makeSequence" => entry(2, |a| make_sequence_holds(&a[0], &a[1])),
        _ => return Err(Error::Resolution(format!("no oracle named {name}"))),
    })
}

/// Names accepted by [`lookup`], not counting `equals(…)` and family names.
pub const NAMES: &[&str] = &[
    "sameCard",
    "sameSize",
    "leq_s",
    "lt_s",
    "cover_s",
    "cover_se",
    "cover_sv",
    "maximalComp_s",
    "maximalComp_i",
    "maximumComp",
    "comp",
    "addVert",
    "mult",
    "multN",
    "maxCopies",
    "disjointUnion",
    "twoC1s",
    "cp4c",
    "soc2",
    "bicycleOf",
    "pointedCycleSum",
    "bicycleUnequal",
    "csum",
    "psum",
    "csumHook",
    "stree",
    "Gt",
    "psiOpres",
    "constructFromCycles",
    "psiEdgeOp",
    "psiSq",
    "psiPlus",
    "psiTimes",
    "extendToCliques",
    "countEdgesGadgetP",
    "countEdgesGadget",
    "countEdgesConn",
    "countComps",
    "countEdges",
    "makeSequence",
];
