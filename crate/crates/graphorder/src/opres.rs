//! O-presentations: a labelled graph on `n` vertices with the cycle
//! `C_{n+i+2}` hung off vertex `v_i` by a single edge.

use crate::error::{Error, Result};
use crate::graph::{bits, CanonicalGraph, LabelledGraph, MAX_VERTICES};
use crate::named::{cp4c_graph, soc2_graph};
use crate::orders::is_subgraph;

/// A recognized o-presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OPresentation {
    /// The o-presentation itself.
    pub total: CanonicalGraph,
    pub base_order: usize,
    /// Base vertex `i - 1` carries label `v_i`.
    pub labelled_base: LabelledGraph,
    /// `cycle_attach[i - 1]` is the vertex of `total.repr()` joined to `C_{n+i+2}`.
    pub cycle_attach: Vec<usize>,
}

/// `n² + n(n+1)/2 + 3n`.
pub fn opres_order(n: usize) -> usize {
    n * n + n * (n + 1) / 2 + 3 * n
}

/// Sizes `n+3 … 2n+2` of the indicator cycles of `g`, `n = |g|`.
pub fn indicator_cycles(g: &CanonicalGraph) -> Result<Vec<usize>> {
    let n = g.order();
    if n == 0 {
        return Err(Error::Domain("the null graph has no indicator cycles".into()));
    }
    Ok((1..=n).map(|i| n + i + 2).collect())
}

/// The labelled o-presentation of `g`; cycle vertices follow the base.
fn build_labelled(g: &LabelledGraph) -> Result<LabelledGraph> {
    let n = g.n();
    if n == 0 {
        return Err(Error::Domain("the null graph has no o-presentation".into()));
    }
    let total = opres_order(n);
    if total > MAX_VERTICES {
        return Err(Error::Resource(format!(
            "o-presentation of a {n}-vertex graph needs {total} vertices"
        )));
    }
    let mut h = g.clone();
    for i in 1..=n {
        let len = n + i + 2;
        let first = h.n();
        for _ in 0..len {
            h.add_vertex()?;
        }
        for k in 0..len {
            h.add_edge(first + k, first + (k + 1) % len);
        }
        h.add_edge(i - 1, first);
    }
    Ok(h)
}

/// Builds the o-presentation of the labelling of `g` given by its vertex order.
pub fn build_opres(g: &LabelledGraph) -> Result<OPresentation> {
    let total = build_labelled(g)?.canonicalize();
    let op = recognize_opres(&total)
        .expect("a constructed o-presentation is recognized");
    debug_assert_eq!(&op.labelled_base, g);
    Ok(op)
}

/// Base order `n` with `n² + n(n+1)/2 + 3n = order`.
fn solve_base_order(order: usize) -> Option<usize> {
    (1..).take_while(|&n| opres_order(n) <= order).find(|&n| opres_order(n) == order)
}

fn is_bridge(g: &LabelledGraph, u: usize, v: usize) -> bool {
    let mut h = g.clone();
    h.remove_edge(u, v);
    // Walk from u without the edge.
    let mut seen = 1u64 << u;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        for w in bits(frontier) {
            next |= h.neighbors(w);
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen >> v & 1 == 0
}

/// Decodes `x` when it is an o-presentation.
pub fn recognize_opres(x: &CanonicalGraph) -> Option<OPresentation> {
    let n = solve_base_order(x.order())?;
    let r = x.repr();
    let mut core = r.clone();
    for (u, v) in r.edges() {
        if is_bridge(r, u, v) {
            core.remove_edge(u, v);
        }
    }
    // Indicator cycles are the bridgeless pieces with at least n + 3 vertices.
    let mut cycle_of_len: Vec<Option<u64>> = vec![None; n];
    let mut cycle_vertices = 0u64;
    for m in core.component_masks() {
        let k = m.count_ones() as usize;
        if k < n + 3 {
            continue;
        }
        let piece = core.induced(m);
        if k > 2 * n + 2 || !piece.is_connected() || (0..k).any(|v| piece.degree(v) != 2) {
            return None;
        }
        let slot = &mut cycle_of_len[k - n - 3];
        if slot.is_some() {
            return None;
        }
        *slot = Some(m);
        cycle_vertices |= m;
    }
    let masks: Vec<u64> = cycle_of_len.into_iter().collect::<Option<_>>()?;
    let base_mask = crate::graph::full_mask(r.n()) & !cycle_vertices;
    let base: Vec<usize> = bits(base_mask).collect();
    debug_assert_eq!(base.len(), n);

    let mut attach = Vec::with_capacity(n);
    for &m in &masks {
        // Exactly one edge leaves the cycle and it ends in the base.
        let mut out = Vec::new();
        for v in bits(m) {
            for w in bits(r.neighbors(v) & !m) {
                out.push(w);
            }
        }
        if out.len() != 1 || base_mask >> out[0] & 1 == 0 {
            return None;
        }
        attach.push(out[0]);
    }
    let mut used = 0u64;
    for &a in &attach {
        if used >> a & 1 == 1 {
            return None;
        }
        used |= 1 << a;
    }
    let mut labelled = LabelledGraph::empty(n).ok()?;
    for i in 0..n {
        for j in i + 1..n {
            if r.has_edge(attach[i], attach[j]) {
                labelled.add_edge(i, j);
            }
        }
    }
    debug_assert!(base.iter().all(|v| attach.contains(v)));
    Some(OPresentation {
        total: x.clone(),
        base_order: n,
        labelled_base: labelled,
        cycle_attach: attach,
    })
}

/// `y` is an o-presentation of `x`.
pub fn psi_opres(y: &CanonicalGraph, x: &CanonicalGraph) -> bool {
    recognize_opres(y).is_some_and(|op| &op.labelled_base.canonicalize() == x)
}

/// `x` is an o-presentation whose induced labelling has the edge `v_i v_j`.
pub fn psi_edge_op(x: &CanonicalGraph, i: usize, j: usize) -> bool {
    let Some(op) = recognize_opres(x) else { return false };
    let n = op.base_order;
    if i == j || !(1..=n).contains(&i) || !(1..=n).contains(&j) {
        return false;
    }
    op.labelled_base.has_edge(i - 1, j - 1)
}

/// The gadget route: `CP4C(m+i+2, m+j+2) ≤_s x` for an o-presentation `x`.
pub fn psi_edge_op_by_gadget(x: &CanonicalGraph, i: usize, j: usize) -> bool {
    let Some(op) = recognize_opres(x) else { return false };
    let m = op.base_order;
    if i == j || !(1..=m).contains(&i) || !(1..=m).contains(&j) {
        return false;
    }
    let (a, b) = (i.min(j), i.max(j));
    cp4c_graph(m + a + 2, m + b + 2).is_ok_and(|gadget| is_subgraph(&gadget, x))
}

/// `x` is `y` plus its indicator cycles plus exactly `|y|` further edges.
pub fn construct_from_cycles(x: &CanonicalGraph, y: &CanonicalGraph) -> bool {
    let n = y.order();
    if n == 0 {
        return false;
    }
    if x.order() != opres_order(n) {
        return false;
    }
    let cycles: usize = (1..=n).map(|i| n + i + 2).sum();
    if x.size() != y.size() + cycles + n {
        return false;
    }
    let Ok(z) = indicator_union(n).and_then(|c| c.disjoint_union(y)) else {
        return false;
    };
    is_subgraph(&z, x)
}

/// `⋃_{i=1}^n C_{n+i+2}`.
fn indicator_union(n: usize) -> Result<CanonicalGraph> {
    if n == 1 {
        return crate::named::make_named(crate::named::NamedFamily::C, 4);
    }
    let mut g = soc2_graph(n + 3, n + 4)?;
    for i in 3..=n {
        g = g.disjoint_union(&crate::named::make_named(crate::named::NamedFamily::C, n + i + 2)?)?;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::{make_named, NamedFamily::*};

    /// The labelled star of the figure: centre `v_1`, leaves `v_2, v_3, v_4`.
    fn star() -> LabelledGraph {
        LabelledGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn cycles_and_orders() {
        assert_eq!(indicator_cycles(&make_named(S, 4).unwrap()).unwrap(), vec![7, 8, 9, 10]);
        assert_eq!(indicator_cycles(&make_named(N, 1).unwrap()).unwrap(), vec![4]);
        assert!(indicator_cycles(&CanonicalGraph::null()).is_err());
        assert_eq!(opres_order(4), 38);
    }

    #[test]
    fn star_presentation() {
        let op = build_opres(&star()).unwrap();
        assert_eq!(op.total.order(), 38);
        assert_eq!(op.base_order, 4);
        assert!(psi_opres(&op.total, &make_named(S, 4).unwrap()));
        assert!(!psi_opres(&op.total, &make_named(P, 4).unwrap()));
        assert!(psi_edge_op(&op.total, 1, 2));
        assert!(!psi_edge_op(&op.total, 2, 3));
        assert!(psi_edge_op_by_gadget(&op.total, 1, 2));
        assert!(!psi_edge_op_by_gadget(&op.total, 2, 3));
        assert!(construct_from_cycles(&op.total, &make_named(S, 4).unwrap()));
    }

    #[test]
    fn single_vertex() {
        let op = build_opres(&LabelledGraph::empty(1).unwrap()).unwrap();
        assert_eq!(op.total, make_named(C1, 4).unwrap());
        assert!(psi_opres(&op.total, &make_named(N, 1).unwrap()));
        assert!(construct_from_cycles(&op.total, &make_named(N, 1).unwrap()));
    }

    #[test]
    fn rejections() {
        assert!(recognize_opres(&make_named(C, 7).unwrap()).is_none());
        let mut h = build_labelled(&star()).unwrap();
        h.remove_edge(1, 4 + 7);
        assert!(recognize_opres(&h.canonicalize()).is_none());
        let z = indicator_union(2).unwrap().disjoint_union(&make_named(K, 2).unwrap()).unwrap();
        assert!(!construct_from_cycles(&z, &make_named(K, 2).unwrap()));
        let two = build_opres(&LabelledGraph::empty(2).unwrap()).unwrap();
        assert!(!psi_edge_op(&two.total, 1, 2));
        assert!(!psi_edge_op(&two.total, 1, 1));
    }
}
