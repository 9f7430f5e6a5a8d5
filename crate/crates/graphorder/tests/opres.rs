//! O-presentations: construction, decoding and the edge predicate.

mod common;

use graphorder::graph::LabelledGraph;
use graphorder::named::cp4c_graph;
use graphorder::notation::parse_graph;
use graphorder::opres::*;
use graphorder::orders::is_subgraph;
use graphorder::universe::labelled_graphs;
use graphorder::{enumerate_universe, CanonicalGraph};

fn g(s: &str) -> CanonicalGraph {
    parse_graph(s).unwrap()
}

/// The star with centre `v1` and leaves `v2, v3, v4`.
fn labelled_star() -> LabelledGraph {
    LabelledGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap()
}

#[test]
fn examples() {
    assert_eq!(indicator_cycles(&g("S4")).unwrap(), vec![7, 8, 9, 10]);
    assert_eq!(indicator_cycles(&g("N1")).unwrap(), vec![4]);
    assert_eq!(indicator_cycles(&g("P3")).unwrap(), vec![6, 7, 8]);
    assert!(indicator_cycles(&g("empty")).is_err());

    let star = build_opres(&labelled_star()).unwrap();
    assert_eq!(star.total.order(), 38);
    assert_eq!(star.base_order, 4);
    let back = recognize_opres(&star.total).unwrap();
    assert_eq!(back.labelled_base, labelled_star());
    assert!(psi_opres(&star.total, &g("S4")));
    assert!(!psi_opres(&star.total, &g("P4")));
    assert!(psi_edge_op(&star.total, 1, 2));
    assert!(!psi_edge_op(&star.total, 2, 3));
    assert!(!psi_edge_op(&star.total, 1, 1));
    assert!(!psi_edge_op(&star.total, 1, 5));
    assert!(construct_from_cycles(&star.total, &g("S4")));
    assert!(!construct_from_cycles(&g("S4 + csum(4)"), &g("S4")));

    let one = build_opres(g("N1").repr()).unwrap();
    assert_eq!(one.total, g("C1_4"));
    assert!(psi_opres(&g("C1_4"), &g("N1")));
    assert!(construct_from_cycles(&one.total, &g("N1")));

    let two = build_opres(g("N2").repr()).unwrap();
    assert!(!psi_edge_op(&two.total, 1, 2));
    assert!(recognize_opres(&g("C7")).is_none());
}

#[test]
fn missing_attachment_edge_is_rejected() {
    let base = labelled_star();
    let n = base.n();
    let mut x = LabelledGraph::empty(opres_order(n)).unwrap();
    for (u, v) in base.edges() {
        x.add_edge(u, v);
    }
    let mut next = n;
    for i in 1..=n {
        let k = n + i + 2;
        for t in 0..k {
            x.add_edge(next + t, next + (t + 1) % k);
        }
        if i < n {
            x.add_edge(i - 1, next);
        }
        next += k;
    }
    let x = x.canonicalize();
    assert_eq!(x.order(), opres_order(n));
    assert!(recognize_opres(&x).is_none());
    assert!(!psi_opres(&x, &g("S4")));
}

#[test]
fn cardinality_law() {
    for n in 1..=5 {
        let expected = n * n + n * (n + 1) / 2 + 3 * n;
        assert_eq!(opres_order(n), expected);
        for base in [g(&format!("N{n}")), g(&format!("K{n}")), g(&format!("P{n}"))] {
            assert_eq!(build_opres(base.repr()).unwrap().total.order(), expected);
        }
    }
    assert_eq!(g("opres(S4)").order(), 38);
}

#[test]
fn every_small_labelling_roundtrips() {
    for n in 1..=3 {
        for base in labelled_graphs(n) {
            let op = build_opres(&base).unwrap();
            let back = recognize_opres(&op.total).expect("recognised");
            assert_eq!(back.base_order, n);
            assert_eq!(back.labelled_base, base);
            assert_eq!(op.labelled_base, base);
            assert!(psi_opres(&op.total, &base.canonicalize()));
            for i in 1..=n + 1 {
                for j in 1..=n + 1 {
                    let edge = i != j && i <= n && j <= n && base.has_edge(i - 1, j - 1);
                    assert_eq!(psi_edge_op(&op.total, i, j), edge, "{base:?} {i} {j}");
                    assert_eq!(psi_edge_op_by_gadget(&op.total, i, j), edge);
                }
            }
        }
    }
}

#[test]
fn edge_predicate_is_a_cp4c_subgraph() {
    for n in 2..=3 {
        for base in labelled_graphs(n) {
            let op = build_opres(&base).unwrap();
            for i in 1..=n {
                for j in i + 1..=n {
                    let gadget = cp4c_graph(n + i + 2, n + j + 2).unwrap();
                    assert_eq!(is_subgraph(&gadget, &op.total), psi_edge_op(&op.total, i, j));
                }
            }
        }
    }
}

#[test]
fn decoding_separates_automorphism_orbits() {
    let u = enumerate_universe(4).unwrap();
    for base in u.members().iter().filter(|x| x.order() > 0) {
        let n = base.order();
        let labelled: Vec<LabelledGraph> = common::permutations(n).iter().map(|p| base.repr().permuted(p)).collect();
        let totals: Vec<CanonicalGraph> = labelled.iter().map(|l| build_opres(l).unwrap().total).collect();
        for a in 0..labelled.len() {
            for b in 0..labelled.len() {
                assert_eq!(totals[a] == totals[b], labelled[a] == labelled[b], "{base}");
            }
        }
    }
}
