//! The three graph orders on small universes, checked against definitions
//! rather than against each other where possible.

use std::collections::BTreeSet;

use graphorder::harness::induced_hasse_reference;
use graphorder::named::{make_named, NamedFamily};
use graphorder::notation::parse_graph;
use graphorder::orders::{
    cover_kind_s, cover_n, covers, is_induced_subgraph, leq, same_card, same_size, subgraph_via_minor, CoverKindS,
};
use graphorder::{enumerate_universe, CanonicalGraph, OrderKind};

const KINDS: [OrderKind; 3] = [OrderKind::Induced, OrderKind::Subgraph, OrderKind::Minor];

fn g(s: &str) -> CanonicalGraph {
    parse_graph(s).unwrap()
}

#[test]
fn examples() {
    assert!(leq(OrderKind::Induced, &g("K2"), &g("P3")));
    assert!(!leq(OrderKind::Induced, &g("P3"), &g("K3")));
    assert!(leq(OrderKind::Subgraph, &g("P3"), &g("K3")));
    assert!(leq(OrderKind::Minor, &g("K3"), &g("C4")));
    assert!(!leq(OrderKind::Subgraph, &g("K3"), &g("C4")));

    let u3 = enumerate_universe(3).unwrap();
    assert!(covers(OrderKind::Induced, &g("K2"), &g("P3"), &u3).unwrap());
    assert!(covers(OrderKind::Subgraph, &g("N2"), &g("K2"), &u3).unwrap());
    assert!(!covers(OrderKind::Induced, &g("N1"), &g("K3"), &u3).unwrap());
    assert!(covers(OrderKind::Induced, &g("K2"), &g("K4"), &u3).is_err());

    assert_eq!(cover_kind_s(&g("N2"), &g("K2")), CoverKindS::EdgeCover);
    assert_eq!(cover_kind_s(&g("K2"), &g("K2 + N1")), CoverKindS::VertexCover);
    assert_eq!(cover_kind_s(&g("K2"), &g("K3")), CoverKindS::NotCover);

    assert!(cover_n(OrderKind::Induced, &g("K2"), &g("P3"), 1, &u3).unwrap());
    assert!(cover_n(OrderKind::Induced, &g("N1"), &g("P3"), 2, &u3).unwrap());
    assert!(cover_n(OrderKind::Induced, &g("P3"), &g("P3"), 0, &u3).unwrap());
    assert!(!cover_n(OrderKind::Induced, &g("N1"), &g("P3"), 1, &u3).unwrap());

    assert!(same_card(&g("P3"), &g("K3")) && !same_size(&g("P3"), &g("K3")));
    assert!(same_card(&g("C4"), &g("K3 + N1")) && !same_size(&g("C4"), &g("K3 + N1")));
    assert!(same_card(&g("P4"), &g("S4")) && same_size(&g("P4"), &g("S4")));

    let u4 = enumerate_universe(4).unwrap();
    assert!(subgraph_via_minor(&g("P3"), &g("K3"), &u4).unwrap());
    assert!(!subgraph_via_minor(&g("K3"), &g("C4"), &u4).unwrap());
    assert!(subgraph_via_minor(&g("C4"), &g("C4"), &u4).unwrap());
}

#[test]
fn partial_order_axioms_and_inclusions_on_u6() {
    let u = enumerate_universe(6).unwrap();
    let n = u.len();
    let [mi, ms, mm] = KINDS.map(|k| u.matrix(k));
    for m in [mi, ms, mm] {
        for a in 0..n {
            assert!(m.leq(a, a));
            for b in 0..n {
                if a != b {
                    assert!(!(m.leq(a, b) && m.leq(b, a)), "antisymmetry {:?}", m.kind());
                }
                if !m.leq(a, b) {
                    continue;
                }
                for c in 0..n {
                    if m.leq(b, c) {
                        assert!(m.leq(a, c), "transitivity {:?}", m.kind());
                    }
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            if mi.leq(a, b) {
                assert!(ms.leq(a, b));
            }
            if ms.leq(a, b) {
                assert!(mm.leq(a, b));
            }
            if mi.covers(a, b) {
                assert!(ms.leq(a, b));
            }
        }
    }
}

#[test]
fn matrices_agree_with_direct_search() {
    let u = enumerate_universe(5).unwrap();
    for kind in KINDS {
        let m = u.matrix(kind);
        for (i, a) in u.members().iter().enumerate().step_by(3) {
            for (j, b) in u.members().iter().enumerate() {
                assert_eq!(m.leq(i, j), leq(kind, a, b), "{kind:?} {a} {b}");
            }
        }
    }
}

/// Cover relation from the definition: nothing strictly in between.
#[test]
fn covers_match_definition_on_u5() {
    let u = enumerate_universe(5).unwrap();
    let n = u.len();
    for kind in KINDS {
        let m = u.matrix(kind);
        for a in 0..n {
            for b in 0..n {
                let between = (0..n).any(|z| z != a && z != b && m.leq(a, z) && m.leq(z, b));
                assert_eq!(m.covers(a, b), a != b && m.leq(a, b) && !between);
            }
        }
    }
}

#[test]
fn induced_hasse_diagram_of_u4() {
    let u = enumerate_universe(4).unwrap();
    let m = u.matrix(OrderKind::Induced);
    let computed: BTreeSet<(CanonicalGraph, CanonicalGraph)> = (0..u.len())
        .flat_map(|j| m.lower_covers(j).map(move |i| (i, j)).collect::<Vec<_>>())
        .map(|(i, j)| (u.get(i).clone(), u.get(j).clone()))
        .collect();
    let drawn: BTreeSet<_> = induced_hasse_reference().into_iter().collect();
    assert_eq!(computed, drawn);
}

#[test]
fn same_size_or_card_makes_subgraph_and_minor_coincide_on_u6() {
    let u = enumerate_universe(6).unwrap();
    let (ms, mm) = (u.matrix(OrderKind::Subgraph), u.matrix(OrderKind::Minor));
    let mut qualifying = 0;
    for (i, a) in u.members().iter().enumerate() {
        for (j, b) in u.members().iter().enumerate() {
            if same_size(a, b) || same_card(a, b) {
                qualifying += 1;
                assert_eq!(ms.leq(i, j), mm.leq(i, j), "{a} {b}");
            }
        }
    }
    assert!(qualifying > 0);
}

#[test]
fn subgraph_via_minor_matches_subgraph_order_on_u6() {
    let u = enumerate_universe(6).unwrap();
    let ms = u.matrix(OrderKind::Subgraph);
    for (i, a) in u.members().iter().enumerate() {
        for (j, b) in u.members().iter().enumerate() {
            assert_eq!(subgraph_via_minor(a, b, &u).unwrap(), ms.leq(i, j), "{a} {b}");
        }
    }
}

#[test]
fn edgeless_graphs_form_a_chain_on_u8() {
    let ns: Vec<CanonicalGraph> = (0..=8).map(|k| make_named(NamedFamily::N, k).unwrap()).collect();
    for kind in KINDS {
        for (j, a) in ns.iter().enumerate() {
            for (k, b) in ns.iter().enumerate() {
                assert_eq!(leq(kind, a, b), j <= k);
            }
        }
    }
}

#[test]
fn complement_is_an_automorphism_of_the_induced_order() {
    let u = enumerate_universe(5).unwrap();
    for a in u.members() {
        let ac = a.complement();
        for b in u.members() {
            assert_eq!(is_induced_subgraph(a, b), is_induced_subgraph(&ac, &b.complement()));
        }
    }
}
