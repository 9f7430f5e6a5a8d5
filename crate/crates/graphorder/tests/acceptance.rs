//! Acceptance criteria, one line each.
//!
//! Runs without the libtest harness so the PASS/FAIL lines always show.

mod common;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use graphorder::encodings::{decode, lift_predicate, phi_length, procedures, un};
use graphorder::fo::arith::translate_arith;
use graphorder::fo::env::{builtin_corpus, Status};
use graphorder::fo::eval::Evaluator;
use graphorder::harness::{induced_hasse_reference, plan, run_builtin_suite, universe_len, Outcome, Profile};
use graphorder::notation::parse_graph;
use graphorder::opres::{build_opres, opres_order, psi_edge_op, recognize_opres};
use graphorder::orders::{same_card, same_size, subgraph_via_minor};
use graphorder::predicates::{build_count_edges_gadget, count_comps, count_edges, count_edges_chain, in_family, FamilyId};
use graphorder::universe::labelled_graphs;
use graphorder::{enumerate_universe, CanonicalGraph, OrderKind, Sequence};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Check = fn() -> String;

fn within(limit: Duration, start: Instant) -> String {
    let t = start.elapsed();
    assert!(t < limit, "took {t:.1?}, limit {limit:?}");
    format!("{:.1}s", t.as_secs_f64())
}

fn g(s: &str) -> CanonicalGraph {
    parse_graph(s).unwrap()
}

fn enumeration() -> String {
    let start = Instant::now();
    let expected = [1usize, 1, 2, 4, 11, 34, 156, 1044];
    let u = enumerate_universe(7).unwrap();
    assert_eq!(u.counts_by_order(), expected.to_vec());
    let mut seen = HashSet::new();
    for x in u.members() {
        assert!(seen.insert(x.clone()));
        assert_eq!(&x.repr().canonicalize(), x);
    }
    for n in 0..=6 {
        let perms = common::permutations(n);
        let classes: HashSet<Vec<bool>> = labelled_graphs(n).map(|g| common::brute_min_string(&g, &perms)).collect();
        assert_eq!(classes.len(), expected[n], "brute force at n = {n}");
    }
    within(Duration::from_secs(60), start)
}

fn orders() -> String {
    let start = Instant::now();
    let u = enumerate_universe(6).unwrap();
    let n = u.len();
    let [mi, ms, mm] = [OrderKind::Induced, OrderKind::Subgraph, OrderKind::Minor].map(|k| u.matrix(k));
    for m in [mi, ms, mm] {
        for a in 0..n {
            assert!(m.leq(a, a));
            for b in 0..n {
                assert!(a == b || !(m.leq(a, b) && m.leq(b, a)));
                if m.leq(a, b) {
                    assert!((0..n).all(|c| !m.leq(b, c) || m.leq(a, c)));
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            assert!(!mi.leq(a, b) || ms.leq(a, b));
            assert!(!ms.leq(a, b) || mm.leq(a, b));
        }
    }
    let u4 = enumerate_universe(4).unwrap();
    let m4 = u4.matrix(OrderKind::Induced);
    let computed: BTreeSet<(CanonicalGraph, CanonicalGraph)> = (0..u4.len())
        .flat_map(|j| m4.lower_covers(j).map(move |i| (i, j)).collect::<Vec<_>>())
        .map(|(i, j)| (u4.get(i).clone(), u4.get(j).clone()))
        .collect();
    let drawn: BTreeSet<_> = induced_hasse_reference().into_iter().collect();
    assert_eq!(computed, drawn);
    format!("{n} graphs, {} Hasse arrows, {}", drawn.len(), within(Duration::from_secs(300), start))
}

fn minor_characterisation() -> String {
    let u5 = enumerate_universe(5).unwrap();
    let ms5 = u5.matrix(OrderKind::Subgraph);
    for (i, a) in u5.members().iter().enumerate() {
        for (j, b) in u5.members().iter().enumerate() {
            assert_eq!(subgraph_via_minor(a, b, &u5).unwrap(), ms5.leq(i, j), "{a} {b}");
        }
    }
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
    format!("{} pairs on U5, {qualifying} qualifying pairs on U6", u5.len() * u5.len())
}

fn encodings() -> String {
    assert_eq!(un(&g("P3")).to_string(), "11");
    let u = enumerate_universe(6).unwrap();
    for x in u.members() {
        let c = un(x);
        assert_eq!(&decode(&c).unwrap().canonicalize(), x);
        if x.order() > 0 {
            let n = x.order() as u64;
            assert_eq!(phi_length(&c), 1 + n * (n - 1) / 2);
        }
    }
    format!("{} graphs", u.len())
}

fn sequences() -> String {
    let s = Sequence::new(vec![0, 2, 0, 1, 1]);
    assert_eq!(s.f1().entries(), &[13, 6, 2, 2, 1]);
    assert_eq!(Sequence::new(vec![13, 6, 2, 2, 1]).f1_inv().unwrap(), s);
    let mut count = 0;
    for len in 0..=5u32 {
        for digits in 0..4u64.pow(len) {
            let entries: Vec<u64> = (0..len).map(|k| digits / 4u64.pow(k) % 4).collect();
            if entries.last() != Some(&0) {
                let s = Sequence::new(entries);
                assert_eq!(s.f1().f1_inv().unwrap(), s);
                count += 1;
            }
        }
    }
    format!("{count} sequences")
}

fn counting() -> String {
    let u = enumerate_universe(6).unwrap();
    for x in u.members() {
        assert_eq!(count_edges(x), x.size());
        assert_eq!(count_comps(x), x.components().len());
    }
    let u5 = enumerate_universe(5).unwrap();
    let mut gadgets = 0;
    for x in u5.members().iter().filter(|x| x.order() > 0 && x.is_connected()) {
        let n = x.order();
        assert_eq!(build_count_edges_gadget(x).unwrap().components().len(), n * (n - 1) / 2 - x.size() + 1);
        gadgets += 1;
    }
    let chain = count_edges_chain(&g("S4")).unwrap();
    assert_eq!(chain.len(), 4);
    assert_eq!((&chain[0], &chain[3]), (&g("S4"), &g("K4")));
    assert_eq!(build_count_edges_gadget(&g("S4")).unwrap().components().len(), 4);
    format!("{} graphs, {gadgets} gadgets", u.len())
}

fn opres() -> String {
    let mut labellings = 0;
    for n in 1..=3 {
        for base in labelled_graphs(n) {
            let op = build_opres(&base).unwrap();
            let back = recognize_opres(&op.total).unwrap();
            assert_eq!(back.labelled_base, base);
            for i in 1..=n {
                for j in 1..=n {
                    assert_eq!(psi_edge_op(&op.total, i, j), i != j && base.has_edge(i - 1, j - 1));
                }
            }
            labellings += 1;
        }
    }
    for n in 1..=5 {
        let total = build_opres(g(&format!("P{n}")).repr()).unwrap().total.order();
        assert_eq!(total, n * n + n * (n + 1) / 2 + 3 * n);
        assert_eq!(total, opres_order(n));
    }
    assert_eq!(g("opres(S4)").order(), 38);
    format!("{labellings} labellings")
}

fn conformance() -> String {
    let start = Instant::now();
    let env = builtin_corpus();
    let report = run_builtin_suite(Profile::Quick).unwrap();
    let mut seen = 0;
    let mut printed = 0;
    for d in env.definitions().iter().filter(|d| d.notes.verify_n.is_some()) {
        let r = report.reports.iter().find(|r| r.formula == d.name).expect("every @verify-n entry is run");
        let (n, _, _) = plan(d, Profile::Quick, universe_len);
        assert_eq!(r.universe_size, n, "{}", d.name);
        assert!(r.margin >= 1, "{} ran with margin {}", d.name, r.margin);
        assert_eq!(r.agreements + r.disagreements.len(), r.tested);
        if d.notes.status == Status::AsPrinted {
            assert_eq!(r.outcome, Outcome::ExpectedFailure, "{} does not fail as printed", d.name);
            printed += 1;
        } else {
            assert_eq!(r.disagreements.len(), 0, "{}", r.summary());
            assert_eq!(r.outcome, Outcome::Pass);
        }
        seen += 1;
    }
    assert!(report.figures.iter().all(|f| f.passed));
    assert!(report.passed);
    format!("{seen} formulas, {printed} as printed, {}", within(Duration::from_secs(600), start))
}

fn pipeline() -> String {
    let u = enumerate_universe(5).unwrap();
    let conn = lift_predicate(procedures::decodes_connected());
    let tree = lift_predicate(procedures::decodes_tree());
    for x in u.members() {
        let args = std::slice::from_ref(x);
        assert_eq!(conn.holds(args).unwrap(), in_family(x, FamilyId::Conn), "{x}");
        assert_eq!(tree.holds(args).unwrap(), in_family(x, FamilyId::T), "{x}");
    }
    format!("{} graphs", u.len())
}

fn translation() -> String {
    let env = builtin_corpus();
    let u = enumerate_universe(4).unwrap();
    let ev = Evaluator::new(&env, &u).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut truths = [0usize; 2];
    for _ in 0..200 {
        let s = common::random_sentence(&mut rng, 5, &mut Vec::new());
        let direct = s.eval(&HashMap::new()).unwrap();
        let t = ev.evaluate(&translate_arith(&s), &[]).unwrap();
        assert!(!t.truncated, "{s}");
        assert_eq!(t.value, direct, "{s}");
        truths[direct as usize] += 1;
    }
    format!("200 sentences, {} true", truths[1])
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 10] = [
        ("enumeration counts", enumeration),
        ("order axioms, inclusions and the induced Hasse diagram", orders),
        ("subgraph order through the minor order", minor_characterisation),
        ("UN codes", encodings),
        ("f1 and its inverse", sequences),
        ("edge and component counting", counting),
        ("o-presentations", opres),
        ("corpus conformance", conformance),
        ("lifted decision procedures", pipeline),
        ("arithmetic translation", translation),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match catch_unwind(AssertUnwindSafe(check)) {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(e) => {
                failed += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("criterion {:>2} FAIL  {name}: {msg}", i + 1);
            }
        }
    }
    let _ = std::panic::take_hook();
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
