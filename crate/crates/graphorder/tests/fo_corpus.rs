//! The formula language and the shipped corpus.

mod common;

use std::collections::HashMap;

use graphorder::fo::arith::translate_arith;
use graphorder::fo::ast::{CmpOp, Domain, Formula, NumExpr, NumOp, Quantifier, RelOp, Term};
use graphorder::fo::env::{builtin_corpus, Environment, Status};
use graphorder::fo::eval::Evaluator;
use graphorder::fo::parse;
use graphorder::notation::parse_graph;
use graphorder::{enumerate_universe, CanonicalGraph, OrderKind};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn every_definition_prints_and_parses_back() {
    let env = builtin_corpus();
    assert!(env.len() > 80);
    for d in env.definitions() {
        let text = d.body.to_string();
        assert_eq!(parse(&text).unwrap(), d.body, "{} printed as {text}", d.name);
    }
}

#[test]
fn listed_constants_are_singletons_on_u6() {
    let env = builtin_corpus();
    let u = enumerate_universe(6).unwrap();
    let ev = Evaluator::new(&env, &u).unwrap();
    let mut checked = 0;
    for d in env.definitions() {
        let Some(spec) = d.notes.oracle.as_deref().and_then(|o| o.strip_prefix("equals(")) else {
            continue;
        };
        let expected = parse_graph(spec.trim_end_matches(')')).unwrap();
        let ext = ev.extension(&Formula::Call(d.name.clone(), vec![Term::Name("x".into())]), 1).unwrap();
        let members: Vec<&CanonicalGraph> = ext.tuples.iter().map(|t| &t[0]).collect();
        if d.notes.status == Status::AsPrinted {
            assert_ne!(members, vec![&expected], "{} should not pin down {expected}", d.name);
        } else {
            assert_eq!(members, vec![&expected], "{}", d.name);
            assert_eq!(ev.constant(&d.name).unwrap(), expected);
        }
        checked += 1;
    }
    assert!(checked >= 10);
}

#[test]
fn printed_operand_gap_does_not_parse() {
    let printed = "forall a [N <= 2 * |n| + 2] . forall b [N <= 2 * |n| + 2] . \
                   ((|n| + 3 <= |a| & |a| < |b|) -> forall p [<=i x] . (pointedCycleSum(p, a, b) -> p !<=i))";
    assert!(parse(printed).is_err());
    assert!(builtin_corpus().get("noPointedCycleSums").is_some());
}

#[test]
fn environments_reject_recursion_and_unknown_names() {
    assert!(Environment::parse_corpus("@cite loop\nloop(x) := loop(x)\n").is_err());
    assert!(Environment::parse_corpus("@cite a\na(x) := b(x)\n\n@cite b\nb(x) := a(x)\n").is_err());
    assert!(Environment::parse_corpus("@cite u\nu(x) := missing(x)\n").is_err());
    assert!(Environment::parse_corpus("@cite f\nf(x) := y <=s x\n").is_err());
    assert!(Environment::parse_corpus("@cite ok\nok(x) := K1 <=s x\n\n@cite K1\nK1(x) := |x| = 1 & ||x|| = 0\n").is_ok());
}

#[test]
fn evaluation_examples() {
    let env = builtin_corpus();
    let u = enumerate_universe(5).unwrap();
    let ev = Evaluator::new(&env, &u).unwrap();
    let g = |s: &str| parse_graph(s).unwrap();
    let holds = |name: &str, args: &[&str]| {
        let args: Vec<CanonicalGraph> = args.iter().map(|a| g(a)).collect();
        let t = ev.call(name, &args).unwrap();
        assert!(!t.truncated, "{name}");
        t.value
    };
    assert!(holds("N", &["N3"]) && !holds("N", &["K2"]));
    assert!(holds("conn", &["P4"]) && !holds("conn", &["K2 + K1"]));
    assert!(holds("pac", &["C4"]) && !holds("pac", &["S4"]));
    assert!(holds("psiPlus", &["N2", "N1", "N3"]));
    assert!(holds("psiTimes", &["N2", "N2", "N4"]));
    assert!(holds("subgraphViaMinor", &["P3", "K3"]));
    assert!(!holds("subgraphViaMinor", &["K3", "C4"]));
}

const VARS: [&str; 4] = ["x", "y", "z", "w"];

fn term() -> impl Strategy<Value = Term> {
    prop_oneof![
        4 => proptest::sample::select(&VARS[..]).prop_map(|v| Term::Name(v.to_string())),
        1 => proptest::sample::select(vec!["K2", "P3", "N1", "empty", "K3 + N1"])
            .prop_map(|s| Term::Graph(parse_graph(s).unwrap())),
    ]
}

fn kind() -> impl Strategy<Value = OrderKind> {
    proptest::sample::select(vec![OrderKind::Subgraph, OrderKind::Induced, OrderKind::Minor])
}

fn num() -> impl Strategy<Value = NumExpr> {
    let leaf = prop_oneof![
        (0u64..20).prop_map(NumExpr::Lit),
        term().prop_map(NumExpr::Card),
        term().prop_map(NumExpr::Size),
    ];
    leaf.prop_recursive(3, 8, 2, |inner| {
        (
            proptest::sample::select(vec![NumOp::Add, NumOp::Sub, NumOp::Mul, NumOp::Div]),
            inner.clone(),
            inner,
        )
            .prop_map(|(op, a, b)| NumExpr::Bin(op, Box::new(a), Box::new(b)))
    })
}

fn domain() -> impl Strategy<Value = Option<Domain>> {
    prop_oneof![
        Just(None),
        num().prop_map(|e| Some(Domain::AtMost(e))),
        num().prop_map(|e| Some(Domain::Exactly(e))),
        num().prop_map(|e| Some(Domain::Numbers(e))),
        (kind(), any::<bool>(), term()).prop_map(|(kind, strict, of)| Some(Domain::Below { kind, strict, of })),
        (kind(), term()).prop_map(|(kind, of)| Some(Domain::UpperCovers { kind, of })),
    ]
}

fn rel() -> impl Strategy<Value = RelOp> {
    prop_oneof![
        Just(RelOp::Eq),
        kind().prop_map(RelOp::Leq),
        kind().prop_map(RelOp::Lt),
        kind().prop_map(RelOp::Cover),
        Just(RelOp::CoverEdge),
        Just(RelOp::CoverVertex),
    ]
}

fn formula() -> impl Strategy<Value = Formula> {
    let cmp = proptest::sample::select(vec![CmpOp::Eq, CmpOp::Ne, CmpOp::Lt, CmpOp::Le, CmpOp::Gt, CmpOp::Ge]);
    let leaf = prop_oneof![
        Just(Formula::True),
        Just(Formula::False),
        (rel(), term(), term()).prop_map(|(r, a, b)| Formula::Rel(r, a, b)),
        (proptest::sample::select(vec!["conn", "T", "psiPlus"]), proptest::collection::vec(term(), 1..3))
            .prop_map(|(n, args)| Formula::Call(n.to_string(), args)),
        (cmp, num(), num()).prop_map(|(c, a, b)| Formula::Cmp(c, a, b)),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::iff(a, b)),
            (
                proptest::sample::select(vec![Quantifier::Forall, Quantifier::Exists, Quantifier::ExistsUnique]),
                proptest::sample::select(&VARS[..]),
                domain(),
                inner,
            )
                .prop_map(|(q, v, domain, body)| Formula::Quant {
                    q,
                    var: v.to_string(),
                    domain,
                    body: Box::new(body),
                }),
        ]
    })
}

proptest! {
    #[test]
    fn printing_then_parsing_is_the_identity(f in formula()) {
        let text = f.to_string();
        prop_assert_eq!(parse(&text).unwrap(), f, "printed as {}", text);
    }
}

/// Numbers range over `N_0 … N_12`, built on demand by the `[N <= k]` domains.
#[test]
fn translated_sentences_keep_their_truth_value() {
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
    assert!(truths[0] >= 20 && truths[1] >= 20, "{truths:?}");
}
