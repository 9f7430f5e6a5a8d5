//! Helpers shared by the integration tests.
#![allow(dead_code)]

use graphorder::fo::arith::{ATerm, ArithFormula};
use graphorder::graph::LabelledGraph;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// All permutations of `0..n`.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Least adjacency string over the given permutations.
pub fn brute_min_string(g: &LabelledGraph, perms: &[Vec<usize>]) -> Vec<bool> {
    perms
        .iter()
        .map(|p| g.permuted(p).representation_bits().collect::<Vec<bool>>())
        .min()
        .unwrap_or_default()
}

/// A closed bounded sentence with numerals and bounds at most 12.
pub fn random_sentence(rng: &mut ChaCha8Rng, depth: usize, scope: &mut Vec<String>) -> ArithFormula {
    let t = |rng: &mut ChaCha8Rng, scope: &[String]| {
        if !scope.is_empty() && rng.gen_bool(0.75) {
            ATerm::Var(scope[rng.gen_range(0..scope.len())].clone())
        } else {
            ATerm::Num(rng.gen_range(0..=12))
        }
    };
    let quantify = depth > 0 && (scope.is_empty() || (scope.len() < 3 && rng.gen_bool(0.5)));
    if quantify {
        let v = format!("v{}", scope.len());
        let bound = rng.gen_range(0..=12);
        scope.push(v.clone());
        let body = Box::new(random_sentence(rng, depth - 1, scope));
        scope.pop();
        return if rng.gen_bool(0.5) {
            ArithFormula::Forall(v, bound, body)
        } else {
            ArithFormula::Exists(v, bound, body)
        };
    }
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..3) {
            0 => ArithFormula::Plus(t(rng, scope), t(rng, scope), t(rng, scope)),
            1 => ArithFormula::Times(t(rng, scope), t(rng, scope), t(rng, scope)),
            _ => ArithFormula::Eq(t(rng, scope), t(rng, scope)),
        };
    }
    let mut sub = |rng: &mut ChaCha8Rng| Box::new(random_sentence(rng, depth - 1, scope));
    match rng.gen_range(0..5) {
        0 => ArithFormula::Not(sub(rng)),
        1 => ArithFormula::And(sub(rng), sub(rng)),
        2 => ArithFormula::Or(sub(rng), sub(rng)),
        3 => ArithFormula::Implies(sub(rng), sub(rng)),
        _ => ArithFormula::Iff(sub(rng), sub(rng)),
    }
}
