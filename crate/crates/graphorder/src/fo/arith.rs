//! Bounded arithmetic formulas and their translation into graph formulas.
//!
//! Numbers become edgeless graphs `N_k`, `plus` and `times` become calls to
//! the corpus definitions `psiPlus` and `psiTimes`, and a bounded quantifier
//! `∀x ≤ b` becomes `forall x [N <= b] . (N(x) -> …)`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::fo::ast::{Domain, Formula, NumExpr, Quantifier, RelOp, Term};
use crate::named::{make_named, NamedFamily};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ATerm {
    Var(String),
    Num(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArithFormula {
    /// `x + y = z`
    Plus(ATerm, ATerm, ATerm),
    /// `x · y = z`
    Times(ATerm, ATerm, ATerm),
    Eq(ATerm, ATerm),
    Not(Box<ArithFormula>),
    And(Box<ArithFormula>, Box<ArithFormula>),
    Or(Box<ArithFormula>, Box<ArithFormula>),
    Implies(Box<ArithFormula>, Box<ArithFormula>),
    Iff(Box<ArithFormula>, Box<ArithFormula>),
    /// `∀x ≤ bound`
    Forall(String, u64, Box<ArithFormula>),
    /// `∃x ≤ bound`
    Exists(String, u64, Box<ArithFormula>),
}

impl ArithFormula {
    /// Truth under `assignment`; every free variable must be assigned.
    pub fn eval(&self, assignment: &HashMap<String, u64>) -> Result<bool> {
        let mut env = assignment.clone();
        self.eval_in(&mut env)
    }

    fn eval_in(&self, env: &mut HashMap<String, u64>) -> Result<bool> {
        let val = |t: &ATerm, env: &HashMap<String, u64>| -> Result<u64> {
            match t {
                ATerm::Num(n) => Ok(*n),
                ATerm::Var(v) => env.get(v).copied().ok_or_else(|| Error::Eval(format!("unbound variable {v}"))),
            }
        };
        Ok(match self {
            ArithFormula::Plus(a, b, c) => val(a, env)?.checked_add(val(b, env)?) == Some(val(c, env)?),
            ArithFormula::Times(a, b, c) => val(a, env)?.checked_mul(val(b, env)?) == Some(val(c, env)?),
            ArithFormula::Eq(a, b) => val(a, env)? == val(b, env)?,
            ArithFormula::Not(a) => !a.eval_in(env)?,
            ArithFormula::And(a, b) => a.eval_in(env)? && b.eval_in(env)?,
            ArithFormula::Or(a, b) => a.eval_in(env)? || b.eval_in(env)?,
            ArithFormula::Implies(a, b) => !a.eval_in(env)? || b.eval_in(env)?,
            ArithFormula::Iff(a, b) => a.eval_in(env)? == b.eval_in(env)?,
            ArithFormula::Forall(v, bound, body) | ArithFormula::Exists(v, bound, body) => {
                let want = matches!(self, ArithFormula::Exists(..));
                let saved = env.get(v).copied();
                let mut result = !want;
                for k in 0..=*bound {
                    env.insert(v.clone(), k);
                    if body.eval_in(env)? == want {
                        result = want;
                        break;
                    }
                }
                match saved {
                    Some(s) => env.insert(v.clone(), s),
                    None => env.remove(v),
                };
                result
            }
        })
    }

    /// Largest numeral or quantifier bound.
    pub fn max_constant(&self) -> u64 {
        let t = |t: &ATerm| if let ATerm::Num(n) = t { *n } else { 0 };
        match self {
            ArithFormula::Plus(a, b, c) | ArithFormula::Times(a, b, c) => t(a).max(t(b)).max(t(c)),
            ArithFormula::Eq(a, b) => t(a).max(t(b)),
            ArithFormula::Not(a) => a.max_constant(),
            ArithFormula::And(a, b) | ArithFormula::Or(a, b) | ArithFormula::Implies(a, b) | ArithFormula::Iff(a, b) => {
                a.max_constant().max(b.max_constant())
            }
            ArithFormula::Forall(_, k, b) | ArithFormula::Exists(_, k, b) => (*k).max(b.max_constant()),
        }
    }
}

impl fmt::Display for ATerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ATerm::Var(v) => f.write_str(v),
            ATerm::Num(n) => write!(f, "{n}"),
        }
    }
}

impl fmt::Display for ArithFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithFormula::Plus(a, b, c) => write!(f, "plus({a}, {b}, {c})"),
            ArithFormula::Times(a, b, c) => write!(f, "times({a}, {b}, {c})"),
            ArithFormula::Eq(a, b) => write!(f, "{a} = {b}"),
            ArithFormula::Not(a) => write!(f, "!({a})"),
            ArithFormula::And(a, b) => write!(f, "({a} & {b})"),
            ArithFormula::Or(a, b) => write!(f, "({a} | {b})"),
            ArithFormula::Implies(a, b) => write!(f, "({a} -> {b})"),
            ArithFormula::Iff(a, b) => write!(f, "({a} <-> {b})"),
            ArithFormula::Forall(v, k, b) => write!(f, "(forall {v} <= {k} . {b})"),
            ArithFormula::Exists(v, k, b) => write!(f, "(exists {v} <= {k} . {b})"),
        }
    }
}

fn term(t: &ATerm) -> Term {
    match t {
        ATerm::Var(v) => Term::Name(v.clone()),
        ATerm::Num(n) => Term::Graph(make_named(NamedFamily::N, *n as usize).expect("numeral within the vertex limit")),
    }
}

/// Translates into the graph vocabulary of the corpus.
///
/// Numerals above the graph vertex limit cannot be represented and panic.
pub fn translate_arith(f: &ArithFormula) -> Formula {
    let b = |f: &ArithFormula| Box::new(translate_arith(f));
    match f {
        ArithFormula::Plus(x, y, z) => Formula::Call("psiPlus".into(), vec![term(x), term(y), term(z)]),
        ArithFormula::Times(x, y, z) => Formula::Call("psiTimes".into(), vec![term(x), term(y), term(z)]),
        ArithFormula::Eq(x, y) => Formula::Rel(RelOp::Eq, term(x), term(y)),
        ArithFormula::Not(a) => Formula::Not(b(a)),
        ArithFormula::And(x, y) => Formula::And(b(x), b(y)),
        ArithFormula::Or(x, y) => Formula::Or(b(x), b(y)),
        ArithFormula::Implies(x, y) => Formula::Implies(b(x), b(y)),
        ArithFormula::Iff(x, y) => Formula::Iff(b(x), b(y)),
        ArithFormula::Forall(v, k, body) | ArithFormula::Exists(v, k, body) => {
            let guard = Formula::Call("N".into(), vec![Term::Name(v.clone())]);
            let (q, body) = if matches!(f, ArithFormula::Forall(..)) {
                (Quantifier::Forall, Formula::implies(guard, translate_arith(body)))
            } else {
                (Quantifier::Exists, Formula::and(guard, translate_arith(body)))
            };
            Formula::Quant {
                q,
                var: v.clone(),
                domain: Some(Domain::Numbers(NumExpr::Lit(*k))),
                body: Box::new(body),
            }
        }
    }
}

fn num(n: u64) -> ATerm {
    ATerm::Num(n)
}

fn var(v: &str) -> ATerm {
    ATerm::Var(v.into())
}

/// `a ≤ b`, for `b ≤ bound`.
fn le(a: ATerm, b: ATerm, bound: u64, fresh: &str) -> ArithFormula {
    ArithFormula::Exists(fresh.into(), bound, Box::new(ArithFormula::Plus(a, var(fresh), b)))
}

/// `φ_graphOrder(n, m)`: the binary length of `n` is `1 + m(m−1)/2`, for
/// `m ≤ max_m` and `n` below `2^{1 + max_m(max_m−1)/2}`.
pub fn graph_order_formula(max_m: u64) -> ArithFormula {
    let mut f = ArithFormula::Eq(num(0), num(1));
    for m in 0..=max_m {
        let len = 1 + m * m.saturating_sub(1) / 2;
        let (lo, hi) = (1u64 << (len - 1), (1u64 << len) - 1);
        let case = ArithFormula::And(
            Box::new(ArithFormula::Eq(var("m"), num(m))),
            Box::new(ArithFormula::And(
                Box::new(le(num(lo), var("n"), hi, "d")),
                Box::new(le(var("n"), num(hi), hi, "e")),
            )),
        );
        f = ArithFormula::Or(Box::new(f), Box::new(case));
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluation() {
        let f = ArithFormula::Exists("y".into(), 9, Box::new(ArithFormula::Times(var("y"), var("y"), var("x"))));
        let at = |x| HashMap::from([("x".to_string(), x)]);
        assert!(f.eval(&at(9)).unwrap());
        assert!(!f.eval(&at(8)).unwrap());
        assert!(f.eval(&HashMap::new()).is_err());
        let g = graph_order_formula(3);
        let nm = |n, m| HashMap::from([("n".to_string(), n), ("m".to_string(), m)]);
        assert!(g.eval(&nm(11, 3)).unwrap());
        assert!(!g.eval(&nm(11, 2)).unwrap());
        assert!(g.eval(&nm(1, 1)).unwrap());
    }

    #[test]
    fn translation_shape() {
        let f = ArithFormula::Plus(num(2), num(3), var("z"));
        let t = translate_arith(&f);
        assert_eq!(t.to_string().matches("psiPlus").count(), 1);
        let q = translate_arith(&ArithFormula::Forall("x".into(), 4, Box::new(f)));
        assert!(q.to_string().starts_with("forall x [N <= 4] . N(x) -> psiPlus("));
    }
}
