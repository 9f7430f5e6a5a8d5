//! Formula syntax trees.

use crate::graph::CanonicalGraph;
use crate::orders::OrderKind;

/// A term denotes a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    /// A variable, or the unique satisfier of a unary definition.
    Name(String),
    /// A literal graph, written `g6:<graph6>`.
    Graph(CanonicalGraph),
}

/// Binary relations between terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelOp {
    Eq,
    Leq(OrderKind),
    Lt(OrderKind),
    Cover(OrderKind),
    /// Edge cover in the subgraph order.
    CoverEdge,
    /// Vertex cover in the subgraph order.
    CoverVertex,
}

/// Comparisons between numeric expressions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CmpOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl CmpOp {
    pub fn holds(self, a: u64, b: u64) -> bool {
        match self {
            CmpOp::Eq => a == b,
            CmpOp::Ne => a != b,
            CmpOp::Lt => a < b,
            CmpOp::Le => a <= b,
            CmpOp::Gt => a > b,
            CmpOp::Ge => a >= b,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NumOp {
    Add,
    /// Truncated at zero.
    Sub,
    Mul,
    /// Floor division, with `x / 0 = 0`.
    Div,
}

/// Numbers computed from graph cardinalities and sizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NumExpr {
    Lit(u64),
    /// `|t|`
    Card(Term),
    /// `||t||`
    Size(Term),
    Bin(NumOp, Box<NumExpr>, Box<NumExpr>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Forall,
    Exists,
    ExistsUnique,
}

/// The range of a quantified variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Domain {
    /// `[<= e]`: universe members with at most `e` vertices.
    AtMost(NumExpr),
    /// `[= e]`: universe members with exactly `e` vertices.
    Exactly(NumExpr),
    /// `[<=s t]`, or `[<s t]` when strict: the down-set of `t`.
    Below { kind: OrderKind, strict: bool, of: Term },
    /// `[>.s t]`: the upper covers of `t`.
    UpperCovers { kind: OrderKind, of: Term },
    /// `[N <= e]`: the edgeless graphs `N_0 … N_e`.
    Numbers(NumExpr),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    True,
    False,
    Rel(RelOp, Term, Term),
    /// A named definition or built-in relation.
    Call(String, Vec<Term>),
    Cmp(CmpOp, NumExpr, NumExpr),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Quant {
        q: Quantifier,
        var: String,
        domain: Option<Domain>,
        body: Box<Formula>,
    },
}

impl Formula {
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn var(name: &str) -> Term {
        Term::Name(name.to_string())
    }

    /// Names of called definitions, in order of first appearance.
    pub fn calls(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.visit(&mut |f| {
            if let Formula::Call(name, _) = f {
                if !out.contains(name) {
                    out.push(name.clone());
                }
            }
        });
        out
    }

    /// Every term occurring in the formula, including inside numbers and domains.
    pub fn terms(&self) -> Vec<&Term> {
        fn num<'a>(e: &'a NumExpr, out: &mut Vec<&'a Term>) {
            match e {
                NumExpr::Lit(_) => {}
                NumExpr::Card(t) | NumExpr::Size(t) => out.push(t),
                NumExpr::Bin(_, a, b) => {
                    num(a, out);
                    num(b, out);
                }
            }
        }
        fn go<'a>(f: &'a Formula, out: &mut Vec<&'a Term>) {
            match f {
                Formula::True | Formula::False => {}
                Formula::Rel(_, a, b) => {
                    out.push(a);
                    out.push(b);
                }
                Formula::Call(_, args) => out.extend(args.iter()),
                Formula::Cmp(_, a, b) => {
                    num(a, out);
                    num(b, out);
                }
                Formula::Not(a) => go(a, out),
                Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                    go(a, out);
                    go(b, out);
                }
                Formula::Quant { domain, body, .. } => {
                    match domain {
                        Some(Domain::AtMost(e)) | Some(Domain::Exactly(e)) | Some(Domain::Numbers(e)) => num(e, out),
                        Some(Domain::Below { of, .. }) | Some(Domain::UpperCovers { of, .. }) => out.push(of),
                        None => {}
                    }
                    go(body, out);
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }

    fn visit(&self, f: &mut dyn FnMut(&Formula)) {
        f(self);
        match self {
            Formula::Not(a) => a.visit(f),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            Formula::Quant { body, .. } => body.visit(f),
            _ => {}
        }
    }
}
