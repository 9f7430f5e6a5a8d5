//! Printing formulas back to the concrete syntax. Parsing the output gives
//! back the same tree.

use std::fmt::{self, Display, Formatter, Write};

use crate::fo::ast::*;
use crate::graph6;

impl Display for Term {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Term::Name(n) => f.write_str(n),
            // The trailing space keeps a following `|` or `]` out of the literal.
            Term::Graph(g) => write!(f, "g6:{} ", graph6::encode(g.repr())),
        }
    }
}

impl Display for RelOp {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            RelOp::Eq => f.write_str("="),
            RelOp::Leq(k) => write!(f, "<={k}"),
            RelOp::Lt(k) => write!(f, "<{k}"),
            RelOp::Cover(k) => write!(f, "<.{k}"),
            RelOp::CoverEdge => f.write_str("<.se"),
            RelOp::CoverVertex => f.write_str("<.sv"),
        }
    }
}

impl Display for CmpOp {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CmpOp::Eq => "=",
            CmpOp::Ne => "!=",
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
            CmpOp::Gt => ">",
            CmpOp::Ge => ">=",
        })
    }
}

fn num_level(e: &NumExpr) -> u8 {
    match e {
        NumExpr::Bin(NumOp::Add | NumOp::Sub, ..) => 1,
        NumExpr::Bin(NumOp::Mul | NumOp::Div, ..) => 2,
        _ => 3,
    }
}

fn write_num(out: &mut String, e: &NumExpr, min: u8) {
    let paren = num_level(e) < min;
    if paren {
        out.push('(');
    }
    match e {
        NumExpr::Lit(n) => write!(out, "{n}").unwrap(),
        NumExpr::Card(t) => write!(out, "|{t}|").unwrap(),
        NumExpr::Size(t) => write!(out, "||{t}||").unwrap(),
        NumExpr::Bin(op, a, b) => {
            let level = num_level(e);
            let sym = match op {
                NumOp::Add => "+",
                NumOp::Sub => "-",
                NumOp::Mul => "*",
                NumOp::Div => "/",
            };
            write_num(out, a, level);
            write!(out, " {sym} ").unwrap();
            write_num(out, b, level + 1);
        }
    }
    if paren {
        out.push(')');
    }
}

impl Display for NumExpr {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_num(&mut s, self, 0);
        f.write_str(&s)
    }
}

impl Display for Domain {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Domain::AtMost(e) => write!(f, "[<= {e}]"),
            Domain::Exactly(e) => write!(f, "[= {e}]"),
            Domain::Numbers(e) => write!(f, "[N <= {e}]"),
            Domain::Below { kind, strict: false, of } => write!(f, "[<={kind} {of}]"),
            Domain::Below { kind, strict: true, of } => write!(f, "[<{kind} {of}]"),
            Domain::UpperCovers { kind, of } => write!(f, "[>.{kind} {of}]"),
        }
    }
}

// Binding strength: iff 1, implies 2, or 3, and 4, not 5, atoms 6.
// Quantifiers are 0: they are bracketed anywhere but the top or a body.
fn level(f: &Formula) -> u8 {
    match f {
        Formula::Quant { .. } => 0,
        Formula::Iff(..) => 1,
        Formula::Implies(..) => 2,
        Formula::Or(..) => 3,
        Formula::And(..) => 4,
        Formula::Not(inner) if matches!(**inner, Formula::Rel(..)) => 6,
        Formula::Not(..) => 5,
        _ => 6,
    }
}

fn write_formula(out: &mut String, f: &Formula, min: u8) {
    let paren = level(f) < min;
    if paren {
        out.push('(');
    }
    match f {
        Formula::True => out.push_str("true"),
        Formula::False => out.push_str("false"),
        Formula::Rel(op, a, b) => write!(out, "{a} {op} {b}").unwrap(),
        Formula::Not(inner) => match &**inner {
            Formula::Rel(RelOp::Eq, a, b) => write!(out, "{a} != {b}").unwrap(),
            Formula::Rel(op, a, b) => write!(out, "{a} !{op} {b}").unwrap(),
            other => {
                out.push('!');
                write_formula(out, other, 5);
            }
        },
        Formula::Call(name, args) => {
            let args: Vec<String> = args.iter().map(|a| a.to_string().trim_end().to_string()).collect();
            write!(out, "{name}({})", args.join(", ")).unwrap();
        }
        Formula::Cmp(op, a, b) => write!(out, "{a} {op} {b}").unwrap(),
        Formula::And(a, b) => {
            write_formula(out, a, 4);
            out.push_str(" & ");
            write_formula(out, b, 5);
        }
        Formula::Or(a, b) => {
            write_formula(out, a, 3);
            out.push_str(" | ");
            write_formula(out, b, 4);
        }
        Formula::Implies(a, b) => {
            write_formula(out, a, 3);
            out.push_str(" -> ");
            write_formula(out, b, 2);
        }
        Formula::Iff(a, b) => {
            write_formula(out, a, 1);
            out.push_str(" <-> ");
            write_formula(out, b, 2);
        }
        Formula::Quant { q, var, domain, body } => {
            out.push_str(match q {
                Quantifier::Forall => "forall ",
                Quantifier::Exists => "exists ",
                Quantifier::ExistsUnique => "exists! ",
            });
            out.push_str(var);
            if let Some(d) = domain {
                write!(out, " {d}").unwrap();
            }
            out.push_str(" . ");
            write_formula(out, body, 0);
        }
    }
    if paren {
        out.push(')');
    }
}

impl Display for Formula {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_formula(&mut s, self, 0);
        f.write_str(&s)
    }
}

#[cfg(test)]
mod tests {
    use crate::fo::parser::parse;

    #[test]
    fn roundtrip_samples() {
        for text in [
            "K2 !<=s x",
            "forall y . (N(y) -> (y <=s x <-> y <=s z))",
            "A(x) <-> B(x) <-> C(x)",
            "A(x) <-> (B(x) <-> C(x))",
            "(A(x) <-> B(x)) -> C(x) -> D(x)",
            "(A(x) -> B(x)) -> C(x)",
            "!(forall y . y = y) & (exists z [<= |x| + 1] . z <.se x | false)",
            "|x| - (|y| - 1) * 2 / 3 = ||z||",
            "exists! y [>.s x] . g6:Bw <.i y",
            "!!x != y",
            "!(|x| = 1)",
            "(A(x) & B(x)) & C(x) | D(x)",
            "A(x) & (B(x) & C(x))",
        ] {
            let f = parse(text).unwrap();
            let printed = f.to_string();
            assert_eq!(parse(&printed).unwrap(), f, "{text} printed as {printed}");
        }
    }
}
