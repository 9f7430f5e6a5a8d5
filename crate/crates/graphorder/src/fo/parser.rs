//! Lexer and recursive-descent parser for formulas.
//!
//! ```text
//! formula  := iff
//! iff      := implies ('<->' implies)*
//! implies  := or ('->' implies)?
//! or       := and ('|' and)*
//! and      := unary ('&' unary)*
//! unary    := '!' unary | quant | atom
//! quant    := ('forall' | 'exists' | 'exists!') var domain? '.' formula
//! domain   := '[' ( '<=' num | '=' num | 'N' '<=' num
//!                 | ('<=s'|'<s'|'<=i'|'<i'|'<=m'|'<m') term
//!                 | ('>.s'|'>.i') term ) ']'
//! atom     := 'true' | 'false' | '(' formula ')'
//!           | name '(' term (',' term)* ')'
//!           | term '!'? rel term
//!           | num cmp num
//! rel      := '=' | '!=' | '<=s' | '<s' | '<.s' | '<.se' | '<.sv' | ... (also i, m)
//! num      := product (('+' | '-') product)*
//! product  := natom (('*' | '/') natom)*
//! natom    := integer | '|' term '|' | '||' term '||' | '(' num ')'
//! term     := name | 'g6:' graph6
//! ```
//!
//! A quantifier body extends as far right as possible. A graph6 literal ends
//! at whitespace, `,` or `)`.

use crate::error::{Error, Result};
use crate::fo::ast::*;
use crate::graph6;
use crate::orders::OrderKind;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(u64),
    Graph(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Dot,
    Bar,
    Amp,
    Bang,
    Arrow,
    DArrow,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    Plus,
    Minus,
    Star,
    Slash,
    /// `<=s`, `<=i`, `<=m`
    OrdLe(OrderKind),
    /// `<s`, `<i`, `<m`
    OrdLt(OrderKind),
    /// `<.s`, `<.i`, `<.m`
    Cover(OrderKind),
    CoverEdge,
    CoverVertex,
    /// `>.s`, `>.i`, `>.m`
    Upper(OrderKind),
    ExistsUnique,
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
    /// Byte offsets, used to tell `||` from `| |`.
    start: usize,
    end: usize,
}

fn is_ident_char(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_' || c == b'\''
}

fn kind_of(c: u8) -> Option<OrderKind> {
    match c {
        b's' => Some(OrderKind::Subgraph),
        b'i' => Some(OrderKind::Induced),
        b'm' => Some(OrderKind::Minor),
        _ => None,
    }
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let s = text.as_bytes();
    let mut out = Vec::new();
    let (mut i, mut line, mut line_start) = (0, 1, 0);
    while i < s.len() {
        let c = s[i];
        if c == b'\n' {
            line += 1;
            line_start = i + 1;
            i += 1;
            continue;
        }
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c == b'#' {
            while i < s.len() && s[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let col = i - line_start + 1;
        let start = i;
        let err = |msg: String| Error::Syntax { line, col, msg };
        // An order suffix counts only when no identifier character follows it.
        let suffix = |at: usize| -> Option<OrderKind> {
            let k = kind_of(*s.get(at)?)?;
            if s.get(at + 1).is_some_and(|&c| is_ident_char(c)) {
                None
            } else {
                Some(k)
            }
        };
        let tok = if s[i..].starts_with(b"g6:") {
            i += 3;
            let from = i;
            while i < s.len() && !s[i].is_ascii_whitespace() && s[i] != b',' && s[i] != b')' {
                i += 1;
            }
            if from == i {
                return Err(err("empty graph6 literal".into()));
            }
            Tok::Graph(text[from..i].to_string())
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < s.len() && is_ident_char(s[i]) {
                i += 1;
            }
            let word = &text[start..i];
            if word == "exists" && s.get(i) == Some(&b'!') && s.get(i + 1) != Some(&b'=') {
                i += 1;
                Tok::ExistsUnique
            } else {
                Tok::Ident(word.to_string())
            }
        } else if c.is_ascii_digit() {
            while i < s.len() && s[i].is_ascii_digit() {
                i += 1;
            }
            if s.get(i).is_some_and(|&c| is_ident_char(c)) {
                return Err(err("identifiers may not start with a digit".into()));
            }
            Tok::Int(text[start..i].parse().map_err(|_| err("integer literal too large".into()))?)
        } else {
            let rest = &s[i..];
            let (tok, len) = if rest.starts_with(b"<->") {
                (Tok::DArrow, 3)
            } else if rest.starts_with(b"<.se") && !rest.get(4).is_some_and(|&c| is_ident_char(c)) {
                (Tok::CoverEdge, 4)
            } else if rest.starts_with(b"<.sv") && !rest.get(4).is_some_and(|&c| is_ident_char(c)) {
                (Tok::CoverVertex, 4)
            } else if rest.starts_with(b"<.") {
                match suffix(i + 2) {
                    Some(k) => (Tok::Cover(k), 3),
                    None => return Err(err("expected s, se, sv, i or m after '<.'".into())),
                }
            } else if rest.starts_with(b">.") {
                match suffix(i + 2) {
                    Some(k) => (Tok::Upper(k), 3),
                    None => return Err(err("expected s, i or m after '>.'".into())),
                }
            } else if rest.starts_with(b"<=") {
                match suffix(i + 2) {
                    Some(k) => (Tok::OrdLe(k), 3),
                    None => (Tok::Le, 2),
                }
            } else if rest.starts_with(b"<") {
                match suffix(i + 1) {
                    Some(k) => (Tok::OrdLt(k), 2),
                    None => (Tok::Lt, 1),
                }
            } else if rest.starts_with(b">=") {
                (Tok::Ge, 2)
            } else if rest.starts_with(b"->") {
                (Tok::Arrow, 2)
            } else if rest.starts_with(b"!=") {
                (Tok::Ne, 2)
            } else {
                let t = match c {
                    b'(' => Tok::LParen,
                    b')' => Tok::RParen,
                    b'[' => Tok::LBracket,
                    b']' => Tok::RBracket,
                    b',' => Tok::Comma,
                    b'.' => Tok::Dot,
                    b'|' => Tok::Bar,
                    b'&' => Tok::Amp,
                    b'!' => Tok::Bang,
                    b'=' => Tok::Eq,
                    b'>' => Tok::Gt,
                    b'+' => Tok::Plus,
                    b'-' => Tok::Minus,
                    b'*' => Tok::Star,
                    b'/' => Tok::Slash,
                    _ => return Err(err(format!("unexpected character {:?}", c as char))),
                };
                (t, 1)
            };
            i += len;
            tok
        };
        out.push(Token { tok, line, col, start, end: i });
    }
    let col = s.len() - line_start + 1;
    out.push(Token { tok: Tok::Eof, line, col, start: s.len(), end: s.len() });
    Ok(out)
}

const KEYWORDS: &[&str] = &["forall", "exists", "true", "false"];

/// Parses a formula.
pub fn parse(text: &str) -> Result<Formula> {
    let mut p = Parser::new(text)?;
    let f = p.formula()?;
    p.expect_eof()?;
    Ok(f)
}

/// Parses a numeric expression such as `|x| + 1`.
pub fn parse_num(text: &str) -> Result<NumExpr> {
    let mut p = Parser::new(text)?;
    let e = p.num()?;
    p.expect_eof()?;
    Ok(e)
}

/// Parses a definition head `name(x, y)`.
pub(crate) fn parse_head(text: &str) -> Result<(String, Vec<String>)> {
    let mut p = Parser::new(text)?;
    let name = p.ident()?;
    let mut params = Vec::new();
    p.expect(Tok::LParen, "'('")?;
    loop {
        params.push(p.ident()?);
        if !p.eat(&Tok::Comma) {
            break;
        }
    }
    p.expect(Tok::RParen, "')'")?;
    p.expect_eof()?;
    Ok((name, params))
}

pub(crate) struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    pub(crate) fn new(text: &str) -> Result<Parser> {
        Ok(Parser { toks: lex(text)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        let t = &self.toks[self.pos];
        Error::Syntax { line: t.line, col: t.col, msg: msg.into() }
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.eat(&t) {
            Ok(())
        } else {
            Err(self.error(format!("expected {what}, found {}", self.describe())))
        }
    }

    fn expect_eof(&self) -> Result<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.error(format!("unexpected {}", self.describe())))
        }
    }

    fn describe(&self) -> String {
        match self.peek() {
            Tok::Eof => "end of input".into(),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Int(n) => format!("'{n}'"),
            t => format!("{t:?}"),
        }
    }

    /// Two bars with nothing between them.
    fn at_double_bar(&self) -> bool {
        *self.peek() == Tok::Bar
            && *self.peek_at(1) == Tok::Bar
            && self.toks[self.pos].end == self.toks[self.pos + 1].start
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.error(format!("expected a name, found {}", self.describe()))),
        }
    }

    pub(crate) fn formula(&mut self) -> Result<Formula> {
        let mut f = self.implies()?;
        while self.eat(&Tok::DArrow) {
            f = Formula::iff(f, self.implies()?);
        }
        Ok(f)
    }

    fn implies(&mut self) -> Result<Formula> {
        let f = self.or()?;
        if self.eat(&Tok::Arrow) {
            return Ok(Formula::implies(f, self.implies()?));
        }
        Ok(f)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut f = self.and()?;
        while *self.peek() == Tok::Bar && !self.at_double_bar() {
            // `A | |x| = 1`: the second bar opens a cardinality.
            self.bump();
            f = Formula::or(f, self.and()?);
        }
        Ok(f)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut f = self.unary()?;
        while self.eat(&Tok::Amp) {
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek() {
            Tok::Bang => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::ExistsUnique => {
                self.bump();
                self.quant(Quantifier::ExistsUnique)
            }
            Tok::Ident(s) if s == "forall" => {
                self.bump();
                self.quant(Quantifier::Forall)
            }
            Tok::Ident(s) if s == "exists" => {
                self.bump();
                self.quant(Quantifier::Exists)
            }
            _ => self.atom(),
        }
    }

    fn quant(&mut self, q: Quantifier) -> Result<Formula> {
        let var = self.ident()?;
        let domain = if self.eat(&Tok::LBracket) {
            let d = self.domain()?;
            self.expect(Tok::RBracket, "']'")?;
            Some(d)
        } else {
            None
        };
        self.expect(Tok::Dot, "'.'")?;
        let body = self.formula()?;
        Ok(Formula::Quant { q, var, domain, body: Box::new(body) })
    }

    fn domain(&mut self) -> Result<Domain> {
        match self.peek().clone() {
            Tok::Le => {
                self.bump();
                Ok(Domain::AtMost(self.num()?))
            }
            Tok::Eq => {
                self.bump();
                Ok(Domain::Exactly(self.num()?))
            }
            Tok::Ident(s) if s == "N" && *self.peek_at(1) == Tok::Le => {
                self.bump();
                self.bump();
                Ok(Domain::Numbers(self.num()?))
            }
            Tok::OrdLe(kind) => {
                self.bump();
                Ok(Domain::Below { kind, strict: false, of: self.term()? })
            }
            Tok::OrdLt(kind) => {
                self.bump();
                Ok(Domain::Below { kind, strict: true, of: self.term()? })
            }
            Tok::Upper(kind) => {
                self.bump();
                Ok(Domain::UpperCovers { kind, of: self.term()? })
            }
            _ => Err(self.error(format!("expected a quantifier domain, found {}", self.describe()))),
        }
    }

    fn term(&mut self) -> Result<Term> {
        match self.peek().clone() {
            Tok::Graph(code) => {
                let g = graph6::decode(&code).map_err(|e| self.error(format!("bad graph6 literal: {e}")))?;
                self.bump();
                Ok(Term::Graph(g.canonicalize()))
            }
            _ => Ok(Term::Name(self.ident()?)),
        }
    }

    fn rel_op(&mut self) -> Option<RelOp> {
        let op = match self.peek() {
            Tok::Eq => RelOp::Eq,
            Tok::OrdLe(k) => RelOp::Leq(*k),
            Tok::OrdLt(k) => RelOp::Lt(*k),
            Tok::Cover(k) => RelOp::Cover(*k),
            Tok::CoverEdge => RelOp::CoverEdge,
            Tok::CoverVertex => RelOp::CoverVertex,
            _ => return None,
        };
        self.bump();
        Some(op)
    }

    fn atom(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Tok::Ident(s) if s == "true" => {
                self.bump();
                Ok(Formula::True)
            }
            Tok::Ident(s) if s == "false" => {
                self.bump();
                Ok(Formula::False)
            }
            Tok::LParen => {
                // Either a parenthesized formula or a comparison whose left
                // side starts with a parenthesized number.
                let save = self.pos;
                if let Ok(f) = self.comparison() {
                    return Ok(f);
                }
                self.pos = save;
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(f)
            }
            Tok::Bar | Tok::Int(_) => self.comparison(),
            Tok::Ident(name) if *self.peek_at(1) == Tok::LParen => {
                self.bump();
                self.bump();
                let mut args = vec![self.term()?];
                while self.eat(&Tok::Comma) {
                    args.push(self.term()?);
                }
                self.expect(Tok::RParen, "')'")?;
                Ok(Formula::Call(name, args))
            }
            Tok::Ident(_) | Tok::Graph(_) => {
                let a = self.term()?;
                if self.eat(&Tok::Ne) {
                    return Ok(Formula::not(Formula::Rel(RelOp::Eq, a, self.term()?)));
                }
                let negated = self.eat(&Tok::Bang);
                let Some(op) = self.rel_op() else {
                    return Err(self.error(format!("expected a relation, found {}", self.describe())));
                };
                let f = Formula::Rel(op, a, self.term()?);
                Ok(if negated { Formula::not(f) } else { f })
            }
            _ => Err(self.error(format!("expected a formula, found {}", self.describe()))),
        }
    }

    fn comparison(&mut self) -> Result<Formula> {
        let a = self.num()?;
        let op = match self.bump() {
            Tok::Eq => CmpOp::Eq,
            Tok::Ne => CmpOp::Ne,
            Tok::Lt => CmpOp::Lt,
            Tok::Le => CmpOp::Le,
            Tok::Gt => CmpOp::Gt,
            Tok::Ge => CmpOp::Ge,
            _ => {
                self.pos -= 1;
                return Err(self.error(format!("expected a comparison, found {}", self.describe())));
            }
        };
        Ok(Formula::Cmp(op, a, self.num()?))
    }

    pub(crate) fn num(&mut self) -> Result<NumExpr> {
        let mut e = self.product()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => NumOp::Add,
                Tok::Minus => NumOp::Sub,
                _ => return Ok(e),
            };
            self.bump();
            e = NumExpr::Bin(op, Box::new(e), Box::new(self.product()?));
        }
    }

    fn product(&mut self) -> Result<NumExpr> {
        let mut e = self.natom()?;
        loop {
            let op = match self.peek() {
                Tok::Star => NumOp::Mul,
                Tok::Slash => NumOp::Div,
                _ => return Ok(e),
            };
            self.bump();
            e = NumExpr::Bin(op, Box::new(e), Box::new(self.natom()?));
        }
    }

    fn natom(&mut self) -> Result<NumExpr> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(NumExpr::Lit(n))
            }
            Tok::LParen => {
                self.bump();
                let e = self.num()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Bar if self.at_double_bar() => {
                self.bump();
                self.bump();
                let t = self.term()?;
                if !self.at_double_bar() {
                    return Err(self.error("expected '||'"));
                }
                self.bump();
                self.bump();
                Ok(NumExpr::Size(t))
            }
            Tok::Bar => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::Bar, "'|'")?;
                Ok(NumExpr::Card(t))
            }
            _ => Err(self.error(format!("expected a number, found {}", self.describe()))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Term {
        Term::Name(s.into())
    }

    #[test]
    fn negated_order_atom() {
        let f = parse("K2 !<=s x").unwrap();
        assert_eq!(f, Formula::not(Formula::Rel(RelOp::Leq(OrderKind::Subgraph), v("K2"), v("x"))));
    }

    #[test]
    fn quantifier_with_iff() {
        let f = parse("forall y . (N(y) -> (y <=s x <-> y <=s z))").unwrap();
        let Formula::Quant { q, var, domain, body } = f else { panic!() };
        assert_eq!((q, var.as_str(), domain), (Quantifier::Forall, "y", None));
        let Formula::Implies(a, b) = *body else { panic!() };
        assert_eq!(*a, Formula::Call("N".into(), vec![v("y")]));
        assert!(matches!(*b, Formula::Iff(_, _)));
    }

    #[test]
    fn errors_carry_positions() {
        match parse("forall . x") {
            Err(Error::Syntax { line: 1, col: 8, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse("x <=s y &\n  ?") {
            Err(Error::Syntax { line: 2, col: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bars_and_numbers() {
        let f = parse("A(x) | |x| + 1 = ||y||").unwrap();
        let Formula::Or(_, b) = f else { panic!() };
        assert_eq!(
            *b,
            Formula::Cmp(
                CmpOp::Eq,
                NumExpr::Bin(NumOp::Add, Box::new(NumExpr::Card(v("x"))), Box::new(NumExpr::Lit(1))),
                NumExpr::Size(v("y"))
            )
        );
        assert!(parse("(|x| + 1) * 2 = |y|").is_ok());
        assert!(parse("(x <s y)").is_ok());
    }

    #[test]
    fn domains_and_unique() {
        let f = parse("exists! z [<= |x| + |y|] . z = z").unwrap();
        assert!(matches!(f, Formula::Quant { q: Quantifier::ExistsUnique, domain: Some(Domain::AtMost(_)), .. }));
        assert!(parse("forall n [N <= 3] . true").is_ok());
        assert!(parse("forall y [>.s x] . y <.se x").is_ok());
        assert!(parse("exists y [<i x] . y != x").is_ok());
        // `sx` after `<` is a name, not an order suffix.
        assert!(parse("a < sx").is_err());
    }

    #[test]
    fn graph_literals() {
        let f = parse("g6:Bw <.i x").unwrap();
        assert!(matches!(f, Formula::Rel(RelOp::Cover(OrderKind::Induced), Term::Graph(_), _)));
    }
}
