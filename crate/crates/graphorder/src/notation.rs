//! A small textual notation for graphs, used on the command line and in
//! corpus instance lists.
//!
//! ```text
//! spec  := part ('+' part)*            disjoint union
//! part  := 'g6:' <graph6>
//!        | 'empty'
//!        | N<k> | K<k> | P<k> | C<k> | S<k> | C1_<k> | C2_<k>
//!        | 'double3star'
//!        | cp4c(i,j) | pcs(i,j) | bicycle(i,j) | csum(n) | psum(n)
//!        | hooks(n) | stree(n) | opres(spec) | ecgadget(spec)
//!        | cliques(spec)
//! ```
//!
//! `opres(spec)` labels the base by the vertex order of its canonical
//! representative. Text the notation cannot read is tried as bare graph6,
//! so printed codes can be fed back in.

use crate::error::{Error, Result};
use crate::graph::CanonicalGraph;
use crate::named::{self, NamedFamily};
use crate::{graph6, opres, predicates};

/// Parses the notation above.
pub fn parse_graph(text: &str) -> Result<CanonicalGraph> {
    notation(text).or_else(|e| graph6::decode(text.trim()).map(|g| g.canonicalize()).map_err(|_| e))
}

fn notation(text: &str) -> Result<CanonicalGraph> {
    let mut p = Parser { s: text.as_bytes(), pos: 0, text };
    let g = p.spec()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(g)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    text: &'a str,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in graph {:?}", self.pos, self.text))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.s.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn spec(&mut self) -> Result<CanonicalGraph> {
        let mut g = self.part()?;
        while self.eat(b'+') {
            g = g.disjoint_union(&self.part()?)?;
        }
        Ok(g)
    }

    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphabetic()) {
            self.pos += 1;
        }
        if self.text[start..self.pos] == *"double" && self.text[self.pos..].starts_with("3star") {
            self.pos += "3star".len();
        }
        &self.text[start..self.pos]
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.text[start..self.pos].parse().map_err(|_| self.err("expected a number"))
    }

    fn pair(&mut self) -> Result<(usize, usize)> {
        self.expect(b'(')?;
        let a = self.number()?;
        self.expect(b',')?;
        let b = self.number()?;
        self.expect(b')')?;
        Ok((a, b))
    }

    fn single(&mut self) -> Result<usize> {
        self.expect(b'(')?;
        let a = self.number()?;
        self.expect(b')')?;
        Ok(a)
    }

    fn nested(&mut self) -> Result<CanonicalGraph> {
        self.expect(b'(')?;
        let g = self.spec()?;
        self.expect(b')')?;
        Ok(g)
    }

    fn part(&mut self) -> Result<CanonicalGraph> {
        self.skip_ws();
        if self.text[self.pos..].starts_with("g6:") {
            self.pos += 3;
            let start = self.pos;
            while self.pos < self.s.len() && (63..=126).contains(&self.s[self.pos]) {
                self.pos += 1;
            }
            return Ok(graph6::decode(&self.text[start..self.pos])?.canonicalize());
        }
        let mut w = self.word();
        if w == "cp" && self.text[self.pos..].starts_with("4c") {
            self.pos += 2;
            w = "cp4c";
        }
        match w {
            "empty" => Ok(CanonicalGraph::null()),
            "double3star" => Ok(named::make_double3star()),
            "cp4c" => {
                let (i, j) = self.pair()?;
                named::cp4c_graph(i, j)
            }
            "pcs" => {
                let (i, j) = self.pair()?;
                named::pointed_cycle_sum_graph(i, j)
            }
            "bicycle" => {
                let (i, j) = self.pair()?;
                named::bicycle_graph(i, j)
            }
            "csum" => named::csum_graph(self.single()?),
            "psum" => named::psum_graph(self.single()?),
            "hooks" => named::csum_hook_graph(self.single()?),
            "stree" => named::stree(self.single()?),
            "opres" => {
                let base = self.nested()?;
                Ok(opres::build_opres(base.repr())?.total)
            }
            "ecgadget" => predicates::build_count_edges_gadget(&self.nested()?),
            "cliques" => Ok(predicates::extend_to_cliques(&self.nested()?)),
            "N" | "K" | "P" | "C" | "S" => {
                let f = match w {
                    "N" => NamedFamily::N,
                    "K" => NamedFamily::K,
                    "P" => NamedFamily::P,
                    "C" => NamedFamily::C,
                    _ => NamedFamily::S,
                };
                let k = self.number()?;
                if f == NamedFamily::C && self.eat(b'_') {
                    let family = match k {
                        1 => NamedFamily::C1,
                        2 => NamedFamily::C2,
                        _ => return Err(self.err("expected C1_ or C2_")),
                    };
                    return named::make_named(family, self.number()?);
                }
                named::make_named(f, k)
            }
            _ => Err(self.err(&format!("unknown graph name {w:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::make_named;

    #[test]
    fn names_and_unions() {
        assert_eq!(parse_graph("K3").unwrap(), make_named(NamedFamily::K, 3).unwrap());
        assert_eq!(parse_graph("C1_4").unwrap(), make_named(NamedFamily::C1, 4).unwrap());
        let g = parse_graph("K2 + N1").unwrap();
        assert_eq!((g.order(), g.size()), (3, 1));
        assert_eq!(parse_graph("g6:Bw").unwrap(), make_named(NamedFamily::K, 3).unwrap());
        assert_eq!(parse_graph("opres(S4)").unwrap().order(), 38);
        assert_eq!(parse_graph("csum(2)").unwrap().order(), 11);
        assert_eq!(parse_graph("empty").unwrap().order(), 0);
        assert_eq!(parse_graph("double3star + K1").unwrap().order(), 7);
        assert_eq!(parse_graph("Bw").unwrap(), parse_graph("K3").unwrap());
        assert!(parse_graph("Q3").is_err());
        assert!(parse_graph("K3 +").is_err());
    }
}
