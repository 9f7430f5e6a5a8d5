//! Named definitions and the corpus file format.
//!
//! A corpus is a sequence of blocks separated by blank lines. Lines starting
//! with `#` are comments. A block holds annotation lines followed by one
//! definition:
//!
//! ```text
//! @cite edgeless graphs
//! @oracle N
//! @verify-n 6
//! N(x) := K2 !<=s x
//! ```
//!
//! Annotations:
//!
//! | line | meaning |
//! |------|---------|
//! | `@cite <text>` | where the formula comes from |
//! | `@oracle <name>` | registered oracle the formula is checked against |
//! | `@verify-n <n>` | argument universe for conformance |
//! | `@exact` | bounds make evaluation exact over any universe |
//! | `@monotone-safe <note>` | unbounded quantifiers are exact over any universe |
//! | `@corrected <note>` | repaired transcription |
//! | `@as-printed <note>` | literal transcription expected to fail |
//! | `@reconstructed <note>` | body rebuilt from a prose argument |
//! | `@oracle-only <note>` | too large to evaluate; instances checked by oracle only |
//! | `@known-divergence <formula> : <note>` | disagreements where the formula holds are expected |
//! | `@instances <t>; <t>; …` | extra argument tuples, entries separated by `,` |
//! | `@bound <note>` | justification of a quantifier bound |

use std::collections::HashMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::fo::ast::{Formula, Term};
use crate::fo::parser::{parse, parse_head};
use crate::graph::CanonicalGraph;
use crate::notation::parse_graph;

/// Relations evaluated natively rather than by a definition.
pub const BUILTINS: &[(&str, usize)] = &[
    ("sameCard", 2),
    ("sameSize", 2),
    ("disjointUnion", 3),
    ("seqEntry", 3),
    ("seqSum", 2),
    ("seqConvert", 2),
];

pub fn builtin_arity(name: &str) -> Option<usize> {
    BUILTINS.iter().find(|(n, _)| *n == name).map(|&(_, a)| a)
}

/// How a corpus entry relates to its printed source.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    #[default]
    Transcribed,
    Corrected,
    AsPrinted,
    Reconstructed,
}

#[derive(Clone, Debug, PartialEq)]
pub struct KnownDivergence {
    /// Over the definition's parameters.
    pub filter: Formula,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub text: String,
    pub args: Vec<CanonicalGraph>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Annotations {
    pub cite: Option<String>,
    pub oracle: Option<String>,
    pub verify_n: Option<usize>,
    pub exact: bool,
    pub monotone_safe: Option<String>,
    pub status: Status,
    pub status_note: Option<String>,
    pub oracle_only: Option<String>,
    pub known_divergences: Vec<KnownDivergence>,
    pub instances: Vec<Instance>,
    pub bounds: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Definition {
    pub name: String,
    pub params: Vec<String>,
    pub body: Formula,
    pub notes: Annotations,
}

impl Definition {
    pub fn new(name: &str, params: &[&str], body: Formula) -> Definition {
        Definition {
            name: name.to_string(),
            params: params.iter().map(|p| p.to_string()).collect(),
            body,
            notes: Annotations::default(),
        }
    }

    pub fn arity(&self) -> usize {
        self.params.len()
    }
}

/// An ordered set of definitions with unique names and no cycles.
#[derive(Clone, Debug, Default)]
pub struct Environment {
    defs: Vec<Definition>,
    index: HashMap<String, usize>,
}

impl Environment {
    pub fn new() -> Environment {
        Environment::default()
    }

    pub fn definitions(&self) -> &[Definition] {
        &self.defs
    }

    pub fn get(&self, name: &str) -> Option<&Definition> {
        self.index.get(name).map(|&i| &self.defs[i])
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn len(&self) -> usize {
        self.defs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.defs.is_empty()
    }

    /// Adds a definition. Its calls may refer to earlier or later entries;
    /// [`Environment::check`] validates the whole set.
    pub fn add(&mut self, def: Definition) -> Result<()> {
        if builtin_arity(&def.name).is_some() {
            return Err(Error::Resolution(format!("{} is a built-in relation", def.name)));
        }
        if self.index.contains_key(&def.name) {
            return Err(Error::Resolution(format!("{} is defined twice", def.name)));
        }
        for (i, p) in def.params.iter().enumerate() {
            if def.params[..i].contains(p) {
                return Err(Error::Resolution(format!("{}: parameter {p} repeated", def.name)));
            }
        }
        self.index.insert(def.name.clone(), self.defs.len());
        self.defs.push(def);
        Ok(())
    }

    /// Checks that every name resolves with the right arity, that free
    /// variables are parameters, and that the dependency graph is acyclic.
    pub fn check(&self) -> Result<()> {
        let mut deps = Vec::with_capacity(self.defs.len());
        for def in &self.defs {
            let bound: Vec<String> = def.params.clone();
            let d = self.dependencies(&def.body, &bound).map_err(|e| match e {
                Error::Resolution(m) => Error::Resolution(format!("in {}: {m}", def.name)),
                e => e,
            })?;
            for kd in &def.notes.known_divergences {
                self.dependencies(&kd.filter, &bound)?;
            }
            deps.push(d);
        }
        // Depth-first search for a back edge.
        let mut state = vec![0u8; self.defs.len()];
        fn visit(v: usize, deps: &[Vec<usize>], state: &mut [u8], defs: &[Definition]) -> Result<()> {
            state[v] = 1;
            for &w in &deps[v] {
                match state[w] {
                    1 => {
                        return Err(Error::Resolution(format!(
                            "cyclic definition through {} and {}",
                            defs[v].name, defs[w].name
                        )))
                    }
                    0 => visit(w, deps, state, defs)?,
                    _ => {}
                }
            }
            state[v] = 2;
            Ok(())
        }
        for v in 0..self.defs.len() {
            if state[v] == 0 {
                visit(v, &deps, &mut state, &self.defs)?;
            }
        }
        Ok(())
    }

    /// Definitions that `f` refers to, with `bound` variables in scope.
    pub fn dependencies(&self, f: &Formula, bound: &[String]) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        self.collect(f, &mut bound.to_vec(), &mut out)?;
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    fn resolve_term(&self, t: &Term, scope: &[String], out: &mut Vec<usize>) -> Result<()> {
        if let Term::Name(n) = t {
            if scope.contains(n) {
                return Ok(());
            }
            match self.index.get(n) {
                Some(&i) if self.defs[i].arity() == 1 => out.push(i),
                Some(_) => return Err(Error::Resolution(format!("{n} is not unary, so it cannot name a constant"))),
                None => return Err(Error::Resolution(format!("unbound variable {n}"))),
            }
        }
        Ok(())
    }

    fn collect(&self, f: &Formula, scope: &mut Vec<String>, out: &mut Vec<usize>) -> Result<()> {
        match f {
            Formula::Call(name, args) => {
                let arity = match (builtin_arity(name), self.index.get(name)) {
                    (Some(a), _) => a,
                    (None, Some(&i)) => {
                        out.push(i);
                        self.defs[i].arity()
                    }
                    (None, None) => return Err(Error::Resolution(format!("unknown predicate {name}"))),
                };
                if arity != args.len() {
                    return Err(Error::Resolution(format!(
                        "{name} takes {arity} arguments, given {}",
                        args.len()
                    )));
                }
                for a in args {
                    self.resolve_term(a, scope, out)?;
                }
            }
            Formula::Quant { var, domain, body, .. } => {
                if let Some(d) = domain {
                    let probe = Formula::Quant {
                        q: crate::fo::ast::Quantifier::Exists,
                        var: var.clone(),
                        domain: Some(d.clone()),
                        body: Box::new(Formula::True),
                    };
                    for t in probe.terms() {
                        self.resolve_term(t, scope, out)?;
                    }
                }
                scope.push(var.clone());
                let r = self.collect(body, scope, out);
                scope.pop();
                r?;
            }
            Formula::Not(a) => self.collect(a, scope, out)?,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                self.collect(a, scope, out)?;
                self.collect(b, scope, out)?;
            }
            Formula::Rel(..) | Formula::Cmp(..) => {
                for t in f.terms() {
                    self.resolve_term(t, scope, out)?;
                }
            }
            Formula::True | Formula::False => {}
        }
        Ok(())
    }

    /// Parses corpus text.
    pub fn parse_corpus(text: &str) -> Result<Environment> {
        let mut env = Environment::new();
        let lines: Vec<&str> = text.lines().collect();
        let mut i = 0;
        while i < lines.len() {
            if lines[i].trim().is_empty() {
                i += 1;
                continue;
            }
            let start = i;
            while i < lines.len() && !lines[i].trim().is_empty() {
                i += 1;
            }
            if let Some(def) = parse_block(&lines, start, i)? {
                env.add(def)?;
            }
        }
        env.check()?;
        Ok(env)
    }
}

fn syntax(line: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { line: line + 1, col: 1, msg: msg.into() }
}

/// Text of `lines[from..to]` with everything before `(line, col)` blanked, so
/// parser positions match the file.
fn positioned(lines: &[&str], line: usize, col: usize, to: usize) -> String {
    let mut s = "\n".repeat(line);
    s.push_str(&" ".repeat(col));
    s.push_str(&lines[line][col..]);
    for l in &lines[line + 1..to] {
        s.push('\n');
        s.push_str(l);
    }
    s
}

fn parse_block(lines: &[&str], from: usize, to: usize) -> Result<Option<Definition>> {
    let mut notes = Annotations::default();
    let mut pending_filters: Vec<(usize, String, String)> = Vec::new();
    let mut head_line = None;
    for (k, raw) in lines.iter().enumerate().take(to).skip(from) {
        let line = raw.trim();
        if line.starts_with('#') {
            continue;
        }
        let Some(rest) = line.strip_prefix('@') else {
            head_line = Some(k);
            break;
        };
        let (key, value) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
        let value = value.trim().to_string();
        let note = || if value.is_empty() { None } else { Some(value.clone()) };
        let set_status = |notes: &mut Annotations, s: Status| -> Result<()> {
            if notes.status != Status::Transcribed {
                return Err(syntax(k, "conflicting status annotations"));
            }
            notes.status = s;
            notes.status_note = note();
            Ok(())
        };
        match key {
            "cite" => notes.cite = Some(value.clone()),
            "oracle" => notes.oracle = Some(value.clone()),
            "verify-n" => {
                notes.verify_n = Some(value.parse().map_err(|_| syntax(k, "@verify-n needs a number"))?)
            }
            "exact" => notes.exact = true,
            "monotone-safe" => notes.monotone_safe = Some(value.clone()),
            "corrected" => set_status(&mut notes, Status::Corrected)?,
            "as-printed" => set_status(&mut notes, Status::AsPrinted)?,
            "reconstructed" => set_status(&mut notes, Status::Reconstructed)?,
            "oracle-only" => notes.oracle_only = Some(value.clone()),
            "bound" => notes.bounds.push(value.clone()),
            "known-divergence" => {
                let (f, n) = value.rsplit_once(" : ").ok_or_else(|| syntax(k, "expected '<formula> : <note>'"))?;
                pending_filters.push((k, f.to_string(), n.trim().to_string()));
            }
            "instances" => {
                for tuple in value.split(';').map(str::trim).filter(|t| !t.is_empty()) {
                    let args = split_top_level(tuple)
                        .iter()
                        .map(|a| parse_graph(a))
                        .collect::<Result<Vec<_>>>()
                        .map_err(|e| syntax(k, e.to_string()))?;
                    notes.instances.push(Instance { text: tuple.to_string(), args });
                }
            }
            _ => return Err(syntax(k, format!("unknown annotation @{key}"))),
        }
    }
    let Some(h) = head_line else {
        if notes == Annotations::default() && pending_filters.is_empty() {
            return Ok(None);
        }
        return Err(syntax(to - 1, "annotations without a definition"));
    };
    let Some(col) = lines[h].find(":=") else {
        return Err(syntax(h, "expected 'name(params) := formula'"));
    };
    let (name, params) = parse_head(&lines[h][..col]).map_err(|e| match e {
        Error::Syntax { col, msg, .. } => Error::Syntax { line: h + 1, col, msg },
        e => e,
    })?;
    let body = parse(&positioned(lines, h, col + 2, to))?;
    for (k, text, note) in pending_filters {
        let filter = parse(&text).map_err(|e| match e {
            Error::Syntax { msg, .. } => syntax(k, format!("in @known-divergence: {msg}")),
            e => e,
        })?;
        notes.known_divergences.push(KnownDivergence { filter, note });
    }
    for inst in &notes.instances {
        if inst.args.len() != params.len() {
            return Err(syntax(h, format!("{name}: instance '{}' has the wrong arity", inst.text)));
        }
    }
    Ok(Some(Definition { name, params, body, notes }))
}

/// Splits on commas outside parentheses.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

/// The corpus shipped with the crate.
pub const CORPUS: &str = include_str!("../../corpus/graph_orders.fo");

/// Parses the shipped corpus.
pub fn builtin_corpus() -> Environment {
    Environment::parse_corpus(CORPUS).expect("the shipped corpus is well formed")
}

/// Reads and checks a corpus file.
pub fn load_corpus(path: impl AsRef<Path>) -> Result<Environment> {
    let text = std::fs::read_to_string(path.as_ref())
        .map_err(|e| Error::Parse(format!("{}: {e}", path.as_ref().display())))?;
    Environment::parse_corpus(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "\
# a comment
@cite test
@verify-n 4
@monotone-safe every graph is above the null graph
emptyG(x) := forall y . x <=s y

@oracle N
@known-divergence |x| = 0 : the null graph
@instances N3; K2 + N1
N(x) := K2 !<=s x

@exact
K2(x) := N1(x)
  | false

@instances cp4c(4,5), K2
P(x, y) := x = y
";

    #[test]
    fn parses_blocks_and_annotations() {
        let env = Environment::parse_corpus(SMALL.replace("N1(x)", "x = x").as_str()).unwrap();
        assert_eq!(env.len(), 4);
        let n = env.get("N").unwrap();
        assert_eq!(n.notes.oracle.as_deref(), Some("N"));
        assert_eq!(n.notes.instances.len(), 2);
        assert_eq!(n.notes.known_divergences[0].note, "the null graph");
        assert!(env.get("K2").unwrap().notes.exact);
        assert_eq!(env.get("emptyG").unwrap().notes.verify_n, Some(4));
        assert_eq!(env.get("P").unwrap().notes.instances[0].args.len(), 2);
    }

    #[test]
    fn resolution_errors() {
        // N1 is not defined.
        assert!(matches!(Environment::parse_corpus(SMALL), Err(Error::Resolution(_))));
        let cyclic = "A(x) := B(x)\n\nB(x) := A(x)\n";
        assert!(matches!(Environment::parse_corpus(cyclic), Err(Error::Resolution(m)) if m.contains("cyclic")));
        let dup = "A(x) := true\n\nA(y) := false\n";
        assert!(Environment::parse_corpus(dup).is_err());
        let free = "A(x) := x = z\n";
        assert!(Environment::parse_corpus(free).is_err());
        let builtin = "sameCard(x, y) := true\n";
        assert!(Environment::parse_corpus(builtin).is_err());
    }

    #[test]
    fn syntax_errors_use_file_positions() {
        let text = "A(x) := true\n\n@cite c\nB(x) := x <=s\n  & y\n";
        match Environment::parse_corpus(text) {
            Err(Error::Syntax { line: 5, col: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn shipped_corpus_is_well_formed() {
        let env = builtin_corpus();
        assert!(env.len() > 80);
        for def in env.definitions() {
            assert!(def.notes.cite.is_some(), "{} has no @cite", def.name);
            // Exactly the definitions with an oracle are verified.
            assert_eq!(def.notes.verify_n.is_some(), def.notes.oracle.is_some(), "{}", def.name);
        }
    }
}
