//! Bounded evaluation of formulas over a universe segment.
//!
//! Definitions are compiled once into slot-indexed trees. Graphs are interned
//! as `u32` ids: universe members keep their universe index, graphs met
//! outside the universe (upper covers, literals, `N_k` for large `k`) are
//! appended.
//!
//! Every result carries a `truncated` flag. A quantifier whose domain was cut
//! off by the universe, or whose body was truncated, yields a truncated
//! result unless a witness (for `exists`) or counterexample (for `forall`)
//! settles it exactly.

use std::collections::HashSet;
use std::sync::{Arc, RwLock};

use dashmap::DashMap;
use rayon::prelude::*;

use crate::encodings::ExpSequence;
use crate::error::{Error, Result};
use crate::fo::ast::*;
use crate::fo::env::{builtin_arity, Environment};
use crate::graph::CanonicalGraph;
use crate::named::{make_named, NamedFamily};
use crate::orders::{self, OrderKind};
use crate::universe::Universe;

/// A truth value and whether the universe bound may have affected it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Truth {
    pub value: bool,
    pub truncated: bool,
}

impl Truth {
    pub const fn exact(value: bool) -> Truth {
        Truth { value, truncated: false }
    }

    fn settled(self, value: bool) -> bool {
        self.value == value && !self.truncated
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum CTerm {
    Slot(u16),
    /// The unique satisfier of a unary definition.
    Const(u32),
    Lit(u32),
}

#[derive(Clone, Debug)]
enum CNum {
    Lit(u64),
    Card(CTerm),
    Size(CTerm),
    Bin(NumOp, Box<CNum>, Box<CNum>),
}

#[derive(Clone, Debug)]
enum CDom {
    AtMost(CNum),
    Exactly(CNum),
    Below { kind: OrderKind, strict: bool, of: CTerm },
    Upper { kind: OrderKind, of: CTerm },
    Numbers(CNum),
    /// The whole universe; exact only under `@monotone-safe`.
    All { exact: bool },
}

#[derive(Clone, Copy, Debug)]
enum Builtin {
    SameCard,
    SameSize,
    DisjointUnion,
    SeqEntry,
    SeqSum,
    SeqConvert,
}

#[derive(Clone, Debug)]
enum CF {
    Const(bool),
    Rel(RelOp, CTerm, CTerm),
    Call(u32, Vec<CTerm>),
    Builtin(Builtin, Vec<CTerm>),
    Cmp(CmpOp, CNum, CNum),
    Not(Box<CF>),
    And(Box<CF>, Box<CF>),
    Or(Box<CF>, Box<CF>),
    Implies(Box<CF>, Box<CF>),
    Iff(Box<CF>, Box<CF>),
    Quant { q: Quantifier, slot: u16, dom: CDom, body: Box<CF> },
}

#[derive(Debug)]
struct Compiled {
    arity: usize,
    slots: usize,
    body: CF,
}

struct Compiler<'e> {
    env: &'e Environment,
    interner: &'e Interner<'e>,
    scope: Vec<String>,
    max_slots: usize,
    /// Unannotated quantifiers are exact.
    monotone_safe: bool,
}

impl<'e> Compiler<'e> {
    fn term(&mut self, t: &Term) -> Result<CTerm> {
        match t {
            Term::Graph(g) => Ok(CTerm::Lit(self.interner.intern(g))),
            Term::Name(n) => {
                if let Some(i) = self.scope.iter().rposition(|v| v == n) {
                    return Ok(CTerm::Slot(i as u16));
                }
                match self.env.position(n) {
                    Some(d) if self.env.definitions()[d].arity() == 1 => Ok(CTerm::Const(d as u32)),
                    Some(_) => Err(Error::Resolution(format!("{n} is not unary, so it cannot name a constant"))),
                    None => Err(Error::Resolution(format!("unbound variable {n}"))),
                }
            }
        }
    }

    fn num(&mut self, e: &NumExpr) -> Result<CNum> {
        Ok(match e {
            NumExpr::Lit(n) => CNum::Lit(*n),
            NumExpr::Card(t) => CNum::Card(self.term(t)?),
            NumExpr::Size(t) => CNum::Size(self.term(t)?),
            NumExpr::Bin(op, a, b) => CNum::Bin(*op, Box::new(self.num(a)?), Box::new(self.num(b)?)),
        })
    }

    fn formula(&mut self, f: &Formula) -> Result<CF> {
        let bx = |c: CF| Box::new(c);
        Ok(match f {
            Formula::True => CF::Const(true),
            Formula::False => CF::Const(false),
            Formula::Rel(op, a, b) => CF::Rel(*op, self.term(a)?, self.term(b)?),
            Formula::Call(name, args) => {
                let targs = args.iter().map(|a| self.term(a)).collect::<Result<Vec<_>>>()?;
                let arity = match (builtin_arity(name), self.env.position(name)) {
                    (Some(a), _) => a,
                    (None, Some(d)) => self.env.definitions()[d].arity(),
                    (None, None) => return Err(Error::Resolution(format!("unknown predicate {name}"))),
                };
                if arity != targs.len() {
                    return Err(Error::Resolution(format!(
                        "{name} takes {arity} arguments, given {}",
                        targs.len()
                    )));
                }
                let b = match name.as_str() {
                    "sameCard" => Builtin::SameCard,
                    "sameSize" => Builtin::SameSize,
                    "disjointUnion" => Builtin::DisjointUnion,
                    "seqEntry" => Builtin::SeqEntry,
                    "seqSum" => Builtin::SeqSum,
                    "seqConvert" => Builtin::SeqConvert,
                    _ => return Ok(CF::Call(self.env.position(name).unwrap() as u32, targs)),
                };
                CF::Builtin(b, targs)
            }
            Formula::Cmp(op, a, b) => CF::Cmp(*op, self.num(a)?, self.num(b)?),
            Formula::Not(a) => CF::Not(bx(self.formula(a)?)),
            Formula::And(a, b) => CF::And(bx(self.formula(a)?), bx(self.formula(b)?)),
            Formula::Or(a, b) => CF::Or(bx(self.formula(a)?), bx(self.formula(b)?)),
            Formula::Implies(a, b) => CF::Implies(bx(self.formula(a)?), bx(self.formula(b)?)),
            Formula::Iff(a, b) => CF::Iff(bx(self.formula(a)?), bx(self.formula(b)?)),
            Formula::Quant { q, var, domain, body } => {
                // The domain is read in the enclosing scope.
                let dom = match domain {
                    None => CDom::All { exact: self.monotone_safe },
                    Some(Domain::AtMost(e)) => CDom::AtMost(self.num(e)?),
                    Some(Domain::Exactly(e)) => CDom::Exactly(self.num(e)?),
                    Some(Domain::Numbers(e)) => CDom::Numbers(self.num(e)?),
                    Some(Domain::Below { kind, strict, of }) => {
                        CDom::Below { kind: *kind, strict: *strict, of: self.term(of)? }
                    }
                    Some(Domain::UpperCovers { kind, of }) => {
                        if *kind == OrderKind::Minor {
                            return Err(Error::Resolution("upper covers in the minor order are not supported".into()));
                        }
                        CDom::Upper { kind: *kind, of: self.term(of)? }
                    }
                };
                self.scope.push(var.clone());
                let slot = self.scope.len() - 1;
                self.max_slots = self.max_slots.max(self.scope.len());
                let body = self.formula(body);
                self.scope.pop();
                CF::Quant { q: *q, slot: slot as u16, dom, body: bx(body?) }
            }
        })
    }
}

/// Universe members keep their index; other graphs are appended on demand.
struct Interner<'a> {
    universe: &'a Universe,
    extra: RwLock<Vec<Arc<CanonicalGraph>>>,
    index: DashMap<CanonicalGraph, u32>,
}

impl<'a> Interner<'a> {
    fn intern(&self, g: &CanonicalGraph) -> u32 {
        if let Some(p) = self.universe.position(g) {
            return p as u32;
        }
        if let Some(id) = self.index.get(g) {
            return *id;
        }
        let mut extra = self.extra.write().expect("interner lock");
        *self.index.entry(g.clone()).or_insert_with(|| {
            extra.push(Arc::new(g.clone()));
            (self.universe.len() + extra.len() - 1) as u32
        })
    }

    fn in_universe(&self, id: u32) -> bool {
        (id as usize) < self.universe.len()
    }

    fn with<R>(&self, id: u32, f: impl FnOnce(&CanonicalGraph) -> R) -> R {
        let i = id as usize;
        if i < self.universe.len() {
            f(self.universe.get(i))
        } else {
            let g = Arc::clone(&self.extra.read().expect("interner lock")[i - self.universe.len()]);
            f(&g)
        }
    }

    fn graph(&self, id: u32) -> CanonicalGraph {
        self.with(id, |g| g.clone())
    }

    fn order(&self, id: u32) -> usize {
        self.with(id, |g| g.order())
    }

    fn size(&self, id: u32) -> usize {
        self.with(id, |g| g.size())
    }
}

type MemoKey = (u32, [u32; 4]);
const MEMO_ARITY: usize = 4;

/// Evaluates formulas of an environment over a universe.
///
/// The evaluator is `Sync`; its caches are shared between threads.
pub struct Evaluator<'a> {
    env: &'a Environment,
    universe: &'a Universe,
    interner: Box<Interner<'a>>,
    defs: Vec<Compiled>,
    leq_cache: DashMap<(OrderKind, u32, u32), bool>,
    down_cache: DashMap<(OrderKind, u32), Arc<Vec<u32>>>,
    up_cache: DashMap<(OrderKind, u32), Arc<Vec<u32>>>,
    comp_cache: DashMap<u32, Arc<Vec<CanonicalGraph>>>,
    memo: DashMap<MemoKey, Truth>,
    consts: DashMap<u32, std::result::Result<u32, String>>,
    subst: Vec<Option<Oracle>>,
}

/// A decision procedure standing in for a definition.
pub type Oracle = Arc<dyn Fn(&[CanonicalGraph]) -> bool + Send + Sync>;

impl<'a> Evaluator<'a> {
    /// Compiles every definition of `env`.
    pub fn new(env: &'a Environment, universe: &'a Universe) -> Result<Evaluator<'a>> {
        env.check()?;
        let interner = Box::new(Interner { universe, extra: RwLock::new(Vec::new()), index: DashMap::new() });
        let mut defs = Vec::with_capacity(env.len());
        {
            // The compiler borrows the interner only while compiling.
            let interner_ref: &Interner<'_> = &interner;
            for d in env.definitions() {
                let mut c = Compiler {
                    env,
                    interner: interner_ref,
                    scope: d.params.clone(),
                    max_slots: d.arity(),
                    monotone_safe: d.notes.monotone_safe.is_some(),
                };
                let body = c.formula(&d.body).map_err(|e| match e {
                    Error::Resolution(m) => Error::Resolution(format!("in {}: {m}", d.name)),
                    e => e,
                })?;
                defs.push(Compiled { arity: d.arity(), slots: c.max_slots, body });
            }
        }
        Ok(Evaluator {
            env,
            universe,
            interner,
            defs,
            leq_cache: DashMap::new(),
            down_cache: DashMap::new(),
            up_cache: DashMap::new(),
            comp_cache: DashMap::new(),
            memo: DashMap::new(),
            consts: DashMap::new(),
            subst: vec![None; env.len()],
        })
    }

    /// Answers calls of the named definitions with the given oracles, exactly,
    /// instead of evaluating their bodies. Used to check a formula on graphs
    /// whose helper predicates would need a larger universe.
    pub fn with_substitutions(mut self, subst: impl IntoIterator<Item = (String, Oracle)>) -> Result<Evaluator<'a>> {
        for (name, oracle) in subst {
            let d = self
                .env
                .position(&name)
                .ok_or_else(|| Error::Resolution(format!("unknown predicate {name}")))?;
            self.subst[d] = Some(oracle);
        }
        self.memo.clear();
        self.consts.clear();
        Ok(self)
    }

    pub fn universe(&self) -> &Universe {
        self.universe
    }

    pub fn environment(&self) -> &Environment {
        self.env
    }

    /// Id of a graph, interning it if it lies outside the universe.
    pub fn intern(&self, g: &CanonicalGraph) -> u32 {
        self.interner.intern(g)
    }

    pub fn graph(&self, id: u32) -> CanonicalGraph {
        self.interner.graph(id)
    }

    /// Evaluates the named definition on the given arguments.
    pub fn call(&self, name: &str, args: &[CanonicalGraph]) -> Result<Truth> {
        let d = self
            .env
            .position(name)
            .ok_or_else(|| Error::Resolution(format!("unknown predicate {name}")))?;
        if self.defs[d].arity != args.len() {
            return Err(Error::Resolution(format!(
                "{name} takes {} arguments, given {}",
                self.defs[d].arity,
                args.len()
            )));
        }
        let ids: Vec<u32> = args.iter().map(|g| self.intern(g)).collect();
        self.call_def(d as u32, &ids)
    }

    /// Evaluates definition `d` on interned arguments.
    pub fn call_ids(&self, name: &str, ids: &[u32]) -> Result<Truth> {
        let d = self
            .env
            .position(name)
            .ok_or_else(|| Error::Resolution(format!("unknown predicate {name}")))?;
        self.call_def(d as u32, ids)
    }

    /// Compiles an ad hoc formula whose free variables are `vars`.
    pub fn prepare(&self, f: &Formula, vars: &[String]) -> Result<Prepared> {
        let mut c = Compiler {
            env: self.env,
            interner: &self.interner,
            scope: vars.to_vec(),
            max_slots: vars.len(),
            monotone_safe: false,
        };
        let body = c.formula(f)?;
        Ok(Prepared { vars: vars.to_vec(), compiled: Compiled { arity: vars.len(), slots: c.max_slots, body } })
    }

    /// Evaluates a prepared formula with its variables bound to `ids`.
    pub fn eval_prepared(&self, p: &Prepared, ids: &[u32]) -> Result<Truth> {
        if ids.len() != p.compiled.arity {
            return Err(Error::Eval(format!("expected {} values, given {}", p.compiled.arity, ids.len())));
        }
        let mut frame = vec![u32::MAX; p.compiled.slots];
        frame[..ids.len()].copy_from_slice(ids);
        self.eval(&p.compiled.body, &mut frame)
    }

    /// Evaluates `f` under `assignment`. Unassigned free variables are an error.
    pub fn evaluate(&self, f: &Formula, assignment: &[(String, CanonicalGraph)]) -> Result<Truth> {
        let vars: Vec<String> = assignment.iter().map(|(v, _)| v.clone()).collect();
        let p = self.prepare(f, &vars)?;
        let ids: Vec<u32> = assignment.iter().map(|(_, g)| self.intern(g)).collect();
        self.eval_prepared(&p, &ids)
    }

    /// All tuples over the universe satisfying `f`, whose free variables (in
    /// order of first appearance) number `arity`. Tuples come in
    /// lexicographic universe order; the flag reports any truncation.
    pub fn extension(&self, f: &Formula, arity: usize) -> Result<Extension> {
        let vars = free_variables(f, self.env);
        if vars.len() != arity {
            return Err(Error::Eval(format!(
                "formula has {} free variables ({}), arity {arity} requested",
                vars.len(),
                vars.join(", ")
            )));
        }
        let p = self.prepare(f, &vars)?;
        let n = self.universe.len();
        let total = n.checked_pow(arity as u32).ok_or_else(|| Error::Resource("too many tuples".into()))?;
        if total > 50_000_000 {
            return Err(Error::Resource(format!("{total} tuples to enumerate")));
        }
        let rows: Vec<(Option<Vec<CanonicalGraph>>, bool)> = (0..total)
            .into_par_iter()
            .map(|mut code| {
                let mut ids = vec![0u32; arity];
                for slot in ids.iter_mut().rev() {
                    *slot = (code % n) as u32;
                    code /= n;
                }
                let t = self.eval_prepared(&p, &ids)?;
                let tuple = t.value.then(|| ids.iter().map(|&i| self.graph(i)).collect());
                Ok((tuple, t.truncated))
            })
            .collect::<Result<_>>()?;
        let truncated = rows.iter().any(|(_, t)| *t);
        let tuples = rows.into_iter().filter_map(|(g, _)| g).collect();
        Ok(Extension { vars, tuples, truncated })
    }

    /// The unique universe member satisfying unary definition `d`.
    pub fn constant(&self, name: &str) -> Result<CanonicalGraph> {
        let d = self
            .env
            .position(name)
            .ok_or_else(|| Error::Resolution(format!("unknown predicate {name}")))?;
        Ok(self.graph(self.const_id(d as u32)?))
    }

    fn const_id(&self, d: u32) -> Result<u32> {
        if let Some(r) = self.consts.get(&d) {
            return r.clone().map_err(Error::Eval);
        }
        let name = &self.env.definitions()[d as usize].name;
        let mut found = Vec::new();
        let mut truncated = false;
        for id in 0..self.universe.len() as u32 {
            let t = self.call_def(d, &[id])?;
            truncated |= t.truncated;
            if t.value {
                found.push(id);
                if found.len() > 1 {
                    break;
                }
            }
        }
        let r = match (found.as_slice(), truncated) {
            (_, true) => Err(format!("constant {name} is not determined exactly over U_{}", self.universe.max_vertices())),
            ([id], false) => Ok(*id),
            ([], false) => Err(format!("no graph in U_{} satisfies {name}", self.universe.max_vertices())),
            (_, false) => Err(format!("{name} has several satisfiers, so it does not name a constant")),
        };
        self.consts.insert(d, r.clone());
        r.map_err(Error::Eval)
    }

    fn call_def(&self, d: u32, args: &[u32]) -> Result<Truth> {
        let key = (args.len() <= MEMO_ARITY).then(|| {
            let mut k = [u32::MAX; MEMO_ARITY];
            k[..args.len()].copy_from_slice(args);
            (d, k)
        });
        if let Some(k) = &key {
            if let Some(t) = self.memo.get(k) {
                return Ok(*t);
            }
        }
        if let Some(oracle) = &self.subst[d as usize] {
            let graphs: Vec<CanonicalGraph> = args.iter().map(|&i| self.graph(i)).collect();
            let t = Truth::exact(oracle(&graphs));
            if let Some(k) = key {
                self.memo.insert(k, t);
            }
            return Ok(t);
        }
        let c = &self.defs[d as usize];
        let mut frame = vec![u32::MAX; c.slots];
        frame[..args.len()].copy_from_slice(args);
        let t = self.eval(&c.body, &mut frame)?;
        if let Some(k) = key {
            self.memo.insert(k, t);
        }
        Ok(t)
    }

    fn term(&self, t: CTerm, frame: &[u32]) -> Result<u32> {
        match t {
            CTerm::Slot(i) => Ok(frame[i as usize]),
            CTerm::Lit(id) => Ok(id),
            CTerm::Const(d) => self.const_id(d),
        }
    }

    fn num(&self, e: &CNum, frame: &[u32]) -> Result<u64> {
        Ok(match e {
            CNum::Lit(n) => *n,
            CNum::Card(t) => self.interner.order(self.term(*t, frame)?) as u64,
            CNum::Size(t) => self.interner.size(self.term(*t, frame)?) as u64,
            CNum::Bin(op, a, b) => {
                let (a, b) = (self.num(a, frame)?, self.num(b, frame)?);
                match op {
                    NumOp::Add => a.saturating_add(b),
                    NumOp::Sub => a.saturating_sub(b),
                    NumOp::Mul => a.saturating_mul(b),
                    NumOp::Div => a.checked_div(b).unwrap_or(0),
                }
            }
        })
    }

    fn eval(&self, f: &CF, frame: &mut Vec<u32>) -> Result<Truth> {
        Ok(match f {
            CF::Const(b) => Truth::exact(*b),
            CF::Rel(op, a, b) => {
                let (a, b) = (self.term(*a, frame)?, self.term(*b, frame)?);
                Truth::exact(self.relation(*op, a, b))
            }
            CF::Call(d, args) => {
                let ids = args.iter().map(|&t| self.term(t, frame)).collect::<Result<Vec<_>>>()?;
                self.call_def(*d, &ids)?
            }
            CF::Builtin(b, args) => {
                let ids = args.iter().map(|&t| self.term(t, frame)).collect::<Result<Vec<_>>>()?;
                Truth::exact(self.builtin(*b, &ids))
            }
            CF::Cmp(op, a, b) => Truth::exact(op.holds(self.num(a, frame)?, self.num(b, frame)?)),
            CF::Not(a) => {
                let t = self.eval(a, frame)?;
                Truth { value: !t.value, truncated: t.truncated }
            }
            CF::And(a, b) => self.connective(a, b, frame, false, |x, y| x && y)?,
            CF::Or(a, b) => self.connective(a, b, frame, true, |x, y| x || y)?,
            CF::Implies(a, b) => {
                let ta = self.eval(a, frame)?;
                if ta.settled(false) {
                    return Ok(Truth::exact(true));
                }
                let tb = self.eval(b, frame)?;
                if tb.settled(true) {
                    return Ok(Truth::exact(true));
                }
                Truth { value: !ta.value || tb.value, truncated: ta.truncated || tb.truncated }
            }
            CF::Iff(a, b) => {
                let (ta, tb) = (self.eval(a, frame)?, self.eval(b, frame)?);
                Truth { value: ta.value == tb.value, truncated: ta.truncated || tb.truncated }
            }
            CF::Quant { q, slot, dom, body } => {
                let (ids, complete) = self.domain(dom, frame)?;
                self.quantify(*q, *slot as usize, &ids, complete, body, frame)?
            }
        })
    }

    /// `And` (dominant `false`) and `Or` (dominant `true`).
    fn connective(
        &self,
        a: &CF,
        b: &CF,
        frame: &mut Vec<u32>,
        dominant: bool,
        op: fn(bool, bool) -> bool,
    ) -> Result<Truth> {
        let ta = self.eval(a, frame)?;
        if ta.settled(dominant) {
            return Ok(ta);
        }
        let tb = self.eval(b, frame)?;
        if tb.settled(dominant) {
            return Ok(tb);
        }
        Ok(Truth { value: op(ta.value, tb.value), truncated: ta.truncated || tb.truncated })
    }

    fn quantify(
        &self,
        q: Quantifier,
        slot: usize,
        ids: &[u32],
        complete: bool,
        body: &CF,
        frame: &mut Vec<u32>,
    ) -> Result<Truth> {
        let saved = frame[slot];
        let mut truncated = !complete;
        let result = (|| -> Result<Truth> {
            match q {
                Quantifier::Forall | Quantifier::Exists => {
                    // The value that settles the quantifier.
                    let decisive = q == Quantifier::Exists;
                    let mut seen = false;
                    for &id in ids {
                        frame[slot] = id;
                        let t = self.eval(body, frame)?;
                        if t.value == decisive {
                            if !t.truncated {
                                return Ok(Truth::exact(decisive));
                            }
                            seen = true;
                        }
                        truncated |= t.truncated;
                    }
                    Ok(Truth { value: if seen { decisive } else { !decisive }, truncated })
                }
                Quantifier::ExistsUnique => {
                    let (mut exact_hits, mut hits) = (0, 0);
                    for &id in ids {
                        frame[slot] = id;
                        let t = self.eval(body, frame)?;
                        truncated |= t.truncated;
                        if t.value {
                            hits += 1;
                            if !t.truncated {
                                exact_hits += 1;
                                if exact_hits == 2 {
                                    return Ok(Truth::exact(false));
                                }
                            }
                        }
                    }
                    Ok(Truth { value: hits == 1, truncated })
                }
            }
        })();
        frame[slot] = saved;
        result
    }

    /// Domain members and whether the domain is complete.
    fn domain(&self, dom: &CDom, frame: &[u32]) -> Result<(Arc<Vec<u32>>, bool)> {
        let max = self.universe.max_vertices() as u64;
        let range = |r: std::ops::Range<usize>| Arc::new(r.map(|i| i as u32).collect::<Vec<_>>());
        Ok(match dom {
            CDom::All { exact } => (range(0..self.universe.len()), *exact),
            CDom::AtMost(e) => {
                let k = self.num(e, frame)?;
                (range(self.universe.range_up_to(k.min(max) as usize)), k <= max)
            }
            CDom::Exactly(e) => {
                let k = self.num(e, frame)?;
                if k <= max {
                    (range(self.universe.range_of_order(k as usize)), true)
                } else {
                    (Arc::new(Vec::new()), false)
                }
            }
            CDom::Numbers(e) => {
                let k = self.num(e, frame)?;
                if k > crate::graph::MAX_VERTICES as u64 {
                    return Err(Error::Resource(format!("N_{k} exceeds the vertex limit")));
                }
                let ids = (0..=k as usize)
                    .map(|j| make_named(NamedFamily::N, j).map(|g| self.intern(&g)))
                    .collect::<Result<Vec<_>>>()?;
                (Arc::new(ids), true)
            }
            CDom::Below { kind, strict, of } => {
                let t = self.term(*of, frame)?;
                let down = self.down_set(*kind, t)?;
                if *strict {
                    (Arc::new(down.iter().copied().filter(|&i| i != t).collect()), true)
                } else {
                    (down, true)
                }
            }
            CDom::Upper { kind, of } => (self.upper_covers(*kind, self.term(*of, frame)?)?, true),
        })
    }

    fn leq(&self, kind: OrderKind, a: u32, b: u32) -> bool {
        if a == b {
            return true;
        }
        let i = &self.interner;
        if i.in_universe(a) && i.in_universe(b) {
            return self.universe.matrix(kind).leq(a as usize, b as usize);
        }
        if i.order(a) > i.order(b) || (kind != OrderKind::Minor && i.size(a) > i.size(b)) {
            return false;
        }
        if let Some(r) = self.leq_cache.get(&(kind, a, b)) {
            return *r;
        }
        let r = orders::leq(kind, &i.graph(a), &i.graph(b));
        self.leq_cache.insert((kind, a, b), r);
        r
    }

    /// `b` covers `a` in the order.
    fn covers(&self, kind: OrderKind, a: u32, b: u32) -> bool {
        if a == b {
            return false;
        }
        let i = &self.interner;
        if i.in_universe(a) && i.in_universe(b) {
            return self.universe.matrix(kind).covers(a as usize, b as usize);
        }
        if !self.leq(kind, a, b) {
            return false;
        }
        match kind {
            OrderKind::Subgraph => i.order(b) + i.size(b) == i.order(a) + i.size(a) + 1,
            OrderKind::Induced => i.order(b) == i.order(a) + 1,
            OrderKind::Minor => {
                let kids: HashSet<CanonicalGraph> = orders::children(kind, i.graph(b).repr())
                    .into_iter()
                    .map(|c| c.canonicalize())
                    .collect();
                !kids.iter().any(|c| {
                    let c = self.intern(c);
                    c != a && self.leq(kind, a, c)
                })
            }
        }
    }

    fn relation(&self, op: RelOp, a: u32, b: u32) -> bool {
        match op {
            RelOp::Eq => a == b,
            RelOp::Leq(k) => self.leq(k, a, b),
            RelOp::Lt(k) => a != b && self.leq(k, a, b),
            RelOp::Cover(k) => self.covers(k, a, b),
            RelOp::CoverEdge => {
                self.interner.order(a) == self.interner.order(b) && self.covers(OrderKind::Subgraph, a, b)
            }
            RelOp::CoverVertex => {
                self.interner.order(a) != self.interner.order(b) && self.covers(OrderKind::Subgraph, a, b)
            }
        }
    }

    fn down_set(&self, kind: OrderKind, t: u32) -> Result<Arc<Vec<u32>>> {
        if let Some(d) = self.down_cache.get(&(kind, t)) {
            return Ok(Arc::clone(&d));
        }
        let ids: Vec<u32> = if self.interner.in_universe(t) {
            self.universe.matrix(kind).down_set(t as usize).map(|i| i as u32).collect()
        } else {
            // Close under single operations.
            let mut seen: HashSet<CanonicalGraph> = HashSet::new();
            let g = self.graph(t);
            let mut stack = vec![g.clone()];
            seen.insert(g);
            while let Some(h) = stack.pop() {
                if self.universe.contains(&h) {
                    let p = self.universe.position(&h).unwrap();
                    for i in self.universe.matrix(kind).down_set(p) {
                        seen.insert(self.universe.get(i).clone());
                    }
                    continue;
                }
                for c in orders::children(kind, h.repr()) {
                    let c = c.canonicalize();
                    if seen.insert(c.clone()) {
                        stack.push(c);
                    }
                }
            }
            let mut ids: Vec<u32> = seen.iter().map(|g| self.intern(g)).collect();
            ids.sort_unstable();
            ids
        };
        let ids = Arc::new(ids);
        self.down_cache.insert((kind, t), Arc::clone(&ids));
        Ok(ids)
    }

    fn upper_covers(&self, kind: OrderKind, t: u32) -> Result<Arc<Vec<u32>>> {
        if let Some(d) = self.up_cache.get(&(kind, t)) {
            return Ok(Arc::clone(&d));
        }
        let g = self.graph(t);
        let r = g.repr();
        let n = r.n();
        let mut out: HashSet<CanonicalGraph> = HashSet::new();
        match kind {
            OrderKind::Subgraph => {
                let mut h = r.clone();
                h.add_vertex()?;
                out.insert(h.canonicalize());
                for u in 0..n {
                    for v in u + 1..n {
                        if !r.has_edge(u, v) {
                            let mut h = r.clone();
                            h.add_edge(u, v);
                            out.insert(h.canonicalize());
                        }
                    }
                }
            }
            OrderKind::Induced => {
                if n >= 20 {
                    return Err(Error::Resource(format!("upper covers of a {n}-vertex graph")));
                }
                for nbrs in 0u64..1 << n {
                    let mut h = r.clone();
                    let v = h.add_vertex()?;
                    for w in crate::graph::bits(nbrs) {
                        h.add_edge(v, w);
                    }
                    out.insert(h.canonicalize());
                }
            }
            OrderKind::Minor => {
                return Err(Error::Eval("upper covers in the minor order are not supported".into()));
            }
        }
        let mut ids: Vec<u32> = out.iter().map(|h| self.intern(h)).collect();
        ids.sort_unstable();
        let ids = Arc::new(ids);
        self.up_cache.insert((kind, t), Arc::clone(&ids));
        Ok(ids)
    }

    fn components(&self, id: u32) -> Arc<Vec<CanonicalGraph>> {
        if let Some(c) = self.comp_cache.get(&id) {
            return Arc::clone(&c);
        }
        let mut comps = self.graph(id).components();
        comps.sort();
        let comps = Arc::new(comps);
        self.comp_cache.insert(id, Arc::clone(&comps));
        comps
    }

    /// `|g|` when `g` is edgeless.
    fn number(&self, id: u32) -> Option<u64> {
        (self.interner.size(id) == 0).then(|| self.interner.order(id) as u64)
    }

    fn builtin(&self, b: Builtin, ids: &[u32]) -> bool {
        let i = &self.interner;
        match b {
            Builtin::SameCard => i.order(ids[0]) == i.order(ids[1]),
            Builtin::SameSize => i.size(ids[0]) == i.size(ids[1]),
            Builtin::DisjointUnion => {
                let (z, x, y) = (ids[0], ids[1], ids[2]);
                if i.order(z) != i.order(x) + i.order(y) || i.size(z) != i.size(x) + i.size(y) {
                    return false;
                }
                let mut parts: Vec<CanonicalGraph> =
                    self.components(x).iter().chain(self.components(y).iter()).cloned().collect();
                parts.sort();
                parts == *self.components(z)
            }
            Builtin::SeqEntry => {
                let (Some(s), Some(k), Some(v)) = (self.number(ids[0]), self.number(ids[1]), self.number(ids[2]))
                else {
                    return false;
                };
                k >= 1 && ExpSequence::<u64>::from_packed(&s).is_ok_and(|q| q.get(k as usize) == v)
            }
            Builtin::SeqSum => {
                let (Some(s), Some(m)) = (self.number(ids[0]), self.number(ids[1])) else {
                    return false;
                };
                ExpSequence::<u64>::from_packed(&s).is_ok_and(|q| q.sum() == m)
            }
            Builtin::SeqConvert => {
                let (Some(m), Some(n)) = (self.number(ids[0]), self.number(ids[1])) else {
                    return false;
                };
                match (ExpSequence::<u64>::from_packed(&m), ExpSequence::<u64>::from_packed(&n)) {
                    (Ok(m), Ok(n)) => m.f1_inv().is_ok_and(|inv| inv == n),
                    _ => false,
                }
            }
        }
    }
}

/// A formula compiled against an evaluator.
pub struct Prepared {
    vars: Vec<String>,
    compiled: Compiled,
}

impl Prepared {
    pub fn variables(&self) -> &[String] {
        &self.vars
    }
}

/// Result of [`Evaluator::extension`].
#[derive(Clone, Debug)]
pub struct Extension {
    pub vars: Vec<String>,
    pub tuples: Vec<Vec<CanonicalGraph>>,
    /// Some tuple's value depended on the universe bound.
    pub truncated: bool,
}

/// Free variables of `f` in order of first appearance. Names of unary
/// definitions count as constants, not variables.
pub fn free_variables(f: &Formula, env: &Environment) -> Vec<String> {
    fn term(t: &Term, scope: &[String], env: &Environment, out: &mut Vec<String>) {
        if let Term::Name(n) = t {
            if !scope.contains(n) && env.position(n).is_none() && !out.contains(n) {
                out.push(n.clone());
            }
        }
    }
    fn num(e: &NumExpr, scope: &[String], env: &Environment, out: &mut Vec<String>) {
        match e {
            NumExpr::Lit(_) => {}
            NumExpr::Card(t) | NumExpr::Size(t) => term(t, scope, env, out),
            NumExpr::Bin(_, a, b) => {
                num(a, scope, env, out);
                num(b, scope, env, out);
            }
        }
    }
    fn go(f: &Formula, scope: &mut Vec<String>, env: &Environment, out: &mut Vec<String>) {
        match f {
            Formula::True | Formula::False => {}
            Formula::Rel(_, a, b) => {
                term(a, scope, env, out);
                term(b, scope, env, out);
            }
            Formula::Call(_, args) => args.iter().for_each(|a| term(a, scope, env, out)),
            Formula::Cmp(_, a, b) => {
                num(a, scope, env, out);
                num(b, scope, env, out);
            }
            Formula::Not(a) => go(a, scope, env, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                go(a, scope, env, out);
                go(b, scope, env, out);
            }
            Formula::Quant { var, domain, body, .. } => {
                match domain {
                    Some(Domain::AtMost(e)) | Some(Domain::Exactly(e)) | Some(Domain::Numbers(e)) => {
                        num(e, scope, env, out)
                    }
                    Some(Domain::Below { of, .. }) | Some(Domain::UpperCovers { of, .. }) => term(of, scope, env, out),
                    None => {}
                }
                scope.push(var.clone());
                go(body, scope, env, out);
                scope.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(f, &mut Vec::new(), env, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fo::parser::parse;
    use crate::universe::enumerate_universe;

    const MINI: &str = "\
@monotone-safe
emptyG(x) := forall y . x <=s y

N1(x) := emptyG <.s x

N2(x) := N1 <.s x

K2(x) := N2 <.s x & exists y [>.s x] . (x <.s y & forall z [>.s x] . (x <.s z -> z = y))

N(x) := K2 !<=s x

K(x) := forall y . !(x <.se y)
";

    fn env() -> Environment {
        Environment::parse_corpus(MINI).unwrap()
    }

    fn g(s: &str) -> CanonicalGraph {
        crate::notation::parse_graph(s).unwrap()
    }

    #[test]
    fn substituted_definitions_answer_exactly() {
        let env = env();
        let u = enumerate_universe(3).unwrap();
        // K over U3 is truncated for K3: its edge covers lie outside.
        let big = g("K5");
        let plain = Evaluator::new(&env, &u).unwrap();
        assert!(plain.call("K", &[big.clone()]).unwrap().truncated);
        let oracle: Oracle = Arc::new(|a: &[CanonicalGraph]| a[0].size() == a[0].order() * a[0].order().saturating_sub(1) / 2);
        let ev = Evaluator::new(&env, &u).unwrap().with_substitutions([("K".to_string(), oracle)]).unwrap();
        assert_eq!(ev.call("K", &[big]).unwrap(), Truth::exact(true));
        let f = parse("exists y [<=s x] . (K(y) & |y| = 4)").unwrap();
        assert_eq!(ev.evaluate(&f, &[("x".to_string(), g("K4 + K1"))]).unwrap(), Truth::exact(true));
        assert!(Evaluator::new(&env, &u).unwrap().with_substitutions([("Q".to_string(), Arc::new(|_: &[CanonicalGraph]| true) as Oracle)]).is_err());
    }

    #[test]
    fn constants_and_families() {
        let env = env();
        let u = enumerate_universe(4).unwrap();
        let ev = Evaluator::new(&env, &u).unwrap();
        assert_eq!(ev.constant("emptyG").unwrap(), CanonicalGraph::null());
        assert_eq!(ev.constant("K2").unwrap(), g("K2"));
        assert_eq!(ev.call("N", &[g("K2")]).unwrap().value, false);
        assert_eq!(ev.call("N", &[g("N3")]).unwrap(), Truth::exact(true));
        let empty = ev.extension(&parse("forall y . x <=s y").unwrap(), 1).unwrap();
        assert_eq!(empty.tuples, vec![vec![CanonicalGraph::null()]]);
        // Unannotated quantifiers outside a monotone-safe definition are flagged.
        assert!(empty.truncated);
    }

    #[test]
    fn clique_needs_margin() {
        let env = env();
        let u5 = enumerate_universe(5).unwrap();
        let ev = Evaluator::new(&env, &u5).unwrap();
        for (i, x) in u5.members().iter().enumerate().filter(|(_, x)| x.order() <= 4) {
            let t = ev.call_ids("K", &[i as u32]).unwrap();
            let clique = x.size() == x.order() * x.order().saturating_sub(1) / 2;
            assert_eq!(t.value, clique, "{x}");
        }
    }

    #[test]
    fn truncation_flags() {
        let env = env();
        let u = enumerate_universe(3).unwrap();
        let ev = Evaluator::new(&env, &u).unwrap();
        let a = [("x".to_string(), g("K3"))];
        let f = parse("exists y [<= |x| + 1] . |y| = 4").unwrap();
        assert_eq!(ev.evaluate(&f, &a).unwrap(), Truth { value: false, truncated: true });
        // Upper covers are computed outside the universe.
        let f = parse("exists y [>.s x] . |y| = 4").unwrap();
        assert_eq!(ev.evaluate(&f, &a).unwrap(), Truth::exact(true));
        let f = parse("exists! y [>.i x] . ||y|| = 6").unwrap();
        assert_eq!(ev.evaluate(&f, &a).unwrap(), Truth::exact(true));
        let f = parse("forall y [<= 2] . |y| <= 2").unwrap();
        assert_eq!(ev.evaluate(&f, &a).unwrap(), Truth::exact(true));
        let f = parse("exists n [N <= 5] . |n| = 5 & ||n|| = 0").unwrap();
        assert_eq!(ev.evaluate(&f, &a).unwrap(), Truth::exact(true));
    }

    #[test]
    fn builtins() {
        let env = env();
        let u = enumerate_universe(4).unwrap();
        let ev = Evaluator::new(&env, &u).unwrap();
        let f = parse("disjointUnion(z, x, y)").unwrap();
        let asg = |z: &str, x: &str, y: &str| {
            vec![("z".to_string(), g(z)), ("x".to_string(), g(x)), ("y".to_string(), g(y))]
        };
        assert!(ev.evaluate(&f, &asg("K2 + K3", "K3", "K2")).unwrap().value);
        assert!(!ev.evaluate(&f, &asg("P4 + N1", "K3", "K2")).unwrap().value);
        // 12 = 2^2 * 3 is the sequence (2, 1).
        let f = parse("seqEntry(s, i, v) & seqSum(s, m)").unwrap();
        let a = vec![
            ("s".to_string(), g("N12")),
            ("i".to_string(), g("N1")),
            ("v".to_string(), g("N2")),
            ("m".to_string(), g("N3")),
        ];
        assert!(ev.evaluate(&f, &a).unwrap().value);
        // f1(0,2,0,1,1) = (13,6,2,2,1) is far too large for N_k, so use f1(1,1) = (3,1).
        let f = parse("seqConvert(m, n)").unwrap();
        let a = vec![("m".to_string(), g("N24")), ("n".to_string(), g("N6"))];
        assert!(ev.evaluate(&f, &a).unwrap().value);
    }

    #[test]
    fn extension_of_induced_order() {
        let env = Environment::new();
        let u = enumerate_universe(3).unwrap();
        let ev = Evaluator::new(&env, &u).unwrap();
        let ext = ev.extension(&parse("x <i y").unwrap(), 2).unwrap();
        assert_eq!(ext.tuples.len(), 19);
        assert!(!ext.truncated);
        assert!(ev.extension(&parse("x <i y").unwrap(), 1).is_err());
    }

    #[test]
    fn errors() {
        let env = env();
        let u = enumerate_universe(3).unwrap();
        let ev = Evaluator::new(&env, &u).unwrap();
        assert!(matches!(ev.evaluate(&parse("x = y").unwrap(), &[]), Err(Error::Resolution(_))));
        assert!(matches!(ev.evaluate(&parse("Q(x)").unwrap(), &[("x".into(), g("N1"))]), Err(Error::Resolution(_))));
        // N has infinitely many satisfiers.
        assert!(matches!(ev.evaluate(&parse("N = N").unwrap(), &[]), Err(Error::Eval(_))));
    }
}
