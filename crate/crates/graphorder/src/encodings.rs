//! Number representations, UN/UG, prime-exponent sequences and `≤_t`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{CheckedMul, CheckedSub, FromPrimitive, ToPrimitive, Unsigned, Zero};

use crate::canon;
use crate::error::{Error, Result};
use crate::graph::{CanonicalGraph, LabelledGraph};

/// Natural-number types usable for sequence arithmetic.
pub trait Natural:
    Clone + Ord + fmt::Debug + fmt::Display + Unsigned + FromPrimitive + ToPrimitive + CheckedSub + CheckedMul + Send + Sync
{
}

impl<T> Natural for T where
    T: Clone + Ord + fmt::Debug + fmt::Display + Unsigned + FromPrimitive + ToPrimitive + CheckedSub + CheckedMul + Send + Sync
{
}

/// A number representing a labelled graph (or, minimised, an isomorphism type).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphCode(pub BigUint);

impl GraphCode {
    pub fn value(&self) -> &BigUint {
        &self.0
    }

    /// Number of binary digits; 0 for the code 0.
    pub fn bit_length(&self) -> u64 {
        self.0.bits()
    }
}

impl From<u64> for GraphCode {
    fn from(v: u64) -> Self {
        GraphCode(BigUint::from(v))
    }
}

impl FromStr for GraphCode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .parse::<BigUint>()
            .map(GraphCode)
            .map_err(|e| Error::Parse(format!("bad natural number {s:?}: {e}")))
    }
}

impl fmt::Display for GraphCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn code_from_bits(bits: impl Iterator<Item = bool>) -> GraphCode {
    let mut digits = String::from("1");
    digits.extend(bits.map(|b| if b { '1' } else { '0' }));
    GraphCode(BigUint::parse_bytes(digits.as_bytes(), 2).expect("binary digits"))
}

/// The number representation of a labelled graph: a leading 1, then one bit
/// per tuple `(v_i, v_j)`, `j < i`, in descending lexicographic order.
pub fn number_representations(g: &LabelledGraph) -> GraphCode {
    if g.n() == 0 {
        return GraphCode(BigUint::zero());
    }
    code_from_bits(g.representation_bits())
}

/// `UN(g)`: the least number representation over all labellings.
pub fn un(g: &CanonicalGraph) -> GraphCode {
    if g.order() <= canon::EXACT_LIMIT {
        return number_representations(g.repr());
    }
    let order = canon::minimum_order(g.repr());
    let n = g.order();
    let mut perm = vec![0; n];
    for (pos, &v) in order.iter().enumerate() {
        perm[v] = n - 1 - pos;
    }
    number_representations(&g.repr().permuted(&perm))
}

/// Vertex count encoded by a bit length, if any.
fn order_for_length(len: u64) -> Option<usize> {
    if len == 0 {
        return Some(0);
    }
    let mut m: u64 = 1;
    loop {
        let l = 1 + m * (m - 1) / 2;
        if l == len {
            return Some(m as usize);
        }
        if l > len {
            return None;
        }
        m += 1;
    }
}

/// Inverse of [`number_representations`].
pub fn decode(code: &GraphCode) -> Result<LabelledGraph> {
    let len = code.bit_length();
    let m = order_for_length(len).ok_or_else(|| {
        Error::Domain(format!("{code} has {len} bits, which is not 1 + C(m,2)"))
    })?;
    let mut g = LabelledGraph::empty(m)?;
    let mut k = len.saturating_sub(1);
    for i in (1..m).rev() {
        for j in (0..i).rev() {
            k -= 1;
            if code.0.bit(k) {
                g.add_edge(i, j);
            }
        }
    }
    Ok(g)
}

/// `n ∈ UN(𝒢)`.
pub fn phi_un(code: &GraphCode) -> bool {
    match decode(code) {
        Ok(g) => &un(&g.canonicalize()) == code,
        Err(_) => false,
    }
}

/// `v_i v_j` is an edge of the graph decoded from `code` (1-based indices).
pub fn phi_edge(code: &GraphCode, i: usize, j: usize) -> Result<bool> {
    if !phi_un(code) {
        return Err(Error::Domain(format!("{code} is not a UN value")));
    }
    let g = decode(code)?;
    let m = g.n();
    for x in [i, j] {
        if x == 0 || x > m {
            return Err(Error::Domain(format!("index {x} outside 1..{m}")));
        }
    }
    Ok(i != j && g.has_edge(i - 1, j - 1))
}

/// Length of the binary representation.
pub fn phi_length(code: &GraphCode) -> u64 {
    code.bit_length()
}

/// `length(n) = 1 + m(m-1)/2`.
pub fn phi_graph_order(code: &GraphCode, m: u64) -> bool {
    phi_length(code) == 1 + m * m.saturating_sub(1) / 2
}

/// `N_k` held by its index, since `k` is usually far too large to build.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NumberGraph(pub GraphCode);

impl NumberGraph {
    pub fn index(&self) -> &GraphCode {
        &self.0
    }

    /// Builds `N_k` when it fits in a [`LabelledGraph`].
    pub fn materialize(&self) -> Result<CanonicalGraph> {
        let k = self.0 .0.to_usize().filter(|&k| k <= crate::graph::MAX_VERTICES).ok_or_else(|| {
            Error::Resource(format!("N_{} is too large to materialize", self.0))
        })?;
        Ok(LabelledGraph::empty(k)?.canonicalize())
    }
}

impl fmt::Display for NumberGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N_{}", self.0)
    }
}

/// `UG(k) = N_k`.
pub fn ug(k: &GraphCode) -> NumberGraph {
    NumberGraph(k.clone())
}

/// `UG(UN(g))`.
pub fn enc(g: &CanonicalGraph) -> NumberGraph {
    ug(&un(g))
}

/// `g ≤_t h` iff `UN(g) ≤ UN(h)`.
pub fn leq_t(g: &CanonicalGraph, h: &CanonicalGraph) -> bool {
    un(g) <= un(h)
}

/// A total predicate on tuples of codes.
pub trait DecisionProcedure: Send + Sync {
    fn arity(&self) -> usize;
    fn decide(&self, codes: &[GraphCode]) -> Result<bool>;
}

/// A [`DecisionProcedure`] backed by a closure.
pub struct FnProcedure<F> {
    arity: usize,
    f: F,
}

impl<F> FnProcedure<F>
where
    F: Fn(&[GraphCode]) -> Result<bool> + Send + Sync,
{
    pub fn new(arity: usize, f: F) -> Self {
        FnProcedure { arity, f }
    }
}

impl<F> DecisionProcedure for FnProcedure<F>
where
    F: Fn(&[GraphCode]) -> Result<bool> + Send + Sync,
{
    fn arity(&self) -> usize {
        self.arity
    }
    fn decide(&self, codes: &[GraphCode]) -> Result<bool> {
        (self.f)(codes)
    }
}

/// A graph predicate `R(ḡ) ⟺ d(UN(ḡ))`.
#[derive(Clone)]
pub struct LiftedPredicate {
    procedure: Arc<dyn DecisionProcedure>,
}

impl LiftedPredicate {
    pub fn arity(&self) -> usize {
        self.procedure.arity()
    }

    pub fn holds(&self, graphs: &[CanonicalGraph]) -> Result<bool> {
        if graphs.len() != self.arity() {
            return Err(Error::Domain(format!(
                "predicate of arity {} applied to {} graphs",
                self.arity(),
                graphs.len()
            )));
        }
        let codes: Vec<GraphCode> = graphs.iter().map(un).collect();
        self.procedure.decide(&codes)
    }
}

pub fn lift_predicate(d: Arc<dyn DecisionProcedure>) -> LiftedPredicate {
    LiftedPredicate { procedure: d }
}

/// Sample decision procedures on single codes.
pub mod procedures {
    use super::*;

    fn unary(f: impl Fn(&GraphCode) -> Result<bool> + Send + Sync + 'static) -> Arc<dyn DecisionProcedure> {
        Arc::new(FnProcedure::new(1, move |c: &[GraphCode]| f(&c[0])))
    }

    /// The decoded graph is connected.
    pub fn decodes_connected() -> Arc<dyn DecisionProcedure> {
        unary(|c| Ok(decode(c)?.is_connected()))
    }

    /// The decoded graph is a tree (connected, one edge fewer than vertices).
    /// The null graph counts, as it does for the family `T`.
    pub fn decodes_tree() -> Arc<dyn DecisionProcedure> {
        unary(|c| {
            let g = decode(c)?;
            Ok(g.n() == 0 || (g.is_connected() && g.edge_count() + 1 == g.n()))
        })
    }

    pub fn always_true() -> Arc<dyn DecisionProcedure> {
        unary(|_| Ok(true))
    }

    pub fn code_is_even() -> Arc<dyn DecisionProcedure> {
        unary(|c| Ok(!c.0.bit(0)))
    }

    /// Looks up a sample procedure by name.
    pub fn by_name(name: &str) -> Option<Arc<dyn DecisionProcedure>> {
        Some(match name {
            "connected" => decodes_connected(),
            "tree" => decodes_tree(),
            "true" => always_true(),
            "even" => code_is_even(),
            _ => return None,
        })
    }
}

/// The first `k` primes.
fn primes(k: usize) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::with_capacity(k);
    let mut c = 2u64;
    while out.len() < k {
        if out.iter().take_while(|&&p| p * p <= c).all(|&p| c % p != 0) {
            out.push(c);
        }
        c += 1;
    }
    out
}

/// A finite sequence `(n_1, …, n_k)` of naturals, identified with the number
/// `2^{n_1} · 3^{n_2} · … · p_k^{n_k}`. Trailing zeros are dropped, so the
/// last stored entry is positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExpSequence<N> {
    entries: Vec<N>,
}

impl<N: Natural> ExpSequence<N> {
    pub fn new(mut entries: Vec<N>) -> Self {
        while entries.last().is_some_and(|e| e.is_zero()) {
            entries.pop();
        }
        ExpSequence { entries }
    }

    pub fn empty() -> Self {
        ExpSequence { entries: Vec::new() }
    }

    pub fn entries(&self) -> &[N] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The `i`-th entry, 1-based; zero beyond the end.
    pub fn get(&self, i: usize) -> N {
        assert!(i >= 1, "sequence indices start at 1");
        self.entries.get(i - 1).cloned().unwrap_or_else(N::zero)
    }

    /// Sum of the entries.
    pub fn sum(&self) -> N {
        self.entries.iter().fold(N::zero(), |a, b| a + b.clone())
    }

    /// The packed value `∏ p_i^{n_i}`; fails if it overflows `N`.
    pub fn packed(&self) -> Result<N> {
        let overflow = || Error::Resource("packed sequence value overflows".into());
        let mut acc = N::one();
        for (p, e) in primes(self.entries.len()).into_iter().zip(&self.entries) {
            let p = N::from_u64(p).ok_or_else(overflow)?;
            let e = e.to_u64().ok_or_else(overflow)?;
            for _ in 0..e {
                acc = acc.checked_mul(&p).ok_or_else(overflow)?;
            }
        }
        Ok(acc)
    }

    /// Factorises a packed value.
    pub fn from_packed(value: &N) -> Result<Self> {
        if value.is_zero() {
            return Err(Error::Domain("0 does not encode a sequence".into()));
        }
        let mut rest = value.clone();
        let mut entries = Vec::new();
        let mut p = 2u64;
        while !rest.is_one() {
            let pn = N::from_u64(p).expect("small prime");
            let mut e = 0u64;
            while (rest.clone() % pn.clone()).is_zero() {
                rest = rest / pn.clone();
                e += 1;
            }
            entries.push(N::from_u64(e).expect("small exponent"));
            if entries.len() > 10_000 {
                return Err(Error::Resource("sequence longer than 10000 entries".into()));
            }
            p = primes(entries.len() + 1)[entries.len()];
        }
        Ok(Self::new(entries))
    }

    /// `m_i = Σ_{j≥i} ⌊j/i⌋ · n_j`.
    pub fn f1(&self) -> Self {
        let k = self.entries.len();
        let m = (1..=k)
            .map(|i| {
                (i..=k).fold(N::zero(), |acc, j| {
                    acc + N::from_usize(j / i).expect("small") * self.entries[j - 1].clone()
                })
            })
            .collect();
        Self::new(m)
    }

    /// `n_i = m_i − Σ_{j>i} ⌊j/i⌋ · n_j`, computed from the top index down.
    pub fn f1_inv(&self) -> Result<Self> {
        let k = self.entries.len();
        let mut n: Vec<N> = vec![N::zero(); k];
        for i in (1..=k).rev() {
            let taken = (i + 1..=k).fold(N::zero(), |acc, j| {
                acc + N::from_usize(j / i).expect("small") * n[j - 1].clone()
            });
            n[i - 1] = self.entries[i - 1].checked_sub(&taken).ok_or_else(|| {
                Error::Domain(format!("sequence is not in the image of f1 (entry {i} negative)"))
            })?;
        }
        Ok(Self::new(n))
    }
}

impl<N: Natural> fmt::Display for ExpSequence<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl<N: Natural + FromStr> FromStr for ExpSequence<N> {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::empty());
        }
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<N>()
                    .map_err(|_| Error::Parse(format!("bad sequence entry {t:?}")))
            })
            .collect::<Result<Vec<N>>>()
            .map(Self::new)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::{make_named, NamedFamily::*};
    use crate::Sequence;

    #[test]
    fn fig4_values() {
        let p3 = make_named(P, 3).unwrap();
        assert_eq!(un(&p3), GraphCode::from(11));
        // Labelling with edges v1v2, v1v3 attains 1011.
        let mid = LabelledGraph::from_edges(3, &[(0, 1), (0, 2)]).unwrap();
        assert_eq!(number_representations(&mid), GraphCode::from(11));
        let left = LabelledGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(number_representations(&left), GraphCode::from(13));
        let right = LabelledGraph::from_edges(3, &[(1, 2), (0, 2)]).unwrap();
        assert_eq!(number_representations(&right), GraphCode::from(14));
        assert_eq!(enc(&p3).index(), &GraphCode::from(11));
    }

    #[test]
    fn small_codes() {
        assert_eq!(un(&make_named(N, 1).unwrap()), GraphCode::from(1));
        assert_eq!(un(&CanonicalGraph::null()), GraphCode::from(0));
        assert_eq!(un(&make_named(K, 2).unwrap()), GraphCode::from(3));
        assert_eq!(un(&make_named(N, 2).unwrap()), GraphCode::from(2));
    }

    #[test]
    fn phi_examples() {
        assert!(phi_un(&GraphCode::from(11)));
        assert!(!phi_un(&GraphCode::from(13)));
        assert!(phi_un(&GraphCode::from(2)));
        assert!(phi_edge(&GraphCode::from(11), 1, 2).unwrap());
        assert!(!phi_edge(&GraphCode::from(11), 2, 3).unwrap());
        assert!(!phi_edge(&GraphCode::from(1), 1, 1).unwrap());
        assert!(!phi_edge(&GraphCode::from(2), 1, 2).unwrap());
        assert!(phi_edge(&GraphCode::from(13), 1, 2).is_err());
        assert!(phi_edge(&GraphCode::from(11), 1, 4).is_err());
        assert_eq!(phi_length(&GraphCode::from(11)), 4);
        assert!(phi_graph_order(&GraphCode::from(11), 3));
        assert!(phi_graph_order(&GraphCode::from(1), 1));
        assert!(!phi_graph_order(&GraphCode::from(11), 4));
    }

    #[test]
    fn sequences() {
        let s: Sequence = "0,2,0,1,1".parse().unwrap();
        assert_eq!(s.f1().to_string(), "13,6,2,2,1");
        assert_eq!(s.f1().f1_inv().unwrap(), s);
        assert_eq!(s.sum(), 4);
        let one: Sequence = "1".parse().unwrap();
        assert_eq!(one.f1(), one);
        let p = Sequence::from_packed(&18).unwrap();
        assert_eq!((p.get(1), p.get(2), p.get(3), p.sum()), (1, 2, 0, 3));
        assert_eq!(Sequence::empty().packed().unwrap(), 1);
        assert_eq!(Sequence::empty().sum(), 0);
        let bad: Sequence = "0,1,1".parse().unwrap();
        assert!(bad.f1_inv().is_err());
    }

    #[test]
    fn big_sequences_agree() {
        let s: crate::BigSequence = "0,2,0,1,1".parse().unwrap();
        let packed = s.f1().packed().unwrap();
        let back = crate::BigSequence::from_packed(&packed).unwrap();
        assert_eq!(back.f1_inv().unwrap(), s);
    }

    #[test]
    fn lifted_procedures() {
        let even = lift_predicate(procedures::code_is_even());
        assert!(!even.holds(&[make_named(P, 3).unwrap()]).unwrap());
        let t = lift_predicate(procedures::always_true());
        assert!(t.holds(&[CanonicalGraph::null()]).unwrap());
    }
}
