//! Finite segments `U_n = {g : |g| ≤ n}` of the isomorphism types.
//!
//! Cache file format (line oriented, UTF-8):
//!
//! ```text
//! graphorder-universe 1 <n>
//! <graph6 of member 0>
//! <graph6 of member 1>
//! ...
//! ```
//!
//! Members appear in universe order and each line holds the canonical
//! representative. Loading re-canonicalizes every line and rejects files whose
//! per-cardinality counts or ordering do not match.

use std::collections::{HashMap, HashSet};
use std::io::{BufRead, Write};
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{full_mask, CanonicalGraph, LabelledGraph};
use crate::graph6;
use crate::orders::{OrderKind, OrderMatrix};

/// Largest `n` accepted by [`enumerate_universe`].
pub const HARD_LIMIT: usize = 8;

const CACHE_MAGIC: &str = "graphorder-universe";
const CACHE_VERSION: u32 = 1;

/// All isomorphism types with at most `max_vertices` vertices, sorted by
/// cardinality and then by canonical string.
pub struct Universe {
    max_vertices: usize,
    members: Vec<CanonicalGraph>,
    index: HashMap<CanonicalGraph, usize>,
    offsets: Vec<usize>,
    matrices: [OnceLock<OrderMatrix>; 3],
}

impl std::fmt::Debug for Universe {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Universe")
            .field("max_vertices", &self.max_vertices)
            .field("members", &self.members.len())
            .finish()
    }
}

/// Enumerates `U_n` by adding one vertex at a time with canonical filtering.
pub fn enumerate_universe(n: usize) -> Result<Universe> {
    if n > HARD_LIMIT {
        return Err(Error::Resource(format!(
            "universe size {n} exceeds the hard limit {HARD_LIMIT}"
        )));
    }
    let mut levels: Vec<Vec<CanonicalGraph>> = vec![vec![CanonicalGraph::null()]];
    for k in 0..n {
        levels.push(extend_level(&levels[k], k));
    }
    Ok(Universe::from_members(n, levels.into_iter().flatten().collect()))
}

fn extend_level(level: &[CanonicalGraph], k: usize) -> Vec<CanonicalGraph> {
    let set: HashSet<CanonicalGraph> = level
        .par_iter()
        .fold(HashSet::new, |mut acc, g| {
            for nbrs in 0..=full_mask(k) {
                let mut h = g.repr().clone();
                let v = h.add_vertex().expect("below vertex limit");
                for w in crate::graph::bits(nbrs) {
                    h.add_edge(v, w);
                }
                acc.insert(h.canonicalize());
            }
            acc
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    let mut out: Vec<CanonicalGraph> = set.into_iter().collect();
    out.sort();
    out
}

impl Universe {
    fn from_members(max_vertices: usize, members: Vec<CanonicalGraph>) -> Self {
        let index = members.iter().enumerate().map(|(i, g)| (g.clone(), i)).collect();
        let mut offsets = vec![0; max_vertices + 2];
        for g in &members {
            offsets[g.order() + 1] += 1;
        }
        for k in 1..offsets.len() {
            offsets[k] += offsets[k - 1];
        }
        Universe {
            max_vertices,
            members,
            index,
            offsets,
            matrices: Default::default(),
        }
    }

    pub fn max_vertices(&self) -> usize {
        self.max_vertices
    }

    pub fn members(&self) -> &[CanonicalGraph] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn get(&self, i: usize) -> &CanonicalGraph {
        &self.members[i]
    }

    /// Position of `g`, if it is a member.
    pub fn position(&self, g: &CanonicalGraph) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn contains(&self, g: &CanonicalGraph) -> bool {
        self.index.contains_key(g)
    }

    /// Index range of the members with exactly `k` vertices.
    pub fn range_of_order(&self, k: usize) -> std::ops::Range<usize> {
        if k > self.max_vertices {
            return self.members.len()..self.members.len();
        }
        self.offsets[k]..self.offsets[k + 1]
    }

    /// Index range of the members with at most `k` vertices.
    pub fn range_up_to(&self, k: usize) -> std::ops::Range<usize> {
        0..self.offsets[k.min(self.max_vertices) + 1]
    }

    /// Number of members on exactly `k` vertices, for `k = 0..=n`.
    pub fn counts_by_order(&self) -> Vec<usize> {
        (0..=self.max_vertices).map(|k| self.range_of_order(k).len()).collect()
    }

    /// The order matrix of `kind`, built on first use.
    pub fn matrix(&self, kind: OrderKind) -> &OrderMatrix {
        self.matrices[kind as usize].get_or_init(|| OrderMatrix::build(self, kind))
    }

    /// Writes the cache file described in the module docs.
    pub fn write_cache<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{CACHE_MAGIC} {CACHE_VERSION} {}", self.max_vertices)?;
        for g in &self.members {
            writeln!(w, "{}", graph6::encode(g.repr()))?;
        }
        Ok(())
    }

    /// Reads a cache file and validates it against the canonical order.
    pub fn read_cache<R: BufRead>(r: R) -> Result<Universe> {
        let mut lines = r.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty universe cache".into()))?
            .map_err(|e| Error::Parse(e.to_string()))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 3 || parts[0] != CACHE_MAGIC {
            return Err(Error::Parse(format!("bad universe cache header {header:?}")));
        }
        if parts[1] != CACHE_VERSION.to_string() {
            return Err(Error::Parse(format!("unsupported cache version {}", parts[1])));
        }
        let n: usize = parts[2]
            .parse()
            .map_err(|_| Error::Parse(format!("bad size {:?}", parts[2])))?;
        let mut members = Vec::new();
        for line in lines {
            let line = line.map_err(|e| Error::Parse(e.to_string()))?;
            if line.trim().is_empty() {
                continue;
            }
            let g = graph6::decode(&line)?.canonicalize();
            if g.order() > n {
                return Err(Error::Parse(format!("member {line} exceeds size {n}")));
            }
            members.push(g);
        }
        if members.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse("cache members are not in universe order".into()));
        }
        let u = Universe::from_members(n, members);
        let expected = [1usize, 1, 2, 4, 11, 34, 156, 1044, 12346, 274668];
        for (k, c) in u.counts_by_order().into_iter().enumerate() {
            if expected.get(k).is_some_and(|&e| e != c) {
                return Err(Error::Parse(format!("cache has {c} graphs on {k} vertices")));
            }
        }
        Ok(u)
    }
}

/// All labelled graphs on `n` vertices, for brute-force cross-checks.
pub fn labelled_graphs(n: usize) -> impl Iterator<Item = LabelledGraph> {
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let total: u64 = 1 << pairs.len();
    (0..total).map(move |m| {
        let mut g = LabelledGraph::empty(n).expect("small n");
        for (b, &(i, j)) in pairs.iter().enumerate() {
            if m >> b & 1 == 1 {
                g.add_edge(i, j);
            }
        }
        g
    })
}
