//! Named graph families and the gadgets built from them.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{CanonicalGraph, LabelledGraph};

/// Families indexed by a single size parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedFamily {
    /// `N_k`: `k` isolated vertices.
    N,
    /// `P_k`: path on `k` vertices.
    P,
    /// `C_k`: cycle on `k` vertices.
    C,
    /// `K_k`: clique on `k` vertices.
    K,
    /// `S_k`: star on `k` vertices.
    S,
    /// `C_{k→1}`: `C_k` with one pendant vertex.
    C1,
    /// `C_{k→2}`: `C_k` with a pendant path of two vertices.
    C2,
}

impl NamedFamily {
    pub fn min_size(self) -> usize {
        match self {
            NamedFamily::N | NamedFamily::K => 0,
            NamedFamily::P | NamedFamily::S => 1,
            NamedFamily::C | NamedFamily::C1 | NamedFamily::C2 => 3,
        }
    }
}

impl FromStr for NamedFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "N" => NamedFamily::N,
            "P" => NamedFamily::P,
            "C" => NamedFamily::C,
            "K" => NamedFamily::K,
            "S" => NamedFamily::S,
            "C1" | "C->1" => NamedFamily::C1,
            "C2" | "C->2" => NamedFamily::C2,
            _ => return Err(Error::Domain(format!("unknown family {s:?}"))),
        })
    }
}

impl fmt::Display for NamedFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            NamedFamily::N => "N",
            NamedFamily::P => "P",
            NamedFamily::C => "C",
            NamedFamily::K => "K",
            NamedFamily::S => "S",
            NamedFamily::C1 => "C1",
            NamedFamily::C2 => "C2",
        };
        f.write_str(s)
    }
}

/// Incremental builder for labelled gadgets.
pub(crate) struct Builder {
    pub g: LabelledGraph,
}

impl Builder {
    pub fn new() -> Self {
        Builder { g: LabelledGraph::empty(0).expect("empty graph") }
    }

    pub fn vertex(&mut self) -> Result<usize> {
        self.g.add_vertex()
    }

    /// Adds a path on `k` fresh vertices and returns them in order.
    pub fn path(&mut self, k: usize) -> Result<Vec<usize>> {
        let vs = (0..k).map(|_| self.vertex()).collect::<Result<Vec<_>>>()?;
        for w in vs.windows(2) {
            self.g.add_edge(w[0], w[1]);
        }
        Ok(vs)
    }

    /// Adds a cycle on `k ≥ 3` fresh vertices and returns them in order.
    pub fn cycle(&mut self, k: usize) -> Result<Vec<usize>> {
        let vs = self.path(k)?;
        self.g.add_edge(vs[0], vs[k - 1]);
        Ok(vs)
    }

    /// Adds `C_{k→1}` and returns the pendant vertex.
    pub fn cycle_pendant(&mut self, k: usize) -> Result<usize> {
        let c = self.cycle(k)?;
        let p = self.vertex()?;
        self.g.add_edge(c[0], p);
        Ok(p)
    }

    pub fn edge(&mut self, u: usize, v: usize) {
        self.g.add_edge(u, v);
    }

    pub fn finish(self) -> CanonicalGraph {
        self.g.canonicalize()
    }
}

fn check_min(family: NamedFamily, k: usize) -> Result<()> {
    if k < family.min_size() {
        return Err(Error::Domain(format!(
            "family {family} needs size at least {}, got {k}",
            family.min_size()
        )));
    }
    Ok(())
}

/// A labelled member of a named family.
pub fn make_named_labelled(family: NamedFamily, k: usize) -> Result<LabelledGraph> {
    check_min(family, k)?;
    let mut b = Builder::new();
    match family {
        NamedFamily::N => {
            for _ in 0..k {
                b.vertex()?;
            }
        }
        NamedFamily::P => {
            b.path(k)?;
        }
        NamedFamily::C => {
            b.cycle(k)?;
        }
        NamedFamily::K => {
            let vs = (0..k).map(|_| b.vertex()).collect::<Result<Vec<_>>>()?;
            for i in 0..k {
                for j in i + 1..k {
                    b.edge(vs[i], vs[j]);
                }
            }
        }
        NamedFamily::S => {
            let c = b.vertex()?;
            for _ in 1..k {
                let v = b.vertex()?;
                b.edge(c, v);
            }
        }
        NamedFamily::C1 => {
            b.cycle_pendant(k)?;
        }
        NamedFamily::C2 => {
            let p = b.cycle_pendant(k)?;
            let q = b.vertex()?;
            b.edge(p, q);
        }
    }
    Ok(b.g)
}

/// The member of a named family at size `k`. For `C1` and `C2`, `k` is the
/// cycle length.
pub fn make_named(family: NamedFamily, k: usize) -> Result<CanonicalGraph> {
    Ok(make_named_labelled(family, k)?.canonicalize())
}

/// The tree with edges `v1v2, v3v2, v2v4, v4v5, v4v6`.
pub fn make_double3star() -> CanonicalGraph {
    CanonicalGraph::from_edges(6, &[(0, 1), (2, 1), (1, 3), (3, 4), (3, 5)]).expect("valid edges")
}

fn check_cycle(i: usize) -> Result<()> {
    if i < 3 {
        return Err(Error::Domain(format!("cycle length {i} is below 3")));
    }
    Ok(())
}

/// `C_i +_p C_j`: a new vertex joined by one edge to each of `C_i` and `C_j`.
pub fn pointed_cycle_sum_graph(i: usize, j: usize) -> Result<CanonicalGraph> {
    check_cycle(i)?;
    check_cycle(j)?;
    let mut b = Builder::new();
    let a = b.cycle(i)?;
    let c = b.cycle(j)?;
    let v = b.vertex()?;
    b.edge(v, a[0]);
    b.edge(v, c[0]);
    Ok(b.finish())
}

/// `C_i` and `C_j` joined by a single edge.
pub fn bicycle_graph(i: usize, j: usize) -> Result<CanonicalGraph> {
    check_cycle(i)?;
    check_cycle(j)?;
    let mut b = Builder::new();
    let a = b.cycle(i)?;
    let c = b.cycle(j)?;
    b.edge(a[0], c[0]);
    Ok(b.finish())
}

/// `C_{i→1} ∪ C_{j→1}` plus an edge between the two pendant vertices.
pub fn cp4c_graph(i: usize, j: usize) -> Result<CanonicalGraph> {
    check_cycle(i)?;
    check_cycle(j)?;
    let mut b = Builder::new();
    let p = b.cycle_pendant(i)?;
    let q = b.cycle_pendant(j)?;
    b.edge(p, q);
    Ok(b.finish())
}

/// `C_{i→1} ∪ C_{j→1}`.
pub fn two_c1s_graph(i: usize, j: usize) -> Result<CanonicalGraph> {
    check_cycle(i)?;
    check_cycle(j)?;
    let mut b = Builder::new();
    b.cycle_pendant(i)?;
    b.cycle_pendant(j)?;
    Ok(b.finish())
}

/// `C_i ∪ C_j`.
pub fn soc2_graph(i: usize, j: usize) -> Result<CanonicalGraph> {
    check_cycle(i)?;
    check_cycle(j)?;
    let mut b = Builder::new();
    b.cycle(i)?;
    b.cycle(j)?;
    Ok(b.finish())
}

fn check_param(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("parameter n must be at least 1".into()));
    }
    Ok(())
}

/// `C_{n+3} ∪ … ∪ C_{2n+2}`.
pub fn csum_graph(n: usize) -> Result<CanonicalGraph> {
    check_param(n)?;
    let mut b = Builder::new();
    for i in 1..=n {
        b.cycle(n + i + 2)?;
    }
    Ok(b.finish())
}

/// `P_{n+2} ∪ … ∪ P_{2n+1}`.
pub fn psum_graph(n: usize) -> Result<CanonicalGraph> {
    check_param(n)?;
    let mut b = Builder::new();
    for i in 1..=n {
        b.path(n + i + 1)?;
    }
    Ok(b.finish())
}

/// `C_{n+3→1} ∪ … ∪ C_{2n+2→1}`.
pub fn csum_hook_graph(n: usize) -> Result<CanonicalGraph> {
    check_param(n)?;
    let mut b = Builder::new();
    for i in 1..=n {
        b.cycle_pendant(n + i + 2)?;
    }
    Ok(b.finish())
}

/// The tree `t_n`: a root of degree `n` whose neighbours each have `n - 1`
/// further leaves, `n² + 1` vertices in total. `t_0` is `K1`.
pub fn stree(n: usize) -> Result<CanonicalGraph> {
    let mut b = Builder::new();
    let root = b.vertex()?;
    for _ in 0..n {
        let c = b.vertex()?;
        b.edge(root, c);
        for _ in 1..n {
            let l = b.vertex()?;
            b.edge(c, l);
        }
    }
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let s5 = make_named(NamedFamily::S, 5).unwrap();
        assert_eq!(s5.degree_sequence(), &[4, 1, 1, 1, 1]);
        let c71 = make_named(NamedFamily::C1, 7).unwrap();
        assert_eq!((c71.order(), c71.size()), (8, 8));
        let c32 = make_named(NamedFamily::C2, 3).unwrap();
        assert_eq!((c32.order(), c32.size()), (5, 5));
        assert_eq!(make_named(NamedFamily::N, 11).unwrap().order(), 11);
        assert!(make_named(NamedFamily::C, 2).is_err());
    }

    #[test]
    fn double3star_shape() {
        let d = make_double3star();
        assert_eq!(d.degree_sequence(), &[3, 3, 1, 1, 1, 1]);
        assert!(d.is_connected());
        assert_eq!(d.size(), 5);
    }

    #[test]
    fn gadget_counts() {
        let p = pointed_cycle_sum_graph(3, 4).unwrap();
        assert_eq!((p.order(), p.size()), (8, 9));
        let h = csum_hook_graph(2).unwrap();
        assert_eq!((h.order(), h.size()), (13, 13));
        assert_eq!(csum_graph(2).unwrap().order(), 11);
        assert_eq!(cp4c_graph(4, 5).unwrap().order(), 11);
        let t3 = stree(3).unwrap();
        assert_eq!((t3.order(), t3.size()), (10, 9));
        assert_eq!(stree(2).unwrap(), make_named(NamedFamily::P, 5).unwrap());
        assert_eq!(stree(0).unwrap(), make_named(NamedFamily::K, 1).unwrap());
    }
}
