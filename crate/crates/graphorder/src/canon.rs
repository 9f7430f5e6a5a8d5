//! Canonical labelling by lexicographic minimisation.
//!
//! A labelling is a sequence `w_1, …, w_n` of the vertices. Its string is the
//! upper triangle of the relabelled adjacency matrix read row by row, which is
//! exactly the number representation read from the most significant bit
//! (with `w_a = v_{n+1-a}`). The minimum string is found row by row: at each
//! step the next position must come from the first cell of an ordered
//! partition, and within every cell non-neighbours precede neighbours.
//!
//! In exact mode this yields the global minimum over all `n!` labellings.
//! Larger graphs additionally run colour refinement on the partition, which
//! gives a different but still isomorphism-invariant minimum.

use crate::graph::{bits, full_mask, LabelledGraph};

/// Up to this vertex count the canonical form is the exact minimum.
pub const EXACT_LIMIT: usize = 10;

/// Canonical vertex sequence: `order[pos]` is the vertex placed at position `pos`.
pub(crate) fn canonical_order(g: &LabelledGraph) -> Vec<usize> {
    Search::run(g, g.n() > EXACT_LIMIT)
}

/// Vertex sequence attaining the exact minimum string.
pub(crate) fn minimum_order(g: &LabelledGraph) -> Vec<usize> {
    Search::run(g, false)
}

struct Search<'a> {
    g: &'a LabelledGraph,
    refine: bool,
    rows: Vec<u64>,
    order: Vec<usize>,
    best_rows: Vec<u64>,
    best_order: Vec<usize>,
}

impl<'a> Search<'a> {
    fn run(g: &'a LabelledGraph, refine: bool) -> Vec<usize> {
        let n = g.n();
        if n == 0 {
            return Vec::new();
        }
        let mut s = Search {
            g,
            refine,
            rows: Vec::with_capacity(n),
            order: Vec::with_capacity(n),
            best_rows: Vec::new(),
            best_order: Vec::new(),
        };
        let mut cells = vec![full_mask(n)];
        if refine {
            cells = s.refined(cells);
        }
        s.dfs(cells);
        s.best_order
    }

    fn row_value(&self, v: usize, cells: &[u64]) -> u64 {
        let nv = self.g.neighbors(v);
        let mut value = 0u64;
        for (i, &c) in cells.iter().enumerate() {
            let c = if i == 0 { c & !(1 << v) } else { c };
            let size = c.count_ones();
            if size == 0 {
                continue;
            }
            let k = (c & nv).count_ones();
            value = (value << size) | ((1u64 << k) - 1);
        }
        value
    }

    /// True while the current prefix equals the best prefix.
    fn tight(&self) -> bool {
        !self.best_order.is_empty() && self.rows[..] == self.best_rows[..self.rows.len()]
    }

    fn dfs(&mut self, cells: Vec<u64>) {
        if cells.is_empty() {
            if self.best_order.is_empty() || self.rows < self.best_rows {
                self.best_rows = self.rows.clone();
                self.best_order = self.order.clone();
            }
            return;
        }
        let depth = self.order.len();
        let first = cells[0];
        let scored: Vec<(usize, u64)> = bits(first).map(|v| (v, self.row_value(v, &cells))).collect();
        let min_row = scored.iter().map(|&(_, r)| r).min().expect("non-empty cell");
        let mut kept: Vec<usize> = Vec::new();
        for &(v, r) in &scored {
            if r != min_row {
                continue;
            }
            // A transposition of twins is an automorphism fixing the partition.
            let nv = self.g.neighbors(v);
            let twin = kept.iter().any(|&u| {
                nv & !(1 << u) == self.g.neighbors(u) & !(1 << v)
            });
            if !twin {
                kept.push(v);
            }
        }
        for v in kept {
            if self.tight() && min_row > self.best_rows[depth] {
                return;
            }
            self.order.push(v);
            self.rows.push(min_row);
            let next = self.split(&cells, v);
            self.dfs(next);
            self.order.pop();
            self.rows.pop();
        }
    }

    fn split(&self, cells: &[u64], v: usize) -> Vec<u64> {
        let nv = self.g.neighbors(v);
        let mut out = Vec::with_capacity(cells.len() + 1);
        for (i, &c) in cells.iter().enumerate() {
            let c = if i == 0 { c & !(1 << v) } else { c };
            let c0 = c & !nv;
            let c1 = c & nv;
            if c0 != 0 {
                out.push(c0);
            }
            if c1 != 0 {
                out.push(c1);
            }
        }
        if self.refine {
            self.refined(out)
        } else {
            out
        }
    }

    /// Splits cells by neighbour counts into every cell until stable.
    fn refined(&self, mut cells: Vec<u64>) -> Vec<u64> {
        loop {
            let mut out = Vec::with_capacity(cells.len());
            for &c in &cells {
                if c.count_ones() == 1 {
                    out.push(c);
                    continue;
                }
                let mut sigs: Vec<(Vec<u32>, usize)> = bits(c)
                    .map(|v| {
                        let nv = self.g.neighbors(v);
                        (cells.iter().map(|&d| (nv & d).count_ones()).collect(), v)
                    })
                    .collect();
                sigs.sort();
                let mut i = 0;
                while i < sigs.len() {
                    let mut mask = 0u64;
                    let mut j = i;
                    while j < sigs.len() && sigs[j].0 == sigs[i].0 {
                        mask |= 1 << sigs[j].1;
                        j += 1;
                    }
                    out.push(mask);
                    i = j;
                }
            }
            if out.len() == cells.len() {
                return out;
            }
            cells = out;
        }
    }
}
