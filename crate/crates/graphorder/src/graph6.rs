//! graph6 encoding and decoding.
//!
//! The null graph encodes as `?` (a single `N(0)` byte).

use crate::error::{Error, Result};
use crate::graph::{LabelledGraph, MAX_VERTICES};

const HEADER: &str = ">>graph6<<";

/// Encodes a graph in graph6.
pub fn encode(g: &LabelledGraph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.push(((n >> 12) & 63) as u8 + 63);
        out.push(((n >> 6) & 63) as u8 + 63);
        out.push((n & 63) as u8 + 63);
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// Decodes one graph6 string. A leading `>>graph6<<` header is accepted.
pub fn decode(s: &str) -> Result<LabelledGraph> {
    let s = s.trim();
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Parse("empty graph6 string".into()));
    }
    if let Some(b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Parse(format!("invalid graph6 byte {b:#x}")));
    }
    let (n, rest) = if bytes[0] == 126 {
        if bytes.len() < 4 || bytes[1] == 126 {
            return Err(Error::Parse("unsupported graph6 size prefix".into()));
        }
        let n = ((bytes[1] - 63) as usize) << 12
            | ((bytes[2] - 63) as usize) << 6
            | (bytes[3] - 63) as usize;
        (n, &bytes[4..])
    } else {
        ((bytes[0] - 63) as usize, &bytes[1..])
    };
    if n > MAX_VERTICES {
        return Err(Error::Resource(format!(
            "graph6 input has {n} vertices, limit is {MAX_VERTICES}"
        )));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    if rest.len() != nbits.div_ceil(6) {
        return Err(Error::Parse(format!(
            "graph6 body has {} bytes, expected {} for n = {n}",
            rest.len(),
            nbits.div_ceil(6)
        )));
    }
    let mut g = LabelledGraph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = rest[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_strings() {
        let k3 = LabelledGraph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(encode(&k3), "Bw");
        let null = LabelledGraph::empty(0).unwrap();
        assert_eq!(encode(&null), "?");
        assert_eq!(decode("?").unwrap().n(), 0);
        assert_eq!(encode(&LabelledGraph::empty(1).unwrap()), "@");
    }

    #[test]
    fn roundtrip_and_header() {
        let g = LabelledGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        let s = encode(&g);
        assert_eq!(decode(&s).unwrap(), g);
        assert_eq!(decode(&format!(">>graph6<<{s}")).unwrap(), g);
    }

    #[test]
    fn rejects_bad_length() {
        assert!(decode("Bww").is_err());
        assert!(decode("B").is_err());
    }
}
