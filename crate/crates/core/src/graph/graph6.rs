//! The graph6 line format for small simple graphs (up to 62 vertices here).

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn emit(g: &Graph) -> String {
    let n = g.n();
    assert!(n <= 62, "graph6 emission supports up to 62 vertices");
    let mut out = String::new();
    out.push((n as u8 + 63) as char);
    let mut bits: Vec<bool> = Vec::new();
    for j in 1..n {
        for i in 0..j {
            bits.push(g.has_edge(i, j));
        }
    }
    while !bits.len().is_multiple_of(6) {
        bits.push(false);
    }
    for chunk in bits.chunks(6) {
        let mut v = 0u8;
        for (t, &b) in chunk.iter().enumerate() {
            if b {
                v |= 1 << (5 - t);
            }
        }
        out.push((v + 63) as char);
    }
    out
}

pub fn parse(s: &str) -> Result<Graph> {
    let s = s.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Error::parse(1, 1, "empty graph6 string"));
    }
    if bytes[0] == 126 {
        return Err(Error::parse(
            1,
            1,
            "graph6 strings with 63 or more vertices are not supported",
        ));
    }
    if !(63..=125).contains(&bytes[0]) {
        return Err(Error::parse(
            1,
            1,
            format!("bad graph6 size byte `{}`", bytes[0] as char),
        ));
    }
    let n = (bytes[0] - 63) as usize;
    let needed = (n * n.saturating_sub(1) / 2).div_ceil(6);
    if bytes.len() - 1 != needed {
        return Err(Error::parse(
            1,
            2,
            format!(
                "graph6 body has {} bytes, expected {needed}",
                bytes.len() - 1
            ),
        ));
    }
    let mut bits = Vec::with_capacity(needed * 6);
    for (idx, &b) in bytes[1..].iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::parse(
                1,
                idx + 2,
                format!("bad graph6 byte `{}`", b as char),
            ));
        }
        let v = b - 63;
        for t in 0..6 {
            bits.push(v >> (5 - t) & 1 == 1);
        }
    }
    let mut edges = Vec::new();
    let mut pos = 0;
    for j in 1..n {
        for i in 0..j {
            if bits[pos] {
                edges.push((i, j));
            }
            pos += 1;
        }
    }
    Graph::from_edges(n, &edges)
}
