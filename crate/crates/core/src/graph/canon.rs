//! Canonical forms for small graphs by minimum adjacency bit-string over all
//! vertex permutations, and isomorphism-free enumeration built on them.

use std::collections::BTreeSet;

use crate::graph::Graph;

/// The vertex relabeling of `g` whose column-major upper-triangle bit string
/// is lexicographically least over all permutations.
pub fn canonical_form(g: &Graph) -> Graph {
    let n = g.n();
    if n <= 1 {
        return g.clone();
    }
    let mut best: Option<Vec<bool>> = None;
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    let mut bits = Vec::with_capacity(n * (n - 1) / 2);
    search(g, &mut perm, &mut used, &mut bits, &mut best);
    let best = best.expect("some permutation exists");
    from_bits(n, &best)
}

/// A comparable, hashable canonical key.
pub fn canonical_key(g: &Graph) -> Vec<u64> {
    canonical_form(g).adjacency_rows().to_vec()
}

fn search(
    g: &Graph,
    perm: &mut Vec<usize>,
    used: &mut [bool],
    bits: &mut Vec<bool>,
    best: &mut Option<Vec<bool>>,
) {
    let n = g.n();
    if perm.len() == n {
        if best.as_ref().is_none_or(|b| bits[..] < b[..]) {
            *best = Some(bits.clone());
        }
        return;
    }
    for v in 0..n {
        if used[v] {
            continue;
        }
        let start = bits.len();
        for &u in perm.iter() {
            bits.push(g.has_edge(u, v));
        }
        // Prune when the partial string already exceeds the incumbent.
        let viable = best.as_ref().is_none_or(|b| bits[..] <= b[..bits.len()]);
        if viable {
            used[v] = true;
            perm.push(v);
            search(g, perm, used, bits, best);
            perm.pop();
            used[v] = false;
        }
        bits.truncate(start);
    }
}

fn from_bits(n: usize, bits: &[bool]) -> Graph {
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
    Graph::from_edges(n, &edges).expect("bit string encodes a simple graph")
}

/// All canonical representatives of graphs on exactly `n` vertices, sorted by
/// their adjacency key. Built by extending representatives one vertex at a
/// time with every possible neighborhood.
pub fn enumerate_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 8, "graph enumeration is budgeted to 8 vertices");
    if n == 0 {
        return vec![Graph::edgeless(0)];
    }
    let mut current: BTreeSet<Vec<u64>> = BTreeSet::new();
    current.insert(Graph::edgeless(1).adjacency_rows().to_vec());
    for size in 2..=n {
        let mut next = BTreeSet::new();
        for rows in &current {
            let smaller = Graph {
                n: size - 1,
                adj: rows.clone(),
            };
            for nbrs in 0u64..1 << (size - 1) {
                let mut adj = smaller.adj.clone();
                adj.push(nbrs);
                for (v, row) in adj.iter_mut().enumerate().take(size - 1) {
                    if nbrs >> v & 1 == 1 {
                        *row |= 1 << (size - 1);
                    }
                }
                let g = Graph { n: size, adj };
                next.insert(canonical_key(&g));
            }
        }
        current = next;
    }
    current.into_iter().map(|adj| Graph { n, adj }).collect()
}
