//! Simple graphs over GF(2) adjacency: cut-rank, pivots and pivot-minors,
//! linear rank-width, the subspace-arrangement and binary-matroid encodings,
//! and the pivot-minor linking search with its strong-linking checks.

mod canon;
mod graph6;

pub use canon::{canonical_form, canonical_key, enumerate_graphs};

use std::collections::BTreeSet;

use crate::connfn::{self, ConnFn, Layout};
use crate::error::{Error, Result};
use crate::ffla::{Field, Subspace};
use crate::fullset::SubspaceArrangement;
use crate::linking::{verify_span_conditions, StrongLinkingReport};
use crate::matroid::Configuration;

/// Orbit and pivot-minor search budget on the vertex count.
pub const MAX_ORBIT_VERTICES: usize = 8;

/// A simple graph on vertices `0..n` with symmetric bit-row adjacency.
/// Vertex labels in text formats are 1-based.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Graph {
    pub fn edgeless(n: usize) -> Graph {
        assert!(n <= 64, "vertex count exceeds bit storage");
        Graph { n, adj: vec![0; n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::edgeless(n);
        for &(u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(Error::Precondition(format!(
                    "bad edge ({u}, {v}) on {n} vertices"
                )));
            }
            g.adj[u] |= 1 << v;
            g.adj[v] |= 1 << u;
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Graph {
        let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        if n > 2 {
            edges.push((n - 1, 0));
        }
        Graph::from_edges(n, &edges).expect("cycle edges are valid")
    }

    pub fn complete(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Graph::from_edges(n, &edges).expect("complete edges are valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn full_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn neighbors(&self, u: usize) -> u64 {
        self.adj[u]
    }

    pub fn degree(&self, u: usize) -> u32 {
        self.adj[u].count_ones()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn adjacency_rows(&self) -> &[u64] {
        &self.adj
    }

    /// Induced subgraph on the vertices of `mask`, relabeled in ascending
    /// order of their original ids.
    pub fn induced(&self, mask: u64) -> Graph {
        let verts: Vec<usize> = (0..self.n).filter(|&v| mask >> v & 1 == 1).collect();
        let mut g = Graph::edgeless(verts.len());
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate() {
                if i < j && self.has_edge(u, v) {
                    g.adj[i] |= 1 << j;
                    g.adj[j] |= 1 << i;
                }
            }
        }
        g
    }

    pub fn delete_vertex(&self, v: usize) -> Graph {
        self.induced(self.full_mask() & !(1 << v))
    }

    /// GF(2) rank of the bipartite adjacency block between `x` and its
    /// complement.
    pub fn cut_rank(&self, x: u64) -> u32 {
        let comp = self.full_mask() & !x;
        let mut basis: Vec<u64> = Vec::new();
        for v in 0..self.n {
            if x >> v & 1 == 0 {
                continue;
            }
            let mut row = self.adj[v] & comp;
            for &b in &basis {
                let hb = 63 - b.leading_zeros();
                if row >> hb & 1 == 1 {
                    row ^= b;
                }
            }
            if row != 0 {
                basis.push(row);
            }
        }
        basis.len() as u32
    }

    /// The cut-rank connectivity function table.
    pub fn cut_rank_fn(&self) -> Result<ConnFn> {
        let labels = (1..=self.n).map(|i| i.to_string()).collect();
        ConnFn::from_eval(labels, |mask| self.cut_rank(mask as u64))
    }

    /// Pivot on an edge: flip all pairs across the three neighborhood
    /// classes of `u` and `v` (each class excluding `u` and `v`), then swap
    /// the two labels.
    pub fn pivot(&self, u: usize, v: usize) -> Result<Graph> {
        if u >= self.n || v >= self.n || !self.has_edge(u, v) {
            return Err(Error::NotAnEdge(u, v));
        }
        let uv = 1u64 << u | 1u64 << v;
        let both = self.adj[u] & self.adj[v] & !uv;
        let only_u = self.adj[u] & !self.adj[v] & !uv;
        let only_v = self.adj[v] & !self.adj[u] & !uv;
        let mut g = self.clone();
        for (c1, c2) in [(both, only_u), (both, only_v), (only_u, only_v)] {
            for x in 0..self.n {
                if c1 >> x & 1 == 1 {
                    g.adj[x] ^= c2;
                }
            }
            for y in 0..self.n {
                if c2 >> y & 1 == 1 {
                    g.adj[y] ^= c1;
                }
            }
        }
        g.swap_labels(u, v);
        Ok(g)
    }

    fn swap_labels(&mut self, u: usize, v: usize) {
        self.adj.swap(u, v);
        for row in self.adj.iter_mut() {
            let bu = *row >> u & 1;
            let bv = *row >> v & 1;
            if bu != bv {
                *row ^= 1 << u | 1 << v;
            }
        }
    }

    /// Closure of the graph under single pivots, in breadth-first discovery
    /// order with edges expanded lexicographically.
    pub fn pivot_orbit(&self) -> Result<Vec<Graph>> {
        if self.n > MAX_ORBIT_VERTICES {
            return Err(Error::budget("pivot orbit", self.n, MAX_ORBIT_VERTICES));
        }
        let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
        let mut order = Vec::new();
        let mut queue = std::collections::VecDeque::new();
        seen.insert(self.adj.clone());
        order.push(self.clone());
        queue.push_back(self.clone());
        while let Some(g) = queue.pop_front() {
            for (u, v) in g.edges() {
                let h = g.pivot(u, v).expect("edges are pivotable");
                if seen.insert(h.adj.clone()) {
                    order.push(h.clone());
                    queue.push_back(h);
                }
            }
        }
        Ok(order)
    }

    /// Pivot-minor containment: some orbit member has an induced subgraph
    /// isomorphic to `h`. The `proper` variant also requires fewer vertices.
    pub fn has_pivot_minor(&self, h: &Graph, proper: bool) -> Result<bool> {
        if h.n > self.n || (proper && h.n == self.n) {
            return Ok(false);
        }
        let target = canonical_key(h);
        for member in self.pivot_orbit()? {
            let mut found = false;
            for_subsets_of_size(self.n, h.n, &mut |mask| {
                if !found && canonical_key(&member.induced(mask)) == target {
                    found = true;
                }
            });
            if found {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Path-width of the cut-rank function, with witness layout.
    pub fn linear_rank_width(&self) -> Result<(u32, Layout)> {
        self.linear_rank_width_budget(connfn::DEFAULT_LAYOUT_BUDGET)
    }

    pub fn linear_rank_width_budget(&self, budget: usize) -> Result<(u32, Layout)> {
        if self.n <= 1 {
            return Ok((0, Layout::new((0..self.n).collect())));
        }
        connfn::path_width_budget(&self.cut_rank_fn()?, budget)
    }

    /// The subspace arrangement over GF(2)^n with one member per vertex:
    /// the span of the vertex's own coordinate and its neighborhood sum.
    pub fn arrangement_of(&self) -> SubspaceArrangement {
        let f = Field::gf(2).expect("GF(2)");
        let spaces: Vec<Subspace> = (0..self.n)
            .map(|i| {
                let mut e_i = vec![0u16; self.n];
                e_i[i] = 1;
                let v_i: Vec<u16> = (0..self.n).map(|j| (self.adj[i] >> j & 1) as u16).collect();
                Subspace::span(f.clone(), self.n, &[e_i, v_i]).expect("vectors are well-formed")
            })
            .collect();
        let labels = (1..=self.n).map(|i| i.to_string()).collect();
        SubspaceArrangement::new(f, self.n, labels, spaces).expect("distinct labels")
    }

    /// The binary matroid on 2n elements represented by the identity block
    /// beside the adjacency matrix; labels `e1..en` and `v1..vn`.
    pub fn graph_matroid(&self) -> Configuration {
        let f = Field::gf(2).expect("GF(2)");
        let mut labels = Vec::with_capacity(2 * self.n);
        let mut vectors = Vec::with_capacity(2 * self.n);
        for i in 0..self.n {
            labels.push(format!("e{}", i + 1));
            let mut e_i = vec![0u16; self.n];
            e_i[i] = 1;
            vectors.push(e_i);
        }
        for i in 0..self.n {
            labels.push(format!("v{}", i + 1));
            vectors.push((0..self.n).map(|j| (self.adj[i] >> j & 1) as u16).collect());
        }
        Configuration::new(f, self.n, labels, vectors).expect("valid configuration")
    }

    /// Parse the graph6 line format.
    pub fn from_graph6(s: &str) -> Result<Graph> {
        graph6::parse(s)
    }

    /// Encode as a graph6 line.
    pub fn to_graph6(&self) -> String {
        graph6::emit(self)
    }

    /// Parse a simple adjacency text format: first line the vertex count,
    /// then one `u v` edge per line, 1-based.
    pub fn parse_adjacency(input: &str) -> Result<Graph> {
        let mut lines = crate::ffla::NumberedLines::new(input);
        let (lno, first) = lines.next_content()?;
        let n: usize = first
            .trim()
            .parse()
            .map_err(|_| Error::parse(lno, 1, format!("bad vertex count `{}`", first.trim())))?;
        if n > 64 {
            return Err(Error::parse(lno, 1, format!("vertex count {n} exceeds 64")));
        }
        let mut g = Graph::edgeless(n);
        while let Ok((lno, line)) = lines.next_content() {
            let toks = crate::ffla::tokens_with_positions(line);
            if toks.len() != 2 {
                return Err(Error::parse(lno, 1, "expected `u v`"));
            }
            let mut ends = [0usize; 2];
            for (slot, (pos, tok)) in ends.iter_mut().zip(&toks) {
                let v: usize = tok
                    .parse()
                    .map_err(|_| Error::parse(lno, pos + 1, format!("bad vertex `{tok}`")))?;
                if v == 0 || v > n {
                    return Err(Error::parse(
                        lno,
                        pos + 1,
                        format!("vertex {v} out of range 1..={n}"),
                    ));
                }
                *slot = v - 1;
            }
            if ends[0] == ends[1] {
                return Err(Error::parse(lno, 1, "loops are not allowed"));
            }
            g.adj[ends[0]] |= 1 << ends[1];
            g.adj[ends[1]] |= 1 << ends[0];
        }
        Ok(g)
    }
}

fn for_subsets_of_size(n: usize, k: usize, visit: &mut impl FnMut(u64)) {
    fn rec(n: usize, k: usize, start: usize, mask: u64, visit: &mut impl FnMut(u64)) {
        if k == 0 {
            visit(mask);
            return;
        }
        for v in start..=n.saturating_sub(k) {
            rec(n, k - 1, v + 1, mask | 1 << v, visit);
        }
    }
    rec(n, k, 0, 0, visit);
}

/// Witness for the pivot-minor linking search.
#[derive(Clone, Debug)]
pub struct GraphLinkWitness {
    /// The minor on the union of the two sides, relabeled in ascending order
    /// of the original vertex ids listed in `vertices`.
    pub minor: Graph,
    pub vertices: Vec<usize>,
    /// Minimum cut-rank over all sets nested between the two sides.
    pub min_value: u32,
    /// Lexicographically least minimizer, as a mask of the host graph.
    pub argmin: u64,
    /// Index into the pivot orbit of the member that yielded the minor.
    pub orbit_index: usize,
}

/// Minimum of the cut-rank over all `s`-containing, `t`-avoiding vertex sets,
/// together with the lexicographically least minimizer.
pub fn min_cut_rank_between(g: &Graph, s: u64, t: u64) -> Result<(u32, u64)> {
    if s & t != 0 {
        return Err(Error::OverlappingLabels("the two sides intersect".into()));
    }
    let free: Vec<usize> = (0..g.n()).filter(|&v| (s | t) >> v & 1 == 0).collect();
    if free.len() > 20 {
        return Err(Error::budget("nested cut minimization", free.len(), 20));
    }
    let mut best = (u32::MAX, 0u64);
    for pick in 0u64..1 << free.len() {
        let mut x = s;
        for (i, &v) in free.iter().enumerate() {
            if pick >> i & 1 == 1 {
                x |= 1 << v;
            }
        }
        let val = g.cut_rank(x);
        if val < best.0 || (val == best.0 && x < best.1) {
            best = (val, x);
        }
    }
    Ok(best)
}

/// Search the pivot orbit for a member whose induced subgraph on `s | t`
/// achieves the nested-cut minimum; guaranteed to exist.
pub fn linking_pivot_minor(g: &Graph, s: u64, t: u64) -> Result<GraphLinkWitness> {
    let (min_value, argmin) = min_cut_rank_between(g, s, t)?;
    let verts: Vec<usize> = (0..g.n()).filter(|&v| (s | t) >> v & 1 == 1).collect();
    let s_in_minor: u64 = verts
        .iter()
        .enumerate()
        .filter(|(_, &v)| s >> v & 1 == 1)
        .map(|(i, _)| 1u64 << i)
        .sum();
    for (orbit_index, member) in g.pivot_orbit()?.into_iter().enumerate() {
        let minor = member.induced(s | t);
        if minor.cut_rank(s_in_minor) == min_value {
            return Ok(GraphLinkWitness {
                minor,
                vertices: verts,
                min_value,
                argmin,
                orbit_index,
            });
        }
    }
    Err(Error::Precondition(
        "no orbit member restricts to the required minor; the existence guarantee failed".into(),
    ))
}

/// Strong-linking conditions for graphs, verified exhaustively over the
/// finite GF(2) spans of the binary matroid encoding.
///
/// Hypotheses: `s` and `t` disjoint, the induced subgraph on `s | t` already
/// achieves the nested minimum `k`, and both `z` and `z2` are nested sets of
/// cut-rank `k`. The contracted side is the identity block of the complement
/// of `s | t`.
pub fn strong_linking_graph_check(
    g: &Graph,
    s: u64,
    t: u64,
    z: u64,
    z2: u64,
) -> Result<StrongLinkingReport> {
    if s & t != 0 {
        return Err(Error::OverlappingLabels("the two sides intersect".into()));
    }
    let (k, _) = min_cut_rank_between(g, s, t)?;
    let s_in_union: u64 = {
        let verts: Vec<usize> = (0..g.n()).filter(|&v| (s | t) >> v & 1 == 1).collect();
        verts
            .iter()
            .enumerate()
            .filter(|(_, &v)| s >> v & 1 == 1)
            .map(|(i, _)| 1u64 << i)
            .sum()
    };
    let hypotheses = g.induced(s | t).cut_rank(s_in_union) == k
        && s | z == z
        && z & t == 0
        && s | z2 == z2
        && z2 & t == 0
        && g.cut_rank(z) == k
        && g.cut_rank(z2) == k;
    if !hypotheses {
        return Ok(StrongLinkingReport::inapplicable());
    }
    let c = g.full_mask() & !(s | t);
    let m = g.graph_matroid();
    let span_iv = |mask: u64| -> Result<Subspace> {
        // Span of both identity and adjacency columns of the vertex set.
        let labels: Vec<String> = (0..g.n())
            .filter(|&v| mask >> v & 1 == 1)
            .flat_map(|v| [format!("e{}", v + 1), format!("v{}", v + 1)])
            .collect();
        m.span_mask(m.mask_of(labels.iter().map(|s| s.as_str()))?)
    };
    let span_i = |mask: u64| -> Result<Subspace> {
        let labels: Vec<String> = (0..g.n())
            .filter(|&v| mask >> v & 1 == 1)
            .map(|v| format!("e{}", v + 1))
            .collect();
        m.span_mask(m.mask_of(labels.iter().map(|s| s.as_str()))?)
    };
    let all = g.full_mask();
    let boundary =
        |mask: u64| -> Result<Subspace> { span_iv(mask)?.intersect(&span_iv(all & !mask)?) };
    verify_span_conditions(
        &span_iv(z)?,
        &span_iv(all & !z)?,
        &span_i(c)?,
        &span_i(c & z)?,
        &span_i(c & !z)?,
        &boundary(z)?,
        &boundary(z2)?,
        &span_i(c & (z ^ z2))?,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cut_rank_of_empty_set_is_zero() {
        let g = Graph::path(3);
        assert_eq!(g.cut_rank(0), 0);
        assert_eq!(g.cut_rank(g.full_mask()), 0);
    }

    #[test]
    fn cut_rank_of_path_middle_vertex() {
        let g = Graph::path(3);
        assert_eq!(g.cut_rank(0b010), 1);
    }

    #[test]
    fn cut_rank_of_complete_graph_cuts() {
        let g = Graph::complete(4);
        for x in 1..g.full_mask() {
            assert_eq!(g.cut_rank(x), 1, "x={x:b}");
        }
    }

    #[test]
    fn cut_rank_matches_exact_field_rank() {
        // Cross-check the bitset elimination against the generic matrix rank.
        let f = Field::gf(2).unwrap();
        for g in [Graph::path(5), Graph::cycle(5), Graph::complete(5)] {
            for x in 0..=g.full_mask() {
                let rows: Vec<Vec<u16>> = (0..g.n())
                    .filter(|&v| x >> v & 1 == 1)
                    .map(|v| {
                        (0..g.n())
                            .filter(|&u| x >> u & 1 == 0)
                            .map(|u| (g.adj[v] >> u & 1) as u16)
                            .collect()
                    })
                    .collect();
                let cols = (g.n() as u32 - x.count_ones()) as usize;
                let m = crate::ffla::Matrix::from_rows(f.clone(), cols, &rows).unwrap();
                assert_eq!(g.cut_rank(x) as usize, m.rank());
            }
        }
    }

    #[test]
    fn cut_rank_fn_is_symmetric_submodular() {
        for g in [Graph::path(5), Graph::cycle(6), Graph::complete(4)] {
            assert!(g.cut_rank_fn().unwrap().is_connectivity());
        }
    }

    #[test]
    fn pivot_of_path_end_edge() {
        // Path 1-2-3 pivoted on its first edge: only the label swap acts,
        // relabeling edge 2-3 as 1-3.
        let g = Graph::path(3);
        let h = g.pivot(0, 1).unwrap();
        assert_eq!(h.edges(), vec![(0, 1), (0, 2)]);
    }

    #[test]
    fn pivot_is_an_involution() {
        for g in [Graph::path(4), Graph::cycle(5), Graph::complete(4)] {
            for (u, v) in g.edges() {
                let back = g.pivot(u, v).unwrap().pivot(u, v).unwrap();
                assert_eq!(back, g);
            }
        }
    }

    #[test]
    fn pivot_requires_an_edge() {
        let g = Graph::path(3);
        assert!(g.pivot(0, 2).is_err());
    }

    #[test]
    fn pivot_preserves_cut_rank_function() {
        for g in [Graph::path(5), Graph::cycle(6), Graph::complete(4)] {
            for (u, v) in g.edges() {
                let h = g.pivot(u, v).unwrap();
                for x in 0..=g.full_mask() {
                    assert_eq!(h.cut_rank(x), g.cut_rank(x), "x={x:b}");
                }
            }
        }
    }

    #[test]
    fn pivot_composition_along_triangles() {
        for g in [Graph::complete(3), Graph::complete(4), Graph::cycle(5)] {
            for u in 0..g.n() {
                for v in 0..g.n() {
                    for w in 0..g.n() {
                        if u == v || v == w || u == w {
                            continue;
                        }
                        if g.has_edge(u, v) && g.has_edge(v, w) && g.has_edge(u, w) {
                            let lhs = g.pivot(u, v).unwrap().pivot(v, w).unwrap();
                            let rhs = g.pivot(u, w).unwrap();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn orbit_of_edgeless_graph_is_itself() {
        let g = Graph::edgeless(3);
        assert_eq!(g.pivot_orbit().unwrap(), vec![g]);
    }

    #[test]
    fn orbit_budget_is_enforced() {
        let g = Graph::path(9);
        assert!(matches!(g.pivot_orbit(), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn orbit_of_single_edge_is_itself() {
        let g = Graph::complete(2);
        assert_eq!(g.pivot_orbit().unwrap(), vec![g]);
    }

    #[test]
    fn orbit_of_p4_is_stable_with_constant_cut_rank() {
        let g = Graph::path(4);
        let orbit = g.pivot_orbit().unwrap();
        assert_eq!(orbit, g.pivot_orbit().unwrap());
        for member in &orbit {
            for x in 0..=g.full_mask() {
                assert_eq!(member.cut_rank(x), g.cut_rank(x));
            }
        }
    }

    #[test]
    fn every_graph_is_its_own_pivot_minor() {
        let g = Graph::cycle(5);
        assert!(g.has_pivot_minor(&g, false).unwrap());
        assert!(!g.has_pivot_minor(&g, true).unwrap());
    }

    #[test]
    fn single_vertex_is_a_pivot_minor_of_anything_nonempty() {
        let g = Graph::path(4);
        assert!(g.has_pivot_minor(&Graph::edgeless(1), true).unwrap());
    }

    #[test]
    fn pivot_minors_never_increase_linear_rank_width() {
        let g = Graph::cycle(5);
        let (wg, _) = g.linear_rank_width().unwrap();
        let mut pairs = 0;
        for k in 1..=g.n() {
            let mut found: Vec<Graph> = Vec::new();
            for_subsets_of_size(g.n(), k, &mut |mask| {
                found.push(g.induced(mask));
            });
            for h in found {
                if g.has_pivot_minor(&h, false).unwrap() {
                    let (wh, _) = h.linear_rank_width().unwrap();
                    assert!(wh <= wg);
                    pairs += 1;
                }
            }
        }
        assert!(pairs > 0);
    }

    #[test]
    fn linear_rank_width_values() {
        assert_eq!(Graph::edgeless(4).linear_rank_width().unwrap().0, 0);
        assert_eq!(Graph::path(4).linear_rank_width().unwrap().0, 1);
    }

    #[test]
    fn c5_rank_width_agrees_with_arrangement_path_width() {
        let g = Graph::cycle(5);
        let (w, _) = g.linear_rank_width().unwrap();
        let (aw, _) = g.arrangement_of().path_width().unwrap();
        assert_eq!(aw, 2 * w);
    }

    #[test]
    fn edgeless_arrangement_members_are_coordinate_lines() {
        let g = Graph::edgeless(3);
        let v = g.arrangement_of();
        for (i, s) in v.spaces().iter().enumerate() {
            assert_eq!(s.dim(), 1);
            let mut e = vec![0u16; 3];
            e[i] = 1;
            assert!(s.contains_vector(&e));
        }
        for mask in 0..8u32 {
            assert!(v.boundary_mask(mask).unwrap().is_zero());
        }
    }

    #[test]
    fn arrangement_boundary_dimension_is_twice_cut_rank() {
        for g in [Graph::path(3), Graph::path(5), Graph::cycle(6)] {
            let v = g.arrangement_of();
            for (i, s) in v.spaces().iter().enumerate() {
                let expected = if g.degree(i) > 0 { 2 } else { 1 };
                assert_eq!(s.dim(), expected);
            }
            for x in 0..=g.full_mask() {
                assert_eq!(
                    v.boundary_mask(x as u32).unwrap().dim() as u32,
                    2 * g.cut_rank(x),
                    "x={x:b}"
                );
            }
        }
    }

    #[test]
    fn p3_arrangement_middle_boundary() {
        let g = Graph::path(3);
        let v = g.arrangement_of();
        assert_eq!(v.boundary_mask(0b010).unwrap().dim(), 2);
    }

    #[test]
    fn graph_matroid_of_edgeless_graph() {
        let g = Graph::edgeless(3);
        let m = g.graph_matroid();
        assert_eq!(m.len(), 6);
        // Adjacency columns are all zero, so the identity-plus-adjacency split
        // of any vertex set has connectivity zero.
        for x in 0u64..8 {
            let labels: Vec<String> = (0..3)
                .filter(|&v| x >> v & 1 == 1)
                .flat_map(|v| [format!("e{}", v + 1), format!("v{}", v + 1)])
                .collect();
            assert_eq!(m.lambda(labels.iter().map(|s| s.as_str())).unwrap(), 0);
        }
    }

    #[test]
    fn graph_matroid_connectivity_doubles_cut_rank() {
        for g in [Graph::path(3), Graph::cycle(4), Graph::path(5)] {
            let m = g.graph_matroid();
            for x in 0..=g.full_mask() {
                let labels: Vec<String> = (0..g.n())
                    .filter(|&v| x >> v & 1 == 1)
                    .flat_map(|v| [format!("e{}", v + 1), format!("v{}", v + 1)])
                    .collect();
                assert_eq!(
                    m.lambda(labels.iter().map(|s| s.as_str())).unwrap() as u32,
                    2 * g.cut_rank(x),
                    "x={x:b}"
                );
            }
        }
    }

    #[test]
    fn adjacency_columns_are_coindependent() {
        for g in [Graph::path(4), Graph::cycle(5)] {
            let m = g.graph_matroid();
            for c in 0..=g.full_mask() {
                let labels: Vec<String> = (0..g.n())
                    .filter(|&v| c >> v & 1 == 1)
                    .map(|v| format!("v{}", v + 1))
                    .collect();
                assert!(m
                    .is_coindependent(labels.iter().map(|s| s.as_str()))
                    .unwrap());
            }
        }
    }

    #[test]
    fn linking_when_both_sides_cover_everything() {
        let g = Graph::path(4);
        let s = 0b0011u64;
        let t = 0b1100u64;
        let w = linking_pivot_minor(&g, s, t).unwrap();
        assert_eq!(w.min_value, g.cut_rank(s));
        assert_eq!(w.minor.cut_rank(0b0011), w.min_value);
    }

    #[test]
    fn linking_p4_outer_pair() {
        let g = Graph::path(4);
        let w = linking_pivot_minor(&g, 0b0001, 0b1000).unwrap();
        assert_eq!(w.min_value, 1);
        assert_eq!(w.vertices, vec![0, 3]);
        assert_eq!(w.minor.cut_rank(0b01), 1);
    }

    #[test]
    fn strong_linking_trivial_when_no_contraction() {
        let g = Graph::path(3);
        // s | t covers everything, so the contracted block is empty.
        let report = strong_linking_graph_check(&g, 0b001, 0b110, 0b001, 0b001).unwrap();
        assert!(report.applicable);
        assert!(report.all_hold());
    }

    #[test]
    fn graph6_roundtrip_known_vector() {
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(g.to_graph6(), "DQc");
        assert_eq!(Graph::from_graph6("DQc").unwrap(), g);
    }

    #[test]
    fn adjacency_text_parses() {
        let g = Graph::parse_adjacency("4\n1 2\n2 3\n3 4\n").unwrap();
        assert_eq!(g, Graph::path(4));
        assert!(Graph::parse_adjacency("3\n1 5\n").is_err());
        assert!(Graph::parse_adjacency("3\n1 1\n").is_err());
    }
}
