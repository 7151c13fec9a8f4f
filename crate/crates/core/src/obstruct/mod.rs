//! Excluded-minor and excluded-pivot-minor search at desk scale, with
//! revalidating certificates, the proof-pipeline reenactment, and the exact
//! formula constants.

pub mod bounds;
pub mod reenact;

use std::collections::BTreeMap;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::connfn;
use crate::error::{Error, Result};
use crate::ffla::Field;
use crate::graph::{canonical_key, enumerate_graphs, Graph};
use crate::matroid::{Configuration, MinorSpec};

/// Vertex budget for the graph obstruction search.
pub const MAX_GRAPH_SEARCH: usize = 8;
/// Element budget for the matroid obstruction search.
pub const MAX_MATROID_SEARCH: usize = 7;
/// Ambient dimension for the binary matroid enumeration.
pub const MAX_MATROID_RANK: usize = 4;

/// What kind of object a certificate describes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum ObjectKind {
    /// A graph, stored as its canonical graph6 line.
    Graph { graph6: String },
    /// A configuration, stored in the matrix-plus-labels text format.
    Matroid { text: String },
}

/// Witness that one single-step reduction stays inside the class.
#[derive(Clone, Debug, Serialize)]
pub struct ChildWitness {
    pub operation: String,
    pub width: u32,
    pub layout: Vec<String>,
}

/// Certificate that an object lies outside the width-`k` class while every
/// proper reduction lies inside it.
#[derive(Clone, Debug, Serialize)]
pub struct ObstructionCertificate {
    pub kind: ObjectKind,
    pub k: u32,
    /// Exact width of the object; always exceeds `k`.
    pub width: u32,
    /// Witness layout attaining `width`.
    pub layout: Vec<String>,
    /// Hash of the deterministic search transcript.
    pub transcript_sha256: String,
    /// Every distinct single-step reduction with its width.
    pub children: Vec<ChildWitness>,
}

impl ObstructionCertificate {
    /// Deterministic sort key for certificate databases.
    pub fn sort_key(&self) -> (u32, ObjectKind) {
        (self.k, self.kind.clone())
    }

    pub fn object_size(&self) -> usize {
        match &self.kind {
            ObjectKind::Graph { graph6 } => Graph::from_graph6(graph6).map(|g| g.n()).unwrap_or(0),
            ObjectKind::Matroid { text } => Configuration::parse_text(text)
                .map(|c| c.len())
                .unwrap_or(0),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("certificate serializes")
    }
}

fn transcript_hash(lines: &[String]) -> String {
    let mut h = Sha256::new();
    for line in lines {
        h.update(line.as_bytes());
        h.update(b"\n");
    }
    let out = h.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

/// Decide whether a configuration is an excluded minor for path-width at
/// most `k`: its own path-width exceeds `k` while every single-element
/// deletion and contraction has path-width at most `k`. Single-element
/// reductions suffice because path-width is monotone under minors.
pub fn is_excluded_minor_pw(a: &Configuration, k: u32) -> Result<Option<ObstructionCertificate>> {
    let (width, layout) = connfn::path_width(&a.lambda_fn()?)?;
    if width <= k {
        return Ok(None);
    }
    let mut transcript = vec![
        format!("matroid {:?}", a.to_text()),
        format!("k {k} width {width}"),
    ];
    let mut children = Vec::new();
    for label in a.labels() {
        for (op, spec) in [
            ("delete", MinorSpec::new([], [label.clone()])),
            ("contract", MinorSpec::new([label.clone()], [])),
        ] {
            let minor = a.minor(&spec)?;
            let (w, l) = connfn::path_width(&minor.lambda_fn()?)?;
            transcript.push(format!("{op} {label} width {w}"));
            if w > k {
                return Ok(None);
            }
            children.push(ChildWitness {
                operation: format!("{op} {label}"),
                width: w,
                layout: l.0.iter().map(|&i| minor.labels()[i].clone()).collect(),
            });
        }
    }
    Ok(Some(ObstructionCertificate {
        kind: ObjectKind::Matroid { text: a.to_text() },
        k,
        width,
        layout: layout.0.iter().map(|&i| a.labels()[i].clone()).collect(),
        transcript_sha256: transcript_hash(&transcript),
        children,
    }))
}

/// Decide whether a graph is an excluded pivot-minor for linear rank-width
/// at most `k`: its own linear rank-width exceeds `k` while every one-vertex
/// deletion of every pivot-orbit member has linear rank-width at most `k`.
/// One-vertex deletions of orbit members cover all proper pivot-minors by
/// monotonicity and induction.
pub fn is_excluded_pivotminor_lrw(g: &Graph, k: u32) -> Result<Option<ObstructionCertificate>> {
    if g.n() > MAX_GRAPH_SEARCH {
        return Err(Error::budget(
            "pivot-minor obstruction test",
            g.n(),
            MAX_GRAPH_SEARCH,
        ));
    }
    let (width, layout) = g.linear_rank_width()?;
    if width <= k {
        return Ok(None);
    }
    // Deletions of the graph itself come first: most non-obstructions fail
    // here, before the orbit is materialized.
    for v in 0..g.n() {
        if g.delete_vertex(v).linear_rank_width()?.0 > k {
            return Ok(None);
        }
    }
    let canonical = crate::graph::canonical_form(g);
    let mut transcript = vec![
        format!("graph {}", canonical.to_graph6()),
        format!("k {k} width {width}"),
    ];
    let mut seen: BTreeMap<Vec<u64>, ChildWitness> = BTreeMap::new();
    for (mi, member) in g.pivot_orbit()?.into_iter().enumerate() {
        for v in 0..g.n() {
            let child = member.delete_vertex(v);
            let key = canonical_key(&child);
            if seen.contains_key(&key) {
                continue;
            }
            let (w, l) = child.linear_rank_width()?;
            transcript.push(format!("orbit {mi} delete {} width {w}", v + 1));
            if w > k {
                return Ok(None);
            }
            seen.insert(
                key,
                ChildWitness {
                    operation: format!("orbit member {mi}, delete vertex {}", v + 1),
                    width: w,
                    layout: l.0.iter().map(|i| (i + 1).to_string()).collect(),
                },
            );
        }
    }
    Ok(Some(ObstructionCertificate {
        kind: ObjectKind::Graph {
            graph6: canonical.to_graph6(),
        },
        k,
        width,
        layout: layout.0.iter().map(|i| (i + 1).to_string()).collect(),
        transcript_sha256: transcript_hash(&transcript),
        children: seen.into_values().collect(),
    }))
}

/// All canonical representatives of GF(2) configurations with at most
/// `max_n` elements in ambient dimension `dim`, deduplicated by the matroid
/// fingerprint. Vectors may repeat and may be zero.
pub fn enumerate_binary_configurations(max_n: usize, dim: usize) -> Result<Vec<Configuration>> {
    if max_n > MAX_MATROID_SEARCH {
        return Err(Error::budget(
            "matroid enumeration",
            max_n,
            MAX_MATROID_SEARCH,
        ));
    }
    if dim > MAX_MATROID_RANK {
        return Err(Error::budget(
            "matroid enumeration dimension",
            dim,
            MAX_MATROID_RANK,
        ));
    }
    let f = Field::gf(2)?;
    let max_value = (1usize << dim) - 1;
    let mut out = Vec::new();
    let mut seen: std::collections::BTreeSet<(usize, Vec<u64>)> = std::collections::BTreeSet::new();
    for n in 0..=max_n {
        let mut pick = vec![0usize; n];
        loop {
            // Current nondecreasing multiset of column indices.
            let vectors: Vec<Vec<u16>> = pick
                .iter()
                .map(|&c| (0..dim).map(|r| (c >> r & 1) as u16).collect())
                .collect();
            let labels = (1..=n).map(|i| format!("x{i}")).collect();
            let a = Configuration::new(f.clone(), dim, labels, vectors)?;
            if seen.insert((n, binary_fingerprint(&a))) {
                out.push(a);
            }
            if !next_multiset(&mut pick, max_value) {
                break;
            }
        }
    }
    Ok(out)
}

/// Advance a nondecreasing index sequence; false once exhausted.
fn next_multiset(pick: &mut [usize], max_value: usize) -> bool {
    let mut i = pick.len();
    while i > 0 {
        i -= 1;
        if pick[i] < max_value {
            let v = pick[i] + 1;
            for slot in pick.iter_mut().skip(i) {
                *slot = v;
            }
            return true;
        }
    }
    false
}

/// Fast canonical fingerprint for GF(2) configurations in small ambient
/// dimension: the lexicographically least independence bit-vector over all
/// label permutations, with columns packed into machine words.
pub fn binary_fingerprint(a: &Configuration) -> Vec<u64> {
    let n = a.len();
    assert!(n <= 8, "fingerprint budget");
    let cols: Vec<u16> = a
        .vectors()
        .iter()
        .map(|v| {
            v.iter()
                .enumerate()
                .fold(0u16, |m, (i, &e)| m | ((e & 1) << i))
        })
        .collect();
    let subsets = 1usize << n;
    let mut indep = vec![false; subsets];
    for (mask, slot) in indep.iter_mut().enumerate() {
        *slot = gf2_rank(&cols, mask as u32) == (mask as u32).count_ones();
    }
    let words = subsets.div_ceil(64);
    let mut best: Option<Vec<u64>> = None;
    let mut perm: Vec<usize> = (0..n).collect();
    permute_all(&mut perm, 0, &mut |p| {
        let mut fp = vec![0u64; words];
        for m in 0..subsets {
            let mut bits = 0usize;
            for (i, &pi) in p.iter().enumerate() {
                if m >> i & 1 == 1 {
                    bits |= 1 << pi;
                }
            }
            if indep[bits] {
                fp[m / 64] |= 1 << (m % 64);
            }
        }
        if best.as_ref().is_none_or(|b| fp < *b) {
            best = Some(fp);
        }
    });
    best.unwrap_or_else(|| vec![0u64; words.max(1)])
}

fn gf2_rank(cols: &[u16], mask: u32) -> u32 {
    let mut basis: Vec<u16> = Vec::new();
    for (i, &c) in cols.iter().enumerate() {
        if mask >> i & 1 == 0 {
            continue;
        }
        let mut r = c;
        for &b in &basis {
            let hb = 15 - b.leading_zeros();
            if r >> hb & 1 == 1 {
                r ^= b;
            }
        }
        if r != 0 {
            basis.push(r);
        }
    }
    basis.len() as u32
}

fn permute_all(perm: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        visit(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute_all(perm, k + 1, visit);
        perm.swap(k, i);
    }
}

/// Search options shared by both obstruction searches.
#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub workers: usize,
    /// Optional deterministic shuffle of the candidate order; the output is
    /// identical either way, which the revalidation pass exercises.
    pub shuffle_seed: Option<u64>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            workers: 1,
            shuffle_seed: None,
        }
    }
}

fn shuffle_deterministic<T>(items: &mut [T], seed: u64) {
    // Small xorshift-driven Fisher-Yates; reproducible across platforms.
    let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    for i in (1..items.len()).rev() {
        let j = (next() % (i as u64 + 1)) as usize;
        items.swap(i, j);
    }
}

/// Evaluate a pure predicate over candidates on a worker pool, preserving a
/// deterministic output order independent of scheduling.
fn parallel_filter<T, C>(
    candidates: Vec<T>,
    workers: usize,
    eval: impl Fn(&T) -> Result<Option<C>> + Sync,
) -> Result<Vec<C>>
where
    T: Sync,
    C: Send,
{
    let workers = workers.max(1);
    let mut slots: Vec<Option<C>> = Vec::with_capacity(candidates.len());
    if workers == 1 {
        for c in &candidates {
            slots.push(eval(c)?);
        }
    } else {
        let results: Vec<Result<Vec<(usize, Option<C>)>>> = std::thread::scope(|scope| {
            let eval = &eval;
            let candidates = &candidates;
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    scope.spawn(move || {
                        let mut local = Vec::new();
                        for (i, c) in candidates.iter().enumerate() {
                            if i % workers == w {
                                local.push((i, eval(c)?));
                            }
                        }
                        Ok(local)
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("worker panicked"))
                .collect()
        });
        let mut merged: Vec<(usize, Option<C>)> = Vec::with_capacity(candidates.len());
        for r in results {
            merged.extend(r?);
        }
        merged.sort_by_key(|(i, _)| *i);
        slots.extend(merged.into_iter().map(|(_, c)| c));
    }
    Ok(slots.into_iter().flatten().collect())
}

/// Enumerate canonical graphs up to `max_n` vertices and return the
/// certificates of every excluded pivot-minor for linear rank-width at most
/// `k`, sorted canonically. Output is byte-identical for any worker count
/// and any shuffle seed.
pub fn search_graph_obstructions(
    k: u32,
    max_n: usize,
    options: &SearchOptions,
) -> Result<Vec<ObstructionCertificate>> {
    if max_n > MAX_GRAPH_SEARCH {
        return Err(Error::budget(
            "graph obstruction search",
            max_n,
            MAX_GRAPH_SEARCH,
        ));
    }
    let mut candidates: Vec<Graph> = (1..=max_n).flat_map(enumerate_graphs).collect();
    if let Some(seed) = options.shuffle_seed {
        shuffle_deterministic(&mut candidates, seed);
    }
    let mut certs = parallel_filter(candidates, options.workers, |g| {
        is_excluded_pivotminor_lrw(g, k)
    })?;
    certs.sort_by_key(|c| c.sort_key());
    certs.dedup_by_key(|c| c.sort_key());
    Ok(certs)
}

/// Enumerate canonical GF(2) configurations up to `max_n` elements and
/// return the certificates of every excluded minor for path-width at most
/// `k`, sorted canonically.
pub fn search_matroid_obstructions(
    k: u32,
    max_n: usize,
    dim: usize,
    options: &SearchOptions,
) -> Result<Vec<ObstructionCertificate>> {
    let mut candidates = enumerate_binary_configurations(max_n, dim)?;
    if let Some(seed) = options.shuffle_seed {
        shuffle_deterministic(&mut candidates, seed);
    }
    let mut certs = parallel_filter(candidates, options.workers, |a| is_excluded_minor_pw(a, k))?;
    certs.sort_by_key(|c| c.sort_key());
    certs.dedup_by_key(|c| c.sort_key());
    Ok(certs)
}
