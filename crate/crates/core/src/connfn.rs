//! Symmetric submodular connectivity functions on small ground sets, linear
//! layouts and their widths, exhaustive path-width search, linked layouts,
//! and the repeated-cuts finder used by the obstruction pipeline.
//!
//! Ground-set subsets are bitmasks over element indices; the ground set is
//! capped so that a full value table fits in memory.

use crate::error::{Error, Result};

/// Largest ground set for which a full 2^n value table is built.
pub const MAX_GROUND: usize = 20;

/// Default exhaustive-search budget for layout enumeration.
pub const DEFAULT_LAYOUT_BUDGET: usize = 9;

/// A connectivity function given by a full table of values over all subsets
/// of an indexed ground set.
///
/// Construction accepts any evaluator; the table realizes the abstract
/// callable contract while keeping hot loops branch-free.
#[derive(Clone, Debug)]
pub struct ConnFn {
    labels: Vec<String>,
    values: Vec<u32>,
}

impl ConnFn {
    pub fn from_eval(labels: Vec<String>, eval: impl Fn(u32) -> u32) -> Result<ConnFn> {
        let n = labels.len();
        if n > MAX_GROUND {
            return Err(Error::budget(
                "connectivity function ground set",
                n,
                MAX_GROUND,
            ));
        }
        let values = (0u32..1 << n).map(eval).collect();
        Ok(ConnFn { labels, values })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn full_mask(&self) -> u32 {
        ((1u64 << self.n()) - 1) as u32
    }

    pub fn eval(&self, subset: u32) -> u32 {
        self.values[subset as usize]
    }

    pub fn is_symmetric(&self) -> bool {
        let full = self.full_mask();
        (0..=full).all(|x| self.eval(x) == self.eval(full & !x))
    }

    pub fn is_submodular(&self) -> bool {
        let full = self.full_mask();
        for x in 0..=full {
            for y in 0..=full {
                if self.eval(x) + self.eval(y) < self.eval(x | y) + self.eval(x & y) {
                    return false;
                }
            }
        }
        true
    }

    /// f(0) = 0, symmetric and submodular, checked exhaustively.
    pub fn is_connectivity(&self) -> bool {
        self.eval(0) == 0 && self.is_symmetric() && self.is_submodular()
    }
}

/// A linear layout: a permutation of the ground-set indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Layout(pub Vec<usize>);

impl Layout {
    pub fn new(order: Vec<usize>) -> Layout {
        Layout(order)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.0.len() != n {
            return Err(Error::NotAPermutation);
        }
        let mut seen = vec![false; n];
        for &e in &self.0 {
            if e >= n || seen[e] {
                return Err(Error::NotAPermutation);
            }
            seen[e] = true;
        }
        Ok(())
    }

    /// Render using the ground-set labels of `f`.
    pub fn display(&self, f: &ConnFn) -> String {
        let names: Vec<&str> = self.0.iter().map(|&i| f.labels()[i].as_str()).collect();
        names.join(",")
    }
}

/// The prefix-cut value sequence a_0, ..., a_n of a layout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutProfile(pub Vec<u32>);

impl CutProfile {
    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Prefix-cut profile of a layout: a_i = f(first i elements).
pub fn cut_profile(f: &ConnFn, layout: &Layout) -> Result<CutProfile> {
    layout.validate(f.n())?;
    let mut mask = 0u32;
    let mut vals = Vec::with_capacity(f.n() + 1);
    vals.push(f.eval(0));
    for &e in &layout.0 {
        mask |= 1 << e;
        vals.push(f.eval(mask));
    }
    Ok(CutProfile(vals))
}

/// Width of a layout: the maximum over the proper nonempty prefixes.
/// Zero by convention when the ground set has at most one element.
pub fn width(f: &ConnFn, layout: &Layout) -> Result<u32> {
    layout.validate(f.n())?;
    let profile = cut_profile(f, layout)?;
    Ok(profile.0[1..f.n().max(1)]
        .iter()
        .copied()
        .max()
        .unwrap_or(0))
}

/// Minimum layout width together with the lexicographically least witness.
pub fn path_width(f: &ConnFn) -> Result<(u32, Layout)> {
    path_width_budget(f, DEFAULT_LAYOUT_BUDGET)
}

pub fn path_width_budget(f: &ConnFn, budget: usize) -> Result<(u32, Layout)> {
    let n = f.n();
    if n > budget {
        return Err(Error::budget("exhaustive layout search", n, budget));
    }
    if n <= 1 {
        return Ok((0, Layout::new((0..n).collect())));
    }
    let mut best: Option<(u32, Vec<usize>)> = None;
    let mut prefix = Vec::with_capacity(n);
    search_layouts(f, &mut prefix, 0, 0, &mut best);
    let (w, order) = best.expect("nonempty ground set has layouts");
    Ok((w, Layout::new(order)))
}

/// DFS over layouts in lexicographic order with prefix-width pruning.
///
/// A prefix is abandoned only when its running width strictly exceeds the
/// incumbent, and the incumbent is replaced only by a strictly smaller width,
/// so the first optimum recorded is the lexicographically least one.
fn search_layouts(
    f: &ConnFn,
    prefix: &mut Vec<usize>,
    used: u32,
    running: u32,
    best: &mut Option<(u32, Vec<usize>)>,
) {
    let n = f.n();
    if prefix.len() == n {
        if best.as_ref().is_none_or(|(bw, _)| running < *bw) {
            *best = Some((running, prefix.clone()));
        }
        return;
    }
    for e in 0..n {
        if used >> e & 1 == 1 {
            continue;
        }
        let mask = used | 1 << e;
        let cut = if prefix.len() + 1 == n {
            0
        } else {
            f.eval(mask)
        };
        let new_running = running.max(cut);
        if let Some((bw, _)) = best {
            if new_running > *bw {
                continue;
            }
        }
        prefix.push(e);
        search_layouts(f, prefix, mask, new_running, best);
        prefix.pop();
    }
}

/// Whether a layout is linked: every window minimum over nested cut sets is
/// achieved by a prefix cut inside the window. The inner minimization is
/// exhaustive over all 2^(j-i) subsets of the window.
pub fn is_linked(f: &ConnFn, layout: &Layout) -> Result<bool> {
    layout.validate(f.n())?;
    let n = f.n();
    let profile = cut_profile(f, layout)?;
    let mut prefix_masks = Vec::with_capacity(n + 1);
    let mut mask = 0u32;
    prefix_masks.push(0u32);
    for &e in &layout.0 {
        mask |= 1 << e;
        prefix_masks.push(mask);
    }
    for i in 0..=n {
        for j in i + 1..=n {
            let window: Vec<usize> = layout.0[i..j].to_vec();
            let base = prefix_masks[i];
            let mut min_x = u32::MAX;
            for pick in 0u32..1 << window.len() {
                let mut x = base;
                for (t, &e) in window.iter().enumerate() {
                    if pick >> t & 1 == 1 {
                        x |= 1 << e;
                    }
                }
                min_x = min_x.min(f.eval(x));
            }
            let min_profile = profile.0[i..=j].iter().copied().min().unwrap();
            if min_x != min_profile {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A layout that is simultaneously linked and of minimum width, found by
/// lexicographic search over optimal layouts.
pub fn find_linked_optimal(f: &ConnFn) -> Result<Layout> {
    find_linked_optimal_budget(f, DEFAULT_LAYOUT_BUDGET)
}

pub fn find_linked_optimal_budget(f: &ConnFn, budget: usize) -> Result<Layout> {
    let n = f.n();
    if n > budget {
        return Err(Error::budget("linked layout search", n, budget));
    }
    if n <= 1 {
        return Ok(Layout::new((0..n).collect()));
    }
    let (w, _) = path_width_budget(f, budget)?;
    let mut found: Option<Layout> = None;
    let mut prefix = Vec::with_capacity(n);
    search_optimal_layouts(f, w, &mut prefix, 0, &mut |layout| {
        let candidate = Layout::new(layout.to_vec());
        if is_linked(f, &candidate).expect("layout is valid") {
            found = Some(candidate);
            true
        } else {
            false
        }
    });
    found.ok_or_else(|| {
        Error::Precondition(
            "no linked optimal layout exists; the existence guarantee failed".into(),
        )
    })
}

fn search_optimal_layouts(
    f: &ConnFn,
    limit: u32,
    prefix: &mut Vec<usize>,
    used: u32,
    stop: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    let n = f.n();
    if prefix.len() == n {
        return stop(prefix);
    }
    for e in 0..n {
        if used >> e & 1 == 1 {
            continue;
        }
        let mask = used | 1 << e;
        let cut = if prefix.len() + 1 == n {
            0
        } else {
            f.eval(mask)
        };
        if cut > limit {
            continue;
        }
        prefix.push(e);
        let done = search_optimal_layouts(f, limit, prefix, mask, stop);
        prefix.pop();
        if done {
            return true;
        }
    }
    false
}

/// Indices of equal-value cuts found by [`find_repeated_cuts`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepeatedCuts {
    /// Strictly increasing positions into the profile.
    pub indices: Vec<usize>,
    /// The shared cut value.
    pub value: u32,
}

impl RepeatedCuts {
    /// Definitional revalidation against the profile it was found in.
    pub fn validate(&self, profile: &CutProfile, count: usize) -> bool {
        if self.indices.len() != count {
            return false;
        }
        if self.indices.windows(2).any(|w| w[0] >= w[1]) {
            return false;
        }
        if self.indices.iter().any(|&i| profile.0[i] != self.value) {
            return false;
        }
        let (lo, hi) = (self.indices[0], *self.indices.last().unwrap());
        (lo..=hi).all(|i| profile.0[i] >= self.value)
    }
}

/// Find `count` positions of equal cut value with no smaller value between
/// them, by the recursion on the base level: collect base-level occurrences,
/// and when there are too few, descend into the longest maximal stretch of
/// strictly higher values (ties broken by earliest start).
///
/// The profile must satisfy a_i >= a_0 = a_n and unit steps |a_i - a_{i+1}| <= 1.
/// When `count >= 4` and the profile is at least as long as the threshold
/// returned by [`crate::obstruct::bounds::repeat_length_threshold`], a witness
/// is guaranteed; otherwise one is returned only if the recursion finds it.
pub fn find_repeated_cuts(profile: &CutProfile, count: usize) -> Result<Option<RepeatedCuts>> {
    let vals = &profile.0;
    if vals.is_empty() {
        return Err(Error::Precondition("empty cut profile".into()));
    }
    if count == 0 {
        return Err(Error::Precondition(
            "a witness needs at least one index".into(),
        ));
    }
    let base = vals[0];
    if *vals.last().unwrap() != base {
        return Err(Error::Precondition(
            "profile must start and end at the same value".into(),
        ));
    }
    if vals.iter().any(|&v| v < base) {
        return Err(Error::Precondition(
            "profile must stay at or above its base value".into(),
        ));
    }
    if vals.windows(2).any(|w| w[0].abs_diff(w[1]) > 1) {
        return Err(Error::Precondition(
            "profile must move in unit steps".into(),
        ));
    }
    Ok(repeated_cuts_rec(vals, 0, count))
}

fn repeated_cuts_rec(vals: &[u32], offset: usize, count: usize) -> Option<RepeatedCuts> {
    let base = vals[0];
    let level: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] == base).collect();
    if level.len() >= count {
        return Some(RepeatedCuts {
            indices: level[..count].iter().map(|&i| i + offset).collect(),
            value: base,
        });
    }
    // Longest maximal stretch with values strictly above base, earliest first.
    let mut best: Option<(usize, usize)> = None;
    let mut start = None;
    for i in 0..=vals.len() {
        if i < vals.len() && vals[i] > base {
            start.get_or_insert(i);
        } else if let Some(s) = start.take() {
            let len = i - s;
            if best.is_none_or(|(bs, be)| len > be - bs + 1) {
                best = Some((s, i - 1));
            }
        }
    }
    let (p, q) = best?;
    repeated_cuts_rec(&vals[p..=q], offset + p, count)
}

/// Unit-step property of matroid-style connectivity functions:
/// |f(X) - f(X - e)| <= 1 for every set X and element e, exhaustively.
pub fn check_unit_step(f: &ConnFn) -> bool {
    let full = f.full_mask();
    for x in 0..=full {
        for e in 0..f.n() {
            if x >> e & 1 == 0 {
                continue;
            }
            let without = x & !(1u32 << e);
            if f.eval(x).abs_diff(f.eval(without)) > 1 {
                return false;
            }
        }
    }
    true
}
