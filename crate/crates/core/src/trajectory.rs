//! Trajectories over a base subspace B: sequences of (L, R, lambda)
//! statistics with monotone subspace chains, their compactification, the
//! domination relation decided by alignment, and exhaustive enumeration of
//! all compact trajectories of bounded width.

use std::collections::BTreeSet;

use serde_json::json;

use crate::error::{Error, Result};
use crate::ffla::{LinearMap, Subspace};

/// One statistic: a pair of subspaces of the base space and a width value.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Statistic {
    pub left: Subspace,
    pub right: Subspace,
    pub lambda: u32,
}

impl Statistic {
    pub fn new(left: Subspace, right: Subspace, lambda: u32) -> Statistic {
        Statistic {
            left,
            right,
            lambda,
        }
    }
}

/// Pointwise statistic comparison: equal subspace pair, smaller-or-equal width.
pub fn stat_leq(a: &Statistic, b: &Statistic) -> bool {
    a.left == b.left && a.right == b.right && a.lambda <= b.lambda
}

/// A sequence of statistics over a common base space.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Trajectory {
    space: Subspace,
    stats: Vec<Statistic>,
}

impl Trajectory {
    /// Build a trajectory; the statistics must live in the ambient space of
    /// the base. Chain conditions are checked by [`Trajectory::validate`],
    /// not here, so invalid chains can be constructed and inspected.
    pub fn new(space: Subspace, stats: Vec<Statistic>) -> Result<Trajectory> {
        if stats.is_empty() {
            return Err(Error::Precondition(
                "a trajectory has at least one statistic".into(),
            ));
        }
        for s in &stats {
            if s.left.field() != space.field() || s.right.field() != space.field() {
                return Err(Error::FieldMismatch(
                    "statistic over a different field".into(),
                ));
            }
            if s.left.ambient() != space.ambient() || s.right.ambient() != space.ambient() {
                return Err(Error::DimensionMismatch(format!(
                    "statistic ambient {} vs base ambient {}",
                    s.left.ambient(),
                    space.ambient()
                )));
            }
        }
        Ok(Trajectory { space, stats })
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn stats(&self) -> &[Statistic] {
        &self.stats
    }

    pub fn len(&self) -> usize {
        self.stats.len()
    }

    /// Never true: construction requires at least one statistic.
    pub fn is_empty(&self) -> bool {
        self.stats.is_empty()
    }

    /// The three chain conditions plus containment of every L and R in the
    /// base space.
    pub fn validate(&self) -> bool {
        let n = self.stats.len() - 1;
        let contained = self.stats.iter().all(|s| {
            self.space.contains(&s.left).unwrap_or(false)
                && self.space.contains(&s.right).unwrap_or(false)
        });
        if !contained {
            return false;
        }
        if self.stats[0].right != self.stats[n].left {
            return false;
        }
        let left_chain = self
            .stats
            .windows(2)
            .all(|w| w[1].left.contains(&w[0].left).unwrap_or(false));
        let right_chain = self
            .stats
            .windows(2)
            .all(|w| w[0].right.contains(&w[1].right).unwrap_or(false));
        left_chain && right_chain
    }

    pub fn width(&self) -> u32 {
        self.stats.iter().map(|s| s.lambda).max().unwrap_or(0)
    }

    /// First position removable by the duplicate rule.
    fn rule1_position(&self) -> Option<usize> {
        (1..self.stats.len()).find(|&i| self.stats[i] == self.stats[i - 1])
    }

    /// First window (i, j) removable by the sandwich rule, in (i, j) order.
    fn rule2_window(&self) -> Option<(usize, usize)> {
        let n = self.stats.len();
        for i in 0..n {
            for j in i + 2..n {
                if self.removable_window(i, j) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    fn removable_window(&self, i: usize, j: usize) -> bool {
        let (a, b) = (&self.stats[i], &self.stats[j]);
        if a.left != b.left || a.right != b.right {
            return false;
        }
        let interior = &self.stats[i + 1..j];
        let ascending = interior
            .iter()
            .all(|s| a.lambda <= s.lambda && s.lambda <= b.lambda);
        let descending = interior
            .iter()
            .all(|s| a.lambda >= s.lambda && s.lambda >= b.lambda);
        ascending || descending
    }

    pub fn is_compact(&self) -> bool {
        self.rule1_position().is_none() && self.rule2_window().is_none()
    }

    /// Apply the two removal rules, leftmost first, until neither applies.
    /// The result is a subsequence of the input that keeps both endpoints.
    pub fn compactify(&self) -> Trajectory {
        let mut stats = self.stats.clone();
        loop {
            let probe = Trajectory {
                space: self.space.clone(),
                stats: stats.clone(),
            };
            if let Some(i) = probe.rule1_position() {
                stats.remove(i);
                continue;
            }
            if let Some((i, j)) = probe.rule2_window() {
                stats.drain(i + 1..j);
                continue;
            }
            break;
        }
        Trajectory {
            space: self.space.clone(),
            stats,
        }
    }

    /// JSON encoding: a list of {L, R, lambda} with basis rows as integers.
    pub fn to_json(&self) -> serde_json::Value {
        let stats: Vec<_> = self
            .stats
            .iter()
            .map(|s| {
                json!({
                    "L": s.left.basis_rows(),
                    "R": s.right.basis_rows(),
                    "lambda": s.lambda,
                })
            })
            .collect();
        json!(stats)
    }
}

/// Domination: some extension of `t1` is pointwise below some extension of
/// `t2`. Decided by reachability over the alignment lattice, where a state
/// (i, j) pairs statistic i of `t1` with statistic j of `t2` and moves
/// advance either side or both.
pub fn traj_tle(t1: &Trajectory, t2: &Trajectory) -> Result<bool> {
    if t1.space != t2.space {
        return Err(Error::DimensionMismatch(
            "trajectories over different base spaces".into(),
        ));
    }
    let (n1, n2) = (t1.len(), t2.len());
    let ok = |i: usize, j: usize| stat_leq(&t1.stats[i], &t2.stats[j]);
    if !ok(0, 0) {
        return Ok(false);
    }
    let mut reach = vec![vec![false; n2]; n1];
    reach[0][0] = true;
    for i in 0..n1 {
        for j in 0..n2 {
            if !reach[i][j] {
                continue;
            }
            if i + 1 < n1 && ok(i + 1, j) {
                reach[i + 1][j] = true;
            }
            if j + 1 < n2 && ok(i, j + 1) {
                reach[i][j + 1] = true;
            }
            if i + 1 < n1 && j + 1 < n2 && ok(i + 1, j + 1) {
                reach[i + 1][j + 1] = true;
            }
        }
    }
    Ok(reach[n1 - 1][n2 - 1])
}

/// Image of a trajectory under a linear map that is injective on its base
/// space; widths are preserved.
pub fn map_trajectory(phi: &LinearMap, t: &Trajectory) -> Result<Trajectory> {
    if !phi.is_injective_on(&t.space)? {
        return Err(Error::Precondition(
            "map is not injective on the base space of the trajectory".into(),
        ));
    }
    let space = phi.apply_subspace(&t.space)?;
    let stats = t
        .stats
        .iter()
        .map(|s| {
            Ok(Statistic {
                left: phi.apply_subspace(&s.left)?,
                right: phi.apply_subspace(&s.right)?,
                lambda: s.lambda,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Trajectory::new(space, stats)
}

/// A set of compact trajectories over a common base space, with set semantics
/// given by the canonical subspace encoding.
pub type TrajectorySet = BTreeSet<Trajectory>;

/// Enumeration budget for [`enumerate_compact`].
pub const MAX_BASE_DIM: usize = 2;
pub const MAX_WIDTH: u32 = 2;

/// Largest set that [`enumerate_compact`] will materialize.
pub const MAX_MATERIALIZED: u64 = 100_000;

struct CompactWalk {
    space: Subspace,
    subs: Vec<Subspace>,
    zigzags: Vec<Vec<u32>>,
}

impl CompactWalk {
    fn new(space: &Subspace, k: u32) -> Result<CompactWalk> {
        let theta = space.dim();
        if theta > MAX_BASE_DIM {
            return Err(Error::budget(
                "compact trajectory base dimension",
                theta,
                MAX_BASE_DIM,
            ));
        }
        if k > MAX_WIDTH {
            return Err(Error::budget(
                "compact trajectory width",
                k as usize,
                MAX_WIDTH as usize,
            ));
        }
        let q = space.field().order();
        if q != 2 && q != 3 {
            return Err(Error::budget(
                "compact trajectory field order",
                q as usize,
                3,
            ));
        }
        Ok(CompactWalk {
            space: space.clone(),
            subs: space.subspaces()?,
            zigzags: zigzag_sequences(k),
        })
    }

    /// Closed count of chain-times-zigzag combinations, without building any
    /// trajectory. Matches the enumeration exactly because run decompositions
    /// are unique and every combination is compact; tests pin this against
    /// the visiting walk and against brute force on small cells.
    fn closed_count(&self) -> u64 {
        let mut total = 0u64;
        let z = self.zigzags.len() as u64;
        self.walk_chains(&mut |chain| {
            total += z.pow(chain.len() as u32);
        });
        total
    }

    fn visit_all(&self, visitor: &mut impl FnMut(Trajectory)) {
        self.walk_chains(&mut |chain| {
            let mut assignment: Vec<usize> = Vec::with_capacity(chain.len());
            self.assign_zigzags(chain, &mut assignment, visitor);
        });
    }

    /// Run chains: consecutive (L, R) pairs differ, L ascends, R descends,
    /// and R of the first run equals L of the last.
    fn walk_chains(&self, on_chain: &mut impl FnMut(&[(usize, usize)])) {
        let mut chain: Vec<(usize, usize)> = Vec::new();
        for l0 in 0..self.subs.len() {
            for r0 in 0..self.subs.len() {
                chain.push((l0, r0));
                self.extend_runs(&mut chain, on_chain);
                chain.pop();
            }
        }
    }

    fn extend_runs(
        &self,
        chain: &mut Vec<(usize, usize)>,
        on_chain: &mut impl FnMut(&[(usize, usize)]),
    ) {
        if self.subs[chain[0].1] == self.subs[chain.last().unwrap().0] {
            on_chain(chain);
        }
        let &(l, r) = chain.last().unwrap();
        for l2 in 0..self.subs.len() {
            if !self.subs[l2].contains(&self.subs[l]).unwrap_or(false) {
                continue;
            }
            for r2 in 0..self.subs.len() {
                if (l2, r2) == (l, r) {
                    continue;
                }
                if !self.subs[r].contains(&self.subs[r2]).unwrap_or(false) {
                    continue;
                }
                chain.push((l2, r2));
                self.extend_runs(chain, on_chain);
                chain.pop();
            }
        }
    }

    fn assign_zigzags(
        &self,
        chain: &[(usize, usize)],
        assignment: &mut Vec<usize>,
        visitor: &mut impl FnMut(Trajectory),
    ) {
        if assignment.len() == chain.len() {
            let mut stats = Vec::new();
            for (&(l, r), &zi) in chain.iter().zip(assignment.iter()) {
                for &lambda in &self.zigzags[zi] {
                    stats.push(Statistic {
                        left: self.subs[l].clone(),
                        right: self.subs[r].clone(),
                        lambda,
                    });
                }
            }
            let t = Trajectory::new(self.space.clone(), stats).expect("nonempty by construction");
            debug_assert!(t.is_compact() && t.validate());
            visitor(t);
            return;
        }
        for zi in 0..self.zigzags.len() {
            assignment.push(zi);
            self.assign_zigzags(chain, assignment, visitor);
            assignment.pop();
        }
    }
}

/// All compact trajectories over `space` of width at most `k`, sorted
/// canonically.
///
/// A compact trajectory decomposes into maximal runs of constant (L, R):
/// the monotone chains force distinct (L, R) pairs across runs, so the
/// removal rules act only inside runs, and inside a run the width sequence
/// must be a zigzag with no sandwiched window. The walk visits run chains
/// and zigzag labelings; the structural length cap is asserted by tests
/// against brute force.
pub fn enumerate_compact(space: &Subspace, k: u32) -> Result<Vec<Trajectory>> {
    let walk = CompactWalk::new(space, k)?;
    let count = walk.closed_count();
    if count > MAX_MATERIALIZED {
        return Err(Error::budget(
            "compact trajectory materialization",
            count as usize,
            MAX_MATERIALIZED as usize,
        ));
    }
    let mut out = TrajectorySet::new();
    walk.visit_all(&mut |t| {
        out.insert(t);
    });
    Ok(out.into_iter().collect())
}

/// The exact size of the set [`enumerate_compact`] produces, computed by
/// visiting every member without materializing the set. The closed-form
/// chain count must agree; both are checked against each other.
pub fn count_compact(space: &Subspace, k: u32) -> Result<u64> {
    let walk = CompactWalk::new(space, k)?;
    let mut visited = 0u64;
    walk.visit_all(&mut |_| {
        visited += 1;
    });
    let closed = walk.closed_count();
    if visited != closed {
        return Err(Error::Precondition(format!(
            "enumeration walk visited {visited} trajectories but the chain count is {closed}"
        )));
    }
    Ok(visited)
}

/// All width sequences usable inside one run: adjacent values differ and no
/// window is sandwiched between its endpoints. Their length never exceeds
/// 2k + 1.
fn zigzag_sequences(k: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(k: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() > 2 * k as usize {
            return;
        }
        for v in 0..=k {
            if let Some(&last) = cur.last() {
                if v == last {
                    continue;
                }
            }
            cur.push(v);
            if no_sandwiched_suffix(cur) {
                rec(k, cur, out);
            }
            cur.pop();
        }
    }
    rec(k, &mut cur, &mut out);
    out
}

/// Check only windows ending at the last element; earlier windows were
/// checked when their endpoints were pushed.
fn no_sandwiched_suffix(seq: &[u32]) -> bool {
    let j = seq.len() - 1;
    for i in 0..j.saturating_sub(1) {
        let (a, b) = (seq[i], seq[j]);
        let interior = &seq[i + 1..j];
        if interior.iter().all(|&v| a <= v && v <= b) || interior.iter().all(|&v| a >= v && v >= b)
        {
            return false;
        }
    }
    true
}

/// The counting bound for compact trajectories of width at most k over a
/// base of dimension theta with field order q.
pub fn compact_count_bound(theta: u32, k: u32, q: u64) -> num_bigint::BigUint {
    crate::obstruct::bounds::compact_trajectory_bound(theta, k, q)
}
