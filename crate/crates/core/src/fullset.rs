//! Subspace arrangements, canonical trajectories of layouts, full sets
//! computed definitionally by layout enumeration, and executable checks for
//! the shrink, merge, and key composition lemmas.

use std::collections::BTreeSet;

use serde_json::json;

use crate::connfn::{self, ConnFn, Layout};
use crate::error::{Error, Result};
use crate::ffla::{Field, LinearMap, Subspace};
use crate::matroid::Configuration;
use crate::trajectory::{
    enumerate_compact, map_trajectory, traj_tle, Statistic, Trajectory, TrajectorySet,
};

/// An indexed family of subspaces of a common ambient space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceArrangement {
    field: Field,
    ambient: usize,
    labels: Vec<String>,
    spaces: Vec<Subspace>,
}

/// One prefix cut of a layout: the two side sums and their intersection.
/// The width term of the cut is the dimension of the boundary.
#[derive(Clone, Debug)]
pub struct ArrangementCut {
    pub prefix_sum: Subspace,
    pub suffix_sum: Subspace,
    pub boundary: Subspace,
}

impl SubspaceArrangement {
    pub fn new(
        field: Field,
        ambient: usize,
        labels: Vec<String>,
        spaces: Vec<Subspace>,
    ) -> Result<SubspaceArrangement> {
        if labels.len() != spaces.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for {} subspaces",
                labels.len(),
                spaces.len()
            )));
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.clone()) {
                return Err(Error::OverlappingLabels(format!("duplicate label `{l}`")));
            }
        }
        for s in &spaces {
            if *s.field() != field {
                return Err(Error::FieldMismatch(
                    "arrangement member over a different field".into(),
                ));
            }
            if s.ambient() != ambient {
                return Err(Error::DimensionMismatch(format!(
                    "member ambient {} in arrangement ambient {ambient}",
                    s.ambient()
                )));
            }
        }
        Ok(SubspaceArrangement {
            field,
            ambient,
            labels,
            spaces,
        })
    }

    /// One span per labeled vector of a configuration (zero vectors give the
    /// zero subspace); the path-width of the result equals the path-width of
    /// the represented matroid.
    pub fn from_configuration(a: &Configuration) -> SubspaceArrangement {
        let spaces = a
            .vectors()
            .iter()
            .map(|v| {
                Subspace::span(a.field().clone(), a.ambient(), std::slice::from_ref(v))
                    .expect("configuration vectors are well-formed")
            })
            .collect();
        SubspaceArrangement {
            field: a.field().clone(),
            ambient: a.ambient(),
            labels: a.labels().to_vec(),
            spaces,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.spaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spaces.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn spaces(&self) -> &[Subspace] {
        &self.spaces
    }

    pub fn full_mask(&self) -> u32 {
        ((1u64 << self.len()) - 1) as u32
    }

    pub fn mask_of<'a>(&self, labels: impl IntoIterator<Item = &'a str>) -> Result<u32> {
        let mut mask = 0u32;
        for l in labels {
            let i = self
                .labels
                .iter()
                .position(|x| x == l)
                .ok_or_else(|| Error::UnknownLabel(l.to_string()))?;
            mask |= 1 << i;
        }
        Ok(mask)
    }

    /// Sum of the members selected by `mask`.
    pub fn span_mask(&self, mask: u32) -> Result<Subspace> {
        let mut acc = Subspace::zero(self.field.clone(), self.ambient);
        for i in 0..self.len() {
            if mask >> i & 1 == 1 {
                acc = acc.sum(&self.spaces[i])?;
            }
        }
        Ok(acc)
    }

    /// Sum of all members.
    pub fn total_span(&self) -> Result<Subspace> {
        self.span_mask(self.full_mask())
    }

    /// Boundary of a subset: the intersection of the two side sums.
    pub fn boundary_mask(&self, mask: u32) -> Result<Subspace> {
        let left = self.span_mask(mask)?;
        let right = self.span_mask(self.full_mask() & !mask)?;
        left.intersect(&right)
    }

    /// The cut-width connectivity function: mask to boundary dimension.
    pub fn conn_fn(&self) -> Result<ConnFn> {
        let n = self.len();
        if n > crate::connfn::MAX_GROUND {
            return Err(Error::budget(
                "arrangement connectivity table",
                n,
                crate::connfn::MAX_GROUND,
            ));
        }
        // Side sums by shared-prefix dynamic programming over masks.
        let mut spans: Vec<Subspace> = Vec::with_capacity(1 << n);
        spans.push(Subspace::zero(self.field.clone(), self.ambient));
        for mask in 1u32..1 << n {
            let low = mask.trailing_zeros() as usize;
            let rest = spans[(mask & (mask - 1)) as usize].clone();
            spans.push(rest.sum(&self.spaces[low])?);
        }
        let full = self.full_mask();
        ConnFn::from_eval(self.labels.clone(), |mask| {
            spans[mask as usize]
                .intersect(&spans[(full & !mask) as usize])
                .expect("same ambient")
                .dim() as u32
        })
    }

    /// Minimum layout width with a lexicographically least witness; zero by
    /// convention when the arrangement has at most one member.
    pub fn path_width(&self) -> Result<(u32, Layout)> {
        self.path_width_budget(connfn::DEFAULT_LAYOUT_BUDGET)
    }

    pub fn path_width_budget(&self, budget: usize) -> Result<(u32, Layout)> {
        if self.len() <= 1 {
            return Ok((0, Layout::new((0..self.len()).collect())));
        }
        connfn::path_width_budget(&self.conn_fn()?, budget)
    }

    /// The cuts of a layout, one per prefix length 0..=n.
    pub fn cuts(&self, layout: &Layout) -> Result<Vec<ArrangementCut>> {
        layout.validate(self.len())?;
        let n = self.len();
        let mut prefix = Vec::with_capacity(n + 1);
        prefix.push(Subspace::zero(self.field.clone(), self.ambient));
        for &e in &layout.0 {
            let next = prefix.last().unwrap().sum(&self.spaces[e])?;
            prefix.push(next);
        }
        let mut suffix = vec![Subspace::zero(self.field.clone(), self.ambient); n + 1];
        for i in (0..n).rev() {
            suffix[i] = suffix[i + 1].sum(&self.spaces[layout.0[i]])?;
        }
        (0..=n)
            .map(|i| {
                Ok(ArrangementCut {
                    boundary: prefix[i].intersect(&suffix[i])?,
                    prefix_sum: prefix[i].clone(),
                    suffix_sum: suffix[i].clone(),
                })
            })
            .collect()
    }

    /// The canonical trajectory of a layout with respect to a base space:
    /// L_i and R_i project the side sums into the base, and the width term
    /// is the cut dimension minus the dimension of their intersection.
    pub fn canonical_trajectory(&self, layout: &Layout, b: &Subspace) -> Result<Trajectory> {
        if *b.field() != self.field || b.ambient() != self.ambient {
            return Err(Error::DimensionMismatch(
                "base space outside the ambient space".into(),
            ));
        }
        let cuts = self.cuts(layout)?;
        let stats = cuts
            .iter()
            .map(|cut| {
                let left = cut.prefix_sum.intersect(b)?;
                let right = cut.suffix_sum.intersect(b)?;
                let lambda = cut.boundary.dim() - left.intersect(&right)?.dim();
                Ok(Statistic::new(left, right, lambda as u32))
            })
            .collect::<Result<Vec<_>>>()?;
        Trajectory::new(b.clone(), stats)
    }

    /// Compactified canonical trajectories of every layout: the realizable
    /// set cached per (arrangement, base space).
    pub fn realizable(&self, b: &Subspace, budget: usize) -> Result<RealizableSet> {
        let n = self.len();
        if n > budget {
            return Err(Error::budget("layout enumeration", n, budget));
        }
        let mut set = TrajectorySet::new();
        let mut order: Vec<usize> = (0..n).collect();
        if n == 0 {
            // The empty layout still has its single empty-prefix statistic.
            let zero = Subspace::zero(self.field.clone(), self.ambient);
            let l = zero.intersect(b)?;
            set.insert(Trajectory::new(
                b.clone(),
                vec![Statistic::new(l.clone(), l.clone(), 0)],
            )?);
            return Ok(RealizableSet {
                space: b.clone(),
                set,
            });
        }
        permute(&mut order, 0, &mut |perm| -> Result<()> {
            let t = self.canonical_trajectory(&Layout::new(perm.to_vec()), b)?;
            set.insert(t.compactify());
            Ok(())
        })?;
        Ok(RealizableSet {
            space: b.clone(),
            set,
        })
    }

    /// Restriction to the labels selected by `mask`.
    pub fn restrict_mask(&self, mask: u32) -> SubspaceArrangement {
        let mut labels = Vec::new();
        let mut spaces = Vec::new();
        for i in 0..self.len() {
            if mask >> i & 1 == 1 {
                labels.push(self.labels[i].clone());
                spaces.push(self.spaces[i].clone());
            }
        }
        SubspaceArrangement {
            field: self.field.clone(),
            ambient: self.ambient,
            labels,
            spaces,
        }
    }

    /// Disjoint-label union of two arrangements in the same ambient space.
    pub fn union(&self, other: &SubspaceArrangement) -> Result<SubspaceArrangement> {
        if self.field != other.field || self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(
                "arrangements in different ambient spaces".into(),
            ));
        }
        let mut labels = self.labels.clone();
        let mut spaces = self.spaces.clone();
        for (l, s) in other.labels.iter().zip(&other.spaces) {
            if labels.contains(l) {
                return Err(Error::OverlappingLabels(format!(
                    "label `{l}` on both sides"
                )));
            }
            labels.push(l.clone());
            spaces.push(s.clone());
        }
        SubspaceArrangement::new(self.field.clone(), self.ambient, labels, spaces)
    }

    /// Image arrangement under a linear map.
    pub fn map(&self, phi: &LinearMap) -> Result<SubspaceArrangement> {
        let spaces = self
            .spaces
            .iter()
            .map(|s| phi.apply_subspace(s))
            .collect::<Result<Vec<_>>>()?;
        SubspaceArrangement::new(
            self.field.clone(),
            phi.codomain_dim(),
            self.labels.clone(),
            spaces,
        )
    }
}

fn permute<E>(
    order: &mut Vec<usize>,
    k: usize,
    visit: &mut impl FnMut(&[usize]) -> std::result::Result<(), E>,
) -> std::result::Result<(), E> {
    if k == order.len() {
        return visit(order);
    }
    for i in k..order.len() {
        order.swap(k, i);
        permute(order, k + 1, visit)?;
        order.swap(k, i);
    }
    Ok(())
}

/// The compactified canonical trajectories of an arrangement with respect to
/// a base space.
#[derive(Clone, Debug)]
pub struct RealizableSet {
    space: Subspace,
    set: TrajectorySet,
}

impl RealizableSet {
    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn trajectories(&self) -> &TrajectorySet {
        &self.set
    }
}

/// The full set of an arrangement: all compact trajectories of width at most
/// `k` over the base space that dominate some realizable trajectory.
pub fn full_set(v: &SubspaceArrangement, b: &Subspace, k: u32) -> Result<TrajectorySet> {
    let realizable = v.realizable(b, connfn::DEFAULT_LAYOUT_BUDGET)?;
    full_set_from(&realizable, k)
}

/// Full set computed from a cached realizable set.
pub fn full_set_from(realizable: &RealizableSet, k: u32) -> Result<TrajectorySet> {
    let universe = enumerate_compact(&realizable.space, k)?;
    let mut out = TrajectorySet::new();
    for gamma in universe {
        for delta in &realizable.set {
            if traj_tle(delta, &gamma)? {
                out.insert(gamma);
                break;
            }
        }
    }
    Ok(out)
}

/// Elementwise image of a full set under a map bijective on the base space.
pub fn map_full_set(phi: &LinearMap, fs: &TrajectorySet) -> Result<TrajectorySet> {
    fs.iter().map(|t| map_trajectory(phi, t)).collect()
}

/// JSON encoding of a full set: a list of trajectory encodings.
pub fn full_set_to_json(fs: &TrajectorySet) -> serde_json::Value {
    json!(fs.iter().map(|t| t.to_json()).collect::<Vec<_>>())
}

/// Outcome of one instance-level lemma check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckOutcome {
    /// Hypotheses held and the conclusion was verified.
    Holds,
    /// Hypotheses failed, so the implication holds vacuously.
    Vacuous,
    /// The side conditions reject the instance.
    Inapplicable,
    /// Hypotheses held but the conclusion failed.
    Violated,
}

impl CheckOutcome {
    /// The implication was not violated on this instance.
    pub fn passed(self) -> bool {
        self != CheckOutcome::Violated
    }
}

/// Shrink check: equal full sets with respect to `b` force equal full sets
/// with respect to the zero space.
pub fn check_shrink(
    v: &SubspaceArrangement,
    w: &SubspaceArrangement,
    b: &Subspace,
    k: u32,
) -> Result<CheckOutcome> {
    if full_set(v, b, k)? != full_set(w, b, k)? {
        return Ok(CheckOutcome::Vacuous);
    }
    let zero = Subspace::zero(v.field().clone(), v.ambient());
    let zero_w = Subspace::zero(w.field().clone(), w.ambient());
    if full_set(v, &zero, k)? == full_set(w, &zero_w, k)? {
        Ok(CheckOutcome::Holds)
    } else {
        Ok(CheckOutcome::Violated)
    }
}

/// Merge check: when both pairs agree on full sets with respect to `b` and
/// the side condition on spans holds, the unions agree as well.
pub fn check_merge(
    v1: &SubspaceArrangement,
    v1p: &SubspaceArrangement,
    v2: &SubspaceArrangement,
    v2p: &SubspaceArrangement,
    b: &Subspace,
    k: u32,
) -> Result<CheckOutcome> {
    let side = |x: &SubspaceArrangement, y: &SubspaceArrangement| -> Result<bool> {
        let left = x.total_span()?.sum(b)?;
        let right = y.total_span()?.sum(b)?;
        Ok(left.intersect(&right)? == *b)
    };
    if !side(v1, v2)? || !side(v1p, v2p)? {
        return Ok(CheckOutcome::Inapplicable);
    }
    if full_set(v1, b, k)? != full_set(v1p, b, k)? || full_set(v2, b, k)? != full_set(v2p, b, k)? {
        return Ok(CheckOutcome::Vacuous);
    }
    let union = v1.union(v2)?;
    let union_p = v1p.union(v2p)?;
    if full_set(&union, b, k)? == full_set(&union_p, b, k)? {
        Ok(CheckOutcome::Holds)
    } else {
        Ok(CheckOutcome::Violated)
    }
}

/// Key check: a bijection between the two partition boundaries that matches
/// both partials' full sets forces the two arrangements to agree on whether
/// their path-width is at most `k`.
pub fn check_key(
    v: &SubspaceArrangement,
    vp: &SubspaceArrangement,
    part1: u32,
    part1p: u32,
    phi: &LinearMap,
    k: u32,
) -> Result<CheckOutcome> {
    let boundary = v.boundary_mask(part1)?;
    let boundary_p = vp.boundary_mask(part1p)?;
    if !phi.is_injective_on(&boundary)? || phi.apply_subspace(&boundary)? != boundary_p {
        return Ok(CheckOutcome::Inapplicable);
    }
    let v1 = v.restrict_mask(part1);
    let v2 = v.restrict_mask(v.full_mask() & !part1);
    let v1p = vp.restrict_mask(part1p);
    let v2p = vp.restrict_mask(vp.full_mask() & !part1p);

    let prem1 =
        map_full_set(phi, &full_set(&v1, &boundary, k)?)? == full_set(&v1p, &boundary_p, k)?;
    let prem2 =
        map_full_set(phi, &full_set(&v2, &boundary, k)?)? == full_set(&v2p, &boundary_p, k)?;
    if !prem1 || !prem2 {
        return Ok(CheckOutcome::Vacuous);
    }
    let (wv, _) = v.path_width()?;
    let (wp, _) = vp.path_width()?;
    if (wv <= k) == (wp <= k) {
        Ok(CheckOutcome::Holds)
    } else {
        Ok(CheckOutcome::Violated)
    }
}
