//! Executable reenactment of the shrinking argument on a concrete
//! configuration: find repeated cuts in a linked layout, build the linking
//! minor across the repeat window, push boundaries and full sets through the
//! quotient maps, locate a pigeonhole pair, and verify the key-lemma
//! conclusion on the resulting proper minor.

use serde::Serialize;
use serde_json::json;

use crate::connfn;
use crate::error::Result;
use crate::ffla::{quotient_map, Subspace};
use crate::fullset::{full_set, map_full_set, SubspaceArrangement};
use crate::linking;
use crate::matroid::{Configuration, MinorSpec};
use crate::trajectory::TrajectorySet;

#[derive(Clone, Debug, Serialize)]
pub struct StepReport {
    pub name: String,
    /// Whether the step's machinery actually ran on this instance.
    pub fired: bool,
    /// Whether every claim checked in this step held.
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub steps: Vec<StepReport>,
    /// True when the instance never reached the pigeonhole argument
    /// (no repeats at the requested count, or no matching pair).
    pub vacuous: bool,
    pub all_checks_passed: bool,
}

impl PipelineReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "steps": self.steps,
            "vacuous": self.vacuous,
            "all_checks_passed": self.all_checks_passed,
        })
    }
}

struct Steps(Vec<StepReport>);

impl Steps {
    fn push(&mut self, name: &str, fired: bool, ok: bool, detail: String) {
        self.0.push(StepReport {
            name: name.to_string(),
            fired,
            ok,
            detail,
        });
    }

    fn finish(self, vacuous: bool) -> PipelineReport {
        let all = self.0.iter().all(|s| s.ok);
        PipelineReport {
            steps: self.0,
            vacuous,
            all_checks_passed: all,
        }
    }
}

/// Run the pipeline with a caller-chosen repeat count (the formula constant
/// is astronomically large; the logic is identical for any count at which
/// repeats actually occur).
pub fn reenact_main_pipeline(a: &Configuration, k: u32, count: usize) -> Result<PipelineReport> {
    let mut steps = Steps(Vec::new());

    let lambda = a.lambda_fn()?;
    let layout = connfn::find_linked_optimal(&lambda)?;
    let width = connfn::width(&lambda, &layout)?;
    steps.push(
        "linked layout",
        true,
        true,
        format!("layout {} of width {width}", layout.display(&lambda)),
    );

    let profile = connfn::cut_profile(&lambda, &layout)?;
    let Some(cuts) = connfn::find_repeated_cuts(&profile, count)? else {
        steps.push(
            "repeated cuts",
            false,
            true,
            format!("no {count} repeated cuts in profile {:?}", profile.0),
        );
        return Ok(steps.finish(true));
    };
    let theta = cuts.value as usize;
    steps.push(
        "repeated cuts",
        true,
        cuts.validate(&profile, count),
        format!("positions {:?} at value {theta}", cuts.indices),
    );

    // Prefix masks and boundary spaces at the repeat positions.
    let prefix_mask = |pos: usize| -> u32 { layout.0[..pos].iter().map(|&e| 1u32 << e).sum() };
    let masks: Vec<u32> = cuts.indices.iter().map(|&p| prefix_mask(p)).collect();
    let boundaries: Vec<Subspace> = masks
        .iter()
        .map(|&m| a.boundary_mask(m))
        .collect::<Result<_>>()?;
    let dims_ok = boundaries.iter().all(|b| b.dim() == theta);
    steps.push(
        "boundary dimensions",
        true,
        dims_ok,
        format!(
            "dims {:?}",
            boundaries.iter().map(|b| b.dim()).collect::<Vec<_>>()
        ),
    );

    // Linking minor across the repeat window.
    let s_set = a.labels_of_mask(masks[0]);
    let t_set = a.labels_of_mask(a.full_mask() & !masks[masks.len() - 1]);
    let min = linking::min_connectivity(a, &s_set, &t_set)?;
    steps.push(
        "window minimum",
        true,
        min.value as usize == theta,
        format!("nested minimum {} at repeat value {theta}", min.value),
    );
    let witness = linking::linking_minor(a, &s_set, &t_set)?;
    let c_mask = a.mask_of(witness.spec.contract.iter().map(|s| s.as_str()))?;
    let d_mask = a.mask_of(witness.spec.delete.iter().map(|s| s.as_str()))?;
    steps.push(
        "linking minor",
        true,
        witness.achieved as usize == theta,
        format!(
            "contract {:?}, delete {:?}, pinned {}",
            witness.spec.contract, witness.spec.delete, witness.achieved
        ),
    );

    // Quotient by the contracted span.
    let pi = quotient_map(&a.span_mask(c_mask)?);
    let b_images: Vec<Subspace> = boundaries
        .iter()
        .map(|b| pi.apply_subspace(b))
        .collect::<Result<_>>()?;
    let injective = boundaries
        .iter()
        .map(|b| pi.is_injective_on(b))
        .collect::<Result<Vec<_>>>()?;
    let equal_images = b_images.windows(2).all(|w| w[0] == w[1]);
    let quotient_ok = b_images[0].dim() == theta && equal_images && injective.iter().all(|&i| i);
    steps.push(
        "quotient images",
        true,
        quotient_ok,
        format!(
            "image dim {}, equal {equal_images}, injective {injective:?}",
            b_images[0].dim()
        ),
    );

    // Full sets of the prefixes, mapped into the common quotient image.
    let mut mapped: Vec<TrajectorySet> = Vec::with_capacity(masks.len());
    for (&m, b) in masks.iter().zip(&boundaries) {
        let arrangement = SubspaceArrangement::from_configuration(&a.restrict_mask(m));
        let fs = full_set(&arrangement, b, k)?;
        mapped.push(map_full_set(&pi, &fs)?);
    }
    let pair = (0..mapped.len())
        .flat_map(|i| (i + 1..mapped.len()).map(move |j| (i, j)))
        .find(|&(i, j)| mapped[i] == mapped[j]);
    let Some((i, j)) = pair else {
        steps.push(
            "pigeonhole pair",
            false,
            true,
            "no pair of equal mapped full sets at this count".into(),
        );
        return Ok(steps.finish(true));
    };
    steps.push(
        "pigeonhole pair",
        true,
        true,
        format!(
            "prefixes {} and {} share the mapped full set",
            cuts.indices[i], cuts.indices[j]
        ),
    );

    // Sub-quotient by the contracted part of the window between the pair.
    let window = masks[j] & !masks[i];
    let c2_mask = c_mask & window;
    let d2_mask = d_mask & window;
    let phi = quotient_map(&a.span_mask(c2_mask)?);
    let b_i = &boundaries[i];
    let b_j = &boundaries[j];
    let b_prime = phi.apply_subspace(b_i)?;
    let span_a_i = a.span_mask(masks[i])?;
    let span_rest_j = a.span_mask(a.full_mask() & !masks[j])?;
    let sub_ok = b_prime.dim() == theta
        && phi.apply_subspace(b_j)? == b_prime
        && phi.is_injective_on(b_i)?
        && phi.is_injective_on(b_j)?
        && phi.is_injective_on(&span_a_i)?
        && phi.is_injective_on(&span_rest_j)?;
    steps.push(
        "sub-quotient",
        true,
        sub_ok,
        format!(
            "contract {:?}, delete {:?}, image dim {}",
            a.labels_of_mask(c2_mask),
            a.labels_of_mask(d2_mask),
            b_prime.dim()
        ),
    );

    let fs_i = full_set(
        &SubspaceArrangement::from_configuration(&a.restrict_mask(masks[i])),
        b_i,
        k,
    )?;
    let fs_j = full_set(
        &SubspaceArrangement::from_configuration(&a.restrict_mask(masks[j])),
        b_j,
        k,
    )?;
    let phi_fs_i = map_full_set(&phi, &fs_i)?;
    let phi_fs_j = map_full_set(&phi, &fs_j)?;
    steps.push(
        "mapped full sets",
        true,
        phi_fs_i == phi_fs_j,
        format!("sizes {} and {}", phi_fs_i.len(), phi_fs_j.len()),
    );

    // The proper minor and its boundary.
    let spec = MinorSpec {
        contract: a.labels_of_mask(c2_mask),
        delete: a.labels_of_mask(d2_mask),
    };
    let minor = a.minor(&spec)?;
    let kept_i = a.labels_of_mask(masks[i]);
    let boundary_in_minor = minor.boundary(kept_i.iter().map(|s| s.as_str()))?;
    steps.push(
        "minor boundary",
        true,
        boundary_in_minor == b_prime,
        format!(
            "minor on {:?}, boundary dim {}",
            minor.label_set(),
            boundary_in_minor.dim()
        ),
    );

    // Full-set equalities feeding the key lemma.
    let minor_i_mask = minor.mask_of(kept_i.iter().map(|s| s.as_str()))?;
    let minor_rest_mask = minor.full_mask() & !minor_i_mask;
    let lhs_i = full_set(
        &SubspaceArrangement::from_configuration(&minor.restrict_mask(minor_i_mask)),
        &b_prime,
        k,
    )?;
    let rest_mask_host = a.full_mask() & !masks[j];
    let fs_rest = full_set(
        &SubspaceArrangement::from_configuration(&a.restrict_mask(rest_mask_host)),
        b_j,
        k,
    )?;
    let lhs_rest = full_set(
        &SubspaceArrangement::from_configuration(&minor.restrict_mask(minor_rest_mask)),
        &b_prime,
        k,
    )?;
    let eq_i = lhs_i == phi_fs_j;
    let eq_rest = lhs_rest == map_full_set(&phi, &fs_rest)?;
    steps.push(
        "key premises",
        true,
        eq_i && eq_rest,
        format!("prefix side {eq_i}, suffix side {eq_rest}"),
    );

    // Conclusion: the proper minor and the host agree on width-at-most-k.
    let (pw_host, _) = connfn::path_width(&lambda)?;
    let (pw_minor, _) = connfn::path_width(&minor.lambda_fn()?)?;
    steps.push(
        "key conclusion",
        true,
        (pw_host <= k) == (pw_minor <= k),
        format!("host width {pw_host}, minor width {pw_minor}"),
    );

    Ok(steps.finish(false))
}
