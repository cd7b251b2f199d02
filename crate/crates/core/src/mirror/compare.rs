//! Comparison of the mirror Hall algebra with the cyclic-quiver Hall algebra.

use super::hall::{evaluate_positive, mirror_hall_product};
use super::interval::{hom_ext_dims, strict_intervals, MirrorInterval};
use crate::circle_quantum::{
    evaluate_positive_part, relation_instances, GeneratorKind, RelationFamily, RelationInstance, ALL_FAMILIES,
};
use crate::error::{Error, Result};
use crate::intervals_ktheory::interval_euler_form;
use crate::quiver_hall::{HallContext, HallElement, TorsionObject};
use rayon::prelude::*;
use serde::Serialize;

/// Largest denominator accepted by [`compare_with_quiver`].
pub const MAX_COMPARE_DENOMINATOR: u64 = 4;

/// One disagreement between the two models.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub check: String,
    pub intervals: Vec<String>,
    pub detail: String,
}

/// Outcome of [`compare_with_quiver`].
#[derive(Clone, Debug, Serialize)]
pub struct MirrorComparison {
    pub n: u64,
    pub q: u64,
    pub generator_pairs: usize,
    pub relation_instances: usize,
    pub mismatches: Vec<Mismatch>,
    pub passed: bool,
}

fn product_mismatch(ctx: &HallContext, n: u64, j1: &MirrorInterval, j2: &MirrorInterval) -> Result<Option<Mismatch>> {
    let q = ctx.q();
    let mirror = mirror_hall_product(j1, j2, q)?.to_quiver(n)?;
    let left = HallElement::basis(&TorsionObject::from_arc(n, &j1.to_arc())?, q);
    let right = HallElement::basis(&TorsionObject::from_arc(n, &j2.to_arc())?, q);
    let quiver = ctx.product(&left, &right)?;
    Ok((mirror != quiver).then(|| Mismatch {
        check: "product".into(),
        intervals: vec![j1.to_string(), j2.to_string()],
        detail: format!("mirror {mirror} but quiver {quiver}"),
    }))
}

fn relation_mismatch(
    ctx: &HallContext,
    n: u64,
    family: RelationFamily,
    inst: &RelationInstance,
) -> Result<Option<Mismatch>> {
    let intervals = inst.intervals.iter().map(|a| MirrorInterval::from_arc(a).to_string()).collect();
    let (lhs, rhs) = (evaluate_positive(&inst.lhs)?, evaluate_positive(&inst.rhs)?);
    if !lhs.sub(&rhs)?.is_zero() {
        return Ok(Some(Mismatch {
            check: format!("{family} {}", inst.label),
            intervals,
            detail: format!("mirror sides differ: {lhs} versus {rhs}"),
        }));
    }
    for (side, mirror) in [(&inst.lhs, &lhs), (&inst.rhs, &rhs)] {
        let quiver = evaluate_positive_part(ctx, side, n)?;
        let image = mirror.to_quiver(n)?;
        if image != quiver {
            return Ok(Some(Mismatch {
                check: format!("{family} {}", inst.label),
                intervals,
                detail: format!("mirror {image} but quiver {quiver}"),
            }));
        }
    }
    Ok(None)
}

/// Compares products of all ordered pairs of denominator-`n` generators and every
/// positive relation instance of the interval presentation between the two models.
pub fn compare_with_quiver(ctx: &HallContext, n: u64) -> Result<MirrorComparison> {
    if n > MAX_COMPARE_DENOMINATOR {
        return Err(Error::BoundExceeded {
            what: "denominator of the mirror comparison".into(),
            needed: n,
            bound: MAX_COMPARE_DENOMINATOR,
        });
    }
    if n == 0 {
        return Err(Error::invalid("denominator must be positive"));
    }
    let generators = strict_intervals(n);
    let pairs: Vec<(&MirrorInterval, &MirrorInterval)> =
        generators.iter().flat_map(|a| generators.iter().map(move |b| (a, b))).collect();
    let product_results = pairs
        .par_iter()
        .map(|(a, b)| product_mismatch(ctx, n, a, b))
        .collect::<Result<Vec<_>>>()?;

    let instances: Vec<_> = ALL_FAMILIES
        .iter()
        .filter(|f| f.is_positive_presentation())
        .flat_map(|f| relation_instances(*f, n, ctx.q()).into_iter().map(move |inst| (*f, inst)))
        .filter(|(_, inst)| !inst.difference().contains_kind(GeneratorKind::F))
        .collect();
    let relation_results = instances
        .par_iter()
        .map(|(f, inst)| relation_mismatch(ctx, n, *f, inst))
        .collect::<Result<Vec<_>>>()?;

    let mismatches: Vec<Mismatch> = product_results.into_iter().chain(relation_results).flatten().collect();
    Ok(MirrorComparison {
        n,
        q: ctx.q(),
        generator_pairs: pairs.len(),
        relation_instances: instances.len(),
        passed: mismatches.is_empty(),
        mismatches,
    })
}

/// Generator pairs of denominator at most `max_n` where `hom - ext^1` differs from the
/// interval Euler form of the characteristic functions.
pub fn euler_form_violations(max_n: u64) -> Vec<(MirrorInterval, MirrorInterval)> {
    let mut generators: Vec<MirrorInterval> = (1..=max_n).flat_map(strict_intervals).collect();
    generators.sort();
    generators.dedup();
    let mut out = Vec::new();
    for a in &generators {
        for b in &generators {
            let dims = hom_ext_dims(a, b);
            if dims.euler() != interval_euler_form(&a.char_function(), &b.char_function()) {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}
