//! Relation instances of the interval presentation, their verification against
//! the Hall model, and the coproduct of interval generators.

use super::double::straighten;
use super::generators::{GeneratorExpr, GeneratorKind, GeneratorSymbol};
use crate::coefficients::{quantum_integer, v_minus_v_inverse, Scalar};
use crate::error::{Error, Result};
use crate::intervals_ktheory::{interval_euler_form, symmetric_euler_form, Arc};
use crate::quiver_hall::{HallContext, HallElement, TensorElement, TorsionObject};
use crate::rational::{format_rational, frac, rat, Rational};
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Families of defining relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationFamily {
    /// `K_I E_J K_I^{-1} = v^{(chi_I, chi_J)} E_J`, its `F` counterpart, and commutation of the `K`s.
    Dj,
    /// `K_{J_1} K_{J_2} = K_{J_1 + J_2}` for adjacent intervals.
    KJoin,
    /// `E_{J_1 + J_2} = v^{1/2} E_{J_1} E_{J_2} - v^{-1/2} E_{J_2} E_{J_1}` and its `F` counterpart.
    Join,
    /// `[E_{J_1}, E_{J_2}] = 0` when the closures are disjoint, and likewise for `F`.
    DisjointNest,
    /// `v^{<chi_1, chi_2>} E_{J_1} E_{J_2} = v^{<chi_2, chi_1>} E_{J_2} E_{J_1}` for `J_1` inside `J_2`.
    Nest,
    /// Quantum Serre relations for adjacent intervals with strict union.
    Serre,
    /// `[E_J, F_J] = (K_J - K_J^{-1}) / (v - v^{-1})` and `[F_{J_1}, E_{J_2}] = 0` for disjoint intervals.
    EfCommutator,
}

pub const ALL_FAMILIES: [RelationFamily; 7] = [
    RelationFamily::Dj,
    RelationFamily::KJoin,
    RelationFamily::Join,
    RelationFamily::DisjointNest,
    RelationFamily::Nest,
    RelationFamily::Serre,
    RelationFamily::EfCommutator,
];

impl RelationFamily {
    pub fn name(self) -> &'static str {
        match self {
            RelationFamily::Dj => "dj",
            RelationFamily::KJoin => "k-join",
            RelationFamily::Join => "join",
            RelationFamily::DisjointNest => "disjoint-nest",
            RelationFamily::Nest => "nest",
            RelationFamily::Serre => "serre",
            RelationFamily::EfCommutator => "ef-commutator",
        }
    }

    /// Families involving only `E`, `K` generators (the positive half).
    pub fn is_positive_presentation(self) -> bool {
        !matches!(self, RelationFamily::EfCommutator)
    }
}

impl fmt::Display for RelationFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RelationFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dj" => Ok(RelationFamily::Dj),
            "k-join" => Ok(RelationFamily::KJoin),
            "join" => Ok(RelationFamily::Join),
            "disjoint-nest" | "disjoint" => Ok(RelationFamily::DisjointNest),
            "nest" => Ok(RelationFamily::Nest),
            "serre" => Ok(RelationFamily::Serre),
            "ef-commutator" => Ok(RelationFamily::EfCommutator),
            other => Err(Error::parse(format!("unknown relation family '{other}'"))),
        }
    }
}

/// A single relation `lhs = rhs` between interval words.
#[derive(Clone, Debug, Serialize)]
pub struct RelationInstance {
    pub family: RelationFamily,
    pub label: String,
    pub intervals: Vec<Arc>,
    pub lhs: GeneratorExpr,
    pub rhs: GeneratorExpr,
}

impl RelationInstance {
    /// `lhs - rhs`, which must vanish.
    pub fn difference(&self) -> GeneratorExpr {
        self.lhs.sub(&self.rhs)
    }
}

/// All strict arcs with endpoints in `(1/n) Z`.
pub fn strict_arcs(n: u64) -> Vec<Arc> {
    let mut out = Vec::new();
    for r in 0..n {
        for l in 1..n {
            out.push(Arc::new(rat(r as i64, n as i64), rat(l as i64, n as i64)).expect("positive length"));
        }
    }
    out
}

/// All arcs with endpoints in `(1/n) Z` and length at most one.
pub fn k_arcs(n: u64) -> Vec<Arc> {
    let mut out = Vec::new();
    for r in 0..n {
        for l in 1..=n {
            out.push(Arc::new(rat(r as i64, n as i64), rat(l as i64, n as i64)).expect("positive length"));
        }
    }
    out
}

fn adjacent(a: &Arc, b: &Arc) -> bool {
    frac(a.right()) == b.left()
}

fn union(a: &Arc, b: &Arc) -> Arc {
    Arc::new(b.right().clone(), a.len() + b.len()).expect("positive length")
}

fn word(q: u64, gens: &[&GeneratorSymbol]) -> GeneratorExpr {
    GeneratorExpr::word(q, gens.iter().map(|g| (*g).clone()).collect())
}

fn instance(family: RelationFamily, label: &str, intervals: &[&Arc], lhs: GeneratorExpr, rhs: GeneratorExpr) -> RelationInstance {
    RelationInstance {
        family,
        label: label.to_string(),
        intervals: intervals.iter().map(|a| (*a).clone()).collect(),
        lhs,
        rhs,
    }
}

/// Instances of `family` attached to the ordered pair `(a, b)`; empty when the
/// pair does not satisfy the family's hypothesis.
pub fn instances_for_pair(family: RelationFamily, a: &Arc, b: &Arc, q: u64) -> Vec<RelationInstance> {
    pair_instances(family, a, b, q, 1)
}

/// Images of the instances of `instances_for_pair` under the anti-automorphism
/// `E_J <-> F_J`, `K_J <-> K_J^{-1}`, `v -> v^{-1}`: words are reversed and swapped,
/// and every power of `v` in the coefficients is inverted before specializing.
pub fn swapped_instances_for_pair(family: RelationFamily, a: &Arc, b: &Arc, q: u64) -> Vec<RelationInstance> {
    pair_instances(family, a, b, q, -1)
        .into_iter()
        .map(|inst| RelationInstance {
            family: inst.family,
            label: format!("swapped {}", inst.label),
            intervals: inst.intervals,
            lhs: inst.lhs.reverse_swap(),
            rhs: inst.rhs.reverse_swap(),
        })
        .collect()
}

/// Instances with every power of `v` raised to the sign `t`.
fn pair_instances(family: RelationFamily, a: &Arc, b: &Arc, q: u64, t: i64) -> Vec<RelationInstance> {
    let mut out = Vec::new();
    let len_one = Rational::from_integer(1.into());
    let strict = a.is_strict() && b.is_strict();
    let u = |k: i64| Scalar::u_pow(q, t * k);
    match family {
        RelationFamily::Dj => {
            if *a.len() > len_one || !b.is_strict() {
                return out;
            }
            let (ka, kia) = (GeneratorSymbol::k(a), GeneratorSymbol::k_inv(a));
            let (e, f) = (GeneratorSymbol::e(b).expect("strict"), GeneratorSymbol::f(b).expect("strict"));
            let pairing = symmetric_euler_form(&a.char_function(), &b.char_function());
            out.push(instance(
                family,
                "K E K^-1",
                &[a, b],
                word(q, &[&ka, &e, &kia]),
                GeneratorExpr::generator(q, e.clone()).scale(&u(2 * pairing)),
            ));
            out.push(instance(
                family,
                "K F K^-1",
                &[a, b],
                word(q, &[&ka, &f, &kia]),
                GeneratorExpr::generator(q, f.clone()).scale(&u(-2 * pairing)),
            ));
            let kb = GeneratorSymbol::k(b);
            out.push(instance(family, "K K commute", &[a, b], word(q, &[&ka, &kb]), word(q, &[&kb, &ka])));
            out.push(instance(family, "K K^-1", &[a], word(q, &[&ka, &kia]), GeneratorExpr::one(q)));
        }
        RelationFamily::KJoin => {
            if strict && adjacent(a, b) && a.len() + b.len() <= len_one {
                let joined = union(a, b);
                out.push(instance(
                    family,
                    "K join",
                    &[a, b],
                    word(q, &[&GeneratorSymbol::k(a), &GeneratorSymbol::k(b)]),
                    word(q, &[&GeneratorSymbol::k(&joined)]),
                ));
            }
        }
        RelationFamily::Join => {
            if strict && adjacent(a, b) && a.len() + b.len() < len_one {
                let joined = union(a, b);
                let (ea, eb, ej) = (GeneratorSymbol::e(a).unwrap(), GeneratorSymbol::e(b).unwrap(), GeneratorSymbol::e(&joined).unwrap());
                let (fa, fb, fj) = (GeneratorSymbol::f(a).unwrap(), GeneratorSymbol::f(b).unwrap(), GeneratorSymbol::f(&joined).unwrap());
                out.push(instance(
                    family,
                    "E join",
                    &[a, b],
                    word(q, &[&ej]),
                    word(q, &[&ea, &eb]).scale(&u(1)).sub(&word(q, &[&eb, &ea]).scale(&u(-1))),
                ));
                out.push(instance(
                    family,
                    "F join",
                    &[a, b],
                    word(q, &[&fj]),
                    word(q, &[&fb, &fa]).scale(&u(-1)).sub(&word(q, &[&fa, &fb]).scale(&u(1))),
                ));
            }
        }
        RelationFamily::DisjointNest => {
            if strict && a.closures_disjoint(b) {
                for kind in [GeneratorKind::E, GeneratorKind::F] {
                    let ga = GeneratorSymbol::new(kind, a.clone()).unwrap();
                    let gb = GeneratorSymbol::new(kind, b.clone()).unwrap();
                    let label = if kind == GeneratorKind::E { "E disjoint" } else { "F disjoint" };
                    out.push(instance(family, label, &[a, b], word(q, &[&ga, &gb]), word(q, &[&gb, &ga])));
                }
            }
        }
        RelationFamily::Nest => {
            if strict && a.contained_in(b) {
                let (fa, fb) = (a.char_function(), b.char_function());
                let (ab, ba) = (interval_euler_form(&fa, &fb), interval_euler_form(&fb, &fa));
                for kind in [GeneratorKind::E, GeneratorKind::F] {
                    let ga = GeneratorSymbol::new(kind, a.clone()).unwrap();
                    let gb = GeneratorSymbol::new(kind, b.clone()).unwrap();
                    let label = if kind == GeneratorKind::E { "E nest" } else { "F nest" };
                    out.push(instance(
                        family,
                        label,
                        &[a, b],
                        word(q, &[&ga, &gb]).scale(&u(2 * ab)),
                        word(q, &[&gb, &ga]).scale(&u(2 * ba)),
                    ));
                }
            }
        }
        RelationFamily::Serre => {
            if strict && adjacent(a, b) && a.len() + b.len() < len_one {
                let two = quantum_integer(q, 2);
                for kind in [GeneratorKind::E, GeneratorKind::F] {
                    let ga = GeneratorSymbol::new(kind, a.clone()).unwrap();
                    let gb = GeneratorSymbol::new(kind, b.clone()).unwrap();
                    for (x, y, label) in [(&ga, &gb, "first"), (&gb, &ga, "second")] {
                        let lhs = word(q, &[x, x, y])
                            .sub(&word(q, &[x, y, x]).scale(&two))
                            .add(&word(q, &[y, x, x]));
                        let name = format!("{} Serre {label}", if kind == GeneratorKind::E { "E" } else { "F" });
                        out.push(instance(family, &name, &[a, b], lhs, GeneratorExpr::zero(q)));
                    }
                }
            }
        }
        RelationFamily::EfCommutator => {
            if !strict {
                return out;
            }
            if a == b {
                let e = GeneratorSymbol::e(a).unwrap();
                let f = GeneratorSymbol::f(a).unwrap();
                let inv = Scalar::from_int(q, t).checked_div(&v_minus_v_inverse(q)).expect("unit");
                let rhs = word(q, &[&GeneratorSymbol::k(a)]).sub(&word(q, &[&GeneratorSymbol::k_inv(a)])).scale(&inv);
                out.push(instance(family, "[E, F]", &[a], word(q, &[&e, &f]).sub(&word(q, &[&f, &e])), rhs));
            } else if a.disjoint(b) {
                let f = GeneratorSymbol::f(a).unwrap();
                let e = GeneratorSymbol::e(b).unwrap();
                out.push(instance(family, "[F, E] disjoint", &[a, b], word(q, &[&f, &e]), word(q, &[&e, &f])));
            }
        }
    }
    out
}

/// Every instance of `family` among intervals with endpoints in `(1/n) Z`.
pub fn relation_instances(family: RelationFamily, n: u64, q: u64) -> Vec<RelationInstance> {
    collect_instances(family, n, q, instances_for_pair)
}

/// Every swapped instance of `family` among intervals with endpoints in `(1/n) Z`.
pub fn swapped_relation_instances(family: RelationFamily, n: u64, q: u64) -> Vec<RelationInstance> {
    collect_instances(family, n, q, swapped_instances_for_pair)
}

fn collect_instances(
    family: RelationFamily,
    n: u64,
    q: u64,
    per_pair: fn(RelationFamily, &Arc, &Arc, u64) -> Vec<RelationInstance>,
) -> Vec<RelationInstance> {
    let firsts = if family == RelationFamily::Dj { k_arcs(n) } else { strict_arcs(n) };
    let seconds = strict_arcs(n);
    let mut out = Vec::new();
    for a in &firsts {
        for b in &seconds {
            out.extend(per_pair(family, a, b, q));
        }
    }
    out
}

/// Value of `E_J -> v^{1/2} 1_{S_J}`, `K_J^{+-1} -> k_{+-chi_J}` on a combination of
/// positive words, at denominator `n`.
pub fn evaluate_positive_part(ctx: &HallContext, x: &GeneratorExpr, n: u64) -> Result<HallElement> {
    evaluate_half(ctx, x, n, GeneratorKind::E)
}

/// Value of `F_J -> -v^{1/2} 1_{S_J}`, `K_J^{+-1} -> k_{-+chi_J}` on a combination of
/// negative words, at denominator `n`. This is an algebra embedding of the negative half.
pub fn evaluate_negative_part(ctx: &HallContext, x: &GeneratorExpr, n: u64) -> Result<HallElement> {
    evaluate_half(ctx, x, n, GeneratorKind::F)
}

fn evaluate_half(ctx: &HallContext, x: &GeneratorExpr, n: u64, half: GeneratorKind) -> Result<HallElement> {
    let q = ctx.q();
    let (sign, k_sign): (i64, i64) = if half == GeneratorKind::E { (1, 1) } else { (-1, -1) };
    let mut out = HallElement::zero(n, q);
    for (c, w) in x.terms() {
        let mut factors = Vec::with_capacity(w.len());
        for g in w {
            let factor = match g.kind {
                kind if kind == half => HallElement::basis(&TorsionObject::from_arc(n, &g.arc)?, q)
                    .scale(&Scalar::u_pow(q, 1).scale(&Rational::from_integer(sign.into()))),
                GeneratorKind::K | GeneratorKind::Kinv => {
                    let s = if g.kind == GeneratorKind::K { k_sign } else { -k_sign };
                    let k = g.arc.cell_multiplicities(n)?.into_iter().map(|x| s * x).collect();
                    HallElement::k_element(n, k, q)
                }
                _ => return Err(Error::invalid(format!("{g} does not belong to this half of the double"))),
            };
            factors.push(factor);
        }
        let value = if factors.is_empty() { HallElement::one(n, q) } else { ctx.product_all(&factors)? };
        out = out.add(&value.scale(c))?;
    }
    Ok(out)
}

/// How an expression is compared with the Hall model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EvaluationMode {
    Positive,
    Negative,
    Double,
}

/// Positive half when no `F` occurs, negative half when no `E` occurs, otherwise
/// straightening in the double.
pub fn evaluation_mode(x: &GeneratorExpr) -> EvaluationMode {
    match (x.contains_kind(GeneratorKind::E), x.contains_kind(GeneratorKind::F)) {
        (_, false) => EvaluationMode::Positive,
        (false, true) => EvaluationMode::Negative,
        (true, true) => EvaluationMode::Double,
    }
}

/// Result of checking one relation instance.
#[derive(Clone, Debug, Serialize)]
pub struct RelationCertificate {
    pub family: RelationFamily,
    pub relation: String,
    pub intervals: Vec<String>,
    pub n: u64,
    pub q: u64,
    pub mode: EvaluationMode,
    pub holds: bool,
    pub lhs: serde_json::Value,
    pub rhs: serde_json::Value,
}

fn to_json<T: Serialize>(x: &T) -> serde_json::Value {
    serde_json::to_value(x).expect("serializable")
}

fn hall_value(ctx: &HallContext, x: &GeneratorExpr, n: u64, mode: EvaluationMode) -> Result<serde_json::Value> {
    Ok(match mode {
        EvaluationMode::Positive => to_json(&evaluate_positive_part(ctx, x, n)?),
        EvaluationMode::Negative => to_json(&evaluate_negative_part(ctx, x, n)?),
        EvaluationMode::Double => to_json(&straighten(x, n)?.hall_coordinates(ctx)?),
    })
}

/// Checks one instance at denominator `n` (which must be a multiple of every
/// interval denominator).
pub fn verify_instance(ctx: &HallContext, inst: &RelationInstance, n: u64) -> Result<RelationCertificate> {
    let diff = inst.difference();
    let mode = evaluation_mode(&diff);
    let holds = match mode {
        EvaluationMode::Positive => evaluate_positive_part(ctx, &diff, n)?.is_zero(),
        EvaluationMode::Negative => evaluate_negative_part(ctx, &diff, n)?.is_zero(),
        EvaluationMode::Double => straighten(&diff, n)?.hall_coordinates(ctx)?.is_zero(),
    };
    Ok(RelationCertificate {
        family: inst.family,
        relation: inst.label.clone(),
        intervals: inst.intervals.iter().map(|a| a.to_string()).collect(),
        n,
        q: ctx.q(),
        mode,
        holds,
        lhs: hall_value(ctx, &inst.lhs, n, mode)?,
        rhs: hall_value(ctx, &inst.rhs, n, mode)?,
    })
}

/// Checks `family` on the pair `(j1, j2)` at denominator `n`, defaulting to the
/// least common denominator of the intervals.
pub fn verify_relation(
    ctx: &HallContext,
    family: RelationFamily,
    j1: &Arc,
    j2: &Arc,
    n: Option<u64>,
) -> Result<Vec<RelationCertificate>> {
    let instances = instances_for_pair(family, j1, j2, ctx.q());
    if instances.is_empty() {
        return Err(Error::invalid(format!("intervals {j1} and {j2} do not satisfy the hypothesis of the {family} relations")));
    }
    let n = n.unwrap_or_else(|| instances[0].difference().denominator());
    instances.iter().map(|inst| verify_instance(ctx, inst, n)).collect()
}

/// Checks every instance of `family` at denominator `n`, in parallel, in canonical order.
pub fn verify_family(ctx: &HallContext, family: RelationFamily, n: u64) -> Result<Vec<RelationCertificate>> {
    relation_instances(family, n, ctx.q())
        .par_iter()
        .map(|inst| verify_instance(ctx, inst, n))
        .collect()
}

/// One tensor component `coeff * left (x) right` of a coproduct.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoproductTerm {
    pub coeff: Scalar,
    pub left: Vec<GeneratorSymbol>,
    pub right: Vec<GeneratorSymbol>,
}

/// Component of the twisted coproduct of an interval generator at the cut point `c`
/// of `[a, b)`. The cut `c = b` gives the leading term and `c = a` the trailing one.
pub fn coproduct_generator_component(g: &GeneratorSymbol, cut: &Rational, q: u64) -> Result<CoproductTerm> {
    if matches!(g.kind, GeneratorKind::K | GeneratorKind::Kinv) {
        return Ok(CoproductTerm { coeff: Scalar::one(q), left: vec![g.clone()], right: vec![g.clone()] });
    }
    let arc = &g.arc;
    let offset = frac(&(cut - arc.left_cover()));
    if offset > *arc.len() {
        return Err(Error::invalid(format!("cut {} lies outside {arc}", format_rational(cut))));
    }
    let whole = GeneratorSymbol::new(g.kind, arc.clone())?;
    let at_left = offset.is_zero();
    let at_right = offset == *arc.len();
    let middle = v_minus_v_inverse(q) * Scalar::u_pow(q, -1);
    let term = |coeff: Scalar, left: Vec<GeneratorSymbol>, right: Vec<GeneratorSymbol>| CoproductTerm { coeff, left, right };
    Ok(match g.kind {
        GeneratorKind::E if at_right => term(Scalar::one(q), vec![whole], vec![]),
        GeneratorKind::E if at_left => term(Scalar::one(q), vec![GeneratorSymbol::k(arc)], vec![whole]),
        GeneratorKind::F if at_left => term(Scalar::one(q), vec![], vec![whole]),
        GeneratorKind::F if at_right => term(Scalar::one(q), vec![whole], vec![GeneratorSymbol::k_inv(arc)]),
        kind => {
            let head = Arc::new(arc.left_cover() + &offset, offset.clone())?;
            let tail = Arc::new(arc.right().clone(), arc.len() - &offset)?;
            if kind == GeneratorKind::E {
                term(
                    middle,
                    vec![GeneratorSymbol::e(&head)?, GeneratorSymbol::k(&tail)],
                    vec![GeneratorSymbol::e(&tail)?],
                )
            } else {
                term(
                    -middle,
                    vec![GeneratorSymbol::f(&tail)?],
                    vec![GeneratorSymbol::f(&head)?, GeneratorSymbol::k_inv(&tail)],
                )
            }
        }
    })
}

/// Compares the coproduct component of `E_J` at `cut` with the Hall coproduct of
/// `v^{1/2} 1_{S_J}` in the matching bidegree, at denominator `n`.
pub fn coproduct_matches_hall(ctx: &HallContext, g: &GeneratorSymbol, cut: &Rational, n: u64) -> Result<bool> {
    if g.kind != GeneratorKind::E {
        return Err(Error::invalid("the Hall comparison applies to E generators"));
    }
    let q = ctx.q();
    let term = coproduct_generator_component(g, cut, q)?;
    let degree = |w: &[GeneratorSymbol]| -> Result<Vec<i64>> {
        let mut d = vec![0i64; n as usize];
        for s in w.iter().filter(|s| s.kind == GeneratorKind::E) {
            for (x, y) in d.iter_mut().zip(s.arc.cell_multiplicities(n)?) {
                *x += y;
            }
        }
        Ok(d)
    };
    let (alpha, beta) = (degree(&term.left)?, degree(&term.right)?);
    let x = evaluate_positive_part(ctx, &GeneratorExpr::generator(q, g.clone()), n)?;
    let hall = ctx.coproduct_component(&x, &alpha, &beta)?;
    let left = evaluate_positive_part(ctx, &GeneratorExpr::word(q, term.left.clone()), n)?;
    let right = evaluate_positive_part(ctx, &GeneratorExpr::word(q, term.right.clone()), n)?;
    let expected = TensorElement::pure(&left, &right)?.scale(&term.coeff);
    Ok(hall == expected)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instance_counts_at_three() {
        let q = 2;
        assert_eq!(strict_arcs(3).len(), 6);
        assert_eq!(k_arcs(3).len(), 9);
        assert_eq!(relation_instances(RelationFamily::Join, 3, q).len(), 2 * 3);
        assert!(relation_instances(RelationFamily::DisjointNest, 3, q).is_empty());
        assert_eq!(relation_instances(RelationFamily::DisjointNest, 4, q).len(), 2 * 4);
    }

    #[test]
    fn family_names_round_trip() {
        for f in ALL_FAMILIES {
            assert_eq!(f.name().parse::<RelationFamily>().unwrap(), f);
        }
        assert!("bogus".parse::<RelationFamily>().is_err());
    }
}
