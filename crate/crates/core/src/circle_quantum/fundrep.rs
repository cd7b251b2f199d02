//! Fundamental representations on `V = sum Q~ u_y`: the circle action of the
//! interval generators, the level-`n` action of the Chevalley generators with the
//! central `Z_r`, and the Hecke action of `1_{S_J}`, `K_J` and `Z_r`.

use super::generators::{GeneratorExpr, GeneratorKind, GeneratorSymbol};
use crate::coefficients::Scalar;
use crate::error::{Error, Result};
use crate::intervals_ktheory::Arc;
use crate::rational::{format_rational, frac, int, parse_rational, Rational};
use num_traits::Zero;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;

/// Finitely supported vector in the basis `u_y`, `y` rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepVector {
    q: u64,
    coeffs: BTreeMap<Rational, Scalar>,
}

impl RepVector {
    pub fn zero(q: u64) -> Self {
        RepVector { q, coeffs: BTreeMap::new() }
    }

    /// The basis vector `u_y`.
    pub fn basis(q: u64, y: Rational) -> Self {
        let mut out = RepVector::zero(q);
        out.add_term(y, Scalar::one(q));
        out
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn terms(&self) -> &BTreeMap<Rational, Scalar> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, y: &Rational) -> Scalar {
        self.coeffs.get(y).cloned().unwrap_or_else(|| Scalar::zero(self.q))
    }

    pub fn add_term(&mut self, y: Rational, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(y.clone()).or_insert_with(|| Scalar::zero(self.q));
        *slot += &c;
        if slot.is_zero() {
            self.coeffs.remove(&y);
        }
    }

    pub fn add(&self, other: &RepVector) -> RepVector {
        let mut out = self.clone();
        for (y, c) in &other.coeffs {
            out.add_term(y.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> RepVector {
        let mut out = RepVector::zero(self.q);
        for (y, a) in &self.coeffs {
            out.add_term(y.clone(), a * c);
        }
        out
    }

    /// Applies `f` to every coefficient, e.g. the bar involution.
    pub fn map_coefficients(&self, f: impl Fn(&Scalar) -> Scalar) -> RepVector {
        let mut out = RepVector::zero(self.q);
        for (y, a) in &self.coeffs {
            out.add_term(y.clone(), f(a));
        }
        out
    }

    /// Relabels the basis `u_y -> u_{g(y)}`.
    pub fn reindex(&self, g: impl Fn(&Rational) -> Rational) -> RepVector {
        let mut out = RepVector::zero(self.q);
        for (y, a) in &self.coeffs {
            out.add_term(g(y), a.clone());
        }
        out
    }
}

impl fmt::Display for RepVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (idx, (y, c)) in self.coeffs.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}) u_{}", format_rational(y))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct RepTermJson {
    index: String,
    coeff: Scalar,
}

impl Serialize for RepVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for (y, c) in &self.coeffs {
            seq.serialize_element(&RepTermJson { index: format_rational(y), coeff: c.clone() })?;
        }
        seq.end()
    }
}

impl RepVector {
    /// Reads back the JSON list emitted by `Serialize`.
    pub fn from_json(q: u64, value: &serde_json::Value) -> Result<RepVector> {
        let terms: Vec<RepTermJson> =
            serde_json::from_value(value.clone()).map_err(|e| Error::parse(format!("bad vector: {e}")))?;
        let mut out = RepVector::zero(q);
        for t in terms {
            if t.coeff.q() != q {
                return Err(Error::MismatchedQ { left: q, right: t.coeff.q() });
            }
            out.add_term(parse_rational(&t.index)?, t.coeff);
        }
        Ok(out)
    }
}

/// Which representation to act in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RepVariant {
    /// Interval generators acting on `u_y`, `y` rational.
    Circle,
    /// Chevalley generators and `Z_r` at level `n`, acting on `u_d`, `d` integral.
    Affine(u64),
    /// Hecke operators `1_{S_J}`, `K_J^{+-1}` and `Z_r` acting on `u_y`.
    Heisenberg,
    /// The circle action pulled back along `E_J <-> F_J`, `K_J -> K_J`, `v -> v^{-1}`.
    TwistedCircle,
    /// The level-`n` action pulled back along the same exchange.
    TwistedAffine(u64),
}

/// An operator that can be applied to a vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepOperator {
    Generator(GeneratorSymbol),
    /// The characteristic function `1_{S_J}`.
    Hall(Arc),
    /// The central element `Z_r`, shifting by `shift` (by `shift * n` at level `n`)
    /// and scaling by the supplied pairing constant.
    Z { shift: Rational, constant: Scalar },
}

fn hits(x: &Rational) -> bool {
    frac(x).is_zero()
}

fn delta(x: &Rational) -> i64 {
    i64::from(hits(x))
}

fn check_cell(n: u64, arc: &Arc) -> Result<u64> {
    let (socle, len) = arc.segment(n)?;
    if len != 1 {
        return Err(Error::invalid(format!("{arc} is not a unit cell at level {n}; expand it into Chevalley generators first")));
    }
    Ok(socle)
}

fn integral(y: &Rational) -> Result<i64> {
    crate::rational::to_i64(y).ok_or_else(|| Error::invalid(format!("level-n vectors need integral indices, got {}", format_rational(y))))
}

/// Circle action of a generator on `u_y` as `(power of v^{1/2}, new index)`.
fn circle_generator(kind: GeneratorKind, arc: &Arc, y: &Rational) -> Option<(i64, Rational)> {
    let a = arc.left_cover();
    let b = arc.right().clone();
    match kind {
        GeneratorKind::F => hits(&(&b + y)).then(|| (1, y + arc.len())),
        GeneratorKind::E => hits(&(&a + y)).then(|| (-1, y - arc.len())),
        GeneratorKind::K | GeneratorKind::Kinv => {
            let sign = if kind == GeneratorKind::K { 1 } else { -1 };
            Some((2 * sign * (delta(&(&b + y)) - delta(&(&a + y))), y.clone()))
        }
    }
}

/// Level-`n` action of a Chevalley generator on `u_d` as `(power of v^{1/2}, new index)`.
fn affine_generator(n: u64, kind: GeneratorKind, arc: &Arc, d: i64) -> Result<Option<(i64, Rational)>> {
    let residue = |i: u64| (d + i as i64).rem_euclid(n as i64);
    Ok(match kind {
        GeneratorKind::F => {
            let i = check_cell(n, arc)?;
            (residue(i) == 0).then(|| (1, int(d + 1)))
        }
        GeneratorKind::E => {
            let i = check_cell(n, arc)?;
            (residue(i) == 1 % n as i64).then(|| (-1, int(d - 1)))
        }
        GeneratorKind::K | GeneratorKind::Kinv => {
            let sign = if kind == GeneratorKind::K { 1 } else { -1 };
            let mult = arc.cell_multiplicities(n)?;
            let e: i64 = (1..=n)
                .map(|i| {
                    let r = residue(i);
                    mult[(i - 1) as usize] * (i64::from(r == 0) - i64::from(r == 1 % n as i64))
                })
                .sum();
            Some((2 * sign * e, int(d)))
        }
    })
}

fn exchanged(kind: GeneratorKind) -> GeneratorKind {
    match kind {
        GeneratorKind::E => GeneratorKind::F,
        GeneratorKind::F => GeneratorKind::E,
        other => other,
    }
}

fn inverted(action: Option<(i64, Rational)>) -> Option<(i64, Rational)> {
    action.map(|(k, y)| (-k, y))
}

fn z_action(n: u64, shift: &Rational, constant: &Scalar, y: &Rational) -> Result<Option<(Scalar, Rational)>> {
    if shift.is_zero() {
        return Err(Error::invalid("Z_r needs r != 0"));
    }
    if n == 1 {
        return Ok(Some((constant.clone(), y + shift)));
    }
    let r = integral(shift)?;
    Ok(Some((constant.clone(), int(integral(y)? + r * n as i64))))
}

/// Action of one operator on one basis vector, as `(coefficient, new index)`.
fn act_on_basis(variant: RepVariant, op: &RepOperator, y: &Rational, q: u64) -> Result<Option<(Scalar, Rational)>> {
    let lift = |action: Option<(i64, Rational)>| action.map(|(k, y)| (Scalar::u_pow(q, k), y));
    match (variant, op) {
        (RepVariant::Circle, RepOperator::Generator(g)) => Ok(lift(circle_generator(g.kind, &g.arc, y))),
        (RepVariant::TwistedCircle, RepOperator::Generator(g)) => {
            Ok(lift(inverted(circle_generator(exchanged(g.kind), &g.arc, y))))
        }
        (RepVariant::Circle | RepVariant::TwistedCircle, _) => {
            Err(Error::invalid("the circle representation only carries interval generators"))
        }
        (RepVariant::Affine(n), RepOperator::Generator(g)) => Ok(lift(affine_generator(n, g.kind, &g.arc, integral(y)?)?)),
        (RepVariant::TwistedAffine(n), RepOperator::Generator(g)) => {
            Ok(lift(inverted(affine_generator(n, exchanged(g.kind), &g.arc, integral(y)?)?)))
        }
        (RepVariant::Affine(n) | RepVariant::TwistedAffine(n), RepOperator::Hall(arc)) => {
            let d = integral(y)?;
            let i = check_cell(n, arc)?;
            Ok(((d + i as i64).rem_euclid(n as i64) == 0).then(|| (Scalar::v_pow(q, -1), int(d + 1))))
        }
        (RepVariant::Affine(n) | RepVariant::TwistedAffine(n), RepOperator::Z { shift, constant }) => {
            z_action(n, shift, constant, y)
        }
        (RepVariant::Heisenberg, RepOperator::Hall(arc)) => {
            Ok(hits(&(arc.right() + y)).then(|| (Scalar::v_pow(q, -1), y + arc.len())))
        }
        (RepVariant::Heisenberg, RepOperator::Generator(g)) => match g.kind {
            GeneratorKind::F => Err(Error::invalid("the Hecke representation carries only the positive half")),
            kind => Ok(lift(inverted(circle_generator(exchanged(kind), &g.arc, y)))),
        },
        (RepVariant::Heisenberg, RepOperator::Z { shift, constant }) => z_action(1, shift, constant, y),
    }
}

/// Applies one operator to a vector.
pub fn fund_rep_apply(variant: RepVariant, op: &RepOperator, v: &RepVector) -> Result<RepVector> {
    let q = v.q();
    if let RepOperator::Z { constant, .. } = op {
        if constant.q() != q {
            return Err(Error::MismatchedQ { left: q, right: constant.q() });
        }
    }
    let mut out = RepVector::zero(q);
    for (y, c) in v.terms() {
        if let Some((coeff, target)) = act_on_basis(variant, op, y, q)? {
            out.add_term(target, c * &coeff);
        }
    }
    Ok(out)
}

/// Applies a word of generators, rightmost letter first.
pub fn apply_word(variant: RepVariant, word: &[GeneratorSymbol], v: &RepVector) -> Result<RepVector> {
    let mut acc = v.clone();
    for g in word.iter().rev() {
        acc = fund_rep_apply(variant, &RepOperator::Generator(g.clone()), &acc)?;
    }
    Ok(acc)
}

/// Applies a linear combination of words.
pub fn apply_expr(variant: RepVariant, x: &GeneratorExpr, v: &RepVector) -> Result<RepVector> {
    let mut out = RepVector::zero(v.q());
    for (c, w) in x.terms() {
        out = out.add(&apply_word(variant, w, v)?.scale(c));
    }
    Ok(out)
}

/// Points `k / (2n)`, `0 <= k < 2n`: every residue class that the delta rules of
/// intervals with denominator `n` can see, plus one generic point per cell.
pub fn transversal(n: u64) -> Vec<Rational> {
    (0..2 * n as i64).map(|k| Rational::new(k.into(), (2 * n as i64).into())).collect()
}
