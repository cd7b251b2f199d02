//! Open-closed interval sheaves on the circle and their Hom/Ext dimensions.

use crate::error::{Error, Result};
use crate::intervals_ktheory::{Arc, StepFunction};
use crate::rational::{floor_i64, format_rational, int, parse_rational, Rational};
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// The sheaf `p_! k_{(a,b]}` on the circle, stored with `b` in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MirrorInterval {
    left: Rational,
    right: Rational,
}

impl MirrorInterval {
    /// The interval `(a, b]` of the cover, translated so that `b` lies in `[0, 1)`.
    pub fn new(a: Rational, b: Rational) -> Result<Self> {
        if b <= a {
            return Err(Error::invalid(format!(
                "interval ({}, {}] needs a < b",
                format_rational(&a),
                format_rational(&b)
            )));
        }
        let shift = int(floor_i64(&b));
        Ok(MirrorInterval { left: a - &shift, right: b - shift })
    }

    /// Parses `"a,b"` or `"(a,b]"`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim().trim_start_matches('(').trim_end_matches(']');
        let (a, b) = t
            .split_once(',')
            .ok_or_else(|| Error::parse(format!("expected 'a,b' for an interval, got '{text}'")))?;
        MirrorInterval::new(parse_rational(a)?, parse_rational(b)?)
    }

    pub fn left(&self) -> &Rational {
        &self.left
    }

    pub fn right(&self) -> &Rational {
        &self.right
    }

    pub fn len(&self) -> Rational {
        &self.right - &self.left
    }

    /// Length `< 1`, the condition for being a generator.
    pub fn is_strict(&self) -> bool {
        self.len() < Rational::one()
    }

    /// The arc `[a, b)` with the same endpoints.
    pub fn to_arc(&self) -> Arc {
        Arc::from_endpoints(self.left.clone(), self.right.clone()).expect("positive length")
    }

    /// The interval `(a, b]` with the same endpoints as the arc `[a, b)`.
    pub fn from_arc(arc: &Arc) -> Self {
        MirrorInterval::new(arc.left_cover(), arc.right().clone()).expect("positive length")
    }

    /// Wrapped characteristic function.
    pub fn char_function(&self) -> StepFunction {
        self.to_arc().char_function()
    }

    pub(crate) fn cover(&self) -> CoverInterval {
        CoverInterval { left: self.left.clone(), right: self.right.clone() }
    }
}

impl fmt::Display for MirrorInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{}]", format_rational(&self.left), format_rational(&self.right))
    }
}

impl FromStr for MirrorInterval {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MirrorInterval::parse(s)
    }
}

impl Serialize for MirrorInterval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for MirrorInterval {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        MirrorInterval::parse(&text).map_err(serde::de::Error::custom)
    }
}

/// An interval `(a, b]` of the real line, not reduced modulo translations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct CoverInterval {
    pub left: Rational,
    pub right: Rational,
}

impl CoverInterval {
    pub fn translate(&self, k: i64) -> CoverInterval {
        CoverInterval { left: &self.left + int(k), right: &self.right + int(k) }
    }

    pub fn contains_cell(&self, lo: &Rational, hi: &Rational) -> bool {
        self.left <= *lo && *hi <= self.right
    }
}

/// `Hom` and `Ext^1` dimensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct HomExt {
    pub hom: u64,
    pub ext1: u64,
}

impl HomExt {
    /// `hom - ext1`.
    pub fn euler(&self) -> i64 {
        self.hom as i64 - self.ext1 as i64
    }
}

fn cover_hom(x: &CoverInterval, y: &CoverInterval) -> bool {
    y.left <= x.left && x.left < y.right && y.right <= x.right
}

fn cover_ext(x: &CoverInterval, y: &CoverInterval) -> bool {
    x.left < y.left && y.left <= x.right && x.right < y.right
}

/// Translates `k` for which `source` and `target + k` can interact.
fn translate_range(source: &CoverInterval, target: &CoverInterval) -> std::ops::RangeInclusive<i64> {
    floor_i64(&(&source.left - &target.right)) - 1..=floor_i64(&(&source.right - &target.left)) + 1
}

/// `Hom` and `Ext^1` between interval sheaves on the line, with no wrapping.
pub fn line_hom_ext(a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> Result<HomExt> {
    if b <= a || d <= c {
        return Err(Error::invalid("line intervals need left < right"));
    }
    let x = CoverInterval { left: a.clone(), right: b.clone() };
    let y = CoverInterval { left: c.clone(), right: d.clone() };
    Ok(HomExt { hom: cover_hom(&x, &y) as u64, ext1: cover_ext(&x, &y) as u64 })
}

/// `Hom` and `Ext^1` from `source` to `target`, summed over the integer translates of `target`.
pub fn hom_ext_dims(source: &MirrorInterval, target: &MirrorInterval) -> HomExt {
    let (x, y) = (source.cover(), target.cover());
    let mut out = HomExt::default();
    for k in translate_range(&x, &y) {
        let yk = y.translate(k);
        out.hom += cover_hom(&x, &yk) as u64;
        out.ext1 += cover_ext(&x, &yk) as u64;
    }
    out
}

/// The unique translate of `target` carrying `Ext^1(source, target)`, if any.
pub(crate) fn ext_translate(source: &MirrorInterval, target: &MirrorInterval) -> Result<Option<CoverInterval>> {
    let (x, y) = (source.cover(), target.cover());
    let hits: Vec<CoverInterval> = translate_range(&x, &y)
        .map(|k| y.translate(k))
        .filter(|yk| cover_ext(&x, yk))
        .collect();
    match hits.len() {
        0 => Ok(None),
        1 => Ok(hits.into_iter().next()),
        _ => Err(Error::invalid(format!("Ext^1({source}, {target}) has dimension {}", hits.len()))),
    }
}

/// A finite direct sum of interval sheaves, summands kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MirrorObject {
    summands: Vec<MirrorInterval>,
}

impl MirrorObject {
    pub fn new(mut summands: Vec<MirrorInterval>) -> Self {
        summands.sort();
        MirrorObject { summands }
    }

    pub fn empty() -> Self {
        MirrorObject::default()
    }

    pub fn single(x: &MirrorInterval) -> Self {
        MirrorObject { summands: vec![x.clone()] }
    }

    /// Parses summands separated by `+`, or `0` for the zero object.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t == "0" || t.is_empty() {
            return Ok(MirrorObject::empty());
        }
        Ok(MirrorObject::new(t.split('+').map(MirrorInterval::parse).collect::<Result<_>>()?))
    }

    pub fn summands(&self) -> &[MirrorInterval] {
        &self.summands
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn direct_sum(&self, other: &MirrorObject) -> MirrorObject {
        MirrorObject::new(self.summands.iter().chain(&other.summands).cloned().collect())
    }

    /// Distinct summands with their multiplicities.
    pub fn multiplicities(&self) -> BTreeMap<MirrorInterval, u64> {
        let mut out = BTreeMap::new();
        for x in &self.summands {
            *out.entry(x.clone()).or_insert(0) += 1;
        }
        out
    }

    /// Sum of the wrapped characteristic functions of the summands.
    pub fn char_function(&self) -> StepFunction {
        self.summands.iter().fold(StepFunction::zero(), |acc, x| acc.add(&x.char_function()))
    }

    /// The arcs with the same endpoints, for the quiver dictionary.
    pub fn arcs(&self) -> Vec<Arc> {
        self.summands.iter().map(MirrorInterval::to_arc).collect()
    }
}

impl fmt::Display for MirrorObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.summands.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for MirrorObject {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.summands.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MirrorObject {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(MirrorObject::new(Vec::<MirrorInterval>::deserialize(d)?))
    }
}

/// Additive extension of [`hom_ext_dims`] to direct sums.
pub fn object_hom_ext(source: &MirrorObject, target: &MirrorObject) -> HomExt {
    let mut out = HomExt::default();
    for x in &source.summands {
        for y in &target.summands {
            let d = hom_ext_dims(x, y);
            out.hom += d.hom;
            out.ext1 += d.ext1;
        }
    }
    out
}

/// All strict intervals with endpoints in `(1/n) Z`, in canonical order.
pub fn strict_intervals(n: u64) -> Vec<MirrorInterval> {
    let n = n as i64;
    let mut out = Vec::new();
    for r in 0..n {
        for l in 1..n {
            out.push(MirrorInterval::new(Rational::new((r - l).into(), n.into()), Rational::new(r.into(), n.into())).expect("positive length"));
        }
    }
    out
}
