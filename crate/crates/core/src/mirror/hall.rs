//! Twisted Hall products of interval sheaves.
//!
//! Structure constants come from Riedtmann's formula
//! `F^M_{A,B} = |Ext^1(A,B)_M| |Aut M| / (|Hom(A,B)| |Aut A| |Aut B|)`, where the
//! middle term of every extension class is computed on the universal cover. A class
//! in `Ext^1(A, X_1 + X_2)` is a pair of classes, each carried by one translate
//! of `X_i`; the middle term of the pulled-back extension on the line is read off
//! from the rank function of its structure maps.

use super::interval::{ext_translate, hom_ext_dims, object_hom_ext, CoverInterval, MirrorInterval, MirrorObject};
use crate::circle_quantum::{GeneratorExpr, GeneratorKind};
use crate::coefficients::Scalar;
use crate::error::{Error, Result};
use crate::intervals_ktheory::{symmetric_euler_form, StepFunction};
use crate::quiver_hall::{HallElement, TorsionObject};
use crate::rational::Rational;
use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Largest number of summands of the right factor supported by [`generator_product`].
pub const MAX_RIGHT_SUMMANDS: usize = 2;

/// Element of the twisted Hall algebra extended by the classes `k_alpha`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MirrorElement {
    q: u64,
    terms: BTreeMap<(MirrorObject, StepFunction), Scalar>,
}

impl MirrorElement {
    pub fn zero(q: u64) -> Self {
        MirrorElement { q, terms: BTreeMap::new() }
    }

    pub fn one(q: u64) -> Self {
        MirrorElement::basis(&MirrorObject::empty(), q)
    }

    pub fn basis(obj: &MirrorObject, q: u64) -> Self {
        let mut out = MirrorElement::zero(q);
        out.add_term(obj.clone(), StepFunction::zero(), Scalar::one(q));
        out
    }

    pub fn k_element(alpha: StepFunction, q: u64) -> Self {
        let mut out = MirrorElement::zero(q);
        out.add_term(MirrorObject::empty(), alpha, Scalar::one(q));
        out
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn terms(&self) -> &BTreeMap<(MirrorObject, StepFunction), Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `1_M` with trivial `k` part.
    pub fn coefficient_of(&self, obj: &MirrorObject) -> Scalar {
        self.terms
            .get(&(obj.clone(), StepFunction::zero()))
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.q))
    }

    pub fn add_term(&mut self, obj: MirrorObject, k: StepFunction, c: Scalar) {
        let key = (obj, k);
        let sum = match self.terms.remove(&key) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn add(&self, other: &MirrorElement) -> Result<MirrorElement> {
        self.check_q(other)?;
        let mut out = self.clone();
        for ((obj, k), c) in &other.terms {
            out.add_term(obj.clone(), k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MirrorElement) -> Result<MirrorElement> {
        self.add(&other.scale(&Scalar::from_int(self.q, -1)))
    }

    pub fn scale(&self, c: &Scalar) -> MirrorElement {
        let mut out = MirrorElement::zero(self.q);
        for ((obj, k), x) in &self.terms {
            out.add_term(obj.clone(), k.clone(), x * c);
        }
        out
    }

    /// Image under the endpoint-preserving dictionary `(a,b] -> [a,b)` at denominator `n`.
    pub fn to_quiver(&self, n: u64) -> Result<HallElement> {
        let mut out = HallElement::zero(n, self.q);
        for ((obj, k), c) in &self.terms {
            let torsion = TorsionObject::from_arcs(n, &obj.arcs())?;
            out.add_term(torsion, k.at_denominator(n)?, c.clone());
        }
        Ok(out)
    }

    /// `1_A * x` for a strict interval `A`.
    pub fn left_multiply(&self, a: &MirrorInterval) -> Result<MirrorElement> {
        let mut out = MirrorElement::zero(self.q);
        for ((obj, k), c) in &self.terms {
            for (middle, x) in generator_product(a, obj, self.q)?.terms {
                out.add_term(middle.0, k.clone(), &x * c);
            }
        }
        Ok(out)
    }

    /// `k_alpha * x`, using `k_alpha 1_M = v^{(alpha, dim M)} 1_M k_alpha`.
    pub fn left_multiply_k(&self, alpha: &StepFunction) -> MirrorElement {
        let mut out = MirrorElement::zero(self.q);
        for ((obj, k), c) in &self.terms {
            let twist = symmetric_euler_form(alpha, &obj.char_function());
            out.add_term(obj.clone(), alpha.add(k), c * &Scalar::v_pow(self.q, twist));
        }
        out
    }

    fn check_q(&self, other: &MirrorElement) -> Result<()> {
        if self.q != other.q {
            return Err(Error::MismatchedQ { left: self.q, right: other.q });
        }
        Ok(())
    }
}

impl fmt::Display for MirrorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((obj, k), c)| {
                if k.is_zero() {
                    format!("({c})*1[{obj}]")
                } else {
                    format!("({c})*1[{obj}]k{:?}", k.values())
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize)]
struct TermJson<'a> {
    object: &'a MirrorObject,
    k: &'a StepFunction,
    coeff: &'a Scalar,
}

#[derive(Serialize)]
struct ElementJson<'a> {
    q: u64,
    terms: Vec<TermJson<'a>>,
}

impl Serialize for MirrorElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self.terms.iter().map(|((object, k), coeff)| TermJson { object, k, coeff }).collect();
        ElementJson { q: self.q, terms }.serialize(s)
    }
}

fn q_power(q: u64, e: u64) -> BigInt {
    Pow::pow(BigInt::from(q), e)
}

/// `|GL_m(F_q)|`.
fn gl_order(q: u64, m: u64) -> BigInt {
    let qm = q_power(q, m);
    (0..m).fold(BigInt::one(), |acc, i| acc * (&qm - q_power(q, i)))
}

/// `|Aut M| = q^{dim rad End M} prod_i |GL_{m_i}(F_q)|`.
pub fn automorphism_order(obj: &MirrorObject, q: u64) -> BigInt {
    let mult = obj.multiplicities();
    let mut end_dim = 0u64;
    for (x, mx) in &mult {
        for (y, my) in &mult {
            end_dim += hom_ext_dims(x, y).hom * mx * my;
        }
    }
    let semisimple: u64 = mult.values().map(|m| m * m).sum();
    mult.values().fold(q_power(q, end_dim - semisimple), |acc, m| acc * gl_order(q, *m))
}

/// Exact rank of a list of small integer vectors.
fn rank(mut rows: Vec<Vec<i64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let (f, g) = (rows[r][c], rows[i][c]);
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x = *x * f - y * g;
                }
            }
        }
        r += 1;
    }
    r
}

/// Middle term on the line of the extension of `a` by the direct sum of `glued`,
/// each of which satisfies `a.left < x.left <= a.right < x.right` and receives a
/// nonzero component of the class.
fn cover_middle(a: &CoverInterval, glued: &[CoverInterval]) -> Vec<CoverInterval> {
    let mut points: BTreeSet<Rational> = BTreeSet::new();
    for x in std::iter::once(a).chain(glued) {
        points.insert(x.left.clone());
        points.insert(x.right.clone());
    }
    let points: Vec<Rational> = points.into_iter().collect();
    let cells = points.len() - 1;
    let inside = |x: &CoverInterval, t: usize| x.contains_cell(&points[t], &points[t + 1]);
    let dim = glued.len() + 1;
    // Image of the basis vector `j` present at cell `s` in the space at cell `t`.
    let image = |j: usize, t: usize| -> Vec<i64> {
        let mut v = vec![0; dim];
        if j == 0 {
            if inside(a, t) {
                v[0] = 1;
            } else if points[t] >= a.right {
                for (i, x) in glued.iter().enumerate() {
                    v[i + 1] = inside(x, t) as i64;
                }
            }
        } else if inside(&glued[j - 1], t) {
            v[j] = 1;
        }
        v
    };
    let present = |j: usize, s: usize| if j == 0 { inside(a, s) } else { inside(&glued[j - 1], s) };
    let r = |s: i64, t: i64| -> i64 {
        if s < 0 || t >= cells as i64 || s > t {
            return 0;
        }
        let rows = (0..dim)
            .filter(|&j| present(j, s as usize))
            .map(|j| image(j, t as usize))
            .collect();
        rank(rows) as i64
    };
    let mut out = Vec::new();
    for s in 0..cells as i64 {
        for t in s..cells as i64 {
            let m = r(s, t) - r(s - 1, t) - r(s, t + 1) + r(s - 1, t + 1);
            for _ in 0..m {
                out.push(CoverInterval { left: points[s as usize].clone(), right: points[t as usize + 1].clone() });
            }
        }
    }
    out
}

/// Structure constants `F^M_{A,B}` of `1_A * 1_B` without the Euler-form twist, for
/// a strict interval `A` and an object `B` with at most two summands.
pub fn riedtmann_numbers(a: &MirrorInterval, b: &MirrorObject, q: u64) -> Result<BTreeMap<MirrorObject, Rational>> {
    if !a.is_strict() {
        return Err(Error::invalid(format!("left factor {a} is not a generator")));
    }
    if b.summands().len() > MAX_RIGHT_SUMMANDS {
        return Err(Error::BoundExceeded {
            what: "summands of the right factor of a mirror product".into(),
            needed: b.summands().len() as u64,
            bound: MAX_RIGHT_SUMMANDS as u64,
        });
    }
    let mut counts: BTreeMap<MirrorObject, BigInt> = BTreeMap::new();
    let mut carriers = Vec::new();
    let mut inert = Vec::new();
    for x in b.summands() {
        match ext_translate(a, x)? {
            Some(cover) => carriers.push((x.clone(), cover)),
            None => inert.push(x.clone()),
        }
    }
    for mask in 0u32..(1 << carriers.len()) {
        let mut summands = inert.clone();
        let mut glued = Vec::new();
        for (i, (x, cover)) in carriers.iter().enumerate() {
            if mask & (1 << i) != 0 {
                glued.push(cover.clone());
            } else {
                summands.push(x.clone());
            }
        }
        if glued.is_empty() {
            summands.push(a.clone());
        } else {
            for piece in cover_middle(&a.cover(), &glued) {
                summands.push(MirrorInterval::new(piece.left, piece.right)?);
            }
        }
        let classes = Pow::pow(BigInt::from(q - 1), glued.len() as u32);
        *counts.entry(MirrorObject::new(summands)).or_insert_with(BigInt::zero) += classes;
    }
    let hom = object_hom_ext(&MirrorObject::single(a), b).hom;
    let denominator = q_power(q, hom) * automorphism_order(&MirrorObject::single(a), q) * automorphism_order(b, q);
    Ok(counts
        .into_iter()
        .map(|(m, c)| {
            let number = Rational::new(c * automorphism_order(&m, q), denominator.clone());
            (m, number)
        })
        .collect())
}

/// `1_A * 1_B = v^{<A,B>} sum_M F^M_{A,B} 1_M` with `<A,B> = hom - ext^1`.
pub fn generator_product(a: &MirrorInterval, b: &MirrorObject, q: u64) -> Result<MirrorElement> {
    if b.is_empty() {
        return Ok(MirrorElement::basis(&MirrorObject::single(a), q));
    }
    let twist = object_hom_ext(&MirrorObject::single(a), b).euler();
    let mut out = MirrorElement::zero(q);
    for (m, number) in riedtmann_numbers(a, b, q)? {
        out.add_term(m, StepFunction::zero(), Scalar::v_pow(q, twist).scale(&number));
    }
    Ok(out)
}

/// Twisted product `1_{J_1} * 1_{J_2}` of two generators.
pub fn mirror_hall_product(j1: &MirrorInterval, j2: &MirrorInterval, q: u64) -> Result<MirrorElement> {
    generator_product(j1, &MirrorObject::single(j2), q)
}

/// Value of `E_J -> v^{1/2} 1_{k_J}`, `K_J^{+-1} -> k_{+-chi_J}` on a combination
/// of positive words, computed by left multiplication from the right end of each word.
pub fn evaluate_positive(x: &GeneratorExpr) -> Result<MirrorElement> {
    let q = x.q();
    let half = Scalar::u_pow(q, 1);
    let mut out = MirrorElement::zero(q);
    for (c, word) in x.terms() {
        let mut acc = MirrorElement::one(q);
        for g in word.iter().rev() {
            acc = match g.kind {
                GeneratorKind::E => acc.left_multiply(&MirrorInterval::from_arc(&g.arc))?.scale(&half),
                GeneratorKind::K => acc.left_multiply_k(&g.arc.char_function()),
                GeneratorKind::Kinv => acc.left_multiply_k(&g.arc.char_function().scale(-1)),
                GeneratorKind::F => return Err(Error::invalid(format!("{g} is not in the positive half"))),
            };
        }
        out = out.add(&acc.scale(c))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_small_vectors() {
        assert_eq!(rank(vec![vec![1, 1], vec![1, 0], vec![0, 1]]), 2);
        assert_eq!(rank(vec![vec![0, 0]]), 0);
        assert_eq!(rank(vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, -1]]), 2);
    }

    #[test]
    fn gl_orders() {
        assert_eq!(gl_order(2, 1), BigInt::from(1));
        assert_eq!(gl_order(2, 2), BigInt::from(6));
        assert_eq!(gl_order(3, 2), BigInt::from(48));
    }
}
