//! Elements of the twisted Hall algebra and of its tensor square.

use super::object::TorsionObject;
use crate::coefficients::Scalar;
use crate::error::{Error, Result};
use crate::intervals_ktheory::{refine_vector, Arc, StepFunction};
use crate::rational::lcm;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// A basis vector `1_M k_alpha`: an object together with a K-exponent lattice vector.
pub type HallKey = (TorsionObject, Vec<i64>);

/// Finitely supported `Scalar`-valued function on `1_M k_alpha` at a fixed denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallElement {
    n: u64,
    q: u64,
    terms: BTreeMap<HallKey, Scalar>,
}

impl HallElement {
    pub fn zero(n: u64, q: u64) -> Self {
        HallElement { n, q, terms: BTreeMap::new() }
    }

    /// The unit `1_0`.
    pub fn one(n: u64, q: u64) -> Self {
        HallElement::basis(&TorsionObject::empty(n), q)
    }

    /// Characteristic function `1_M`.
    pub fn basis(obj: &TorsionObject, q: u64) -> Self {
        HallElement::basis_with_k(obj, vec![0; obj.n() as usize], q)
    }

    /// `1_M k_alpha`.
    pub fn basis_with_k(obj: &TorsionObject, k: Vec<i64>, q: u64) -> Self {
        let mut e = HallElement::zero(obj.n(), q);
        e.add_term(obj.clone(), k, Scalar::one(q));
        e
    }

    /// The group-like element `k_alpha`.
    pub fn k_element(n: u64, k: Vec<i64>, q: u64) -> Self {
        HallElement::basis_with_k(&TorsionObject::empty(n), k, q)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn terms(&self) -> &BTreeMap<HallKey, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `1_M k_alpha`.
    pub fn coefficient(&self, obj: &TorsionObject, k: &[i64]) -> Scalar {
        self.terms
            .get(&(obj.clone(), k.to_vec()))
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.q))
    }

    /// Coefficient of `1_M` (trivial K-part).
    pub fn coefficient_of(&self, obj: &TorsionObject) -> Scalar {
        self.coefficient(obj, &vec![0; self.n as usize])
    }

    pub fn add_term(&mut self, obj: TorsionObject, k: Vec<i64>, c: Scalar) {
        assert_eq!(obj.n(), self.n, "object at the wrong denominator");
        assert_eq!(k.len() as u64, self.n, "K-exponent at the wrong denominator");
        if c.is_zero() {
            return;
        }
        let key = (obj, k);
        let entry = self.terms.entry(key.clone()).or_insert_with(|| Scalar::zero(self.q));
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, c: &Scalar) -> HallElement {
        let mut out = HallElement::zero(self.n, self.q);
        for ((obj, k), x) in &self.terms {
            out.add_term(obj.clone(), k.clone(), x * c);
        }
        out
    }

    /// Sum, refining both sides to the least common denominator.
    pub fn add(&self, other: &HallElement) -> Result<HallElement> {
        self.check_q(other)?;
        let m = lcm(self.n, other.n);
        let mut out = self.refine(m)?;
        for ((obj, k), c) in other.refine(m)?.terms {
            out.add_term(obj, k, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &HallElement) -> Result<HallElement> {
        self.add(&other.scale(&Scalar::from_int(self.q, -1)))
    }

    pub(crate) fn check_q(&self, other: &HallElement) -> Result<()> {
        if self.q != other.q {
            return Err(Error::MismatchedQ { left: self.q, right: other.q });
        }
        Ok(())
    }

    /// Subdivision pullback to denominator `m` (a multiple of `n`): arcs are kept as
    /// subsets of the circle and K-exponents are refined.
    pub fn refine(&self, m: u64) -> Result<HallElement> {
        if m == 0 || m % self.n != 0 {
            return Err(Error::Denominator(format!("{m} is not a multiple of {}", self.n)));
        }
        let k = m / self.n;
        let mut out = HallElement::zero(m, self.q);
        for ((obj, alpha), c) in &self.terms {
            out.add_term(obj.pullback(k), refine_vector(alpha, m)?, c.clone());
        }
        Ok(out)
    }

    /// Minimal denominator at which every term is defined.
    pub fn valuation(&self) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::invalid("the zero element has no valuation"));
        }
        Ok(self.terms.keys().fold(1, |acc, (obj, k)| {
            let kd = StepFunction::from_lattice(self.n, k.clone()).denominator();
            lcm(lcm(acc, obj.valuation()), kd)
        }))
    }

    /// The same element re-expressed at its valuation.
    pub fn normalized(&self) -> Result<HallElement> {
        let m = self.valuation()?;
        let mut out = HallElement::zero(m, self.q);
        for ((obj, k), c) in &self.terms {
            let alpha = StepFunction::from_lattice(self.n, k.clone()).at_denominator(m)?;
            out.add_term(obj.at_level(m)?, alpha, c.clone());
        }
        Ok(out)
    }

    /// Multiply every term by `k_alpha` on the right, without any commutation twist.
    pub fn shift_k(&self, alpha: &[i64]) -> HallElement {
        let mut out = HallElement::zero(self.n, self.q);
        for ((obj, k), c) in &self.terms {
            let sum: Vec<i64> = k.iter().zip(alpha).map(|(a, b)| a + b).collect();
            out.add_term(obj.clone(), sum, c.clone());
        }
        out
    }

    /// Dimension vectors occurring in the support.
    pub fn degrees(&self) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = self.terms.keys().map(|(o, _)| o.dim_vector()).collect();
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for HallElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((obj, k), c)| {
                if k.iter().all(|x| *x == 0) {
                    format!("({c})*1[{obj}]")
                } else {
                    format!("({c})*1[{obj}]k{k:?}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    arcs: Vec<Arc>,
    k: StepFunction,
    coeff: Scalar,
}

#[derive(Serialize, Deserialize)]
struct HallElementJson {
    n: u64,
    q: u64,
    terms: Vec<TermJson>,
}

impl Serialize for HallElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .map(|((obj, k), c)| TermJson {
                arcs: obj.arcs(),
                k: StepFunction::from_lattice(self.n, k.clone()),
                coeff: c.clone(),
            })
            .collect();
        HallElementJson { n: self.n, q: self.q, terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for HallElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = HallElementJson::deserialize(d)?;
        let mut out = HallElement::zero(raw.n, raw.q);
        for t in raw.terms {
            let obj = TorsionObject::from_arcs(raw.n, &t.arcs).map_err(D::Error::custom)?;
            let k = t.k.at_denominator(raw.n).map_err(D::Error::custom)?;
            if t.coeff.q() != raw.q {
                return Err(D::Error::custom("coefficient over a different q"));
            }
            out.add_term(obj, k, t.coeff);
        }
        Ok(out)
    }
}

/// Element of the tensor square, indexed by pairs of basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    n: u64,
    q: u64,
    terms: BTreeMap<(HallKey, HallKey), Scalar>,
}

impl TensorElement {
    pub fn zero(n: u64, q: u64) -> Self {
        TensorElement { n, q, terms: BTreeMap::new() }
    }

    /// `a ⊗ b`.
    pub fn pure(a: &HallElement, b: &HallElement) -> Result<Self> {
        a.check_q(b)?;
        if a.n() != b.n() {
            return Err(Error::Denominator("tensor factors at different denominators".into()));
        }
        let mut out = TensorElement::zero(a.n(), a.q());
        for (ka, ca) in a.terms() {
            for (kb, cb) in b.terms() {
                out.add_term(ka.clone(), kb.clone(), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn terms(&self) -> &BTreeMap<(HallKey, HallKey), Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, left: HallKey, right: HallKey, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (left, right);
        let entry = self.terms.entry(key.clone()).or_insert_with(|| Scalar::zero(self.q));
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for ((l, r), c) in &other.terms {
            out.add_term(l.clone(), r.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> TensorElement {
        let mut out = TensorElement::zero(self.n, self.q);
        for ((l, r), x) in &self.terms {
            out.add_term(l.clone(), r.clone(), x * c);
        }
        out
    }

    /// Restriction to the bidegree `(alpha, beta)` of dimension vectors.
    pub fn component(&self, alpha: &[i64], beta: &[i64]) -> TensorElement {
        let mut out = TensorElement::zero(self.n, self.q);
        for ((l, r), c) in &self.terms {
            if l.0.dim_vector() == alpha && r.0.dim_vector() == beta {
                out.add_term(l.clone(), r.clone(), c.clone());
            }
        }
        out
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((l, r), c)| format!("({c})*1[{}]k{:?} (x) 1[{}]k{:?}", l.0, l.1, r.0, r.1))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct TensorTermJson {
    left: TermJson,
    right: TermJson,
}

impl Serialize for TensorElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out {
            n: u64,
            q: u64,
            terms: Vec<TensorTermJson>,
        }
        let one = Scalar::one(self.q);
        let side = |key: &HallKey, coeff: Scalar| TermJson {
            arcs: key.0.arcs(),
            k: StepFunction::from_lattice(self.n, key.1.clone()),
            coeff,
        };
        let terms = self
            .terms
            .iter()
            .map(|((l, r), c)| TensorTermJson { left: side(l, c.clone()), right: side(r, one.clone()) })
            .collect();
        Out { n: self.n, q: self.q, terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TensorElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct In {
            n: u64,
            q: u64,
            terms: Vec<TensorTermJson>,
        }
        let raw = In::deserialize(d)?;
        let key = |t: &TermJson| -> Result<HallKey> {
            Ok((TorsionObject::from_arcs(raw.n, &t.arcs)?, t.k.at_denominator(raw.n)?))
        };
        let mut out = TensorElement::zero(raw.n, raw.q);
        for t in &raw.terms {
            if t.left.coeff.q() != raw.q || t.right.coeff.q() != raw.q {
                return Err(D::Error::custom("coefficient over a different q"));
            }
            let left = key(&t.left).map_err(D::Error::custom)?;
            let right = key(&t.right).map_err(D::Error::custom)?;
            out.add_term(left, right, &t.left.coeff * &t.right.coeff);
        }
        Ok(out)
    }
}
