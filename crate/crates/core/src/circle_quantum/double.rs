//! The Drinfeld double at a fixed denominator `n`, in Chevalley generators
//! `E_i, F_i, K_i^{+-1}` (`i = 1..=n`), with elements kept in `E-K-F` normal form.

use super::generators::{GeneratorExpr, GeneratorKind, GeneratorSymbol};
use crate::coefficients::{v_minus_v_inverse, Scalar};
use crate::error::{Error, Result};
use crate::intervals_ktheory::{lattice_symmetric_form, Arc, StepFunction};
use crate::quiver_hall::{HallContext, HallElement, TensorElement, TorsionObject};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// The word `E_{e_1} ... E_{e_k} K^{k} F_{f_1} ... F_{f_l}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalWord {
    pub e: Vec<u64>,
    pub k: Vec<i64>,
    pub f: Vec<u64>,
}

/// Linear combination of normal words over `Scalar`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleElement {
    n: u64,
    q: u64,
    terms: BTreeMap<NormalWord, Scalar>,
}

fn symmetric_pairing_with_cell(n: u64, alpha: &[i64], j: u64) -> i64 {
    let mut unit = vec![0i64; n as usize];
    unit[(j - 1) as usize] = 1;
    lattice_symmetric_form(alpha, &unit)
}

fn weight(n: u64, word: &[u64]) -> Vec<i64> {
    let mut w = vec![0i64; n as usize];
    for i in word {
        w[(*i - 1) as usize] += 1;
    }
    w
}

impl DoubleElement {
    pub fn zero(n: u64, q: u64) -> Self {
        DoubleElement { n, q, terms: BTreeMap::new() }
    }

    pub fn one(n: u64, q: u64) -> Self {
        DoubleElement::from_word(q, NormalWord { e: Vec::new(), k: vec![0; n as usize], f: Vec::new() })
    }

    pub fn from_word(q: u64, word: NormalWord) -> Self {
        let n = word.k.len() as u64;
        let mut out = DoubleElement::zero(n, q);
        out.add_term(word, Scalar::one(q));
        out
    }

    /// A single Chevalley generator `E_i`, `F_i`, `K_i` or `K_i^{-1}`.
    pub fn chevalley(n: u64, q: u64, kind: GeneratorKind, i: u64) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::invalid(format!("Chevalley index {i} outside 1..={n}")));
        }
        let mut word = NormalWord { e: Vec::new(), k: vec![0; n as usize], f: Vec::new() };
        match kind {
            GeneratorKind::E => word.e.push(i),
            GeneratorKind::F => word.f.push(i),
            GeneratorKind::K => word.k[(i - 1) as usize] = 1,
            GeneratorKind::Kinv => word.k[(i - 1) as usize] = -1,
        }
        Ok(DoubleElement::from_word(q, word))
    }

    /// `K^alpha` for a lattice vector `alpha`.
    pub fn k_power(q: u64, alpha: Vec<i64>) -> Self {
        DoubleElement::from_word(q, NormalWord { e: Vec::new(), k: alpha, f: Vec::new() })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn terms(&self) -> &BTreeMap<NormalWord, Scalar> {
        &self.terms
    }

    /// Syntactic zero test; equality in the algebra is decided by [`Self::hall_coordinates`].
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, word: NormalWord, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(word.clone()).or_insert_with(|| Scalar::zero(self.q));
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&word);
        }
    }

    fn check_compatible(&self, other: &DoubleElement) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Denominator(format!("double elements at n = {} and n = {}", self.n, other.n)));
        }
        if self.q != other.q {
            return Err(Error::MismatchedQ { left: self.q, right: other.q });
        }
        Ok(())
    }

    pub fn add(&self, other: &DoubleElement) -> Result<DoubleElement> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &DoubleElement) -> Result<DoubleElement> {
        self.add(&other.scale(&Scalar::from_int(self.q, -1)))
    }

    pub fn scale(&self, c: &Scalar) -> DoubleElement {
        let mut out = DoubleElement::zero(self.n, self.q);
        for (w, a) in &self.terms {
            out.add_term(w.clone(), a * c);
        }
        out
    }

    /// Right multiplication by `E_j`, moving it left through the `F`-word with
    /// `F_i E_j = E_j F_i - delta_{ij} (K_j - K_j^{-1}) / (v - v^{-1})` and past
    /// `K^alpha` with `K^alpha E_j = v^{(alpha, e_j)} E_j K^alpha`.
    pub fn mul_e(&self, j: u64) -> Result<DoubleElement> {
        let q = self.q;
        let inv = Scalar::one(q).checked_div(&v_minus_v_inverse(q))?;
        let mut out = DoubleElement::zero(self.n, q);
        for (w, c) in &self.terms {
            let twist = symmetric_pairing_with_cell(self.n, &w.k, j);
            let mut main = w.clone();
            main.e.push(j);
            out.add_term(main, c * &Scalar::v_pow(q, twist));
            for p in 0..w.f.len() {
                if w.f[p] != j {
                    continue;
                }
                let pre = &w.f[..p];
                let t = symmetric_pairing_with_cell(self.n, &weight(self.n, pre), j);
                let mut f = pre.to_vec();
                f.extend_from_slice(&w.f[p + 1..]);
                let mut up = NormalWord { e: w.e.clone(), k: w.k.clone(), f: f.clone() };
                up.k[(j - 1) as usize] += 1;
                let mut down = NormalWord { e: w.e.clone(), k: w.k.clone(), f };
                down.k[(j - 1) as usize] -= 1;
                let base = -(c * &inv);
                out.add_term(up, &base * &Scalar::v_pow(q, t));
                out.add_term(down, -(&base * &Scalar::v_pow(q, -t)));
            }
        }
        Ok(out)
    }

    /// Right multiplication by `F_i`.
    pub fn mul_f(&self, i: u64) -> DoubleElement {
        let mut out = DoubleElement::zero(self.n, self.q);
        for (w, c) in &self.terms {
            let mut word = w.clone();
            word.f.push(i);
            out.add_term(word, c.clone());
        }
        out
    }

    /// Right multiplication by `K^beta`, using `F_i K^beta = v^{(beta, e_i)} K^beta F_i`.
    pub fn mul_k(&self, beta: &[i64]) -> DoubleElement {
        let mut out = DoubleElement::zero(self.n, self.q);
        for (w, c) in &self.terms {
            let twist = lattice_symmetric_form(beta, &weight(self.n, &w.f));
            let mut word = w.clone();
            for (a, b) in word.k.iter_mut().zip(beta) {
                *a += b;
            }
            out.add_term(word, c * &Scalar::v_pow(self.q, twist));
        }
        out
    }

    /// Product in the double.
    pub fn mul(&self, other: &DoubleElement) -> Result<DoubleElement> {
        self.check_compatible(other)?;
        let mut out = DoubleElement::zero(self.n, self.q);
        for (w, c) in &other.terms {
            let mut acc = self.scale(c);
            for j in &w.e {
                acc = acc.mul_e(*j)?;
            }
            acc = acc.mul_k(&w.k);
            for i in &w.f {
                acc = acc.mul_f(*i);
            }
            out = out.add(&acc)?;
        }
        Ok(out)
    }

    /// Distinct pairs of `E`-weight and `F`-weight over the terms.
    pub fn gradings(&self) -> Vec<(Vec<i64>, Vec<i64>)> {
        let mut out: Vec<(Vec<i64>, Vec<i64>)> = self
            .terms
            .keys()
            .map(|w| (weight(self.n, &w.e), weight(self.n, &w.f)))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Faithful coordinates in `H (x) H` grouped by the `K`-exponent: the normal word
    /// `(e, alpha, f)` maps to `ev+(e) k_alpha (x) ev-(f)` with `E_i -> v^{1/2} 1_{S_i}`
    /// and `F_i -> -v^{1/2} 1_{S_i}`.
    pub fn hall_coordinates(&self, ctx: &HallContext) -> Result<TensorElement> {
        let q = self.q;
        let n = self.n;
        let mut cache: HashMap<Vec<u64>, HallElement> = HashMap::new();
        let mut eval = |word: &[u64], sign: i64| -> Result<HallElement> {
            if let Some(x) = cache.get(word) {
                return Ok(x.scale(&Scalar::from_int(q, sign.pow(word.len() as u32))));
            }
            let factors: Vec<HallElement> = word
                .iter()
                .map(|i| HallElement::basis(&TorsionObject::simple(n, *i), q))
                .collect();
            let prod = if factors.is_empty() {
                HallElement::one(n, q)
            } else {
                ctx.product_all(&factors)?.scale(&Scalar::u_pow(q, word.len() as i64))
            };
            cache.insert(word.to_vec(), prod.clone());
            Ok(prod.scale(&Scalar::from_int(q, sign.pow(word.len() as u32))))
        };
        let mut out = TensorElement::zero(n, q);
        for (w, c) in &self.terms {
            let left = eval(&w.e, 1)?.shift_k(&w.k);
            let right = eval(&w.f, -1)?;
            out = out.add(&TensorElement::pure(&left, &right)?.scale(c));
        }
        Ok(out)
    }

    /// The same element written as a combination of words in unit-cell generators.
    pub fn to_expr(&self) -> GeneratorExpr {
        let n = self.n;
        let mut out = GeneratorExpr::zero(self.q);
        for (w, c) in &self.terms {
            let mut word: Vec<GeneratorSymbol> = w.e.iter().map(|i| GeneratorSymbol::e(&Arc::cell(n, *i)).expect("cells are strict")).collect();
            for (i, a) in w.k.iter().enumerate() {
                let cell = Arc::cell(n, i as u64 + 1);
                let g = if *a > 0 { GeneratorSymbol::k(&cell) } else { GeneratorSymbol::k_inv(&cell) };
                word.extend(std::iter::repeat_n(g, a.unsigned_abs() as usize));
            }
            word.extend(w.f.iter().map(|i| GeneratorSymbol::f(&Arc::cell(n, *i)).expect("cells are strict")));
            out = out.add(&GeneratorExpr::term(c.clone(), word));
        }
        out
    }

    /// Equality in the double, decided in Hall coordinates.
    pub fn equals_in_double(&self, other: &DoubleElement, ctx: &HallContext) -> Result<bool> {
        Ok(self.sub(other)?.hall_coordinates(ctx)?.is_zero())
    }
}

/// Expansion of an interval generator into Chevalley generators at denominator `n`,
/// by iterating the join relations
/// `E_{J' + c} = v^{1/2} E_{J'} E_c - v^{-1/2} E_c E_{J'}` and
/// `F_{J' + c} = v^{-1/2} F_c F_{J'} - v^{1/2} F_{J'} F_c`, with `K_J = K^{chi_J}`.
pub fn chevalley_expand(g: &GeneratorSymbol, n: u64, q: u64) -> Result<DoubleElement> {
    match g.kind {
        GeneratorKind::K => Ok(DoubleElement::k_power(q, g.arc.cell_multiplicities(n)?)),
        GeneratorKind::Kinv => Ok(DoubleElement::k_power(
            q,
            g.arc.cell_multiplicities(n)?.into_iter().map(|x| -x).collect(),
        )),
        GeneratorKind::E | GeneratorKind::F => {
            if !g.arc.is_strict() {
                return Err(Error::invalid(format!("{g} is not a strict interval generator")));
            }
            let (socle, len) = g.arc.segment(n)?;
            let cells: Vec<u64> = (0..len)
                .map(|k| ((socle as i64 - len as i64 + k as i64).rem_euclid(n as i64) + 1) as u64)
                .collect();
            let kind = g.kind;
            let mut acc = DoubleElement::chevalley(n, q, kind, cells[0])?;
            let up = Scalar::u_pow(q, 1);
            let down = Scalar::u_pow(q, -1);
            for c in &cells[1..] {
                let last = DoubleElement::chevalley(n, q, kind, *c)?;
                acc = if kind == GeneratorKind::E {
                    acc.mul(&last)?.scale(&up).sub(&last.mul(&acc)?.scale(&down))?
                } else {
                    last.mul(&acc)?.scale(&down).sub(&acc.mul(&last)?.scale(&up))?
                };
            }
            Ok(acc)
        }
    }
}

/// Rewrites a combination of interval words into `E-K-F` normal form at denominator `n`.
pub fn straighten(x: &GeneratorExpr, n: u64) -> Result<DoubleElement> {
    let q = x.q();
    let mut cache: HashMap<GeneratorSymbol, DoubleElement> = HashMap::new();
    let mut out = DoubleElement::zero(n, q);
    for (c, word) in x.terms() {
        let mut acc = DoubleElement::one(n, q).scale(c);
        for g in word {
            let expanded = match cache.get(g) {
                Some(e) => e.clone(),
                None => {
                    let e = chevalley_expand(g, n, q)?;
                    cache.insert(g.clone(), e.clone());
                    e
                }
            };
            acc = acc.mul(&expanded)?;
        }
        out = out.add(&acc)?;
    }
    Ok(out)
}

impl fmt::Display for DoubleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (w, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for i in &w.e {
                write!(f, " E{i}")?;
            }
            if w.k.iter().any(|x| *x != 0) {
                write!(f, " K{:?}", w.k)?;
            }
            for i in &w.f {
                write!(f, " F{i}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct NormalTermJson<'a> {
    e: &'a [u64],
    k: StepFunction,
    f: &'a [u64],
    coeff: &'a Scalar,
}

struct Terms<'a>(&'a DoubleElement);

impl Serialize for Terms<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.terms.len()))?;
        for (w, c) in &self.0.terms {
            seq.serialize_element(&NormalTermJson {
                e: &w.e,
                k: StepFunction::from_lattice(self.0.n, w.k.clone()),
                f: &w.f,
                coeff: c,
            })?;
        }
        seq.end()
    }
}

impl Serialize for DoubleElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("DoubleElement", 3)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("q", &self.q)?;
        st.serialize_field("terms", &Terms(self))?;
        st.end()
    }
}

#[derive(Deserialize)]
struct NormalTermIn {
    e: Vec<u64>,
    k: StepFunction,
    f: Vec<u64>,
    coeff: Scalar,
}

#[derive(Deserialize)]
struct DoubleElementIn {
    n: u64,
    q: u64,
    terms: Vec<NormalTermIn>,
}

impl<'de> Deserialize<'de> for DoubleElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = DoubleElementIn::deserialize(d)?;
        let mut out = DoubleElement::zero(raw.n, raw.q);
        for t in raw.terms {
            if t.e.iter().chain(&t.f).any(|i| *i == 0 || *i > raw.n) {
                return Err(D::Error::custom(format!("Chevalley index outside 1..={}", raw.n)));
            }
            if t.coeff.q() != raw.q {
                return Err(D::Error::custom("coefficient over a different q"));
            }
            let k = t.k.at_denominator(raw.n).map_err(D::Error::custom)?;
            out.add_term(NormalWord { e: t.e, k, f: t.f }, t.coeff);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ef_commutator_on_one_cell() {
        let q = 2;
        let e = DoubleElement::chevalley(2, q, GeneratorKind::E, 1).unwrap();
        let f = DoubleElement::chevalley(2, q, GeneratorKind::F, 1).unwrap();
        let fe = f.mul(&e).unwrap();
        let ef = e.mul(&f).unwrap();
        let diff = ef.sub(&fe).unwrap();
        let inv = Scalar::one(q).checked_div(&v_minus_v_inverse(q)).unwrap();
        let mut expected = DoubleElement::zero(2, q);
        expected.add_term(NormalWord { e: vec![], k: vec![1, 0], f: vec![] }, inv.clone());
        expected.add_term(NormalWord { e: vec![], k: vec![-1, 0], f: vec![] }, -inv);
        assert_eq!(diff, expected);
    }

    #[test]
    fn k_conjugation_of_e() {
        let q = 3;
        let e = DoubleElement::chevalley(3, q, GeneratorKind::E, 2).unwrap();
        let k = DoubleElement::k_power(q, vec![1, 0, 0]);
        let kinv = DoubleElement::k_power(q, vec![-1, 0, 0]);
        let conj = k.mul(&e).unwrap().mul(&kinv).unwrap();
        assert_eq!(conj, e.scale(&Scalar::v_pow(q, -1)));
    }

    #[test]
    fn multiplication_is_associative_on_mixed_words() {
        let q = 2;
        let n = 2;
        let gens: Vec<DoubleElement> = [
            (GeneratorKind::E, 1),
            (GeneratorKind::F, 1),
            (GeneratorKind::F, 2),
            (GeneratorKind::K, 2),
            (GeneratorKind::E, 2),
        ]
        .iter()
        .map(|(k, i)| DoubleElement::chevalley(n, q, *k, *i).unwrap())
        .collect();
        for a in &gens {
            for b in &gens {
                for c in &gens {
                    let l = a.mul(b).unwrap().mul(c).unwrap();
                    let r = a.mul(&b.mul(c).unwrap()).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
    }
}
