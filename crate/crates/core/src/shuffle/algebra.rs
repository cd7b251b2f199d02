//! Truncated shuffle algebra with the braided operator `varpi^h`.
//!
//! An element of rank `r` is a finite sum of terms
//! `c * x^e * v_{l_1} (x) ... (x) v_{l_r}`, where `x^e` lies in
//! `Q[x^{+-1}][[x_1/x_2, ..., x_{r-1}/x_r]]`. Each term records, besides its
//! monomial, the exponents `m_1, ..., m_{r-1}` of the ratios `x_i/x_{i+1}` that
//! were produced by series expansions. The monomial divided by this ratio part
//! is the base monomial, a permutation of the unexpanded input exponents.
//! Truncation at order `N` keeps the terms with `m_1 + ... + m_{r-1} <= N`.
//!
//! A reduced word never crosses two strands twice, so every ratio factor created
//! along it stays of the form `x_p/x_q` with `p < q`. Such a factor contributes
//! `q - p >= 1` to the ratio order, and factors already present are never moved
//! closer together by a shuffle. Intermediate results are therefore truncated by
//! the number of ratio factors created so far, which is monotone and bounded by
//! the final ratio order.

use super::zeta::{zeta_series, SeriesKind, ZetaData};
use crate::coefficients::{check_prime_power, series_mul, RationalFunctionSeries, Scalar};
use crate::error::{Error, Result};
use crate::rational::{floor_i64, format_rational, parse_rational, to_i64, Rational};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// How the tensor labels `v_l` are indexed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum LabelMode {
    /// Labels `0, ..., n-1` of the level-`n` model.
    Cyclic { n: u64 },
    /// Labels in `Q cap [0, 1)` of the rational-circle model.
    Rational,
}

impl LabelMode {
    /// Degree period: `n` for the level-`n` model and `1` for the rational model.
    pub fn period(&self) -> Rational {
        match self {
            LabelMode::Cyclic { n } => Rational::from_integer((*n).into()),
            LabelMode::Rational => Rational::from_integer(1.into()),
        }
    }

    /// Checks that `label` is a valid label in this mode.
    pub fn check_label(&self, label: &Rational) -> Result<()> {
        let ok = match self {
            LabelMode::Cyclic { n } => to_i64(label).is_some_and(|k| k >= 0 && (k as u64) < *n),
            LabelMode::Rational => {
                *label >= Rational::from_integer(0.into()) && *label < Rational::from_integer(1.into())
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::invalid(format!("label {} is not valid in mode {self:?}", format_rational(label))))
        }
    }

    /// The image `x^{floor(d/p)} v_{d mod p}` of the rank-one generator of degree `d`,
    /// with `p` the period. Returns the exponent and the label.
    pub fn dictionary(&self, degree: &Rational) -> Result<(i64, Rational)> {
        if let LabelMode::Cyclic { .. } = self {
            if !degree.is_integer() {
                return Err(Error::invalid("level-n degrees are integers"));
            }
        }
        let period = self.period();
        let exponent = floor_i64(&(degree / &period));
        let label = degree - &period * Rational::from_integer(exponent.into());
        Ok((exponent, label))
    }
}

/// Identity of a term inside an element: monomial, ratio exponents and labels.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TermKey {
    pub exponents: Vec<i64>,
    pub ratio: Vec<u32>,
    pub labels: Vec<Rational>,
}

impl TermKey {
    pub fn rank(&self) -> usize {
        self.exponents.len()
    }

    /// Ratio order `m_1 + ... + m_{r-1}`.
    pub fn order(&self) -> u32 {
        self.ratio.iter().sum()
    }

    /// Exponents of the base monomial: the monomial with the ratio part removed.
    pub fn base(&self) -> Vec<i64> {
        let r = self.rank();
        (0..r)
            .map(|i| {
                let here = if i + 1 < r { self.ratio[i] as i64 } else { 0 };
                let before = if i > 0 { self.ratio[i - 1] as i64 } else { 0 };
                self.exponents[i] - here + before
            })
            .collect()
    }

    fn concat(&self, other: &TermKey) -> TermKey {
        let mut ratio = self.ratio.clone();
        if self.rank() > 0 && other.rank() > 0 {
            ratio.push(0);
        }
        ratio.extend_from_slice(&other.ratio);
        TermKey {
            exponents: [self.exponents.clone(), other.exponents.clone()].concat(),
            ratio,
            labels: [self.labels.clone(), other.labels.clone()].concat(),
        }
    }
}

/// One term `coefficient * x^exponents * v_labels`, with the ratio-order grading.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShuffleTerm {
    pub exponents: Vec<i64>,
    pub ratio: Vec<u32>,
    #[serde(with = "rational_strings")]
    pub labels: Vec<Rational>,
    pub coefficient: Scalar,
}

impl ShuffleTerm {
    pub fn rank(&self) -> usize {
        self.exponents.len()
    }

    /// Ratio order of the term.
    pub fn order(&self) -> u32 {
        self.ratio.iter().sum()
    }
}

mod rational_strings {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        v.iter().map(format_rational).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|t| parse_rational(t).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// A finite sum of terms of a fixed rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShuffleElement {
    q: u64,
    mode: LabelMode,
    rank: usize,
    terms: BTreeMap<TermKey, Scalar>,
}

#[derive(Serialize, Deserialize)]
struct ShuffleElementJson {
    q: u64,
    mode: LabelMode,
    rank: usize,
    terms: Vec<ShuffleTerm>,
}

impl Serialize for ShuffleElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ShuffleElementJson {
            q: self.q,
            mode: self.mode,
            rank: self.rank,
            terms: self.terms().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ShuffleElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ShuffleElementJson::deserialize(d)?;
        let mut out = ShuffleElement::zero(raw.q, raw.mode, raw.rank).map_err(serde::de::Error::custom)?;
        for t in raw.terms {
            out.add_term(t).map_err(serde::de::Error::custom)?;
        }
        Ok(out)
    }
}

impl ShuffleElement {
    /// The zero element of rank `rank`.
    pub fn zero(q: u64, mode: LabelMode, rank: usize) -> Result<Self> {
        check_prime_power(q)?;
        if let LabelMode::Cyclic { n: 0 } = mode {
            return Err(Error::invalid("level-n labels need n >= 1"));
        }
        Ok(ShuffleElement { q, mode, rank, terms: BTreeMap::new() })
    }

    /// The unit: the rank-zero element `1`.
    pub fn unit(q: u64, mode: LabelMode) -> Result<Self> {
        let mut out = ShuffleElement::zero(q, mode, 0)?;
        out.terms.insert(
            TermKey { exponents: vec![], ratio: vec![], labels: vec![] },
            Scalar::one(q),
        );
        Ok(out)
    }

    /// The single term `x_1^{d_1} ... x_r^{d_r} v_{l_1} (x) ... (x) v_{l_r}`.
    pub fn monomial(q: u64, mode: LabelMode, exponents: Vec<i64>, labels: Vec<Rational>) -> Result<Self> {
        let rank = exponents.len();
        let mut out = ShuffleElement::zero(q, mode, rank)?;
        out.add_term(ShuffleTerm {
            exponents,
            ratio: vec![0; rank.saturating_sub(1)],
            labels,
            coefficient: Scalar::one(q),
        })?;
        Ok(out)
    }

    /// The image of the rank-one generator of degree `degree` under the
    /// dictionary `x^{floor(d/p)} v_{d mod p}`.
    pub fn generator(q: u64, mode: LabelMode, degree: &Rational) -> Result<Self> {
        let (exponent, label) = mode.dictionary(degree)?;
        ShuffleElement::monomial(q, mode, vec![exponent], vec![label])
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn mode(&self) -> LabelMode {
        self.mode
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = ShuffleTerm> + '_ {
        self.terms.iter().map(|(k, c)| ShuffleTerm {
            exponents: k.exponents.clone(),
            ratio: k.ratio.clone(),
            labels: k.labels.clone(),
            coefficient: c.clone(),
        })
    }

    /// Coefficient of a given term, zero if absent.
    pub fn coefficient(&self, key: &TermKey) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_else(|| Scalar::zero(self.q))
    }

    /// Highest ratio order among the terms.
    pub fn max_order(&self) -> u32 {
        self.terms.keys().map(TermKey::order).max().unwrap_or(0)
    }

    /// Adds one term after validating its shape and labels.
    pub fn add_term(&mut self, term: ShuffleTerm) -> Result<()> {
        if term.exponents.len() != self.rank
            || term.labels.len() != self.rank
            || term.ratio.len() != self.rank.saturating_sub(1)
        {
            return Err(Error::invalid(format!("term does not have rank {}", self.rank)));
        }
        if term.coefficient.q() != self.q {
            return Err(Error::MismatchedQ { left: self.q, right: term.coefficient.q() });
        }
        for l in &term.labels {
            self.mode.check_label(l)?;
        }
        let key = TermKey { exponents: term.exponents, ratio: term.ratio, labels: term.labels };
        accumulate(&mut self.terms, key, term.coefficient);
        Ok(())
    }

    fn check_compatible(&self, other: &ShuffleElement) -> Result<()> {
        if self.q != other.q {
            return Err(Error::MismatchedQ { left: self.q, right: other.q });
        }
        if self.mode != other.mode {
            return Err(Error::invalid(format!(
                "mixed indexing modes {:?} and {:?}",
                self.mode, other.mode
            )));
        }
        Ok(())
    }

    /// Sum of two elements of the same rank.
    pub fn add(&self, other: &ShuffleElement) -> Result<ShuffleElement> {
        self.check_compatible(other)?;
        if self.rank != other.rank {
            return Err(Error::invalid("cannot add elements of different ranks"));
        }
        let mut out = self.clone();
        for (k, c) in &other.terms {
            accumulate(&mut out.terms, k.clone(), c.clone());
        }
        Ok(out)
    }

    /// Multiplication by a scalar.
    pub fn scale(&self, c: &Scalar) -> ShuffleElement {
        let mut out = ShuffleElement { terms: BTreeMap::new(), ..self.clone() };
        for (k, x) in &self.terms {
            accumulate(&mut out.terms, k.clone(), x * c);
        }
        out
    }

    /// Drops the terms of ratio order above `order`.
    pub fn truncate(&self, order: u32) -> ShuffleElement {
        ShuffleElement {
            terms: self.terms.iter().filter(|(k, _)| k.order() <= order).map(|(k, c)| (k.clone(), c.clone())).collect(),
            ..self.clone()
        }
    }

    /// Tensor product `self (x) other`, placing `other` in the last slots.
    pub fn concat(&self, other: &ShuffleElement) -> Result<ShuffleElement> {
        self.check_compatible(other)?;
        let mut out = ShuffleElement::zero(self.q, self.mode, self.rank + other.rank)?;
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                accumulate(&mut out.terms, ka.concat(kb), ca * cb);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for ShuffleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (slot, e) in k.exponents.iter().enumerate() {
                write!(f, " x{}^{e}", slot + 1)?;
            }
            let labels: Vec<String> = k.labels.iter().map(format_rational).collect();
            write!(f, " v[{}]", labels.join(","))?;
        }
        Ok(())
    }
}

fn accumulate<K: Ord>(map: &mut BTreeMap<K, Scalar>, key: K, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += &c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// The operator `varpi^h` for a kernel `h`, with its three coefficient series
/// expanded to a fixed truncation order.
#[derive(Clone, Debug, PartialEq)]
pub struct Varpi {
    q: u64,
    order: u32,
    kernel: RationalFunctionSeries,
    equal: Vec<Scalar>,
    swap: Vec<Scalar>,
    stay: Vec<Scalar>,
}

impl Varpi {
    /// Builds `varpi^h` truncated at ratio order `order`.
    ///
    /// For equal labels the coefficient series is `h(z)`. For distinct labels the
    /// label-swapping term carries `h(z) v^{-1} (1 - z)/(1 - v^{-2} z)` and the
    /// label-preserving term carries `h(z) (1 - v^{-2})/(1 - v^{-2} z)`, where
    /// `z = x_1/x_2`.
    pub fn new(kernel: &RationalFunctionSeries, order: u32) -> Result<Self> {
        let q = kernel.q();
        let mut kernel = kernel.clone();
        kernel.extend_to(order as usize)?;
        let v_minus_two = Scalar::v_pow(q, -2);
        let one = Scalar::one(q);
        let swap_factor = RationalFunctionSeries::new(
            q,
            vec![Scalar::v_pow(q, -1), -Scalar::v_pow(q, -1)],
            vec![one.clone(), -v_minus_two.clone()],
            order as usize,
        )?;
        let stay_factor = RationalFunctionSeries::new(
            q,
            vec![&one - &v_minus_two],
            vec![one, -v_minus_two],
            order as usize,
        )?;
        let n = order as usize;
        let equal = kernel.coefficients()[..=n].to_vec();
        Ok(Varpi {
            q,
            order,
            swap: series_mul(&equal, swap_factor.coefficients(), n, q),
            stay: series_mul(&equal, stay_factor.coefficients(), n, q),
            equal,
            kernel,
        })
    }

    /// `varpi^{h_X}` for the kernel `h_X` of the given curve.
    pub fn for_curve(zd: &ZetaData, order: u32) -> Result<Self> {
        Varpi::new(&zeta_series(zd, SeriesKind::KernelH, order as usize)?, order)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn kernel(&self) -> &RationalFunctionSeries {
        &self.kernel
    }

    /// Coefficients of `h(z)` up to the truncation order.
    pub fn equal_label_series(&self) -> &[Scalar] {
        &self.equal
    }

    /// Coefficients of the label-swapping series.
    pub fn swap_series(&self) -> &[Scalar] {
        &self.swap
    }

    /// Coefficients of the label-preserving series for distinct labels.
    pub fn stay_series(&self) -> &[Scalar] {
        &self.stay
    }

    /// Applies `varpi^h` on the slots `slot, slot + 1` to every term of `state`.
    /// `state` carries, per term, the number of ratio factors created so far.
    fn apply_slot(&self, slot: usize, state: &BTreeMap<(u32, TermKey), Scalar>) -> Result<BTreeMap<(u32, TermKey), Scalar>> {
        let mut out = BTreeMap::new();
        for ((used, key), coef) in state {
            let r = key.rank();
            if slot + 1 >= r {
                return Err(Error::invalid(format!("slot {slot} is out of range for rank {r}")));
            }
            let ratio_at = |j: Option<usize>| -> i64 {
                j.filter(|&j| j + 1 < r).map(|j| key.ratio[j] as i64).unwrap_or(0)
            };
            let inherited = ratio_at(slot.checked_sub(1)) + ratio_at(Some(slot + 1)) - ratio_at(Some(slot));
            let (d1, d2) = (key.exponents[slot], key.exponents[slot + 1]);
            let (l1, l2) = (&key.labels[slot], &key.labels[slot + 1]);
            let budget = self.order.saturating_sub(*used);
            // (series, labels swapped, extra ratio factor)
            let parts: Vec<(&[Scalar], bool, u32)> = match l1.cmp(l2) {
                std::cmp::Ordering::Equal => vec![(&self.equal, false, 0)],
                std::cmp::Ordering::Greater => vec![(&self.swap, true, 0), (&self.stay, false, 0)],
                std::cmp::Ordering::Less => vec![(&self.swap, true, 0), (&self.stay, false, 1)],
            };
            for (series, swap_labels, shift) in parts {
                for (k, c) in series.iter().enumerate() {
                    let power = k as u32 + shift;
                    if power > budget {
                        break;
                    }
                    if c.is_zero() {
                        continue;
                    }
                    let new_ratio = inherited + power as i64;
                    if new_ratio < 0 {
                        return Err(Error::invalid(
                            "the operator re-crosses two strands; use a reduced word",
                        ));
                    }
                    let mut next = key.clone();
                    next.exponents[slot] = d2 + power as i64;
                    next.exponents[slot + 1] = d1 - power as i64;
                    next.ratio[slot] = new_ratio as u32;
                    if swap_labels {
                        next.labels.swap(slot, slot + 1);
                    }
                    accumulate(&mut out, (used + power, next), coef * c);
                }
            }
        }
        Ok(out)
    }

    /// Applies `varpi_{i_1} o varpi_{i_2} o ... o varpi_{i_l}` for the word
    /// `[i_1, ..., i_l]` of 0-based slots, the last letter acting first.
    ///
    /// The result is exact in ratio order up to the truncation order, provided
    /// the word is reduced.
    pub fn apply_word(&self, word: &[usize], x: &ShuffleElement) -> Result<ShuffleElement> {
        if x.q != self.q {
            return Err(Error::MismatchedQ { left: self.q, right: x.q });
        }
        let mut state: BTreeMap<(u32, TermKey), Scalar> = x
            .terms
            .iter()
            .filter(|(k, _)| k.order() <= self.order)
            .map(|(k, c)| ((k.order(), k.clone()), c.clone()))
            .collect();
        for &slot in word.iter().rev() {
            state = self.apply_slot(slot, &state)?;
        }
        let mut out = ShuffleElement { terms: BTreeMap::new(), ..x.clone() };
        for ((_, key), c) in state {
            if key.order() <= self.order {
                accumulate(&mut out.terms, key, c);
            }
        }
        Ok(out)
    }

    /// `varpi^h` acting on the slots `slot, slot + 1`.
    pub fn apply(&self, slot: usize, x: &ShuffleElement) -> Result<ShuffleElement> {
        self.apply_word(&[slot], x)
    }

    /// `varpi_sigma` for the permutation `sigma` in one-line notation
    /// (`sigma[i]` is the image of `i`, 0-based), along a reduced word.
    pub fn apply_permutation(&self, sigma: &[usize], x: &ShuffleElement) -> Result<ShuffleElement> {
        self.apply_word(&reduced_word(sigma)?, x)
    }

    /// The shuffle product `a * b`: the sum of `varpi_sigma(a (x) b)` over the
    /// `(r, s)`-shuffles `sigma`.
    pub fn shuffle_product(&self, a: &ShuffleElement, b: &ShuffleElement) -> Result<ShuffleElement> {
        let ab = a.concat(b)?;
        self.sum_over(&shuffles(a.rank, b.rank), &ab)
    }

    /// The symmetrization: the sum of `varpi_sigma(x)` over all permutations of
    /// the slots.
    pub fn symmetrize(&self, x: &ShuffleElement) -> Result<ShuffleElement> {
        self.sum_over(&permutations(x.rank), x)
    }

    fn sum_over(&self, perms: &[Vec<usize>], x: &ShuffleElement) -> Result<ShuffleElement> {
        let parts: Vec<ShuffleElement> = perms
            .par_iter()
            .map(|sigma| self.apply_permutation(sigma, x))
            .collect::<Result<_>>()?;
        let mut out = ShuffleElement { terms: BTreeMap::new(), ..x.clone() };
        for p in parts {
            for (k, c) in p.terms {
                accumulate(&mut out.terms, k, c);
            }
        }
        Ok(out)
    }

    /// Checks `varpi_1 varpi_2 varpi_1 = varpi_2 varpi_1 varpi_2` on every rank-3
    /// sample, up to the truncation order.
    pub fn braid_check(&self, samples: &[ShuffleElement]) -> Result<bool> {
        for x in samples {
            if x.rank != 3 {
                return Err(Error::invalid("braid samples must have rank 3"));
            }
            if self.apply_word(&[0, 1, 0], x)? != self.apply_word(&[1, 0, 1], x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The `(r, s)`-shuffles in one-line notation, in lexicographic order.
pub fn shuffles(r: usize, s: usize) -> Vec<Vec<usize>> {
    // A shuffle is determined by the positions of the first block.
    fn choose(start: usize, total: usize, left: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(acc.clone());
            return;
        }
        for p in start..=total - left {
            acc.push(p);
            choose(p + 1, total, left - 1, acc, out);
            acc.pop();
        }
    }
    let total = r + s;
    let mut firsts = Vec::new();
    choose(0, total, r, &mut Vec::new(), &mut firsts);
    firsts
        .into_iter()
        .map(|first| {
            let second: Vec<usize> = (0..total).filter(|p| !first.contains(p)).collect();
            first.into_iter().chain(second).collect()
        })
        .collect()
}

/// All permutations of `0..r` in lexicographic order.
pub fn permutations(r: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; r], &mut out);
    out
}

fn check_permutation(sigma: &[usize]) -> Result<()> {
    let mut seen = vec![false; sigma.len()];
    for &s in sigma {
        if s >= sigma.len() || seen[s] {
            return Err(Error::invalid(format!("{sigma:?} is not a permutation")));
        }
        seen[s] = true;
    }
    Ok(())
}

/// A reduced word `[i_1, ..., i_l]` with `sigma = s_{i_1} ... s_{i_l}`, where
/// `s_i` exchanges `i` and `i + 1` (0-based) and permutations compose as maps.
pub fn reduced_word(sigma: &[usize]) -> Result<Vec<usize>> {
    check_permutation(sigma)?;
    let mut w = sigma.to_vec();
    let mut word = Vec::new();
    // Peeling a right descent: w = (w s_i) s_i with shorter w s_i.
    while let Some(i) = (0..w.len().saturating_sub(1)).rev().find(|&i| w[i] > w[i + 1]) {
        w.swap(i, i + 1);
        word.push(i);
    }
    word.reverse();
    Ok(word)
}

/// Every reduced word of `sigma`.
pub fn all_reduced_words(sigma: &[usize]) -> Result<Vec<Vec<usize>>> {
    check_permutation(sigma)?;
    fn go(w: &mut Vec<usize>, suffix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let descents: Vec<usize> = (0..w.len().saturating_sub(1)).filter(|&i| w[i] > w[i + 1]).collect();
        if descents.is_empty() {
            out.push(suffix.iter().rev().copied().collect());
            return;
        }
        for i in descents {
            w.swap(i, i + 1);
            suffix.push(i);
            go(w, suffix, out);
            suffix.pop();
            w.swap(i, i + 1);
        }
    }
    let mut out = Vec::new();
    go(&mut sigma.to_vec(), &mut Vec::new(), &mut out);
    out.sort();
    Ok(out)
}

/// The permutation `s_{i_1} ... s_{i_l}` in one-line notation.
pub fn word_to_permutation(word: &[usize], r: usize) -> Vec<usize> {
    let mut sigma: Vec<usize> = (0..r).collect();
    for &i in word.iter().rev() {
        // Left multiplication by s_i relabels the values i and i + 1.
        for s in sigma.iter_mut() {
            if *s == i {
                *s = i + 1;
            } else if *s == i + 1 {
                *s = i;
            }
        }
    }
    sigma
}

/// Parses a rank-one term written as `x^d v:l`, for instance `x^0 v:1/2`.
pub fn parse_rank_one(q: u64, mode: LabelMode, text: &str) -> Result<ShuffleElement> {
    let mut exponent = None;
    let mut label = None;
    for token in text.split_whitespace() {
        if let Some(e) = token.strip_prefix("x^") {
            exponent = Some(e.parse::<i64>().map_err(|_| Error::parse(format!("bad exponent in {text:?}")))?);
        } else if let Some(l) = token.strip_prefix("v:") {
            label = Some(parse_rational(l)?);
        } else {
            return Err(Error::parse(format!("unexpected token {token:?} in {text:?}")));
        }
    }
    match (exponent, label) {
        (Some(e), Some(l)) => ShuffleElement::monomial(q, mode, vec![e], vec![l]),
        _ => Err(Error::parse(format!("expected `x^d v:l`, got {text:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    use crate::coefficients::RationalFunctionSeries;

    #[test]
    fn shuffle_counts() {
        assert_eq!(shuffles(1, 1), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(shuffles(2, 1).len(), 3);
        assert_eq!(shuffles(2, 2).len(), 6);
        assert_eq!(shuffles(0, 2), vec![vec![0, 1]]);
    }

    #[test]
    fn reduced_words_compose_back() {
        for sigma in permutations(4) {
            let word = reduced_word(&sigma).unwrap();
            assert_eq!(word_to_permutation(&word, 4), sigma);
            for w in all_reduced_words(&sigma).unwrap() {
                assert_eq!(w.len(), word.len());
                assert_eq!(word_to_permutation(&w, 4), sigma);
            }
        }
        assert_eq!(all_reduced_words(&[2, 1, 0]).unwrap(), vec![vec![0, 1, 0], vec![1, 0, 1]]);
    }

    #[test]
    fn base_undoes_the_ratio_part() {
        let key = TermKey { exponents: vec![3, -1, 0], ratio: vec![2, 1], labels: vec![] };
        assert_eq!(key.base(), vec![1, 0, 1]);
    }

    fn rank_three_samples() -> Vec<ShuffleElement> {
        let mut out = Vec::new();
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    let labels = vec![Rational::from_integer(a.into()), Rational::from_integer(b.into()), Rational::from_integer(c.into())];
                    out.push(ShuffleElement::monomial(2, LabelMode::Cyclic { n: 2 }, vec![1, 0, -1], labels).unwrap());
                }
            }
        }
        out
    }

    #[test]
    fn braid_check_detects_a_tampered_operator() {
        let h = RationalFunctionSeries::from_integers(2, &[2, -1], &[1, -2], 3).unwrap();
        let varpi = Varpi::new(&h, 3).unwrap();
        assert!(varpi.braid_check(&rank_three_samples()).unwrap());
        let mut doubled = varpi.clone();
        doubled.stay = doubled.stay.iter().map(|c| c * &Scalar::from_int(2, 2)).collect();
        assert!(!doubled.braid_check(&rank_three_samples()).unwrap());
    }

    #[test]
    fn dictionary_examples() {
        let mode = LabelMode::Cyclic { n: 3 };
        assert_eq!(mode.dictionary(&Rational::from_integer((-1).into())).unwrap(), (-1, Rational::from_integer(2.into())));
        let (e, l) = LabelMode::Rational.dictionary(&crate::rational::rat(7, 2)).unwrap();
        assert_eq!((e, l), (3, crate::rational::rat(1, 2)));
    }
}
