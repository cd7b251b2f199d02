//! Exact coefficient ring `Q[u]/(u^4 = q)` with `u = v^{1/2}`, and truncated
//! one-variable rational-function series over it.

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, parse_rational, prime_power, rational_pow, Rational};
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

/// Element `c0 + c1 u + c2 u^2 + c3 u^3` of `Q[u]/(u^4 - q)`.
///
/// Here `u^2 = v` and `v^2 = q`, so every Laurent monomial in `u` normalizes
/// into the basis `{1, u, u^2, u^3}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    q: u64,
    c: [Rational; 4],
}

/// Checks that `q` is a prime power.
pub fn check_prime_power(q: u64) -> Result<()> {
    prime_power(q).map(|_| ()).ok_or(Error::NotPrimePower(q))
}

impl Scalar {
    /// Builds a scalar from its four basis coefficients.
    pub fn new(q: u64, c: [Rational; 4]) -> Result<Self> {
        check_prime_power(q)?;
        Ok(Scalar { q, c })
    }

    pub(crate) fn from_parts(q: u64, c: [Rational; 4]) -> Self {
        Scalar { q, c }
    }

    pub fn zero(q: u64) -> Self {
        Scalar::from_parts(q, [Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero()])
    }

    pub fn one(q: u64) -> Self {
        Scalar::from_int(q, 1)
    }

    pub fn from_int(q: u64, k: i64) -> Self {
        Scalar::from_rational(q, int(k))
    }

    pub fn from_rational(q: u64, r: Rational) -> Self {
        Scalar::from_parts(q, [r, Rational::zero(), Rational::zero(), Rational::zero()])
    }

    /// `u^k = v^{k/2}` for any signed `k`.
    pub fn u_pow(q: u64, k: i64) -> Self {
        let slot = k.rem_euclid(4) as usize;
        let qpow = k.div_euclid(4);
        let mut c = [Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero()];
        c[slot] = rational_pow(&int(q as i64), qpow);
        Scalar::from_parts(q, c)
    }

    /// `v^k` for any signed `k`.
    pub fn v_pow(q: u64, k: i64) -> Self {
        Scalar::u_pow(q, 2 * k)
    }

    /// The prime power this scalar lives over.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Basis coefficients `(c0, c1, c2, c3)`.
    pub fn coeffs(&self) -> &[Rational; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Zero::is_zero)
    }

    /// Returns the rational value when the scalar lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.c[1..].iter().all(Zero::is_zero).then_some(&self.c[0])
    }

    fn same_q(&self, other: &Scalar) -> Result<()> {
        if self.q == other.q {
            Ok(())
        } else {
            Err(Error::MismatchedQ { left: self.q, right: other.q })
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.same_q(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.same_q(other)?;
        Ok(self.add_unchecked(&-other))
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.same_q(other)?;
        Ok(self.mul_unchecked(other))
    }

    /// Division by a unit.
    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.same_q(other)?;
        Ok(self.mul_unchecked(&other.inverse()?))
    }

    fn add_unchecked(&self, other: &Scalar) -> Scalar {
        let c = [
            &self.c[0] + &other.c[0],
            &self.c[1] + &other.c[1],
            &self.c[2] + &other.c[2],
            &self.c[3] + &other.c[3],
        ];
        Scalar::from_parts(self.q, c)
    }

    fn mul_unchecked(&self, other: &Scalar) -> Scalar {
        let q = int(self.q as i64);
        let mut c = [Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero()];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let prod = a * b;
                if i + j < 4 {
                    c[i + j] += prod;
                } else {
                    c[i + j - 4] += prod * &q;
                }
            }
        }
        Scalar::from_parts(self.q, c)
    }

    /// Multiplicative inverse, computed by solving the 4x4 system given by the
    /// multiplication-by-`self` matrix.
    pub fn inverse(&self) -> Result<Scalar> {
        let q = int(self.q as i64);
        // Column j of the matrix is self * u^j.
        let mut m = vec![vec![Rational::zero(); 5]; 4];
        for j in 0..4 {
            for (i, a) in self.c.iter().enumerate() {
                let k = i + j;
                if k < 4 {
                    m[k][j] += a;
                } else {
                    m[k - 4][j] += a * &q;
                }
            }
        }
        m[0][4] = Rational::one();
        for col in 0..4 {
            let pivot = (col..4).find(|&r| !m[r][col].is_zero()).ok_or(Error::NonUnit)?;
            m.swap(col, pivot);
            let inv = m[col][col].recip();
            for entry in m[col].iter_mut() {
                *entry *= &inv;
            }
            for r in 0..4 {
                if r != col && !m[r][col].is_zero() {
                    let factor = m[r][col].clone();
                    for k in 0..5 {
                        let delta = &factor * &m[col][k];
                        m[r][k] -= delta;
                    }
                }
            }
        }
        Ok(Scalar::from_parts(
            self.q,
            [m[0][4].clone(), m[1][4].clone(), m[2][4].clone(), m[3][4].clone()],
        ))
    }

    /// Integer power; negative exponents require a unit.
    pub fn pow(&self, exp: i64) -> Result<Scalar> {
        let base = if exp < 0 { self.inverse()? } else { self.clone() };
        let mut result = Scalar::one(self.q);
        for _ in 0..exp.unsigned_abs() {
            result = result.mul_unchecked(&base);
        }
        Ok(result)
    }

    /// Multiplies by the rational `r`.
    pub fn scale(&self, r: &Rational) -> Scalar {
        let c = [&self.c[0] * r, &self.c[1] * r, &self.c[2] * r, &self.c[3] * r];
        Scalar::from_parts(self.q, c)
    }

    /// Multiplies by `u^k`.
    pub fn shift_u(&self, k: i64) -> Scalar {
        self.mul_unchecked(&Scalar::u_pow(self.q, k))
    }
}

/// Quantum integer `[d]_v = (v^d - v^{-d}) / (v - v^{-1})`.
pub fn quantum_integer(q: u64, d: i64) -> Scalar {
    let num = Scalar::v_pow(q, d) - Scalar::v_pow(q, -d);
    let den = Scalar::v_pow(q, 1) - Scalar::v_pow(q, -1);
    num.checked_div(&den).expect("v - v^{-1} is a unit for q > 1")
}

/// The scalar `v - v^{-1}`.
pub fn v_minus_v_inverse(q: u64) -> Scalar {
    Scalar::v_pow(q, 1) - Scalar::v_pow(q, -1)
}

macro_rules! forward_binop {
    ($Trait:ident, $method:ident, $inner:ident) => {
        impl $Trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                assert_eq!(self.q, rhs.q, "scalar arithmetic across different q");
                self.$inner(rhs)
            }
        }
        impl $Trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $Trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $Trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

impl Scalar {
    fn sub_unchecked(&self, other: &Scalar) -> Scalar {
        self.add_unchecked(&-other)
    }
}

forward_binop!(Add, add, add_unchecked);
forward_binop!(Sub, sub, sub_unchecked);
forward_binop!(Mul, mul, mul_unchecked);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        let c = [-&self.c[0], -&self.c[1], -&self.c[2], -&self.c[3]];
        Scalar::from_parts(self.q, c)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        assert_eq!(self.q, rhs.q, "scalar arithmetic across different q");
        for (a, b) in self.c.iter_mut().zip(rhs.c.iter()) {
            *a += b;
        }
    }
}

impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self += &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        assert_eq!(self.q, rhs.q, "scalar arithmetic across different q");
        for (a, b) in self.c.iter_mut().zip(rhs.c.iter()) {
            *a -= b;
        }
    }
}

impl SubAssign<Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        *self -= &rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["", "u", "u^2", "u^3"];
        let mut parts = Vec::new();
        for (k, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let coeff = format_rational(a);
            parts.push(match (k, a.is_one()) {
                (0, _) => coeff,
                (_, true) => names[k].to_string(),
                _ => format!("({coeff}){}", names[k]),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ScalarJson {
    q: u64,
    c: [String; 4],
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ScalarJson {
            q: self.q,
            c: [
                format_rational(&self.c[0]),
                format_rational(&self.c[1]),
                format_rational(&self.c[2]),
                format_rational(&self.c[3]),
            ],
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = ScalarJson::deserialize(deserializer)?;
        let mut c = [Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero()];
        for (slot, text) in c.iter_mut().zip(raw.c.iter()) {
            *slot = parse_rational(text).map_err(serde::de::Error::custom)?;
        }
        Scalar::new(raw.q, c).map_err(serde::de::Error::custom)
    }
}

/// Truncated product of two power series given by coefficient vectors.
pub fn series_mul(a: &[Scalar], b: &[Scalar], order: usize, q: u64) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(q); order + 1];
    for (i, x) in a.iter().enumerate().take(order + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order + 1 - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Ratio of two one-variable polynomials with its power-series expansion at `z = 0`.
///
/// Coefficients are scalars so that substitutions such as `z -> v^{-2} z` stay
/// inside the same type.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunctionSeries {
    q: u64,
    numerator: Vec<Scalar>,
    denominator: Vec<Scalar>,
    expansion: Vec<Scalar>,
}

impl RationalFunctionSeries {
    /// Builds `numerator / denominator` and expands it up to `order`.
    pub fn new(q: u64, numerator: Vec<Scalar>, denominator: Vec<Scalar>, order: usize) -> Result<Self> {
        check_prime_power(q)?;
        if let Some(bad) = numerator.iter().chain(denominator.iter()).find(|s| s.q() != q) {
            return Err(Error::MismatchedQ { left: q, right: bad.q() });
        }
        match denominator.first() {
            Some(d0) if !d0.is_zero() => {}
            _ => return Err(Error::invalid("denominator must not vanish at z = 0")),
        }
        let mut series = RationalFunctionSeries {
            q,
            numerator,
            denominator,
            expansion: Vec::new(),
        };
        series.extend_to(order)?;
        Ok(series)
    }

    /// Convenience constructor from integer coefficient lists.
    pub fn from_integers(q: u64, numerator: &[i64], denominator: &[i64], order: usize) -> Result<Self> {
        let lift = |v: &[i64]| v.iter().map(|&k| Scalar::from_int(q, k)).collect();
        RationalFunctionSeries::new(q, lift(numerator), lift(denominator), order)
    }

    /// Extends the cached expansion so that coefficients up to `order` exist.
    pub fn extend_to(&mut self, order: usize) -> Result<()> {
        let inv = self.denominator[0].inverse()?;
        while self.expansion.len() <= order {
            let k = self.expansion.len();
            let mut acc = self.numerator.get(k).cloned().unwrap_or_else(|| Scalar::zero(self.q));
            for j in 1..=k.min(self.denominator.len().saturating_sub(1)) {
                acc -= &self.denominator[j] * &self.expansion[k - j];
            }
            self.expansion.push(acc * &inv);
        }
        Ok(())
    }

    /// Highest cached order.
    pub fn order(&self) -> usize {
        self.expansion.len() - 1
    }

    /// Coefficient of `z^k`, if within the cached order.
    pub fn coeff(&self, k: usize) -> Option<&Scalar> {
        self.expansion.get(k)
    }

    /// Cached coefficients `z^0 .. z^order`.
    pub fn coefficients(&self) -> &[Scalar] {
        &self.expansion
    }

    pub fn numerator(&self) -> &[Scalar] {
        &self.numerator
    }

    pub fn denominator(&self) -> &[Scalar] {
        &self.denominator
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Product of two rational functions, expanded to the smaller order.
    pub fn mul(&self, other: &RationalFunctionSeries) -> Result<RationalFunctionSeries> {
        if self.q != other.q {
            return Err(Error::MismatchedQ { left: self.q, right: other.q });
        }
        let order = self.order().min(other.order());
        let num = poly_mul(&self.numerator, &other.numerator, self.q);
        let den = poly_mul(&self.denominator, &other.denominator, self.q);
        RationalFunctionSeries::new(self.q, num, den, order)
    }

    /// Substitution `z -> c z`.
    pub fn rescale(&self, c: &Scalar) -> Result<RationalFunctionSeries> {
        let sub = |p: &[Scalar]| {
            let mut power = Scalar::one(self.q);
            p.iter()
                .map(|a| {
                    let out = a * &power;
                    power = &power * c;
                    out
                })
                .collect::<Vec<_>>()
        };
        RationalFunctionSeries::new(self.q, sub(&self.numerator), sub(&self.denominator), self.order())
    }

    /// Multiplication by the scalar `c`.
    pub fn scale(&self, c: &Scalar) -> Result<RationalFunctionSeries> {
        let num = self.numerator.iter().map(|a| a * c).collect();
        RationalFunctionSeries::new(self.q, num, self.denominator.clone(), self.order())
    }
}

/// Product of two polynomials given by coefficient vectors.
pub fn poly_mul(a: &[Scalar], b: &[Scalar], q: u64) -> Vec<Scalar> {
    if a.is_empty() || b.is_empty() {
        return vec![Scalar::zero(q)];
    }
    let mut out = vec![Scalar::zero(q); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn u_squared_is_v() {
        let u = Scalar::u_pow(5, 1);
        assert_eq!(&u * &u, Scalar::v_pow(5, 1));
        assert_eq!((&u * &u).coeffs()[2], rat(1, 1));
    }

    #[test]
    fn v_inverse_at_four() {
        let inv = Scalar::v_pow(4, -1);
        assert_eq!(inv.coeffs()[2], rat(1, 4));
        assert!(inv.coeffs()[0].is_zero());
    }

    #[test]
    fn difference_of_squares_at_nine() {
        let v = Scalar::v_pow(9, 1);
        let vi = Scalar::v_pow(9, -1);
        let prod = (&v - &vi) * (&v + &vi);
        assert_eq!(prod, Scalar::from_rational(9, rat(80, 9)));
    }

    #[test]
    fn quantum_integer_values() {
        assert!(quantum_integer(3, 0).is_zero());
        assert!(quantum_integer(3, 1).is_one());
        let two = quantum_integer(4, 2);
        assert_eq!(two.coeffs()[2], rat(5, 4));
        assert!(two.coeffs()[0].is_zero() && two.coeffs()[1].is_zero() && two.coeffs()[3].is_zero());
        assert_eq!(quantum_integer(2, -3), -quantum_integer(2, 3));
    }

    #[test]
    fn non_unit_detected_when_q_is_a_square() {
        // v - 2 vanishes at v = 2 when q = 4, so it has no inverse.
        let x = Scalar::v_pow(4, 1) - Scalar::from_int(4, 2);
        assert_eq!(x.inverse(), Err(Error::NonUnit));
        assert!(Scalar::v_pow(2, 1).inverse().is_ok());
    }

    #[test]
    fn mismatched_q_is_an_error() {
        let a = Scalar::one(2);
        let b = Scalar::one(3);
        assert!(matches!(a.checked_add(&b), Err(Error::MismatchedQ { .. })));
    }

    #[test]
    fn not_prime_power_rejected() {
        assert!(Scalar::new(6, Default::default()).is_err());
        assert!(Scalar::new(8, Default::default()).is_ok());
    }

    #[test]
    fn series_expansion_matches_long_division() {
        // 1 / (1 - 2z) = sum 2^k z^k
        let s = RationalFunctionSeries::from_integers(2, &[1], &[1, -2], 6).unwrap();
        for k in 0..=6 {
            assert_eq!(s.coeff(k).unwrap(), &Scalar::from_int(2, 1 << k));
        }
    }

    #[test]
    fn json_round_trip() {
        let x = Scalar::u_pow(3, -3) + Scalar::from_rational(3, rat(-2, 7));
        let text = serde_json::to_string(&x).unwrap();
        let back: Scalar = serde_json::from_str(&text).unwrap();
        assert_eq!(x, back);
    }
}
