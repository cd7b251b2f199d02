//! Arbitrary-precision rationals and the small number-theoretic helpers used
//! throughout the crate.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number.
pub type Rational = num_rational::BigRational;

/// Builds the rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds the integer `k` as a rational.
pub fn int(k: i64) -> Rational {
    Rational::from_integer(BigInt::from(k))
}

/// Parses `"p/q"`, `"p"` or a decimal-free signed integer into a rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::parse(format!("bad rational '{text}'")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::parse(format!("bad rational '{text}'")))?;
    if den.is_zero() {
        return Err(Error::parse(format!("zero denominator in '{text}'")));
    }
    Ok(Rational::new(num, den))
}

/// Canonical `"p/q"` (or `"p"`) rendering used in every JSON payload.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Fractional part `{x} = x - floor(x)`, in `[0, 1)`.
pub fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

/// Floor of a rational as `i64`.
pub fn floor_i64(x: &Rational) -> i64 {
    x.floor()
        .to_integer()
        .to_i64()
        .expect("floor does not fit in i64")
}

/// Denominator of a reduced rational as `u64`.
pub fn denom_u64(x: &Rational) -> u64 {
    x.denom().abs().to_u64().expect("denominator does not fit in u64")
}

/// Converts an integral rational to `i64`.
pub fn to_i64(x: &Rational) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

/// Least common multiple of two positive integers.
pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Factorizes `q = p^k` when `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            break;
        }
        p += 1;
    }
    if p * p > q {
        return Some((q, 1));
    }
    let mut rest = q;
    let mut k = 0;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

/// `base^exp` as a rational, for any signed exponent.
pub fn rational_pow(base: &Rational, exp: i64) -> Rational {
    if exp >= 0 {
        num_traits::pow(base.clone(), exp as usize)
    } else {
        num_traits::pow(base.recip(), (-exp) as usize)
    }
}

/// Absolute value helper that keeps call sites short.
pub fn abs(x: &Rational) -> Rational {
    x.abs()
}
