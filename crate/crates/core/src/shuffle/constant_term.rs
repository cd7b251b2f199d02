//! The rank-two constant term of a product of two degree-one generators.
//!
//! For generators of degrees `d_1, d_2` the constant term is
//!
//! * `1_{d_1} (x) 1_{d_2} + v^{2-2g} sum_s xi_s gamma^s 1_{d_2} (x) 1_{d_1}` when `d_2 - d_1` is a
//!   multiple of the period,
//! * `1_{d_1} (x) 1_{d_2} + v^{2-2g} sum_s v^{-1} xi°_s gamma^s 1_{d_2} (x) 1_{d_1}
//!   + v^{2-2g} sum_s (xi_s - q^{-1} xi°_s) gamma^s 1_{d_2 + t} (x) 1_{d_1 - t}` otherwise,
//!   with `t = (d_1 - d_2) mod period`,
//!
//! where `gamma^s` raises the first degree and lowers the second by `s` periods.
//! Both sides are read through the dictionary `1_d -> x^{floor(d/p)} v_{d mod p}`.

use super::algebra::{LabelMode, ShuffleElement, ShuffleTerm};
use super::zeta::{zeta_series, SeriesKind, ZetaData};
use crate::coefficients::Scalar;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// The closed-form constant term, truncated at ratio order `order`.
pub fn constant_term_rank2(
    d1: &Rational,
    d2: &Rational,
    mode: LabelMode,
    zd: &ZetaData,
    order: u32,
) -> Result<ShuffleElement> {
    let q = zd.q();
    let n = order as usize;
    let xi = zeta_series(zd, SeriesKind::Xi, n)?;
    let xi_circ = zeta_series(zd, SeriesKind::XiCirc, n)?;
    let prefactor = Scalar::v_pow(q, 2 - 2 * zd.genus() as i64);
    let period = mode.period();
    let (e1, _) = mode.dictionary(d1)?;
    let (e2, _) = mode.dictionary(d2)?;

    let mut out = ShuffleElement::zero(q, mode, 2)?;
    // The identity term 1_{d_1} (x) 1_{d_2}.
    out.add_term(term(q, mode, d1, d2, &Scalar::one(q), e1, e2)?)?;

    let gap = positive_remainder(&(d1 - d2), &period);
    let step = |s: usize| Rational::from_integer((s as i64).into()) * &period;
    for s in 0..=n {
        if gap == Rational::from_integer(0.into()) {
            let c = &prefactor * &xi.coefficients()[s];
            out.add_term(term(q, mode, &(d2 + step(s)), &(d1 - step(s)), &c, e2, e1)?)?;
        } else {
            let c = &prefactor * &Scalar::v_pow(q, -1) * &xi_circ.coefficients()[s];
            out.add_term(term(q, mode, &(d2 + step(s)), &(d1 - step(s)), &c, e2, e1)?)?;
            let c = &prefactor
                * &(&xi.coefficients()[s] - &(&Scalar::v_pow(q, -2) * &xi_circ.coefficients()[s]));
            out.add_term(term(q, mode, &(d2 + step(s) + &gap), &(d1 - step(s) - &gap), &c, e2, e1)?)?;
        }
    }
    Ok(out.truncate(order))
}

fn positive_remainder(x: &Rational, period: &Rational) -> Rational {
    let k = (x / period).floor();
    x - period * k
}

/// The term `c 1_{a} (x) 1_{b}`, with its ratio order measured against the base
/// monomial `x_1^{b1} x_2^{b2}`.
fn term(q: u64, mode: LabelMode, a: &Rational, b: &Rational, c: &Scalar, b1: i64, b2: i64) -> Result<ShuffleTerm> {
    let (ea, la) = mode.dictionary(a)?;
    let (eb, lb) = mode.dictionary(b)?;
    let ratio = ea - b1;
    if ratio < 0 || eb - b2 != -ratio {
        return Err(Error::invalid("constant-term exponents are not a ratio expansion of the base"));
    }
    debug_assert_eq!(c.q(), q);
    Ok(ShuffleTerm {
        exponents: vec![ea, eb],
        ratio: vec![ratio as u32],
        labels: vec![la, lb],
        coefficient: c.clone(),
    })
}
