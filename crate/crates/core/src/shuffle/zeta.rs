//! Zeta functions of curves over F_q given by their Weil numerator, and the
//! series built from them: the `xi` and `xi_circ` series and the kernel `h_X`.

use crate::coefficients::{check_prime_power, RationalFunctionSeries, Scalar};
use crate::error::{Error, Result};
use crate::rational::Rational;
use serde::{Deserialize, Serialize};

/// Genus, field size and Weil numerator `P(z)` of a curve.
///
/// The zeta function is `zeta_X(z) = P(z) / ((1 - z)(1 - q z))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaData {
    g: u32,
    q: u64,
    numerator: Vec<i64>,
}

/// Which series [`zeta_series`] expands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesKind {
    /// `zeta_X(z)`.
    Zeta,
    /// `zeta_X(z) / zeta_X(v^{-2} z)`.
    Xi,
    /// `zeta_X(z) / zeta_X(v^{-2} z) * (1 - z) / (1 - v^{-2} z)`.
    XiCirc,
    /// `v^{2(1-g)} zeta_X(z) / zeta_X(v^{-2} z)`.
    KernelH,
}

impl SeriesKind {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "zeta" => Ok(SeriesKind::Zeta),
            "xi" => Ok(SeriesKind::Xi),
            "xi-circ" | "xi_circ" => Ok(SeriesKind::XiCirc),
            "kernel-h" | "kernel_h" | "h" => Ok(SeriesKind::KernelH),
            other => Err(Error::parse(format!("unknown series {other:?}"))),
        }
    }
}

impl ZetaData {
    /// Curve of genus `g` over F_q with Weil numerator `numerator`, listed from
    /// the constant coefficient up. An empty list stands for `P = 1`.
    pub fn new(g: u32, q: u64, numerator: Vec<i64>) -> Result<Self> {
        check_prime_power(q)?;
        let numerator = if numerator.is_empty() { vec![1] } else { numerator };
        if numerator[0] != 1 {
            return Err(Error::invalid("the Weil numerator must satisfy P(0) = 1"));
        }
        if numerator.len() != 2 * g as usize + 1 {
            return Err(Error::invalid(format!(
                "a genus {g} Weil numerator has degree {}, got {} coefficients",
                2 * g,
                numerator.len()
            )));
        }
        Ok(ZetaData { g, q, numerator })
    }

    /// The projective line over F_q.
    pub fn projective_line(q: u64) -> Result<Self> {
        ZetaData::new(0, q, vec![1])
    }

    /// Genus one curve with `P(z) = 1 - a z + q z^2`.
    pub fn elliptic(q: u64, trace: i64) -> Result<Self> {
        ZetaData::new(1, q, vec![1, -trace, q as i64])
    }

    pub fn genus(&self) -> u32 {
        self.g
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn numerator(&self) -> &[i64] {
        &self.numerator
    }

    /// Coefficient pairs violating `P(z) = q^g z^{2g} P(1/(q z))`, as
    /// `(i, a_i, a_{2g-i})`. Empty for the numerator of an actual curve.
    pub fn functional_equation_violations(&self) -> Vec<(usize, i64, i64)> {
        let top = 2 * self.g as usize;
        let q = Rational::from_integer(self.q.into());
        (0..=top)
            .filter(|&i| {
                let scale = crate::rational::rational_pow(&q, self.g as i64 - i as i64);
                Rational::from_integer(self.numerator[top - i].into())
                    != scale * Rational::from_integer(self.numerator[i].into())
            })
            .map(|i| (i, self.numerator[i], self.numerator[top - i]))
            .collect()
    }

    /// Number of F_{q^k}-rational points, `q^k + 1 - sum_i alpha_i^k`, for
    /// `k = 1..=up_to`.
    pub fn rational_point_counts(&self, up_to: usize) -> Vec<i64> {
        let power_sums = self.weil_power_sums(up_to);
        (1..=up_to)
            .map(|k| (self.q as i64).pow(k as u32) + 1 - power_sums[k - 1])
            .collect()
    }

    /// Power sums `p_k = sum_i alpha_i^k` of the Weil numbers from Newton's
    /// identities applied to `P(z) = prod_i (1 - alpha_i z)`.
    fn weil_power_sums(&self, up_to: usize) -> Vec<i64> {
        let elementary = |j: usize| -> i64 {
            let a = self.numerator.get(j).copied().unwrap_or(0);
            if j % 2 == 0 {
                a
            } else {
                -a
            }
        };
        let mut p: Vec<i64> = Vec::with_capacity(up_to);
        for k in 1..=up_to {
            let mut acc = 0i64;
            for j in 1..k {
                let sign = if (j - 1) % 2 == 0 { 1 } else { -1 };
                acc += sign * elementary(j) * p[k - j - 1];
            }
            let sign = if (k - 1) % 2 == 0 { 1 } else { -1 };
            acc += sign * k as i64 * elementary(k);
            p.push(acc);
        }
        p
    }

    fn numerator_scalars(&self, scale: &Scalar) -> Vec<Scalar> {
        let mut power = Scalar::one(self.q);
        self.numerator
            .iter()
            .map(|&a| {
                let out = Scalar::from_int(self.q, a) * &power;
                power = &power * scale;
                out
            })
            .collect()
    }
}

fn linear(q: u64, c: Scalar) -> Vec<Scalar> {
    vec![Scalar::one(q), -c]
}

/// Expansion of the requested series up to `z^order`, with exact coefficients.
pub fn zeta_series(zd: &ZetaData, which: SeriesKind, order: usize) -> Result<RationalFunctionSeries> {
    let q = zd.q;
    let one = Scalar::one(q);
    let v_minus_two = Scalar::v_pow(q, -2);
    let poly_mul = |a: &[Scalar], b: &[Scalar]| crate::coefficients::poly_mul(a, b, q);
    let zeta_den = poly_mul(&linear(q, one.clone()), &linear(q, Scalar::v_pow(q, 2)));
    if which == SeriesKind::Zeta {
        return RationalFunctionSeries::new(q, zd.numerator_scalars(&one), zeta_den, order);
    }
    // zeta(z) / zeta(v^{-2} z) = P(z) (1 - v^{-2} z)(1 - z) / ((1 - z)(1 - q z) P(v^{-2} z)).
    let shifted_den = poly_mul(&linear(q, v_minus_two.clone()), &linear(q, one.clone()));
    let mut numerator = poly_mul(&zd.numerator_scalars(&one), &shifted_den);
    let mut denominator = poly_mul(&zeta_den, &zd.numerator_scalars(&v_minus_two));
    match which {
        SeriesKind::Zeta => unreachable!("handled above"),
        SeriesKind::Xi => {}
        SeriesKind::XiCirc => {
            numerator = poly_mul(&numerator, &linear(q, one.clone()));
            denominator = poly_mul(&denominator, &linear(q, v_minus_two));
        }
        SeriesKind::KernelH => {
            let scale = Scalar::v_pow(q, 2 - 2 * zd.g as i64);
            numerator = numerator.iter().map(|a| a * &scale).collect();
        }
    }
    RationalFunctionSeries::new(q, numerator, denominator, order)
}
