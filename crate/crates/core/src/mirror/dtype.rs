//! Graded Hom dimensions between interval sheaves on the `D`-shaped configuration
//! `I_1 ∪ I_2 ∪ I_3`, in the cases that do not occur for `A_n`.
//!
//! The primed cases describe the same configuration with the opposite orientation.
//! Case `(Y')` has the same formula as case `(Y)`.

use crate::error::{Error, Result};
use crate::rational::Rational;
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// The six listed cases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum DtypeCase {
    T,
    Y,
    V,
    TPrime,
    YPrime,
    VPrime,
}

pub const ALL_DTYPE_CASES: [DtypeCase; 6] =
    [DtypeCase::T, DtypeCase::Y, DtypeCase::V, DtypeCase::TPrime, DtypeCase::YPrime, DtypeCase::VPrime];

impl DtypeCase {
    pub fn name(self) -> &'static str {
        match self {
            DtypeCase::T => "T",
            DtypeCase::Y => "Y",
            DtypeCase::V => "V",
            DtypeCase::TPrime => "T'",
            DtypeCase::YPrime => "Y'",
            DtypeCase::VPrime => "V'",
        }
    }

    /// Whether the case depends on the parameters `(a, b)`.
    pub fn needs_parameters(self) -> bool {
        matches!(self, DtypeCase::Y | DtypeCase::YPrime)
    }
}

impl fmt::Display for DtypeCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DtypeCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "T" => Ok(DtypeCase::T),
            "Y" => Ok(DtypeCase::Y),
            "V" => Ok(DtypeCase::V),
            "T'" | "T′" | "Tprime" | "T-prime" => Ok(DtypeCase::TPrime),
            "Y'" | "Y′" | "Yprime" | "Y-prime" => Ok(DtypeCase::YPrime),
            "V'" | "V′" | "Vprime" | "V-prime" => Ok(DtypeCase::VPrime),
            other => Err(Error::parse(format!("unknown D-type case '{other}'"))),
        }
    }
}

/// `H^• RHom(source, target)` as a map from cohomological degree to dimension;
/// `k[-1]` is `{1: 1}` and the zero complex is empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedHom {
    pub source: String,
    pub target: String,
    pub dims: BTreeMap<i64, u64>,
}

impl GradedHom {
    fn new(source: &str, target: &str, dims: &[(i64, u64)]) -> Self {
        GradedHom { source: source.into(), target: target.into(), dims: dims.iter().copied().collect() }
    }

    /// Total dimension of the graded Hom.
    pub fn total(&self) -> u64 {
        self.dims.values().sum()
    }
}

fn check_parameter(name: &str, x: &Rational) -> Result<()> {
    if x.is_zero() || *x < Rational::zero() || *x > Rational::one() {
        return Err(Error::invalid(format!("parameter {name} must lie in (0, 1]")));
    }
    Ok(())
}

/// The graded Hom dimensions listed for `case`; `a` and `b` are required for `(Y)`
/// and `(Y')` and checked to lie in `(0, 1]` whenever given.
pub fn dtype_hom_ext(case: DtypeCase, a: Option<&Rational>, b: Option<&Rational>) -> Result<Vec<GradedHom>> {
    if let Some(a) = a {
        check_parameter("a", a)?;
    }
    if let Some(b) = b {
        check_parameter("b", b)?;
    }
    let shifted = [(1, 1)];
    Ok(match case {
        DtypeCase::T => vec![
            GradedHom::new("k_{I_2∖{0}∪[0,a)}", "k_{I_3∖{0}}", &[]),
            GradedHom::new("k_{I_3∖{0}}", "k_{I_2∪[0,a)}", &shifted),
        ],
        DtypeCase::TPrime => vec![
            GradedHom::new("k_{I_2∖{0}∪[0,a)}", "k_{I_3}", &shifted),
            GradedHom::new("k_{I_3}", "k_{I_2∪[0,a)}", &[]),
        ],
        DtypeCase::Y | DtypeCase::YPrime => {
            let (Some(a), Some(b)) = (a, b) else {
                return Err(Error::invalid(format!("case ({case}) needs both parameters a and b")));
            };
            let dims: &[(i64, u64)] = if a > b { &[(0, 1)] } else { &[] };
            vec![GradedHom::new("k_{I_2∖{0}∪[0,a)}", "k_{I_3∖{0}∪[0,b)}", dims)]
        }
        DtypeCase::V => vec![GradedHom::new("k_{I_2∖{0}}", "k_{I_3∖{0}}", &[])],
        DtypeCase::VPrime => vec![GradedHom::new("k_{I_2}", "k_{I_3}", &[])],
    })
}
