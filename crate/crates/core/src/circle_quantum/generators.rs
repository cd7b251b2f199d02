//! Interval generators `E_J`, `F_J`, `K_J^{+-1}` and formal linear combinations of
//! words in them.

use crate::coefficients::Scalar;
use crate::error::{Error, Result};
use crate::intervals_ktheory::Arc;
use crate::rational::lcm;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Which family a generator belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GeneratorKind {
    E,
    F,
    K,
    Kinv,
}

impl GeneratorKind {
    fn label(self) -> &'static str {
        match self {
            GeneratorKind::E => "E",
            GeneratorKind::F => "F",
            GeneratorKind::K => "K",
            GeneratorKind::Kinv => "Kinv",
        }
    }
}

/// One interval generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GeneratorSymbol {
    pub kind: GeneratorKind,
    pub arc: Arc,
}

impl GeneratorSymbol {
    /// Checks that `E` and `F` carry strict arcs.
    pub fn new(kind: GeneratorKind, arc: Arc) -> Result<Self> {
        if matches!(kind, GeneratorKind::E | GeneratorKind::F) && !arc.is_strict() {
            return Err(Error::invalid(format!("{} needs a strict interval, got {arc}", kind.label())));
        }
        Ok(GeneratorSymbol { kind, arc })
    }

    pub fn e(arc: &Arc) -> Result<Self> {
        GeneratorSymbol::new(GeneratorKind::E, arc.clone())
    }

    pub fn f(arc: &Arc) -> Result<Self> {
        GeneratorSymbol::new(GeneratorKind::F, arc.clone())
    }

    pub fn k(arc: &Arc) -> Self {
        GeneratorSymbol { kind: GeneratorKind::K, arc: arc.clone() }
    }

    pub fn k_inv(arc: &Arc) -> Self {
        GeneratorSymbol { kind: GeneratorKind::Kinv, arc: arc.clone() }
    }

    /// Parses `E[a,b)`, `F[a,b)`, `K[a,b)` or `Kinv[a,b)`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let open = t
            .find('[')
            .ok_or_else(|| Error::parse(format!("generator '{text}' lacks an interval")))?;
        let kind = match &t[..open] {
            "E" => GeneratorKind::E,
            "F" => GeneratorKind::F,
            "K" => GeneratorKind::K,
            "Kinv" | "K^-1" => GeneratorKind::Kinv,
            other => return Err(Error::parse(format!("unknown generator kind '{other}'"))),
        };
        GeneratorSymbol::new(kind, Arc::parse(&t[open..])?)
    }

    /// Exchanges `E` with `F` and `K` with `K^{-1}` on the same interval.
    pub fn swapped(&self) -> GeneratorSymbol {
        let kind = match self.kind {
            GeneratorKind::E => GeneratorKind::F,
            GeneratorKind::F => GeneratorKind::E,
            GeneratorKind::K => GeneratorKind::Kinv,
            GeneratorKind::Kinv => GeneratorKind::K,
        };
        GeneratorSymbol { kind, arc: self.arc.clone() }
    }
}

impl fmt::Display for GeneratorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.label(), self.arc)
    }
}

/// Parses a whitespace- or `*`-separated word such as `"F[0,1/2) E[0,1/2)"`.
pub fn parse_word(text: &str) -> Result<Vec<GeneratorSymbol>> {
    text.split(|c: char| c.is_whitespace() || c == '*')
        .filter(|t| !t.is_empty())
        .map(GeneratorSymbol::parse)
        .collect()
}

/// Finite linear combination of words in interval generators, read left to right
/// as products.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorExpr {
    q: u64,
    terms: Vec<(Scalar, Vec<GeneratorSymbol>)>,
}

impl GeneratorExpr {
    pub fn zero(q: u64) -> Self {
        GeneratorExpr { q, terms: Vec::new() }
    }

    pub fn one(q: u64) -> Self {
        GeneratorExpr::word(q, Vec::new())
    }

    pub fn word(q: u64, word: Vec<GeneratorSymbol>) -> Self {
        GeneratorExpr { q, terms: vec![(Scalar::one(q), word)] }
    }

    pub fn generator(q: u64, g: GeneratorSymbol) -> Self {
        GeneratorExpr::word(q, vec![g])
    }

    pub fn term(c: Scalar, word: Vec<GeneratorSymbol>) -> Self {
        GeneratorExpr { q: c.q(), terms: vec![(c, word)] }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn terms(&self) -> &[(Scalar, Vec<GeneratorSymbol>)] {
        &self.terms
    }

    pub fn add(&self, other: &GeneratorExpr) -> GeneratorExpr {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        GeneratorExpr { q: self.q, terms }
    }

    pub fn sub(&self, other: &GeneratorExpr) -> GeneratorExpr {
        self.add(&other.scale(&Scalar::from_int(self.q, -1)))
    }

    pub fn scale(&self, c: &Scalar) -> GeneratorExpr {
        let terms = self.terms.iter().map(|(a, w)| (a * c, w.clone())).collect();
        GeneratorExpr { q: self.q, terms }
    }

    /// Product of two combinations (concatenation of words).
    pub fn mul(&self, other: &GeneratorExpr) -> GeneratorExpr {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, u) in &self.terms {
            for (b, w) in &other.terms {
                let mut word = u.clone();
                word.extend(w.iter().cloned());
                terms.push((a * b, word));
            }
        }
        GeneratorExpr { q: self.q, terms }
    }

    /// `[x, y] = xy - yx`.
    pub fn commutator(&self, other: &GeneratorExpr) -> GeneratorExpr {
        self.mul(other).sub(&other.mul(self))
    }

    /// Least common denominator of every interval appearing in the expression.
    pub fn denominator(&self) -> u64 {
        self.symbols().fold(1, |acc, g| lcm(acc, g.arc.denominator()))
    }

    pub fn symbols(&self) -> impl Iterator<Item = &GeneratorSymbol> {
        self.terms.iter().flat_map(|(_, w)| w.iter())
    }

    pub fn contains_kind(&self, kind: GeneratorKind) -> bool {
        self.symbols().any(|g| g.kind == kind)
    }

    /// Reverses every word and exchanges `E_J <-> F_J`, `K_J <-> K_J^{-1}`, keeping the
    /// coefficients. Composed with `v -> v^{-1}` on coefficients this is the
    /// anti-automorphism of the algebra; the inversion of `v` has to be carried out
    /// before specializing `v`, since it is not defined on the specialized scalars.
    pub fn reverse_swap(&self) -> GeneratorExpr {
        let terms = self
            .terms
            .iter()
            .map(|(c, w)| (c.clone(), w.iter().rev().map(GeneratorSymbol::swapped).collect()))
            .collect();
        GeneratorExpr { q: self.q, terms }
    }
}

impl fmt::Display for GeneratorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (c, w)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for g in w {
                write!(f, " {g}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn parses_words() {
        let w = parse_word("F[0,1/2) E[0,1/2) Kinv[1/2,1)").unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(w[0].kind, GeneratorKind::F);
        assert_eq!(w[2].arc, Arc::new(rat(1, 1), rat(1, 2)).unwrap());
        assert_eq!(w[1].to_string(), "E[0,1/2)");
        assert!(GeneratorSymbol::parse("E[0,1)").is_err());
        assert!(GeneratorSymbol::parse("K[0,1)").is_ok());
        assert!(GeneratorSymbol::parse("X[0,1/2)").is_err());
    }

    #[test]
    fn wrapping_arcs_parse() {
        let g = GeneratorSymbol::parse("E[3/4,1/4)").unwrap();
        assert_eq!(g.arc.len(), &rat(1, 2));
        assert_eq!(g.arc.right(), &rat(1, 4));
    }
}
