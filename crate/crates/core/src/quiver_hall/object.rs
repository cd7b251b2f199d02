//! Isomorphism classes of nilpotent cyclic-quiver representations (multisegments).

use crate::error::{Error, Result};
use crate::intervals_ktheory::{Arc, StepFunction};
use crate::rational::lcm;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Indecomposable uniserial module: socle at vertex `socle` (in `1..=n`) and
/// `len` composition factors, with top at vertex `socle + 1 - len` (mod `n`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Segment {
    pub socle: u64,
    pub len: u64,
}

impl Segment {
    /// Vertex (in `1..=n`) of the `k`-th basis vector counted from the top.
    pub fn vertex(&self, n: u64, k: u64) -> u64 {
        let zero_based = (self.socle as i64 - self.len as i64 + k as i64).rem_euclid(n as i64);
        zero_based as u64 + 1
    }

    pub fn top(&self, n: u64) -> u64 {
        self.vertex(n, 0)
    }
}

/// Direct sum of segments at denominator `n`, kept in canonical sorted order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorsionObject {
    n: u64,
    segments: Vec<Segment>,
}

impl TorsionObject {
    pub fn new(n: u64, mut segments: Vec<Segment>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("denominator must be positive"));
        }
        if let Some(bad) = segments.iter().find(|s| s.len == 0 || s.socle == 0 || s.socle > n) {
            return Err(Error::invalid(format!("bad segment {bad:?} at n = {n}")));
        }
        segments.sort();
        Ok(TorsionObject { n, segments })
    }

    /// The zero object at denominator `n`.
    pub fn empty(n: u64) -> Self {
        TorsionObject { n, segments: Vec::new() }
    }

    /// `S_socle^{(len)}`.
    pub fn segment(n: u64, socle: u64, len: u64) -> Result<Self> {
        TorsionObject::new(n, vec![Segment { socle, len }])
    }

    /// Simple object at vertex `i`.
    pub fn simple(n: u64, i: u64) -> Self {
        TorsionObject::segment(n, i, 1).expect("valid simple")
    }

    /// Object whose indecomposable summands are the given arcs.
    pub fn from_arcs(n: u64, arcs: &[Arc]) -> Result<Self> {
        let segments = arcs
            .iter()
            .map(|a| a.segment(n).map(|(socle, len)| Segment { socle, len }))
            .collect::<Result<Vec<_>>>()?;
        TorsionObject::new(n, segments)
    }

    /// Object attached to an arc at denominator `n`.
    pub fn from_arc(n: u64, arc: &Arc) -> Result<Self> {
        TorsionObject::from_arcs(n, std::slice::from_ref(arc))
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn arcs(&self) -> Vec<Arc> {
        self.segments.iter().map(|s| Arc::from_segment(self.n, s.socle, s.len)).collect()
    }

    /// Dimension vector, entry `i - 1` for vertex `i`.
    pub fn dim_vector(&self) -> Vec<i64> {
        let mut d = vec![0i64; self.n as usize];
        for s in &self.segments {
            for k in 0..s.len {
                d[(s.vertex(self.n, k) - 1) as usize] += 1;
            }
        }
        d
    }

    pub fn total_dim(&self) -> u64 {
        self.segments.iter().map(|s| s.len).sum()
    }

    /// Sum of the characteristic functions of the arcs.
    pub fn dim_function(&self) -> StepFunction {
        StepFunction::from_lattice(self.n, self.dim_vector())
    }

    /// Direct sum.
    pub fn direct_sum(&self, other: &TorsionObject) -> Result<TorsionObject> {
        if self.n != other.n {
            return Err(Error::Denominator(format!("direct sum of levels {} and {}", self.n, other.n)));
        }
        let mut segs = self.segments.clone();
        segs.extend_from_slice(&other.segments);
        TorsionObject::new(self.n, segs)
    }

    /// Socle vertices, with multiplicity, in sorted order.
    pub fn socle_vertices(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.segments.iter().map(|s| s.socle).collect();
        v.sort();
        v
    }

    /// The socle has no repeated vertex.
    pub fn has_square_free_socle(&self) -> bool {
        let v = self.socle_vertices();
        v.windows(2).all(|w| w[0] != w[1])
    }

    /// Pullback to level `k n`: every arc is kept as a subset of the circle.
    pub fn pullback(&self, k: u64) -> TorsionObject {
        let segments = self
            .segments
            .iter()
            .map(|s| Segment { socle: s.socle * k, len: s.len * k })
            .collect();
        TorsionObject::new(self.n * k, segments).expect("pullback of a valid object")
    }

    /// Minimal level at which the object is defined.
    pub fn valuation(&self) -> u64 {
        self.arcs().iter().fold(1, |acc, a| lcm(acc, a.denominator()))
    }

    /// The same object re-expressed at level `m` (which must be a multiple of its valuation).
    pub fn at_level(&self, m: u64) -> Result<TorsionObject> {
        TorsionObject::from_arcs(m, &self.arcs())
    }
}

impl fmt::Display for TorsionObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.segments.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .segments
            .iter()
            .map(|s| format!("S{}^({})", s.socle, s.len))
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

#[derive(Serialize, Deserialize)]
struct TorsionObjectJson {
    n: u64,
    arcs: Vec<Arc>,
}

impl Serialize for TorsionObject {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TorsionObjectJson { n: self.n, arcs: self.arcs() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TorsionObject {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = TorsionObjectJson::deserialize(d)?;
        TorsionObject::from_arcs(raw.n, &raw.arcs).map_err(serde::de::Error::custom)
    }
}

/// All objects with the given dimension vector, each exactly once, in sorted order.
pub fn enumerate_objects(n: u64, d: &[i64]) -> Result<Vec<TorsionObject>> {
    if d.len() as u64 != n {
        return Err(Error::invalid(format!("dimension vector of length {} at n = {n}", d.len())));
    }
    if d.iter().any(|x| *x < 0) {
        return Err(Error::invalid("dimension vector must be nonnegative"));
    }
    let total: i64 = d.iter().sum();
    let mut candidates = Vec::new();
    for socle in 1..=n {
        for len in 1..=total as u64 {
            let seg = Segment { socle, len };
            let fits = TorsionObject::new(n, vec![seg])
                .map(|o| o.dim_vector().iter().zip(d).all(|(a, b)| a <= b))
                .unwrap_or(false);
            if fits {
                candidates.push(seg);
            }
        }
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    let mut remaining = d.to_vec();
    fill(n, &candidates, 0, &mut remaining, &mut current, &mut out);
    out.sort();
    Ok(out)
}

fn fill(
    n: u64,
    candidates: &[Segment],
    start: usize,
    remaining: &mut Vec<i64>,
    current: &mut Vec<Segment>,
    out: &mut Vec<TorsionObject>,
) {
    if remaining.iter().all(|x| *x == 0) {
        out.push(TorsionObject::new(n, current.clone()).expect("valid segments"));
        return;
    }
    for (idx, seg) in candidates.iter().enumerate().skip(start) {
        let cells: Vec<usize> = (0..seg.len).map(|k| (seg.vertex(n, k) - 1) as usize).collect();
        let mut ok = true;
        for &c in &cells {
            remaining[c] -= 1;
            if remaining[c] < 0 {
                ok = false;
            }
        }
        if ok {
            current.push(*seg);
            fill(n, candidates, idx, remaining, current, out);
            current.pop();
        }
        for &c in &cells {
            remaining[c] += 1;
        }
    }
}

/// All nonzero dimension vectors `e` with `0 <= e <= bound` componentwise.
pub fn dimension_vectors_below(bound: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &b in bound {
        let mut next = Vec::new();
        for prefix in &out {
            for x in 0..=b.max(0) {
                let mut v = prefix.clone();
                v.push(x);
                next.push(v);
            }
        }
        out = next;
    }
    out.retain(|v| v.iter().any(|x| *x != 0));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerate_examples() {
        let objs = enumerate_objects(2, &[1, 1]).unwrap();
        assert_eq!(objs.len(), 3);
        assert_eq!(enumerate_objects(3, &[0, 0, 0]).unwrap(), vec![TorsionObject::empty(3)]);
        assert_eq!(enumerate_objects(1, &[2]).unwrap().len(), 2);
    }

    #[test]
    fn orientation_of_segments() {
        // S_2^{(2)} at n = 3: socle at vertex 2, top at vertex 1.
        let s = Segment { socle: 2, len: 2 };
        assert_eq!(s.top(3), 1);
        let o = TorsionObject::segment(3, 2, 2).unwrap();
        assert_eq!(o.dim_vector(), vec![1, 1, 0]);
        let arc = &o.arcs()[0];
        assert_eq!(arc.to_string(), "[0,2/3)");
    }

    #[test]
    fn pullback_and_valuation() {
        let s = TorsionObject::simple(2, 1);
        let p = s.pullback(2);
        assert_eq!(p, TorsionObject::segment(4, 2, 2).unwrap());
        assert_eq!(p.valuation(), 2);
        assert_eq!(p.arcs(), s.arcs());
    }
}
