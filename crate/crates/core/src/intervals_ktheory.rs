//! Rational-circle combinatorics: arcs, step functions, the interval Euler form,
//! numerical K-classes and the small stack invariants.
//!
//! Arcs are half-open `[right - len, right)` on `S^1_Q = Q/Z`. A step function
//! with denominator `n` stores its value on `[m/n, (m+1)/n)` at entry `m`; the
//! Chevalley index of that cell is `m + 1`.

use crate::error::{Error, Result};
use crate::rational::{denom_u64, floor_i64, format_rational, frac, int, lcm, parse_rational, rat, Rational};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// A point of `S^1_Q`, stored as its representative in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CirclePoint(Rational);

impl CirclePoint {
    pub fn new(x: Rational) -> Self {
        CirclePoint(frac(&x))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }
}

/// Half-open arc `[right - len, right)` on the circle; `len >= 1` wraps.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    right: CirclePoint,
    len: Rational,
}

impl Arc {
    /// Arc with the given right endpoint and positive length.
    pub fn new(right: Rational, len: Rational) -> Result<Self> {
        if !len.is_positive() {
            return Err(Error::invalid("arc length must be positive"));
        }
        Ok(Arc { right: CirclePoint::new(right), len })
    }

    /// The arc `[a, b)` for `a < b` read on the cover.
    pub fn from_endpoints(a: Rational, b: Rational) -> Result<Self> {
        let len = &b - &a;
        Arc::new(b, len)
    }

    /// Unit cell `[(i-1)/n, i/n)` carrying Chevalley index `i`.
    pub fn cell(n: u64, i: u64) -> Self {
        Arc::new(rat(i as i64, n as i64), rat(1, n as i64)).expect("cell has positive length")
    }

    pub fn right(&self) -> &Rational {
        self.right.value()
    }

    pub fn len(&self) -> &Rational {
        &self.len
    }

    /// Left endpoint reduced to `[0, 1)`.
    pub fn left(&self) -> Rational {
        frac(&(self.right.value() - &self.len))
    }

    /// Left endpoint on the cover, so that `left_cover + len = right`.
    pub fn left_cover(&self) -> Rational {
        self.right.value() - &self.len
    }

    /// Strict arcs have length `< 1`; they index the interval generators.
    pub fn is_strict(&self) -> bool {
        self.len < Rational::one()
    }

    /// Least common denominator of the endpoint and the length.
    pub fn denominator(&self) -> u64 {
        lcm(denom_u64(self.right.value()), denom_u64(&self.len))
    }

    /// Characteristic function, counting wrap-around multiplicity.
    pub fn char_function(&self) -> StepFunction {
        let n = self.denominator();
        StepFunction::from_lattice(n, self.cell_multiplicities(n).expect("own denominator"))
    }

    /// Multiplicity of each cell at denominator `n` (index `i - 1` for cell `i`).
    pub fn cell_multiplicities(&self, n: u64) -> Result<Vec<i64>> {
        let (socle, length) = self.segment(n)?;
        let mut d = vec![0i64; n as usize];
        for k in 0..length {
            let cell = (socle as i64 - k as i64 - 1).rem_euclid(n as i64) as usize;
            d[cell] += 1;
        }
        Ok(d)
    }

    /// Segment data at denominator `n`: socle vertex in `1..=n` and length in cells.
    pub fn segment(&self, n: u64) -> Result<(u64, u64)> {
        if n % self.denominator() != 0 {
            return Err(Error::Denominator(format!(
                "arc {self} does not live at denominator {n}"
            )));
        }
        let scaled_right = self.right.value() * int(n as i64);
        let scaled_len = &self.len * int(n as i64);
        let right = floor_i64(&scaled_right) as u64;
        let socle = if right == 0 { n } else { right };
        Ok((socle, floor_i64(&scaled_len) as u64))
    }

    /// Arc of the segment with the given socle and length at denominator `n`.
    pub fn from_segment(n: u64, socle: u64, length: u64) -> Self {
        Arc::new(rat(socle as i64, n as i64), rat(length as i64, n as i64)).expect("positive length")
    }

    /// Parses `"a,b"` or `"[a,b)"` as the arc from `a` to `b`; when `b <= a` the arc
    /// wraps once around the circle, so `"0,1"` and `"1/2,1/2"` are the full circle.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim().trim_start_matches('[').trim_end_matches(')');
        let (a, b) = t
            .split_once(',')
            .ok_or_else(|| Error::parse(format!("expected 'a,b' for an arc, got '{text}'")))?;
        let (a, b) = (parse_rational(a)?, parse_rational(b)?);
        let mut len = &b - &a;
        while !len.is_positive() {
            len += Rational::one();
        }
        Arc::new(b, len)
    }

    /// Closure of the arc as a subset of the circle contains the point `x`.
    pub fn closure_contains(&self, x: &Rational) -> bool {
        if self.len >= Rational::one() {
            return true;
        }
        let offset = frac(&(x - self.left_cover()));
        offset <= self.len || offset.is_zero()
    }

    /// Closures of the two arcs are disjoint.
    pub fn closures_disjoint(&self, other: &Arc) -> bool {
        !self.closure_contains(&other.left_cover())
            && !self.closure_contains(other.right())
            && !other.closure_contains(&self.left_cover())
            && !other.closure_contains(self.right())
    }

    /// The arcs are disjoint as subsets of the circle.
    pub fn disjoint(&self, other: &Arc) -> bool {
        let n = lcm(self.denominator(), other.denominator());
        let a = self.cell_multiplicities(n).expect("own denominator");
        let b = other.cell_multiplicities(n).expect("own denominator");
        a.iter().zip(b.iter()).all(|(x, y)| *x == 0 || *y == 0)
    }

    /// `self` is contained in `other` as subsets of the circle (with multiplicity).
    pub fn contained_in(&self, other: &Arc) -> bool {
        let n = lcm(self.denominator(), other.denominator());
        let a = self.cell_multiplicities(n).expect("own denominator");
        let b = other.cell_multiplicities(n).expect("own denominator");
        a.iter().zip(b.iter()).all(|(x, y)| x <= y)
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let left = if self.is_strict() { self.left() } else { self.left_cover() };
        write!(f, "[{},{})", format_rational(&left), format_rational(self.right.value()))
    }
}

#[derive(Serialize, Deserialize)]
struct ArcJson {
    right: String,
    len: String,
}

impl Serialize for Arc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ArcJson {
            right: format_rational(self.right.value()),
            len: format_rational(&self.len),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Arc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ArcJson::deserialize(d)?;
        let right = parse_rational(&raw.right).map_err(serde::de::Error::custom)?;
        let len = parse_rational(&raw.len).map_err(serde::de::Error::custom)?;
        Arc::new(right, len).map_err(serde::de::Error::custom)
    }
}

/// Integer-valued step function on the circle with finite denominator,
/// always normalized to its minimal denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StepFunction {
    n: u64,
    values: Vec<i64>,
}

#[derive(Deserialize)]
struct StepFunctionJson {
    n: u64,
    values: Vec<i64>,
}

impl<'de> Deserialize<'de> for StepFunction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = StepFunctionJson::deserialize(d)?;
        StepFunction::new(raw.n, raw.values).map_err(serde::de::Error::custom)
    }
}

impl StepFunction {
    /// Step function with the given values on the cells of denominator `n`.
    pub fn new(n: u64, values: Vec<i64>) -> Result<Self> {
        if n == 0 || values.len() as u64 != n {
            return Err(Error::invalid(format!(
                "step function needs exactly n = {n} values, got {}",
                values.len()
            )));
        }
        Ok(StepFunction::normalized(n, values))
    }

    /// Step function `f_d` attached to a lattice vector at denominator `n`.
    pub fn from_lattice(n: u64, d: Vec<i64>) -> Self {
        StepFunction::new(n, d).expect("lattice vector of length n")
    }

    pub fn zero() -> Self {
        StepFunction { n: 1, values: vec![0] }
    }

    /// The constant function `c`, so that `delta = constant(1)`.
    pub fn constant(c: i64) -> Self {
        StepFunction { n: 1, values: vec![c] }
    }

    fn normalized(n: u64, values: Vec<i64>) -> Self {
        for m in 1..=n {
            if n % m != 0 {
                continue;
            }
            let block = (n / m) as usize;
            let coarse = values
                .chunks(block)
                .all(|chunk| chunk.iter().all(|x| *x == chunk[0]));
            if coarse {
                let vals = values.chunks(block).map(|chunk| chunk[0]).collect();
                return StepFunction { n: m, values: vals };
            }
        }
        unreachable!("m = n always succeeds")
    }

    /// Minimal denominator.
    pub fn denominator(&self) -> u64 {
        self.n
    }

    /// Values at the minimal denominator.
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|x| *x == 0)
    }

    /// Lattice vector `d_f` at denominator `m` (requires `denominator | m`).
    pub fn at_denominator(&self, m: u64) -> Result<Vec<i64>> {
        refine_vector(&self.values, m)
    }

    /// Value on `[x, x + eps)`.
    pub fn right_limit(&self, x: &Rational) -> i64 {
        let idx = floor_i64(&(frac(x) * int(self.n as i64))) as usize;
        self.values[idx]
    }

    /// Value on `(x - eps, x)`.
    pub fn left_limit(&self, x: &Rational) -> i64 {
        let scaled = frac(x) * int(self.n as i64);
        let mut idx = floor_i64(&scaled);
        if scaled.is_integer() {
            idx -= 1;
        }
        self.values[idx.rem_euclid(self.n as i64) as usize]
    }

    /// Points where the function may jump.
    pub fn breakpoints(&self) -> Vec<Rational> {
        (0..self.n).map(|k| rat(k as i64, self.n as i64)).collect()
    }

    fn combine(&self, other: &StepFunction, op: impl Fn(i64, i64) -> i64) -> StepFunction {
        let n = lcm(self.n, other.n);
        let a = self.at_denominator(n).expect("lcm refinement");
        let b = other.at_denominator(n).expect("lcm refinement");
        StepFunction::normalized(n, a.iter().zip(b.iter()).map(|(x, y)| op(*x, *y)).collect())
    }

    pub fn add(&self, other: &StepFunction) -> StepFunction {
        self.combine(other, |x, y| x + y)
    }

    pub fn sub(&self, other: &StepFunction) -> StepFunction {
        self.combine(other, |x, y| x - y)
    }

    pub fn scale(&self, c: i64) -> StepFunction {
        StepFunction::normalized(self.n, self.values.iter().map(|x| c * x).collect())
    }

    /// Integral over the circle, which is the degree of a torsion class.
    pub fn integral(&self) -> Rational {
        rat(self.values.iter().sum::<i64>(), self.n as i64)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|x| *x >= 0)
    }
}

/// Subdivision map `Phi_{m,n}` on lattice vectors: each entry is repeated `m/n` times.
pub fn refine_vector(d: &[i64], m: u64) -> Result<Vec<i64>> {
    let n = d.len() as u64;
    if n == 0 || m % n != 0 {
        return Err(Error::Denominator(format!("{m} is not a multiple of {n}")));
    }
    let k = (m / n) as usize;
    Ok(d.iter().flat_map(|x| std::iter::repeat(*x).take(k)).collect())
}

/// Interval Euler form `<f, g> = sum_x f_-(x) (g_-(x) - g_+(x))`.
pub fn interval_euler_form(f: &StepFunction, g: &StepFunction) -> i64 {
    let mut points: BTreeSet<Rational> = f.breakpoints().into_iter().collect();
    points.extend(g.breakpoints());
    points
        .iter()
        .map(|x| f.left_limit(x) * (g.left_limit(x) - g.right_limit(x)))
        .sum()
}

/// Symmetrized interval Euler form `(f, g) = <f, g> + <g, f>`.
pub fn symmetric_euler_form(f: &StepFunction, g: &StepFunction) -> i64 {
    interval_euler_form(f, g) + interval_euler_form(g, f)
}

/// Euler form on lattice vectors: `<d, e> = sum_i d_i e_i - d_i e_{i+1}`, indices mod `n`.
pub fn lattice_euler_form(d: &[i64], e: &[i64]) -> i64 {
    let n = d.len();
    assert_eq!(n, e.len(), "lattice vectors of different lengths");
    (0..n).map(|i| d[i] * (e[i] - e[(i + 1) % n])).sum()
}

/// Symmetrized lattice Euler form.
pub fn lattice_symmetric_form(d: &[i64], e: &[i64]) -> i64 {
    lattice_euler_form(d, e) + lattice_euler_form(e, d)
}

/// Class `(rank, dim)` in numerical K-theory.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KClass {
    pub rank: i64,
    pub dim: StepFunction,
}

impl KClass {
    pub fn new(rank: i64, dim: StepFunction) -> Self {
        KClass { rank, dim }
    }

    pub fn is_torsion(&self) -> bool {
        self.rank == 0
    }

    /// Class of a line bundle of rational degree `x`:
    /// `(1, floor(x) delta + chi_{[1 - {x}, 1)})`.
    pub fn line_bundle(x: &Rational) -> Self {
        let whole = StepFunction::constant(floor_i64(x));
        let fractional = frac(x);
        let dim = if fractional.is_zero() {
            whole
        } else {
            let tail = Arc::new(Rational::zero(), fractional).expect("positive length");
            whole.add(&tail.char_function())
        };
        KClass { rank: 1, dim }
    }

    pub fn add(&self, other: &KClass) -> KClass {
        KClass { rank: self.rank + other.rank, dim: self.dim.add(&other.dim) }
    }

    /// Refinement to denominator `m` as a lattice vector.
    pub fn refine(&self, m: u64) -> Result<(i64, Vec<i64>)> {
        Ok((self.rank, self.dim.at_denominator(m)?))
    }
}

/// Riemann-Roch form `<(r,d),(s,e)> = r s (1-g) + r e_1 - s d_n + <d, e>`.
pub fn kclass_euler_form(a: &KClass, b: &KClass, genus: u64) -> i64 {
    let first_cell_of_b = b.dim.right_limit(&Rational::zero());
    let last_cell_of_a = a.dim.left_limit(&Rational::zero());
    a.rank * b.rank * (1 - genus as i64) + a.rank * first_cell_of_b - b.rank * last_cell_of_a
        + interval_euler_form(&a.dim, &b.dim)
}

/// Symmetrized Riemann-Roch form.
pub fn kclass_symmetric_form(a: &KClass, b: &KClass, genus: u64) -> i64 {
    kclass_euler_form(a, b, genus) + kclass_euler_form(b, a, genus)
}

/// Degree, slope, Euler characteristic and virtual genus at level `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackInvariants {
    pub deg_n: Rational,
    /// `None` stands for infinite slope (torsion classes).
    pub slope: Option<Rational>,
    pub chi_n: Rational,
    pub virtual_genus: Rational,
}

/// Euler characteristic of the structure sheaf at level `n`: `(n^2 + n - 2 g n^2)/2`.
pub fn chi_structure_sheaf(n: u64, genus: u64) -> Rational {
    let (n, g) = (n as i64, genus as i64);
    rat(n * n + n - 2 * g * n * n, 2)
}

/// Virtual genus `(2 n g - n + 1)/2`.
pub fn virtual_genus(n: u64, genus: u64) -> Rational {
    let (n, g) = (n as i64, genus as i64);
    rat(2 * n * g - n + 1, 2)
}

/// Stack invariants of a class whose denominator divides `n`.
pub fn stack_invariants(n: u64, genus: u64, k: &KClass) -> Result<StackInvariants> {
    let d = k.dim.at_denominator(n)?;
    let deg_n = rat(d.iter().sum::<i64>(), n as i64);
    let slope = (k.rank != 0).then(|| &deg_n / int(k.rank));
    let chi_n = &deg_n * int(n as i64) + chi_structure_sheaf(n, genus) * int(k.rank);
    Ok(StackInvariants { deg_n, slope, chi_n, virtual_genus: virtual_genus(n, genus) })
}
