//! Embeddings of the level-`n` quantum affine algebra into the circle algebra:
//! subdivision, the one-sided and two-sided dyadic limits, and the inclusions
//! adding one or two vertices.

use super::generators::GeneratorSymbol;
use crate::error::{Error, Result};
use crate::intervals_ktheory::{symmetric_euler_form, Arc};
use crate::rational::{format_rational, frac, int, lcm, rat, Rational};
use serde::{Deserialize, Serialize};

/// Which embedding to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EmbeddingKind {
    /// Level `n` into level `factor * n`: every cell is kept as a subset of the circle.
    Subdivision { factor: u64 },
    /// The one-sided dyadic embedding accumulating at `1`.
    PlusInfinity,
    /// The two-sided dyadic embedding accumulating at `0` and `1`.
    TwoSided,
    /// Level `n` into level `n + 1`, sending the last simple to a length-two segment.
    AddOneVertex,
    /// Level `n` into level `n + 2`, sending the last simple to a length-three segment.
    AddTwoVertices,
}

/// Image of the simple at vertex `index`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddedGenerator {
    pub index: u64,
    pub source: Arc,
    pub image: Arc,
}

/// Generator images together with the Cartan check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub kind: EmbeddingKind,
    pub n: u64,
    pub target_denominator: u64,
    pub images: Vec<EmbeddedGenerator>,
    /// Symmetrized Euler form of the images.
    pub cartan: Vec<Vec<i64>>,
    /// The matrix above is the affine Cartan matrix of type `A_{n-1}^{(1)}`.
    pub affine_cartan: bool,
    /// The block on the first `n - 1` images is the finite Cartan matrix of type `A_{n-1}`.
    pub finite_block: bool,
}

/// Dyadic points `1 - 2^{-(k+1)}` for `k >= 0` and `2^{k-1}` for `k <= 0`.
pub fn dyadic_point(k: i64) -> Rational {
    if k >= 0 {
        int(1) - Rational::new(1.into(), num_bigint::BigInt::from(2).pow((k + 1) as u32))
    } else {
        Rational::new(1.into(), num_bigint::BigInt::from(2).pow((1 - k) as u32))
    }
}

/// The arc `[a, b)` read on the circle, wrapping when `b <= a`.
fn arc_between(a: &Rational, b: &Rational) -> Arc {
    let mut len = b - a;
    while len <= Rational::from_integer(0.into()) {
        len += int(1);
    }
    Arc::new(b.clone(), len).expect("positive length")
}

/// Affine Cartan matrix of type `A_{n-1}^{(1)}`.
pub fn affine_cartan_matrix(n: u64) -> Vec<Vec<i64>> {
    let n = n as usize;
    let mut c = vec![vec![0i64; n]; n];
    for i in 0..n {
        c[i][i] += 2;
        if n > 1 {
            c[i][(i + 1) % n] -= 1;
            c[(i + 1) % n][i] -= 1;
        }
    }
    if n == 1 {
        c[0][0] = 0;
    }
    c
}

fn finite_cartan_matrix(m: usize) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0i64; m]; m];
    for i in 0..m {
        c[i][i] = 2;
        if i + 1 < m {
            c[i][i + 1] = -1;
            c[i + 1][i] = -1;
        }
    }
    c
}

/// Images of the simples `S_1, ..., S_n` under the chosen embedding.
pub fn embed_generators(kind: EmbeddingKind, n: u64) -> Result<EmbeddingReport> {
    if n < 2 {
        return Err(Error::invalid("embeddings need n >= 2"));
    }
    let images: Vec<Arc> = match kind {
        EmbeddingKind::Subdivision { factor } => {
            if factor == 0 {
                return Err(Error::invalid("subdivision factor must be positive"));
            }
            (1..=n).map(|i| Arc::cell(n, i)).collect()
        }
        EmbeddingKind::PlusInfinity => {
            let mut v: Vec<Arc> = (1..n as i64)
                .map(|i| arc_between(&dyadic_point(i - 1), &dyadic_point(i)))
                .collect();
            v.push(arc_between(&dyadic_point(n as i64 - 1), &rat(1, 2)));
            v
        }
        EmbeddingKind::TwoSided => {
            let h = (n / 2) as i64;
            let parity = (n % 2) as i64;
            let mut v: Vec<Arc> = (1..n as i64)
                .map(|i| arc_between(&dyadic_point(-h + i), &dyadic_point(-h + i + 1)))
                .collect();
            v.push(arc_between(&dyadic_point(h + parity), &dyadic_point(-h + 1)));
            v
        }
        EmbeddingKind::AddOneVertex => {
            let mut v: Vec<Arc> = (1..n).map(|i| Arc::cell(n + 1, i)).collect();
            v.push(Arc::from_segment(n + 1, n + 1, 2));
            v
        }
        EmbeddingKind::AddTwoVertices => {
            let mut v: Vec<Arc> = (1..n).map(|i| Arc::cell(n + 2, i + 1)).collect();
            v.push(Arc::from_segment(n + 2, 1, 3));
            v
        }
    };
    let target_denominator = match kind {
        EmbeddingKind::Subdivision { factor } => factor * n,
        _ => images.iter().fold(1, |acc, a| lcm(acc, a.denominator())),
    };
    let chis: Vec<_> = images.iter().map(Arc::char_function).collect();
    let cartan: Vec<Vec<i64>> = chis
        .iter()
        .map(|a| chis.iter().map(|b| symmetric_euler_form(a, b)).collect())
        .collect();
    let m = (n - 1) as usize;
    let block: Vec<Vec<i64>> = cartan[..m].iter().map(|row| row[..m].to_vec()).collect();
    Ok(EmbeddingReport {
        kind,
        n,
        target_denominator,
        affine_cartan: cartan == affine_cartan_matrix(n),
        finite_block: block == finite_cartan_matrix(m),
        cartan,
        images: images
            .into_iter()
            .enumerate()
            .map(|(i, image)| EmbeddedGenerator { index: i as u64 + 1, source: Arc::cell(n, i as u64 + 1), image })
            .collect(),
    })
}

impl EmbeddingReport {
    /// Image of the arc `S_socle^{(len)}` at level `n`: the concatenation of the
    /// images of its cells.
    pub fn image_arc(&self, arc: &Arc) -> Result<Arc> {
        let n = self.n;
        let (socle, len) = arc.segment(n)?;
        if len > n {
            return Err(Error::invalid(format!("{arc} wraps more than once")));
        }
        let cells: Vec<usize> = (0..len)
            .map(|k| ((socle as i64 - len as i64 + k as i64).rem_euclid(n as i64)) as usize)
            .collect();
        let mut total = Rational::from_integer(0.into());
        for pair in cells.windows(2) {
            let (a, b) = (&self.images[pair[0]].image, &self.images[pair[1]].image);
            if frac(a.right()) != b.left() {
                return Err(Error::invalid(format!(
                    "images {a} and {b} are not adjacent at {}",
                    format_rational(a.right())
                )));
            }
        }
        for c in &cells {
            total += self.images[*c].image.len();
        }
        let last = &self.images[*cells.last().expect("positive length")].image;
        Arc::new(last.right().clone(), total)
    }

    /// Image of a generator whose interval lives at level `n`.
    pub fn image_of(&self, g: &GeneratorSymbol) -> Result<GeneratorSymbol> {
        GeneratorSymbol::new(g.kind, self.image_arc(&g.arc)?)
    }
}
