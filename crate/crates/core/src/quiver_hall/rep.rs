//! Concrete matrix models of nilpotent cyclic-quiver representations.

use super::field::Field;
use super::linalg::{rank_of_vectors, subspaces, Matrix};
use super::object::{Segment, TorsionObject};
use crate::error::{Error, Result};
use std::collections::BTreeMap;

/// Representation of the cyclic quiver with arrows `i -> i + 1`.
///
/// Vertex `i` (in `1..=n`) is stored at index `i - 1`; `maps[i - 1]` is the
/// `dims[i] x dims[i - 1]` matrix of the arrow leaving vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverRep {
    n: usize,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl QuiverRep {
    pub fn new(dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        let n = dims.len();
        if n == 0 || maps.len() != n {
            return Err(Error::invalid("a representation needs one map per vertex"));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.cols() != dims[i] || m.rows() != dims[(i + 1) % n] {
                return Err(Error::invalid(format!("arrow {} has the wrong shape", i + 1)));
            }
        }
        Ok(QuiverRep { n, dims, maps })
    }

    /// Standard model of a multisegment: each segment contributes a chain of basis
    /// vectors from its top to its socle.
    pub fn build_from(obj: &TorsionObject) -> QuiverRep {
        let n = obj.n() as usize;
        let dims: Vec<usize> = obj.dim_vector().iter().map(|d| *d as usize).collect();
        let mut maps: Vec<Matrix> = (0..n).map(|i| Matrix::zeros(dims[(i + 1) % n], dims[i])).collect();
        let mut next_index = vec![0usize; n];
        for seg in obj.segments() {
            let mut prev: Option<(usize, usize)> = None;
            for k in 0..seg.len {
                let vertex = (seg.vertex(obj.n(), k) - 1) as usize;
                let idx = next_index[vertex];
                next_index[vertex] += 1;
                if let Some((pv, pi)) = prev {
                    maps[pv].set(idx, pi, 1);
                }
                prev = Some((vertex, idx));
            }
        }
        QuiverRep { n, dims, maps }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Conjugate by invertible base changes `g_i` at each vertex: `x_i' = g_{i+1} x_i g_i^{-1}`
    /// where `inverses[i] = g_i^{-1}`.
    pub fn change_basis(&self, changes: &[Matrix], inverses: &[Matrix], f: &Field) -> QuiverRep {
        let maps = (0..self.n)
            .map(|i| changes[(i + 1) % self.n].mul(&self.maps[i], f).mul(&inverses[i], f))
            .collect();
        QuiverRep { n: self.n, dims: self.dims.clone(), maps }
    }

    /// Composite of the `len` arrows starting at (zero-based) vertex `start`.
    pub fn path(&self, start: usize, len: usize, f: &Field) -> Matrix {
        let mut m = Matrix::identity(self.dims[start]);
        for step in 0..len {
            m = self.maps[(start + step) % self.n].mul(&m, f);
        }
        m
    }

    /// All path matrices `paths[t][l]` for `l` in `0..=total_dim`.
    pub fn all_paths(&self, f: &Field) -> Vec<Vec<Matrix>> {
        let d = self.total_dim();
        (0..self.n)
            .map(|t| {
                let mut out = Vec::with_capacity(d + 1);
                let mut m = Matrix::identity(self.dims[t]);
                out.push(m.clone());
                for step in 0..d {
                    m = self.maps[(t + step) % self.n].mul(&m, f);
                    out.push(m.clone());
                }
                out
            })
            .collect()
    }

    pub fn is_nilpotent(&self, f: &Field) -> bool {
        let d = self.total_dim();
        (0..self.n).all(|t| self.path(t, d, f).is_zero())
    }
}

/// Multisegment of a nilpotent representation.
pub fn classify_rep(rep: &QuiverRep, f: &Field) -> Result<TorsionObject> {
    if !rep.is_nilpotent(f) {
        return Err(Error::NotNilpotent);
    }
    let paths = rep.all_paths(f);
    let d = rep.total_dim();
    Ok(classify_from_ranks(rep.n, d, |t, l| paths[t][l].rank(f)))
}

/// Reconstruct a multisegment from the ranks `rank(t, l)` of the paths of length `l`
/// leaving zero-based vertex `t`, for `l <= max_len`; all paths of length `max_len` vanish.
pub(crate) fn classify_from_ranks(n: usize, max_len: usize, rank: impl Fn(usize, usize) -> usize) -> TorsionObject {
    let mut table = vec![vec![0i64; max_len + 2]; n];
    for (t, row) in table.iter_mut().enumerate() {
        for (l, slot) in row.iter_mut().enumerate().take(max_len + 1) {
            *slot = rank(t, l) as i64;
        }
    }
    // `at_least(t, l)`: segments whose vector at distance `l` from the socle sits at `t`.
    let at_least = |t: usize, l: usize| -> i64 {
        if l > max_len {
            0
        } else {
            table[t][l] - table[t][l + 1]
        }
    };
    let mut segments = Vec::new();
    for socle in 0..n {
        for len in 1..=max_len {
            let top = (socle + n * (len + 1) - len + 1) % n;
            let before_top = (top + n - 1) % n;
            let count = at_least(top, len - 1) - at_least(before_top, len);
            for _ in 0..count.max(0) {
                segments.push(Segment { socle: socle as u64 + 1, len: len as u64 });
            }
        }
    }
    TorsionObject::new(n as u64, segments).expect("classified segments are valid")
}

/// A subrepresentation given by row bases of `U_i` at each vertex.
#[derive(Clone, Debug)]
pub struct Subrep {
    pub bases: Vec<Vec<Vec<u8>>>,
}

/// Every subrepresentation of `rep` with dimension vector `e`, visited by `visit`.
pub fn for_each_subrep(rep: &QuiverRep, e: &[usize], f: &Field, mut visit: impl FnMut(&Subrep)) {
    let n = rep.n;
    let candidates: Vec<Vec<Vec<Vec<u8>>>> = (0..n).map(|i| subspaces(rep.dims[i], e[i], f)).collect();
    let mut chosen: Vec<usize> = vec![0; n];
    fn contains(space: &[Vec<u8>], vectors: &[Vec<u8>], dim: usize, f: &Field) -> bool {
        if vectors.is_empty() {
            return true;
        }
        let mut all: Vec<Vec<u8>> = space.to_vec();
        all.extend(vectors.iter().cloned());
        rank_of_vectors(&all, dim, f) == space.len()
    }
    fn images(rep: &QuiverRep, i: usize, basis: &[Vec<u8>], f: &Field) -> Vec<Vec<u8>> {
        basis.iter().map(|b| rep.maps[i].apply(b, f)).filter(|v| v.iter().any(|x| *x != 0)).collect()
    }
    fn rec(
        rep: &QuiverRep,
        f: &Field,
        candidates: &[Vec<Vec<Vec<u8>>>],
        chosen: &mut Vec<usize>,
        level: usize,
        visit: &mut dyn FnMut(&Subrep),
    ) {
        let n = rep.n;
        if level == n {
            let last = &candidates[n - 1][chosen[n - 1]];
            let first = &candidates[0][chosen[0]];
            if contains(first, &images(rep, n - 1, last, f), rep.dims[0], f) {
                let bases = (0..n).map(|i| candidates[i][chosen[i]].clone()).collect();
                visit(&Subrep { bases });
            }
            return;
        }
        for idx in 0..candidates[level].len() {
            if level > 0 {
                let prev = &candidates[level - 1][chosen[level - 1]];
                let space = &candidates[level][idx];
                if !contains(space, &images(rep, level - 1, prev, f), rep.dims[level], f) {
                    continue;
                }
            }
            chosen[level] = idx;
            rec(rep, f, candidates, chosen, level + 1, visit);
        }
    }
    rec(rep, f, &candidates, &mut chosen, 0, &mut visit);
}

/// Iso-classes of a subrepresentation and of the corresponding quotient.
pub(crate) fn classify_sub_and_quotient(
    rep: &QuiverRep,
    paths: &[Vec<Matrix>],
    sub: &Subrep,
    f: &Field,
) -> (TorsionObject, TorsionObject) {
    let n = rep.n;
    let d = rep.total_dim();
    let sub_rank = |t: usize, l: usize| -> usize {
        let images: Vec<Vec<u8>> = sub.bases[t].iter().map(|b| paths[t][l].apply(b, f)).collect();
        rank_of_vectors(&images, rep.dims[(t + l) % n], f)
    };
    let quotient_rank = |t: usize, l: usize| -> usize {
        let target = (t + l) % n;
        let p = &paths[t][l];
        let mut vectors: Vec<Vec<u8>> = (0..p.cols())
            .map(|c| (0..p.rows()).map(|r| p.get(r, c)).collect())
            .collect();
        vectors.extend(sub.bases[target].iter().cloned());
        rank_of_vectors(&vectors, rep.dims[target], f) - sub.bases[target].len()
    };
    let sub_obj = classify_from_ranks(n, d, sub_rank);
    let quot_obj = classify_from_ranks(n, d, quotient_rank);
    (sub_obj, quot_obj)
}

/// Counts `#{N' <= R : N' = N, R/N' = M}` for all pairs `(M, N)` with `dim N = e`.
pub fn subobject_table(rep: &QuiverRep, e: &[usize], f: &Field) -> BTreeMap<(TorsionObject, TorsionObject), u64> {
    let paths = rep.all_paths(f);
    let mut table = BTreeMap::new();
    for_each_subrep(rep, e, f, |sub| {
        let (sub_obj, quot_obj) = classify_sub_and_quotient(rep, &paths, sub, f);
        *table.entry((quot_obj, sub_obj)).or_insert(0u64) += 1;
    });
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver_hall::object::enumerate_objects;

    #[test]
    fn classify_inverts_build() {
        let f = Field::new(2).unwrap();
        for n in 1..=3u64 {
            for total in 0..=4i64 {
                let mut dims = vec![vec![]];
                for _ in 0..n {
                    dims = dims
                        .into_iter()
                        .flat_map(|p: Vec<i64>| {
                            (0..=total).map(move |x| {
                                let mut v = p.clone();
                                v.push(x);
                                v
                            })
                        })
                        .collect();
                }
                for d in dims.into_iter().filter(|d| d.iter().sum::<i64>() == total) {
                    for obj in enumerate_objects(n, &d).unwrap() {
                        let rep = QuiverRep::build_from(&obj);
                        assert_eq!(classify_rep(&rep, &f).unwrap(), obj);
                    }
                }
            }
        }
    }

    #[test]
    fn jordan_block() {
        let f = Field::new(3).unwrap();
        let rep = QuiverRep::new(vec![2], vec![Matrix::from_rows(2, 2, vec![0, 0, 1, 0])]).unwrap();
        let obj = classify_rep(&rep, &f).unwrap();
        assert_eq!(obj, TorsionObject::segment(1, 1, 2).unwrap());
    }

    #[test]
    fn non_nilpotent_rejected() {
        let f = Field::new(2).unwrap();
        let rep = QuiverRep::new(vec![1], vec![Matrix::identity(1)]).unwrap();
        assert!(matches!(classify_rep(&rep, &f), Err(Error::NotNilpotent)));
    }

    #[test]
    fn simple_submodule_count() {
        let f = Field::new(2).unwrap();
        let r = TorsionObject::new(3, vec![Segment { socle: 1, len: 1 }, Segment { socle: 2, len: 1 }]).unwrap();
        let table = subobject_table(&QuiverRep::build_from(&r), &[0, 1, 0], &f);
        assert_eq!(table.len(), 1);
        assert_eq!(table.values().copied().collect::<Vec<_>>(), vec![1]);
    }
}
