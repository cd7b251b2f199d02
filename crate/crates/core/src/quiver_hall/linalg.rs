//! Dense linear algebra over a finite field.

use super::field::Field;

/// Row-major matrix over `F_q`; it acts on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<u8>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has the wrong length");
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, x: u8) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul(&self, other: &Matrix, f: &Field) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let cur = out.get(i, j);
                        out.set(i, j, f.add(cur, f.mul(a, b)));
                    }
                }
            }
        }
        out
    }

    /// Image of a column vector.
    pub fn apply(&self, v: &[u8], f: &Field) -> Vec<u8> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u8;
                for (k, x) in v.iter().enumerate() {
                    if *x != 0 {
                        acc = f.add(acc, f.mul(self.get(i, k), *x));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn rank(&self, f: &Field) -> usize {
        row_reduce(self.clone(), f).1.len()
    }

    pub fn is_invertible(&self, f: &Field) -> bool {
        self.rows == self.cols && self.rank(f) == self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| *x == 0)
    }
}

/// Reduced row echelon form and pivot columns.
pub fn row_reduce(mut m: Matrix, f: &Field) -> (Matrix, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| m.get(i, c) != 0) else { continue };
        if p != r {
            for j in 0..m.cols {
                let (a, b) = (m.get(r, j), m.get(p, j));
                m.set(r, j, b);
                m.set(p, j, a);
            }
        }
        let inv = f.inv(m.get(r, c));
        for j in 0..m.cols {
            let x = m.get(r, j);
            m.set(r, j, f.mul(x, inv));
        }
        for i in 0..m.rows {
            let factor = m.get(i, c);
            if i != r && factor != 0 {
                for j in 0..m.cols {
                    let x = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, x);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

/// Rank of a list of vectors of equal length.
pub fn rank_of_vectors(vectors: &[Vec<u8>], len: usize, f: &Field) -> usize {
    if vectors.is_empty() || len == 0 {
        return 0;
    }
    let data = vectors.iter().flat_map(|v| v.iter().copied()).collect();
    Matrix::from_rows(vectors.len(), len, data).rank(f)
}

/// Basis of the kernel of `m` (as column vectors).
pub fn kernel_basis(m: &Matrix, f: &Field) -> Vec<Vec<u8>> {
    let (rref, pivots) = row_reduce(m.clone(), f);
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u8; m.cols()];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(rref.get(r, fc));
            }
            v
        })
        .collect()
}

/// All `k`-dimensional subspaces of `F_q^d`, each given by its RREF row basis.
pub fn subspaces(d: usize, k: usize, f: &Field) -> Vec<Vec<Vec<u8>>> {
    let mut out = Vec::new();
    if k > d {
        return out;
    }
    for pivots in combinations(d, k) {
        let mut free = Vec::new();
        for (r, &p) in pivots.iter().enumerate() {
            for c in p + 1..d {
                if !pivots.contains(&c) {
                    free.push((r, c));
                }
            }
        }
        let q = f.size();
        let total = q.pow(free.len() as u32);
        for code in 0..total {
            let mut rows = vec![vec![0u8; d]; k];
            for (r, &p) in pivots.iter().enumerate() {
                rows[r][p] = 1;
            }
            let mut rest = code;
            for &(r, c) in &free {
                rows[r][c] = (rest % q) as u8;
                rest /= q;
            }
            out.push(rows);
        }
    }
    out
}

/// Number of `k`-dimensional subspaces of `F_q^d` (Gaussian binomial).
#[cfg(test)]
fn grassmannian_size(d: usize, k: usize, q: u64) -> u128 {
    if k > d {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= q.pow((d - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// Increasing `k`-subsets of `0..d` in lexicographic order.
pub fn combinations(d: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, d: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            if d - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, d, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, d, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        for q in [2u64, 3, 4] {
            let f = Field::new(q).unwrap();
            for d in 0..=4 {
                for k in 0..=d {
                    let subs = subspaces(d, k, &f);
                    assert_eq!(subs.len() as u128, grassmannian_size(d, k, q));
                }
            }
        }
    }

    #[test]
    fn kernel_has_complementary_dimension() {
        let f = Field::new(3).unwrap();
        let m = Matrix::from_rows(2, 4, vec![1, 2, 0, 1, 2, 1, 0, 2]);
        let ker = kernel_basis(&m, &f);
        assert_eq!(ker.len() + m.rank(&f), 4);
        for v in ker {
            assert!(m.apply(&v, &f).iter().all(|x| *x == 0));
        }
    }
}
