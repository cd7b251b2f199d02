//! Finite fields `F_q` with lookup tables.

use crate::error::{Error, Result};
use crate::rational::prime_power;

/// The field with `q = p^k` elements; elements are `0..q` as `u8`.
///
/// For `k > 1` an element encodes the coefficients of a polynomial of degree
/// `< k` in base `p`, reduced modulo a monic irreducible polynomial.
#[derive(Debug, Clone)]
pub struct Field {
    q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl Field {
    pub fn new(q: u64) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > 256 {
            return Err(Error::invalid(format!("field size {q} exceeds 256")));
        }
        let (p, q) = (p as usize, q as usize);
        let digits = |x: usize| -> Vec<usize> { (0..k).map(|i| (x / p.pow(i)) % p).collect() };
        let encode = |d: &[usize]| -> usize { d.iter().enumerate().map(|(i, c)| c * p.pow(i as u32)).sum() };
        let modulus = irreducible_poly(p, k as usize);
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            for b in 0..q {
                let (da, db) = (digits(a), digits(b));
                let sum: Vec<usize> = da.iter().zip(db.iter()).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = encode(&sum) as u8;
                let mut prod = vec![0usize; 2 * k as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for deg in (k as usize..prod.len()).rev() {
                    let c = prod[deg];
                    if c != 0 {
                        for (i, m) in modulus.iter().enumerate().take(k as usize) {
                            let idx = deg - k as usize + i;
                            prod[idx] = (prod[idx] + (p - (c * m) % p)) % p;
                        }
                        prod[deg] = 0;
                    }
                }
                mul[a * q + b] = encode(&prod[..k as usize]) as u8;
            }
        }
        let mut neg = vec![0u8; q];
        let mut inv = vec![0u8; q];
        for a in 0..q {
            for b in 0..q {
                if add[a * q + b] == 0 {
                    neg[a] = b as u8;
                }
                if mul[a * q + b] == 1 {
                    inv[a] = b as u8;
                }
            }
        }
        Ok(Field { q, add, mul, neg, inv })
    }

    pub fn size(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse of a nonzero element.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        debug_assert!(a != 0, "inverse of zero");
        self.inv[a as usize]
    }
}

/// Coefficients `m_0..m_{k-1}` of a monic irreducible `z^k + sum m_i z^i` over `F_p`.
fn irreducible_poly(p: usize, k: usize) -> Vec<usize> {
    if k == 1 {
        return vec![0];
    }
    let total = p.pow(k as u32);
    'candidates: for code in 0..total {
        let low: Vec<usize> = (0..k).map(|i| (code / p.pow(i as u32)) % p).collect();
        if low[0] == 0 {
            continue;
        }
        let mut poly = low.clone();
        poly.push(1);
        for deg in 1..=k / 2 {
            for dcode in 0..p.pow(deg as u32) {
                let mut divisor: Vec<usize> = (0..deg).map(|i| (dcode / p.pow(i as u32)) % p).collect();
                divisor.push(1);
                if poly_divides(&divisor, &poly, p) {
                    continue 'candidates;
                }
            }
        }
        return low;
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

fn poly_divides(divisor: &[usize], poly: &[usize], p: usize) -> bool {
    let mut rem = poly.to_vec();
    let d = divisor.len() - 1;
    for deg in (d..rem.len()).rev() {
        let c = rem[deg];
        if c != 0 {
            for (i, m) in divisor.iter().enumerate() {
                let idx = deg - d + i;
                rem[idx] = (rem[idx] + p - (c * m) % p) % p;
            }
        }
    }
    rem[..d].iter().all(|c| *c == 0)
}
