//! Exact rational-function identities for the kernel of `varpi^h`.
//!
//! Two applications of `varpi^h` on the same pair of slots cannot be composed
//! inside the completed space, because the second one expands in the inverse
//! ratio. The identity `varpi^h o varpi^h = id` is therefore checked on the
//! rational functions themselves: with `A` and `B` the coefficients of the
//! label-swapping and label-preserving terms and `f'(z) = f(1/z)`,
//!
//! * `h h' = 1` for equal labels,
//! * `A A' + B B' = 1` and `z B A' + A B' = 0` for distinct labels.
//!
//! This is what makes the symmetrization `sum_sigma varpi_sigma` invariant under
//! precomposition with `varpi` on adjacent slots.

use crate::coefficients::{poly_mul, RationalFunctionSeries, Scalar};
use crate::error::Result;

/// A quotient of polynomials in `z`, compared by cross-multiplication.
#[derive(Clone, Debug)]
struct RatFn {
    q: u64,
    num: Vec<Scalar>,
    den: Vec<Scalar>,
}

fn trim(mut p: Vec<Scalar>) -> Vec<Scalar> {
    while p.last().is_some_and(Scalar::is_zero) {
        p.pop();
    }
    p
}

fn shift(p: &[Scalar], k: usize, q: u64) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(q); k];
    out.extend_from_slice(p);
    out
}

impl RatFn {
    fn new(q: u64, num: Vec<Scalar>, den: Vec<Scalar>) -> Self {
        RatFn { q, num: trim(num), den: trim(den) }
    }

    fn constant(q: u64, c: Scalar) -> Self {
        RatFn::new(q, vec![c], vec![Scalar::one(q)])
    }

    fn z(q: u64) -> Self {
        RatFn::new(q, vec![Scalar::zero(q), Scalar::one(q)], vec![Scalar::one(q)])
    }

    fn mul(&self, other: &RatFn) -> RatFn {
        RatFn::new(self.q, poly_mul(&self.num, &other.num, self.q), poly_mul(&self.den, &other.den, self.q))
    }

    fn add(&self, other: &RatFn) -> RatFn {
        let a = poly_mul(&self.num, &other.den, self.q);
        let b = poly_mul(&other.num, &self.den, self.q);
        let len = a.len().max(b.len());
        let sum = (0..len)
            .map(|i| {
                let x = a.get(i).cloned().unwrap_or_else(|| Scalar::zero(self.q));
                let y = b.get(i).cloned().unwrap_or_else(|| Scalar::zero(self.q));
                x + y
            })
            .collect();
        RatFn::new(self.q, sum, poly_mul(&self.den, &other.den, self.q))
    }

    /// The substitution `z -> 1/z`.
    fn invert_variable(&self) -> RatFn {
        let (dn, dd) = (self.num.len().saturating_sub(1), self.den.len().saturating_sub(1));
        let rev = |p: &[Scalar]| p.iter().rev().cloned().collect::<Vec<_>>();
        RatFn::new(self.q, shift(&rev(&self.num), dd, self.q), shift(&rev(&self.den), dn, self.q))
    }

    fn equals(&self, other: &RatFn) -> bool {
        trim(poly_mul(&self.num, &other.den, self.q)) == trim(poly_mul(&other.num, &self.den, self.q))
    }
}

/// Checks the three unitarity identities of `varpi^h` exactly.
pub fn unitarity_check(h: &RationalFunctionSeries) -> Result<bool> {
    let q = h.q();
    let kernel = RatFn::new(q, h.numerator().to_vec(), h.denominator().to_vec());
    let t = Scalar::v_pow(q, -2);
    let one = Scalar::one(q);
    let damp = RatFn::new(q, vec![one.clone()], vec![one.clone(), -t.clone()]);
    let swap = kernel
        .mul(&RatFn::new(q, vec![Scalar::v_pow(q, -1), -Scalar::v_pow(q, -1)], vec![one.clone()]))
        .mul(&damp);
    let stay = kernel.mul(&RatFn::constant(q, &one - &t)).mul(&damp);
    let unit = RatFn::constant(q, one);
    let zero = RatFn::constant(q, Scalar::zero(q));
    let (kernel_i, swap_i, stay_i) = (kernel.invert_variable(), swap.invert_variable(), stay.invert_variable());

    let equal_labels = kernel.mul(&kernel_i).equals(&unit);
    let diagonal = swap.mul(&swap_i).add(&stay.mul(&stay_i)).equals(&unit);
    let off_diagonal = RatFn::z(q).mul(&stay).mul(&swap_i).add(&swap.mul(&stay_i)).equals(&zero);
    Ok(equal_labels && diagonal && off_diagonal)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invert_variable_round_trips() {
        let f = RatFn::new(
            2,
            vec![Scalar::from_int(2, 1), Scalar::from_int(2, 3)],
            vec![Scalar::from_int(2, 1), Scalar::zero(2), Scalar::from_int(2, -5)],
        );
        assert!(f.invert_variable().invert_variable().equals(&f));
    }

    #[test]
    fn constant_kernel_is_not_unitary_unless_it_squares_to_one() {
        let two = RationalFunctionSeries::from_integers(2, &[2], &[1], 2).unwrap();
        assert!(!unitarity_check(&two).unwrap());
        let one = RationalFunctionSeries::from_integers(2, &[1], &[1], 2).unwrap();
        assert!(unitarity_check(&one).unwrap());
    }
}
