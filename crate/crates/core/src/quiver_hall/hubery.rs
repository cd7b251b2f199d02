//! Hubery's central elements `c_r` and the primitive generators `z_r` of the centre.

use super::element::{HallElement, TensorElement};
use super::hall::HallContext;
use super::object::enumerate_objects;
use crate::coefficients::Scalar;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Which family of central elements to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HuberyKind {
    C,
    Z,
}

/// `c_r = sum (-1)^{dim End F} |Aut F| 1_F` over objects of dimension `r delta` with
/// square-free socle.
pub fn hubery_c(ctx: &HallContext, r: u64, n: u64) -> Result<HallElement> {
    if r == 0 {
        return Err(Error::invalid("Hubery elements are indexed by r >= 1"));
    }
    let q = ctx.q();
    let d = vec![r as i64; n as usize];
    let mut out = HallElement::zero(n, q);
    for obj in enumerate_objects(n, &d)? {
        if !obj.has_square_free_socle() {
            continue;
        }
        let ae = ctx.aut_and_end(&obj)?;
        let sign = if ae.end_dim % 2 == 0 { 1 } else { -1 };
        out.add_term(obj, vec![0; n as usize], Scalar::from_int(q, sign * ae.aut_order as i64));
    }
    Ok(out)
}

/// `z_r = r c_r - sum_{l < r} z_l c_{r - l}`.
pub fn hubery_z(ctx: &HallContext, r: u64, n: u64) -> Result<HallElement> {
    if r == 0 {
        return Err(Error::invalid("Hubery elements are indexed by r >= 1"));
    }
    let q = ctx.q();
    let cs: Vec<HallElement> = (1..=r).map(|k| hubery_c(ctx, k, n)).collect::<Result<_>>()?;
    let mut zs: Vec<HallElement> = Vec::with_capacity(r as usize);
    for k in 1..=r as usize {
        let mut z = cs[k - 1].scale(&Scalar::from_int(q, k as i64));
        for l in 1..k {
            z = z.sub(&ctx.product(&zs[l - 1], &cs[k - l - 1])?)?;
        }
        zs.push(z);
    }
    Ok(zs.pop().expect("r >= 1"))
}

/// Either family, by kind.
pub fn hubery_element(ctx: &HallContext, kind: HuberyKind, r: u64, n: u64) -> Result<HallElement> {
    match kind {
        HuberyKind::C => hubery_c(ctx, r, n),
        HuberyKind::Z => hubery_z(ctx, r, n),
    }
}

/// Checks `Delta~(x) = x (x) 1 + k_{deg x} (x) x` for an element homogeneous of degree `total`,
/// bidegree by bidegree. Returns the first failing bidegree.
pub fn primitivity_defect(ctx: &HallContext, x: &HallElement, total: &[i64]) -> Result<Option<(Vec<i64>, Vec<i64>)>> {
    let n = x.n();
    let q = ctx.q();
    let zero = vec![0i64; n as usize];
    let mut betas = super::object::dimension_vectors_below(total);
    betas.push(zero.clone());
    for beta in betas {
        let alpha: Vec<i64> = total.iter().zip(&beta).map(|(a, b)| a - b).collect();
        let got = ctx.coproduct_component(x, &alpha, &beta)?;
        let expected = if beta == zero {
            TensorElement::pure(x, &HallElement::one(n, q))?
        } else if alpha == zero {
            TensorElement::pure(&HallElement::k_element(n, total.to_vec(), q), x)?
        } else {
            TensorElement::zero(n, q)
        };
        if got != expected {
            return Ok(Some((alpha, beta)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver_hall::object::TorsionObject;

    #[test]
    fn c1_at_n2() {
        for q in [2u64, 3] {
            let ctx = HallContext::new(q).unwrap();
            let c1 = hubery_c(&ctx, 1, 2).unwrap();
            let qi = q as i64;
            let mut expected = HallElement::zero(2, q);
            expected.add_term(TorsionObject::segment(2, 1, 2).unwrap(), vec![0, 0], Scalar::from_int(q, -(qi - 1)));
            expected.add_term(TorsionObject::segment(2, 2, 2).unwrap(), vec![0, 0], Scalar::from_int(q, -(qi - 1)));
            let split = TorsionObject::simple(2, 1).direct_sum(&TorsionObject::simple(2, 2)).unwrap();
            expected.add_term(split, vec![0, 0], Scalar::from_int(q, (qi - 1) * (qi - 1)));
            assert_eq!(c1, expected);
            assert_eq!(hubery_z(&ctx, 1, 2).unwrap(), c1);
        }
    }
}
