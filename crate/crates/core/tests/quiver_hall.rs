//! Hall-model checks: appendix product identities, associativity, coproduct and pairing.

use circle_hall::quiver_hall::{
    dimension_vectors_below, enumerate_objects, omega_pullback, HallContext, HallElement, Matrix, QuiverRep,
    TensorElement, TorsionObject,
};
use circle_hall::{Rational, Scalar};
use num_bigint::BigInt;

fn seg(n: u64, socle: u64, len: u64) -> TorsionObject {
    TorsionObject::segment(n, socle, len).unwrap()
}

fn one(obj: &TorsionObject, q: u64) -> HallElement {
    HallElement::basis(obj, q)
}

fn v(q: u64, k: i64) -> Scalar {
    Scalar::v_pow(q, k)
}

#[test]
fn adjacent_simples_multiply_as_in_the_appendix() {
    for q in [2u64, 3] {
        let ctx = HallContext::new(q).unwrap();
        let (s1, s2) = (TorsionObject::simple(3, 1), TorsionObject::simple(3, 2));
        let split = s1.direct_sum(&s2).unwrap();
        let forward = ctx.product(&one(&s1, q), &one(&s2, q)).unwrap();
        let expected = one(&seg(3, 2, 2), q).add(&one(&split, q)).unwrap().scale(&v(q, -1));
        assert_eq!(forward, expected);
        let backward = ctx.product(&one(&s2, q), &one(&s1, q)).unwrap();
        assert_eq!(backward, one(&split, q));
    }
}

#[test]
fn unit_is_neutral() {
    let ctx = HallContext::new(2).unwrap();
    let x = one(&seg(3, 1, 2), 2).add(&one(&TorsionObject::simple(3, 3), 2)).unwrap();
    let unit = HallElement::one(3, 2);
    assert_eq!(ctx.product(&unit, &x).unwrap(), x);
    assert_eq!(ctx.product(&x, &unit).unwrap(), x);
}

#[test]
fn generators_associate() {
    for q in [2u64, 3] {
        let ctx = HallContext::new(q).unwrap();
        for n in 1..=3u64 {
            let gens: Vec<HallElement> = (1..=n).map(|i| one(&TorsionObject::simple(n, i), q)).collect();
            for a in &gens {
                for b in &gens {
                    for c in &gens {
                        let left = ctx.product(&ctx.product(a, b).unwrap(), c).unwrap();
                        let right = ctx.product(a, &ctx.product(b, c).unwrap()).unwrap();
                        assert_eq!(left, right);
                    }
                }
            }
        }
    }
}

#[test]
fn products_are_graded() {
    let ctx = HallContext::new(2).unwrap();
    let a = one(&seg(3, 1, 2), 2);
    let b = one(&TorsionObject::simple(3, 2), 2);
    let p = ctx.product(&a, &b).unwrap();
    assert_eq!(p.degrees(), vec![vec![1, 1, 1]]);
}

#[test]
fn hall_numbers_do_not_depend_on_the_model() {
    let ctx = HallContext::new(3).unwrap();
    let f = ctx.field();
    let r = seg(2, 1, 2).direct_sum(&TorsionObject::simple(2, 1)).unwrap();
    let rep = QuiverRep::build_from(&r);
    // Base change at vertex 1 by a non-trivial invertible matrix.
    let g1 = Matrix::from_rows(2, 2, vec![1, 1, 0, 2]);
    let g1_inv = Matrix::from_rows(2, 2, vec![1, 1, 0, 2]);
    assert_eq!(g1.mul(&g1_inv, f), Matrix::identity(2));
    let id = Matrix::identity(rep.dims()[1]);
    let twisted = rep.change_basis(&[g1, id.clone()], &[g1_inv, id], f);
    assert_ne!(twisted, rep);
    for beta in dimension_vectors_below(&r.dim_vector()) {
        let alpha: Vec<i64> = r.dim_vector().iter().zip(&beta).map(|(a, b)| a - b).collect();
        for m in enumerate_objects(2, &alpha).unwrap() {
            for nn in enumerate_objects(2, &beta).unwrap() {
                assert_eq!(
                    ctx.hall_number(&r, &m, &nn).unwrap(),
                    ctx.hall_number_in_model(&twisted, &m, &nn).unwrap()
                );
            }
        }
    }
}

#[test]
fn coproduct_of_a_length_two_segment() {
    let q = 2;
    let ctx = HallContext::new(q).unwrap();
    let x = one(&seg(2, 2, 2), q);
    let comp = ctx.coproduct_component(&x, &[1, 0], &[0, 1]).unwrap();
    let mut expected = TensorElement::zero(2, q);
    let coeff = v(q, 1).scale(&Rational::new(BigInt::from(1), BigInt::from(2)));
    expected.add_term((TorsionObject::simple(2, 1), vec![0, 1]), (TorsionObject::simple(2, 2), vec![0, 0]), coeff);
    assert_eq!(comp, expected);
    let top = ctx.coproduct_component(&x, &[1, 1], &[0, 0]).unwrap();
    assert_eq!(top, TensorElement::pure(&x, &HallElement::one(2, q)).unwrap());
}

#[test]
fn split_object_coproduct_has_both_orders() {
    let q = 2;
    let ctx = HallContext::new(q).unwrap();
    let split = TorsionObject::simple(2, 1).direct_sum(&TorsionObject::simple(2, 2)).unwrap();
    let x = one(&split, q);
    assert!(!ctx.coproduct_component(&x, &[1, 0], &[0, 1]).unwrap().is_zero());
    assert!(!ctx.coproduct_component(&x, &[0, 1], &[1, 0]).unwrap().is_zero());
}

#[test]
fn green_pairing_examples() {
    let q = 2;
    let ctx = HallContext::new(q).unwrap();
    let s1 = one(&TorsionObject::simple(2, 1), q);
    let s2 = one(&TorsionObject::simple(2, 2), q);
    assert_eq!(ctx.green_pairing(&s1, &s1).unwrap(), Scalar::from_int(q, 1));
    assert!(ctx.green_pairing(&s1, &s2).unwrap().is_zero());
    let e = s1.scale(&Scalar::u_pow(q, 1));
    let expected = Scalar::one(q).checked_div(&circle_hall::coefficients::v_minus_v_inverse(q)).unwrap();
    assert_eq!(ctx.green_pairing(&e, &e).unwrap(), expected);
}

#[test]
fn small_adjunction_instance() {
    let q = 3;
    let ctx = HallContext::new(q).unwrap();
    let gens: Vec<HallElement> = (1..=2).map(|i| one(&TorsionObject::simple(2, i), q)).collect();
    for x in &gens {
        for y in &gens {
            let xy = ctx.product(x, y).unwrap();
            for z in enumerate_objects(2, &xy.degrees()[0]).unwrap() {
                let z = one(&z, q);
                let lhs = ctx.green_pairing(&xy, &z).unwrap();
                let rhs = ctx.tensor_pairing(&TensorElement::pure(x, y).unwrap(), &ctx.coproduct(&z).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn omega_examples() {
    let q = 2;
    let ctx = HallContext::new(q).unwrap();
    let s1 = one(&TorsionObject::simple(2, 1), q);
    let s2 = one(&TorsionObject::simple(2, 2), q);
    assert_eq!(omega_pullback(&s1, 4).unwrap(), one(&seg(4, 2, 2), q));
    assert_eq!(omega_pullback(&s1, 2).unwrap(), s1);
    assert!(omega_pullback(&s1, 3).is_err());
    let lhs = omega_pullback(&ctx.product(&s1, &s2).unwrap(), 4).unwrap();
    let rhs = ctx
        .product(&omega_pullback(&s1, 4).unwrap(), &omega_pullback(&s2, 4).unwrap())
        .unwrap();
    assert_eq!(lhs, rhs);
    assert_eq!(omega_pullback(&s1, 4).unwrap().valuation().unwrap(), 2);
    assert_eq!(one(&TorsionObject::simple(3, 1), q).valuation().unwrap(), 3);
}

#[test]
fn centrality_witness() {
    let q = 2;
    let ctx = HallContext::new(q).unwrap();
    let s1 = one(&TorsionObject::simple(2, 1), q);
    assert_eq!(ctx.is_central(&s1, &[1, 1]).unwrap(), Some(TorsionObject::simple(2, 2)));
    assert_eq!(ctx.is_central(&HallElement::one(2, q), &[1, 1]).unwrap(), None);
}

#[test]
fn k_conjugation_twist() {
    let q = 2;
    let ctx = HallContext::new(q).unwrap();
    let s1 = one(&TorsionObject::simple(2, 1), q);
    let k = HallElement::k_element(2, vec![1, 0], q);
    let kinv = HallElement::k_element(2, vec![-1, 0], q);
    let conj = ctx.product(&ctx.product(&k, &s1).unwrap(), &kinv).unwrap();
    assert_eq!(conj, s1.scale(&v(q, 2)));
}
