//! Mirror model checks: Hom/Ext values, Hall products, comparison with the quiver
//! model and the D-type table.

use circle_hall::mirror::{
    automorphism_order, compare_with_quiver, dtype_hom_ext, euler_form_violations, evaluate_positive,
    generator_product, hom_ext_dims, line_hom_ext, mirror_hall_product, object_hom_ext, riedtmann_numbers,
    strict_intervals, DtypeCase, HomExt, MirrorElement, MirrorInterval, MirrorObject, ALL_DTYPE_CASES,
};
use circle_hall::circle_quantum::{parse_word, GeneratorExpr};
use circle_hall::quiver_hall::{HallContext, HallElement, TorsionObject};
use circle_hall::rational::rat;
use circle_hall::{Error, Rational, Scalar};
use num_bigint::BigInt;
use proptest::prelude::*;

fn iv(text: &str) -> MirrorInterval {
    MirrorInterval::parse(text).unwrap()
}

fn obj(parts: &[&str]) -> MirrorObject {
    MirrorObject::new(parts.iter().map(|p| iv(p)).collect())
}

fn dims(hom: u64, ext1: u64) -> HomExt {
    HomExt { hom, ext1 }
}

fn v(q: u64, k: i64) -> Scalar {
    Scalar::v_pow(q, k)
}

fn basis(parts: &[&str], q: u64) -> MirrorElement {
    MirrorElement::basis(&obj(parts), q)
}

#[test]
fn join_case_has_a_one_dimensional_ext() {
    assert_eq!(hom_ext_dims(&iv("0,1/2"), &iv("1/2,1")), dims(0, 1));
    assert_eq!(hom_ext_dims(&iv("1/2,1"), &iv("0,1/2")), dims(0, 1));
}

#[test]
fn nest_with_shared_right_endpoint_has_a_one_dimensional_hom() {
    assert_eq!(hom_ext_dims(&iv("1/4,1/2"), &iv("0,1/2")), dims(1, 0));
    assert_eq!(hom_ext_dims(&iv("0,1/2"), &iv("1/4,1/2")), dims(0, 0));
}

#[test]
fn disjoint_closures_do_not_interact() {
    for (a, b) in [("0,1/4", "1/2,3/4"), ("1/8,1/4", "1/3,1/2"), ("2/3,5/6", "0,1/3")] {
        assert_eq!(hom_ext_dims(&iv(a), &iv(b)), dims(0, 0));
        assert_eq!(hom_ext_dims(&iv(b), &iv(a)), dims(0, 0));
    }
}

#[test]
fn long_intervals_pick_up_several_translates() {
    let long = iv("0,3/2");
    assert_eq!(hom_ext_dims(&long, &long), dims(2, 1));
    assert_eq!(object_hom_ext(&obj(&["0,1/2", "1/2,1"]), &obj(&["1/2,1"])), dims(1, 1));
}

#[test]
fn line_rule_does_not_wrap() {
    let (a, b, c, d) = (rat(1, 2), rat(1, 1), rat(0, 1), rat(1, 2));
    assert_eq!(line_hom_ext(&a, &b, &c, &d).unwrap(), dims(0, 0));
    assert_eq!(line_hom_ext(&c, &d, &a, &b).unwrap(), dims(0, 1));
    assert!(line_hom_ext(&b, &a, &c, &d).is_err());
}

/// Independent oracle: Hom and Ext dimensions of the corresponding quiver
/// representations, computed by linear algebra over `F_2`.
#[test]
fn hom_and_ext_agree_with_the_quiver_model() {
    let ctx = HallContext::with_bound(2, 8).unwrap();
    for n in 1..=3u64 {
        let mut intervals = strict_intervals(n);
        for r in 0..n as i64 {
            for len in [n as i64, n as i64 + 1] {
                intervals.push(MirrorInterval::new(rat(r - len, n as i64), rat(r, n as i64)).unwrap());
            }
        }
        for a in &intervals {
            for b in &intervals {
                let (ta, tb) = (TorsionObject::from_arc(n, &a.to_arc()).unwrap(), TorsionObject::from_arc(n, &b.to_arc()).unwrap());
                let data = ctx.ext_data(&ta, &tb).unwrap();
                let expected = dims(data.hom_dim as u64, data.ext_dim as u64);
                assert_eq!(hom_ext_dims(a, b), expected, "{a} {b}");
            }
        }
    }
}

#[test]
fn euler_form_matches_hom_minus_ext() {
    assert!(euler_form_violations(6).is_empty());
}

#[test]
fn join_product_matches_the_display() {
    for q in [2u64, 3, 4] {
        let (j1, j2) = (iv("0,1/3"), iv("1/3,2/3"));
        let half_squared = v(q, 1);
        let forward = mirror_hall_product(&j1, &j2, q).unwrap().scale(&half_squared);
        let join = basis(&["0,2/3"], q);
        let split = basis(&["0,1/3", "1/3,2/3"], q);
        let expected = join.add(&split).unwrap().scale(&v(q, -1)).scale(&v(q, 1));
        assert_eq!(forward, expected);
        let backward = mirror_hall_product(&j2, &j1, q).unwrap().scale(&half_squared);
        assert_eq!(backward, split.scale(&v(q, 1)));

        let combination = forward.scale(&Scalar::u_pow(q, 1)).sub(&backward.scale(&Scalar::u_pow(q, -1))).unwrap();
        assert_eq!(combination, join.scale(&Scalar::u_pow(q, 1)));
    }
}

#[test]
fn generator_squares_count_flags() {
    for q in [2u64, 3] {
        let j = iv("0,1/2");
        let square = mirror_hall_product(&j, &j, q).unwrap();
        let expected = basis(&["0,1/2", "0,1/2"], q).scale(&Scalar::from_int(q, q as i64 + 1)).scale(&v(q, 1));
        assert_eq!(square, expected);
    }
}

#[test]
fn automorphism_orders() {
    assert_eq!(automorphism_order(&obj(&["0,1/2"]), 3), BigInt::from(2));
    assert_eq!(automorphism_order(&obj(&["0,1/2", "0,1/2"]), 2), BigInt::from(6));
    assert_eq!(automorphism_order(&obj(&["1/4,1/2", "0,1/2"]), 2), BigInt::from(2));
    assert_eq!(automorphism_order(&obj(&["0,3/2"]), 2), BigInt::from(2));
}

#[test]
fn riedtmann_numbers_are_integers() {
    let q = 3;
    for a in strict_intervals(3) {
        for b in strict_intervals(3) {
            for c in strict_intervals(3) {
                for (m, f) in riedtmann_numbers(&a, &obj(&[&b.to_string(), &c.to_string()]), q).unwrap() {
                    assert!(f.is_integer() && f > Rational::from_integer(0.into()), "{a} {b} {c} {m}");
                }
            }
        }
    }
}

#[test]
fn generator_times_two_summands_matches_the_quiver_model() {
    for q in [2u64, 3] {
        let ctx = HallContext::with_bound(q, 6).unwrap();
        let n = 3;
        for a in strict_intervals(n) {
            for b in strict_intervals(n) {
                for c in strict_intervals(n) {
                    let right = obj(&[&b.to_string(), &c.to_string()]);
                    let mirror = generator_product(&a, &right, q).unwrap().to_quiver(n).unwrap();
                    let left = HallElement::basis(&TorsionObject::from_arc(n, &a.to_arc()).unwrap(), q);
                    let r = HallElement::basis(&TorsionObject::from_arcs(n, &right.arcs()).unwrap(), q);
                    assert_eq!(mirror, ctx.product(&left, &r).unwrap(), "{a} * ({right})");
                }
            }
        }
    }
}

#[test]
fn three_summands_on_the_right_are_rejected() {
    let right = obj(&["0,1/3", "1/3,2/3", "2/3,1"]);
    assert!(matches!(generator_product(&iv("0,1/3"), &right, 2), Err(Error::BoundExceeded { .. })));
    assert!(generator_product(&iv("0,1"), &obj(&["0,1/3"]), 2).is_err());
}

#[test]
fn positive_words_evaluate_with_k_twists() {
    let q = 2;
    let word = parse_word("K[0,1/2) E[0,1/2) Kinv[0,1/2)").unwrap();
    let value = evaluate_positive(&GeneratorExpr::word(q, word)).unwrap();
    let e = evaluate_positive(&GeneratorExpr::word(q, parse_word("E[0,1/2)").unwrap())).unwrap();
    assert_eq!(value, e.scale(&v(q, 2)));
    assert!(evaluate_positive(&GeneratorExpr::word(q, parse_word("F[0,1/2)").unwrap())).is_err());
}

#[test]
fn comparison_with_the_quiver_model() {
    for n in [2u64, 3] {
        for q in [2u64, 3] {
            let ctx = HallContext::new(q).unwrap();
            let report = compare_with_quiver(&ctx, n).unwrap();
            assert!(report.passed, "{:?}", report.mismatches);
            let generators = n * (n - 1);
            assert_eq!(report.generator_pairs as u64, generators * generators);
            assert!(report.relation_instances > 0);
        }
    }
}

#[test]
fn comparison_without_generators_is_vacuous() {
    let ctx = HallContext::new(2).unwrap();
    let report = compare_with_quiver(&ctx, 1).unwrap();
    assert!(report.passed);
    assert_eq!(report.generator_pairs, 0);
    assert!(matches!(compare_with_quiver(&ctx, 9), Err(Error::BoundExceeded { .. })));
}

#[test]
fn dtype_table_is_reproduced() {
    let a = rat(2, 3);
    let b = rat(1, 3);
    let t = dtype_hom_ext(DtypeCase::T, Some(&a), None).unwrap();
    assert_eq!((t[0].total(), t[1].dims.get(&1).copied()), (0, Some(1)));
    let tp = dtype_hom_ext(DtypeCase::TPrime, None, None).unwrap();
    assert_eq!((tp[0].dims.get(&1).copied(), tp[1].total()), (Some(1), 0));
    let y = dtype_hom_ext(DtypeCase::Y, Some(&a), Some(&b)).unwrap();
    assert_eq!(y[0].dims.get(&0).copied(), Some(1));
    assert_eq!(dtype_hom_ext(DtypeCase::Y, Some(&b), Some(&a)).unwrap()[0].total(), 0);
    assert_eq!(dtype_hom_ext(DtypeCase::Y, Some(&a), Some(&a)).unwrap()[0].total(), 0);
    assert_eq!(dtype_hom_ext(DtypeCase::YPrime, Some(&a), Some(&b)).unwrap()[0].total(), 1);
    assert_eq!(dtype_hom_ext(DtypeCase::V, None, None).unwrap()[0].total(), 0);
    assert_eq!(dtype_hom_ext(DtypeCase::VPrime, None, None).unwrap()[0].total(), 0);
    assert!(dtype_hom_ext(DtypeCase::Y, Some(&a), None).is_err());
    assert!(dtype_hom_ext(DtypeCase::V, Some(&rat(3, 2)), None).is_err());
    assert!("W".parse::<DtypeCase>().is_err());
    for case in ALL_DTYPE_CASES {
        assert_eq!(case.name().parse::<DtypeCase>().unwrap(), case);
    }
}

#[test]
fn mirror_elements_round_trip_through_json() {
    let x = mirror_hall_product(&iv("0,1/3"), &iv("1/3,2/3"), 2).unwrap();
    let json = serde_json::to_value(&x).unwrap();
    assert_eq!(json["q"], 2);
    assert_eq!(json["terms"].as_array().unwrap().len(), 2);
    assert_eq!(json["terms"][0]["object"][0], "(0,1/3]");
}

fn arb_interval() -> impl Strategy<Value = MirrorInterval> {
    (1i64..=6, 0i64..6, 1i64..6).prop_map(|(n, r, l)| {
        let (r, l) = (r % n, (l % n).max(1));
        MirrorInterval::new(rat(r - l, n), rat(r, n)).unwrap()
    })
}

proptest! {
    #[test]
    fn translation_invariance(a in arb_interval(), b in arb_interval(), k in -3i64..3) {
        let shifted = MirrorInterval::new(b.left() + rat(k, 1), b.right() + rat(k, 1)).unwrap();
        prop_assert_eq!(hom_ext_dims(&a, &b), hom_ext_dims(&a, &shifted));
    }

    #[test]
    fn strict_sources_have_small_hom_and_ext(a in arb_interval(), b in arb_interval()) {
        prop_assume!(a.is_strict() && b.left() < b.right());
        let d = hom_ext_dims(&a, &b);
        prop_assert!(d.hom <= 1 && d.ext1 <= 1);
    }

    #[test]
    fn generator_products_preserve_the_class(a in arb_interval(), b in arb_interval()) {
        prop_assume!(a.is_strict() && b.is_strict());
        let total = a.char_function().add(&b.char_function());
        for ((m, _), _) in mirror_hall_product(&a, &b, 2).unwrap().terms() {
            prop_assert_eq!(m.char_function(), total.clone());
        }
    }
}
