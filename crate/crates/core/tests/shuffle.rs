use circle_hall::rational::{int, rat};
use circle_hall::shuffle::*;
use circle_hall::{RationalFunctionSeries, Rational, Scalar};
use proptest::prelude::*;

/// Number of closed points of each degree `1..=up_to`, by Moebius inversion of
/// the rational point counts.
fn closed_points(zd: &ZetaData, up_to: usize) -> Vec<i64> {
    let counts = zd.rational_point_counts(up_to);
    let mobius = |mut m: usize| -> i64 {
        let mut sign = 1;
        let mut p = 2;
        while p * p <= m {
            if m % p == 0 {
                m /= p;
                if m % p == 0 {
                    return 0;
                }
                sign = -sign;
            }
            p += 1;
        }
        if m > 1 {
            sign = -sign;
        }
        sign
    };
    (1..=up_to)
        .map(|d| {
            let total: i64 = (1..=d).filter(|e| d % e == 0).map(|e| mobius(d / e) * counts[e - 1]).sum();
            assert_eq!(total % d as i64, 0);
            total / d as i64
        })
        .collect()
}

/// `sum_s xi_s z^s` as a sum over effective divisors `sum m_x x` of degree `s`
/// of `prod_{m_x > 0} (1 - q^{-deg x})`, optionally leaving out one rational point.
fn divisor_sum_series(zd: &ZetaData, order: usize, without_a_rational_point: bool) -> Vec<Scalar> {
    let q = zd.q();
    let mut points = closed_points(zd, order.max(1));
    if without_a_rational_point {
        assert!(points[0] >= 1, "the curve needs a rational point");
        points[0] -= 1;
    }
    let mut series = vec![Scalar::zero(q); order + 1];
    series[0] = Scalar::one(q);
    for (i, &count) in points.iter().enumerate() {
        let degree = i + 1;
        let weight = Scalar::from_rational(q, int(1) - rat(1, (q as i64).pow(degree as u32)));
        for _ in 0..count {
            // One point: 1 + (1 - q^{-deg}) (z^deg + z^{2 deg} + ...).
            let mut next = series.clone();
            for (k, c) in series.iter().enumerate() {
                let mut j = k + degree;
                while j <= order {
                    next[j] += c * &weight;
                    j += degree;
                }
            }
            series = next;
        }
    }
    series
}

fn curves() -> Vec<ZetaData> {
    let mut out = vec![ZetaData::projective_line(2).unwrap(), ZetaData::projective_line(3).unwrap()];
    for trace in -2..=2 {
        out.push(ZetaData::elliptic(2, trace).unwrap());
    }
    for trace in -3..=3 {
        out.push(ZetaData::elliptic(3, trace).unwrap());
    }
    out
}

fn s(q: u64, r: Rational) -> Scalar {
    Scalar::from_rational(q, r)
}

#[test]
fn xi_one_of_the_projective_line() {
    for q in [2u64, 3, 4, 5] {
        let zd = ZetaData::projective_line(q).unwrap();
        let xi = zeta_series(&zd, SeriesKind::Xi, 3).unwrap();
        assert!(xi.coeff(0).unwrap().is_one());
        let oracle = Rational::from_integer(((q + 1) as i64).into()) * (int(1) - rat(1, q as i64));
        assert_eq!(xi.coeff(1).unwrap(), &s(q, oracle.clone()));
        assert_eq!(oracle, int(q as i64) - rat(1, q as i64));
    }
}

#[test]
fn xi_series_match_divisor_sums() {
    for zd in curves() {
        let xi = zeta_series(&zd, SeriesKind::Xi, 5).unwrap();
        assert_eq!(xi.coefficients(), divisor_sum_series(&zd, 5, false).as_slice(), "{zd:?}");
        if closed_points(&zd, 1)[0] > 0 {
            let xi_circ = zeta_series(&zd, SeriesKind::XiCirc, 5).unwrap();
            assert_eq!(xi_circ.coefficients(), divisor_sum_series(&zd, 5, true).as_slice(), "{zd:?}");
        }
    }
}

#[test]
fn recoupling_identity() {
    for zd in curves() {
        let q = zd.q();
        let xi = zeta_series(&zd, SeriesKind::Xi, 5).unwrap();
        let xi_circ = zeta_series(&zd, SeriesKind::XiCirc, 5).unwrap();
        let damping = Scalar::one(q) - Scalar::v_pow(q, -2);
        for m in 0..=5 {
            let mut rhs = xi_circ.coefficients()[m].clone();
            for beta in 0..m {
                rhs += &damping * &xi_circ.coefficients()[beta];
            }
            assert_eq!(xi.coefficients()[m], rhs, "m = {m}, {zd:?}");
        }
    }
}

#[test]
fn kernel_of_the_projective_line() {
    for q in [2u64, 3] {
        let zd = ZetaData::projective_line(q).unwrap();
        let h = zeta_series(&zd, SeriesKind::KernelH, 6).unwrap();
        // (q - z) / (1 - q z) = q + sum_{k >= 1} (q^{k+1} - q^{k-1}) z^k.
        let qi = q as i64;
        let mut expected = vec![s(q, int(qi))];
        for k in 1..=6u32 {
            expected.push(s(q, int(qi.pow(k + 1) - qi.pow(k - 1))));
        }
        assert_eq!(h.coefficients(), expected.as_slice());
        let closed = RationalFunctionSeries::from_integers(q, &[qi, -1], &[1, -qi], 6).unwrap();
        assert_eq!(h.coefficients(), closed.coefficients());
    }
}

#[test]
fn zeta_of_the_projective_line_counts_effective_divisors() {
    let zd = ZetaData::projective_line(2).unwrap();
    let zeta = zeta_series(&zd, SeriesKind::Zeta, 3).unwrap();
    // Effective divisors of degree k on P^1 over F_2: (2^{k+1} - 1).
    let expected: Vec<Scalar> = (0..=3).map(|k| s(2, int((1 << (k + 1)) - 1))).collect();
    assert_eq!(zeta.coefficients(), expected.as_slice());
}

#[test]
fn series_kind_names() {
    assert_eq!(SeriesKind::parse("xi-circ").unwrap(), SeriesKind::XiCirc);
    assert_eq!(SeriesKind::parse("kernel_h").unwrap(), SeriesKind::KernelH);
    assert!(SeriesKind::parse("eta").is_err());
}

fn cyclic(n: u64) -> LabelMode {
    LabelMode::Cyclic { n }
}

fn mono(q: u64, mode: LabelMode, e: &[i64], l: &[i64]) -> ShuffleElement {
    ShuffleElement::monomial(q, mode, e.to_vec(), l.iter().map(|&x| int(x)).collect()).unwrap()
}

fn key(e: &[i64], ratio: &[u32], l: &[i64]) -> TermKey {
    TermKey { exponents: e.to_vec(), ratio: ratio.to_vec(), labels: l.iter().map(|&x| int(x)).collect() }
}

#[test]
fn equal_labels_pick_up_the_kernel() {
    let zd = ZetaData::projective_line(2).unwrap();
    let varpi = Varpi::for_curve(&zd, 3).unwrap();
    let out = varpi.apply(0, &mono(2, cyclic(2), &[5, 1], &[1, 1])).unwrap();
    let h = zeta_series(&zd, SeriesKind::KernelH, 3).unwrap();
    assert_eq!(out.len(), 4);
    for k in 0..=3i64 {
        assert_eq!(out.coefficient(&key(&[1 + k, 5 - k], &[k as u32], &[1, 1])), h.coefficients()[k as usize]);
    }
}

#[test]
fn equal_label_kernel_is_the_simplified_rational_function() {
    // (x_1 - q x_2) / (q x_1 - x_2) = (q - z) / (1 - q z) with z = x_1/x_2.
    for q in [2u64, 3] {
        let varpi = Varpi::for_curve(&ZetaData::projective_line(q).unwrap(), 3).unwrap();
        let qi = q as i64;
        let closed = RationalFunctionSeries::from_integers(q, &[-qi, 1], &[-1, qi], 3).unwrap();
        assert_eq!(varpi.equal_label_series(), closed.coefficients());
    }
}

#[test]
fn distinct_label_examples() {
    let q = 2;
    let zd = ZetaData::projective_line(q).unwrap();
    let varpi = Varpi::for_curve(&zd, 0).unwrap();
    let h0 = zeta_series(&zd, SeriesKind::KernelH, 0).unwrap().coefficients()[0].clone();
    let damping = Scalar::one(q) - Scalar::v_pow(q, -2);

    // l_1 > l_2: order-0 stay coefficient (1 - v^{-2}) h(0), swap coefficient v^{-1} h(0).
    let out = varpi.apply(0, &mono(q, cyclic(2), &[2, 7], &[1, 0])).unwrap();
    assert_eq!(out.coefficient(&key(&[7, 2], &[0], &[1, 0])), &damping * &h0);
    assert_eq!(out.coefficient(&key(&[7, 2], &[0], &[0, 1])), &Scalar::v_pow(q, -1) * &h0);
    assert_eq!(out.len(), 2);

    // l_1 < l_2: the stay term moves to x_1^{d_2+1} x_2^{d_1-1}, one ratio order up.
    let out = varpi.apply(0, &mono(q, cyclic(2), &[2, 7], &[0, 1])).unwrap();
    assert_eq!(out.len(), 1);
    let varpi1 = Varpi::for_curve(&zd, 1).unwrap();
    let out = varpi1.apply(0, &mono(q, cyclic(2), &[2, 7], &[0, 1])).unwrap();
    assert_eq!(out.coefficient(&key(&[8, 1], &[1], &[0, 1])), &damping * &h0);
}

#[test]
fn simplified_distinct_label_series_at_genus_zero() {
    // With h = (q - z)/(1 - q z): swap coefficient v (1 - z)/(1 - q z) and
    // stay coefficient (q - 1)/(1 - q z).
    for q in [2u64, 3] {
        let varpi = Varpi::for_curve(&ZetaData::projective_line(q).unwrap(), 4).unwrap();
        let qi = q as i64;
        let stay = RationalFunctionSeries::from_integers(q, &[qi - 1], &[1, -qi], 4).unwrap();
        assert_eq!(varpi.stay_series(), stay.coefficients());
        let swap = RationalFunctionSeries::from_integers(q, &[1, -1], &[1, -qi], 4).unwrap();
        let swap: Vec<Scalar> = swap.coefficients().iter().map(|c| c * &Scalar::v_pow(q, 1)).collect();
        assert_eq!(varpi.swap_series(), swap.as_slice());
    }
}

#[test]
fn swap_coefficients_are_xi_values() {
    for zd in curves() {
        let q = zd.q();
        let varpi = Varpi::for_curve(&zd, 3).unwrap();
        let a = ShuffleElement::generator(q, cyclic(2), &int(4)).unwrap();
        let b = ShuffleElement::generator(q, cyclic(2), &int(0)).unwrap();
        let product = varpi.shuffle_product(&a, &b).unwrap();
        let xi = zeta_series(&zd, SeriesKind::Xi, 3).unwrap();
        let prefactor = Scalar::v_pow(q, 2 - 2 * zd.genus() as i64);
        for s in 0..=3i64 {
            let expected = &prefactor * &xi.coefficients()[s as usize];
            assert_eq!(product.coefficient(&key(&[s, 2 - s], &[s as u32], &[0, 0])), expected, "s = {s}");
        }
    }
}

#[test]
fn unit_is_neutral() {
    let varpi = Varpi::for_curve(&ZetaData::projective_line(3).unwrap(), 2).unwrap();
    let one = ShuffleElement::unit(3, cyclic(3)).unwrap();
    let a = mono(3, cyclic(3), &[1, -2], &[2, 0]);
    assert_eq!(varpi.shuffle_product(&one, &a).unwrap(), a);
    assert_eq!(varpi.shuffle_product(&a, &one).unwrap(), a);
}

#[test]
fn mixed_modes_are_rejected() {
    let varpi = Varpi::for_curve(&ZetaData::projective_line(2).unwrap(), 2).unwrap();
    let a = ShuffleElement::generator(2, cyclic(2), &int(1)).unwrap();
    let b = ShuffleElement::generator(2, LabelMode::Rational, &rat(1, 2)).unwrap();
    assert!(varpi.shuffle_product(&a, &b).is_err());
    assert!(ShuffleElement::monomial(2, cyclic(2), vec![0], vec![int(2)]).is_err());
    assert!(ShuffleElement::monomial(2, LabelMode::Rational, vec![0], vec![int(1)]).is_err());
}

fn keystone_holds(zd: &ZetaData, mode: LabelMode, d1: &Rational, d2: &Rational, order: u32) -> bool {
    let q = zd.q();
    let varpi = Varpi::for_curve(zd, order).unwrap();
    let a = ShuffleElement::generator(q, mode, d1).unwrap();
    let b = ShuffleElement::generator(q, mode, d2).unwrap();
    varpi.shuffle_product(&a, &b).unwrap() == constant_term_rank2(d1, d2, mode, zd, order).unwrap()
}

#[test]
fn shuffle_square_of_generators_is_the_constant_term() {
    for zd in curves() {
        for n in [2u64, 3] {
            for d1 in -(n as i64)..2 * n as i64 {
                for d2 in -(n as i64)..2 * n as i64 {
                    for order in 0..=3 {
                        assert!(keystone_holds(&zd, cyclic(n), &int(d1), &int(d2), order), "{zd:?} n={n} d=({d1},{d2}) order {order}");
                    }
                }
            }
        }
    }
}

#[test]
fn keystone_covers_both_branches() {
    let zd = ZetaData::projective_line(2).unwrap();
    let same = constant_term_rank2(&int(1), &int(3), cyclic(2), &zd, 1).unwrap();
    let different = constant_term_rank2(&int(1), &int(2), cyclic(2), &zd, 1).unwrap();
    // Identity plus one swap term per order in the first branch, two in the second.
    assert_eq!(same.len(), 3);
    assert_eq!(different.len(), 5);
    // Equal degrees at order 0: swap coefficient v^2 xi_0 = q, added to the identity.
    let diag = constant_term_rank2(&int(4), &int(4), cyclic(2), &zd, 0).unwrap();
    assert_eq!(diag.coefficient(&key(&[2, 2], &[0], &[0, 0])), Scalar::from_int(2, 3));
}

#[test]
fn rational_labels_keystone() {
    let degrees = [rat(1, 2), rat(1, 3), rat(5, 6), rat(-1, 4), int(2), rat(7, 3)];
    for zd in [ZetaData::projective_line(2).unwrap(), ZetaData::elliptic(3, 1).unwrap()] {
        for d1 in &degrees {
            for d2 in &degrees {
                assert!(keystone_holds(&zd, LabelMode::Rational, d1, d2, 3), "{d1} {d2}");
            }
        }
    }
}

fn braid_samples(q: u64, mode: LabelMode, labels: &[i64]) -> Vec<ShuffleElement> {
    let mut out = Vec::new();
    for a in labels {
        for b in labels {
            for c in labels {
                for e in [[0, 0, 0], [2, -1, 3], [-1, 4, 0]] {
                    out.push(mono(q, mode, &e, &[*a, *b, *c]));
                }
            }
        }
    }
    out
}

#[test]
fn braid_relation_for_curve_kernels() {
    for zd in curves() {
        let q = zd.q();
        let varpi = Varpi::for_curve(&zd, 3).unwrap();
        assert!(varpi.braid_check(&braid_samples(q, cyclic(2), &[0, 1])).unwrap(), "{zd:?}");
        assert!(varpi.braid_check(&braid_samples(q, cyclic(3), &[0, 1, 2])).unwrap(), "{zd:?}");
    }
}

#[test]
fn braid_relation_is_trivial_for_equal_labels_at_order_zero() {
    for kernel in [[1i64, 1], [3, 0]] {
        let h = RationalFunctionSeries::from_integers(2, &kernel, &[1, 1], 0).unwrap();
        let varpi = Varpi::new(&h, 0).unwrap();
        assert!(varpi.braid_check(&braid_samples(2, cyclic(2), &[1])).unwrap());
    }
}

#[test]
fn constant_kernels_also_braid() {
    // A kernel depending only on x_i/x_j enters both sides once per pair of strands,
    // so the braid relation holds for every kernel, constant ones included.
    for num in [[1i64, 0], [2, 0], [1, 1]] {
        let h = RationalFunctionSeries::from_integers(2, &num, &[1], 4).unwrap();
        let varpi = Varpi::new(&h, 4).unwrap();
        assert!(varpi.braid_check(&braid_samples(2, cyclic(3), &[0, 1, 2])).unwrap());
    }
}

#[test]
fn braid_relation_rejects_the_wrong_rank() {
    let varpi = Varpi::for_curve(&ZetaData::projective_line(2).unwrap(), 1).unwrap();
    assert!(varpi.braid_check(&[mono(2, cyclic(2), &[0, 0], &[0, 1])]).is_err());
}

#[test]
fn longest_element_does_not_depend_on_the_reduced_word() {
    let zd = ZetaData::elliptic(2, 1).unwrap();
    let varpi = Varpi::for_curve(&zd, 3).unwrap();
    for sigma in permutations(4) {
        let words = all_reduced_words(&sigma).unwrap();
        let x = mono(2, cyclic(3), &[1, 0, -1, 2], &[2, 0, 1, 0]);
        let first = varpi.apply_word(&words[0], &x).unwrap();
        for w in &words[1..] {
            assert_eq!(varpi.apply_word(w, &x).unwrap(), first, "{sigma:?}");
        }
    }
}

#[test]
fn shuffle_product_is_associative() {
    for zd in [ZetaData::projective_line(2).unwrap(), ZetaData::elliptic(3, -1).unwrap()] {
        let q = zd.q();
        let varpi = Varpi::for_curve(&zd, 2).unwrap();
        for labels in [[0, 1, 2], [2, 0, 1], [1, 1, 0], [0, 0, 0]] {
            let g: Vec<ShuffleElement> =
                labels.iter().zip([1, -1, 0]).map(|(&l, e)| mono(q, cyclic(3), &[e], &[l])).collect();
            let left = varpi.shuffle_product(&varpi.shuffle_product(&g[0], &g[1]).unwrap(), &g[2]).unwrap();
            let right = varpi.shuffle_product(&g[0], &varpi.shuffle_product(&g[1], &g[2]).unwrap()).unwrap();
            assert_eq!(left, right, "{labels:?}");
            let symmetric = varpi.symmetrize(&g[0].concat(&g[1]).unwrap().concat(&g[2]).unwrap()).unwrap();
            assert_eq!(left, symmetric, "{labels:?}");
        }
    }
}

#[test]
fn rank_two_times_rank_two_is_associative() {
    let zd = ZetaData::projective_line(3).unwrap();
    let varpi = Varpi::for_curve(&zd, 2).unwrap();
    let g = |e: i64, l: i64| mono(3, cyclic(2), &[e], &[l]);
    let ab = varpi.shuffle_product(&g(0, 1), &g(1, 0)).unwrap();
    let cd = varpi.shuffle_product(&g(-1, 1), &g(0, 1)).unwrap();
    let left = varpi.shuffle_product(&ab, &cd).unwrap();
    let right = varpi
        .shuffle_product(&g(0, 1), &varpi.shuffle_product(&g(1, 0), &cd).unwrap())
        .unwrap();
    assert_eq!(left, right);
}

#[test]
fn curve_kernels_are_unitary() {
    for zd in curves() {
        let h = zeta_series(&zd, SeriesKind::KernelH, 2).unwrap();
        assert!(unitarity_check(&h).unwrap(), "{zd:?}");
    }
    // A numerator violating the functional equation breaks h(z) h(1/z) = 1.
    let bad = ZetaData::new(1, 2, vec![1, -1, 3]).unwrap();
    assert!(!unitarity_check(&zeta_series(&bad, SeriesKind::KernelH, 2).unwrap()).unwrap());
}

#[test]
fn parse_rank_one_terms() {
    let a = parse_rank_one(2, LabelMode::Rational, "x^0 v:1/2").unwrap();
    assert_eq!(a, ShuffleElement::generator(2, LabelMode::Rational, &rat(1, 2)).unwrap());
    assert!(parse_rank_one(2, LabelMode::Rational, "x^0").is_err());
    assert!(parse_rank_one(2, LabelMode::Rational, "y^0 v:0").is_err());
}

#[test]
fn json_round_trip() {
    let varpi = Varpi::for_curve(&ZetaData::projective_line(2).unwrap(), 2).unwrap();
    let a = ShuffleElement::generator(2, LabelMode::Rational, &rat(1, 2)).unwrap();
    let b = ShuffleElement::generator(2, LabelMode::Rational, &rat(4, 3)).unwrap();
    let p = varpi.shuffle_product(&a, &b).unwrap();
    let text = serde_json::to_string(&p).unwrap();
    let back: ShuffleElement = serde_json::from_str(&text).unwrap();
    assert_eq!(back, p);
    assert!(text.starts_with(r#"{"q":2,"mode":{"kind":"rational"},"rank":2,"terms":["#));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn keystone_on_random_degrees(d1 in -20i64..20, d2 in -20i64..20, n in 2u64..5, trace in -2i64..=2, order in 0u32..4) {
        let zd = ZetaData::elliptic(2, trace).unwrap();
        prop_assert!(keystone_holds(&zd, cyclic(n), &int(d1), &int(d2), order));
    }

    #[test]
    fn product_respects_the_truncation(d in proptest::collection::vec(-5i64..5, 3), l in proptest::collection::vec(0i64..3, 3), order in 0u32..3) {
        let varpi = Varpi::for_curve(&ZetaData::projective_line(2).unwrap(), order).unwrap();
        let g: Vec<ShuffleElement> = (0..3).map(|i| mono(2, cyclic(3), &[d[i]], &[l[i]])).collect();
        let p = varpi.shuffle_product(&varpi.shuffle_product(&g[0], &g[1]).unwrap(), &g[2]).unwrap();
        prop_assert!(p.max_order() <= order);
        let total: i64 = d.iter().sum();
        for t in p.terms() {
            prop_assert_eq!(t.exponents.iter().sum::<i64>(), total);
        }
    }
}
