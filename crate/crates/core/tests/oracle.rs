//! Worked examples checked against independently derived values.

use num_bigint::BigInt;
use num_rational::BigRational;
use trip_stern::algebra::{a0, a1, format_rational, row_apply, vertex_basis, Mat3, Perm3};
use trip_stern::analysis::{
    conjugate_map, level_sums, level_stats, maxima_sequence, sum_ratio_estimate, verify_generalized_paths,
    verify_max_path, verify_min_path, MinSide, PathPolicy,
};
use trip_stern::family::{
    cf_from_binary_word, gauss_step, subtriangle_matrix, trip_apply, trip_digits, ExpansionStop, RationalPoint,
};
use trip_stern::germ::{enumerate_forbidden, germ_of, in_P, in_S, inverse_step, multiplicity_census, PotentialTriple};
use trip_stern::geometry::{project_pi, subdivision, PlanePoint};
use trip_stern::recurrence::{
    catalog, dominant_root, dominant_root_of, fit_min_recurrence, oeis_lookup, verify_generalized_sums,
    verify_recurrence, Recurrence,
};
use trip_stern::stern::{
    generating_function_coefficients, level, level_via_generating_function, stern_brocot_level, stern_diatomic,
    trip_stern_term, triangle_word,
};
use trip_stern::{BinaryWord, Error, TripMap, Triple};

fn map(s: &str) -> TripMap {
    s.parse().unwrap()
}

fn t(a: i64, b: i64, c: i64) -> Triple<BigInt> {
    Triple::from_i64(a, b, c)
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn qs(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
}

fn ones() -> Triple<BigInt> {
    Triple::ones()
}

#[test]
fn permutation_matrices() {
    assert_eq!(Perm3::E.matrix(), Mat3::identity());
    assert_eq!(Perm3::P12.matrix(), Mat3::from_rows([[0, 1, 0], [1, 0, 0], [0, 0, 1]]));
    assert_eq!(Perm3::P123.matrix(), Mat3::from_rows([[0, 1, 0], [0, 0, 1], [1, 0, 0]]));
    for p in Perm3::ALL {
        assert_eq!(&p.matrix() * &p.inverse().matrix(), Mat3::identity());
    }
}

#[test]
fn matrix_products_and_inverses() {
    assert_eq!(&Mat3::identity() * &a0(), a0());
    assert_eq!(&a0() * &a0().unimodular_inverse().unwrap(), Mat3::identity());
    assert_eq!(&Perm3::P12.matrix() * &a0(), Mat3::from_rows([[1, 0, 0], [0, 0, 1], [0, 1, 1]]));
    assert_eq!(a1().unimodular_inverse().unwrap(), Mat3::from_rows([[1, 0, -1], [0, 1, 0], [0, 0, 1]]));
    assert_eq!(Mat3::identity().unimodular_inverse().unwrap(), Mat3::identity());
    assert!(matches!(Mat3::from_rows([[2, 0, 0], [0, 1, 0], [0, 0, 1]]).unimodular_inverse(), Err(Error::NotUnimodular { .. })));
}

#[test]
fn row_actions() {
    assert_eq!(row_apply(&t(2, 3, 7), &a0()), t(3, 7, 9));
    assert_eq!(row_apply(&t(2, 3, 7), &a1()), t(2, 3, 9));
    assert_eq!(row_apply(&ones(), &Mat3::identity()), ones());
}

#[test]
fn map_construction() {
    let m = map("e,e,e");
    assert_eq!(*m.f0(), a0());
    assert_eq!(*m.f1(), a1());
    let m = map("12,e,e");
    assert_eq!(*m.f0(), Mat3::from_rows([[1, 0, 0], [0, 0, 1], [0, 1, 1]]));
    assert_eq!(*m.f1(), Mat3::from_rows([[0, 1, 0], [1, 0, 1], [0, 0, 1]]));
    assert_eq!(row_apply(&t(2, 3, 7), map("e,13,e").f0()), t(9, 7, 3));
    assert_eq!(vertex_basis(), Mat3::from_rows([[1, 1, 1], [0, 1, 1], [0, 0, 1]]));
}

#[test]
fn subtriangles() {
    let m = TripMap::triangle();
    let s0 = subtriangle_matrix(&m, 0);
    assert_eq!(s0, &vertex_basis() * &a0());
    assert_eq!(s0.row(0), t(1, 1, 2));
    for n in 0..8u32 {
        let mut bits = vec![1u8; n as usize];
        bits.push(0);
        let w = BinaryWord::new(bits).unwrap();
        assert_eq!(subtriangle_matrix(&m, n).row(0), triangle_word(&m, &w, &ones()));
    }
}

#[test]
fn triangle_map_steps() {
    let m = TripMap::triangle();
    let step = trip_apply(&m, &RationalPoint::from_ratios(3, 5, 1, 5)).unwrap();
    assert_eq!(step.digit, 2);
    assert_eq!(step.image, RationalPoint::from_ratios(1, 3, 0, 1));
    assert_eq!(trip_apply(&m, &RationalPoint::from_ratios(2, 3, 1, 2)).unwrap().digit, 0);
}

#[test]
fn digit_expansions() {
    let m = TripMap::triangle();
    let e = trip_digits(&m, &RationalPoint::from_ratios(3, 5, 1, 5), 20);
    assert_eq!(e.digits, vec![2]);
    assert_eq!(e.stop, ExpansionStop::Terminated);
    assert!(trip_digits(&m, &RationalPoint::from_ratios(3, 5, 1, 5), 0).digits.is_empty());
}

#[test]
fn gauss_and_binary_words() {
    let g = gauss_step(&q(3, 7)).unwrap();
    assert_eq!((g.digit, g.image), (BigInt::from(2), q(1, 3)));
    let g = gauss_step(&q(1, 2)).unwrap();
    assert_eq!((g.digit, g.image), (BigInt::from(2), q(0, 1)));
    let g = gauss_step(&q(1, 1)).unwrap();
    assert_eq!((g.digit, g.image), (BigInt::from(1), q(0, 1)));
    assert_eq!(cf_from_binary_word(&[1, 1, 0, 0, 1, 1, 1, 0]), vec![3, 1, 4]);
    assert_eq!(cf_from_binary_word(&[0]), vec![1]);
    assert!(cf_from_binary_word(&[]).is_empty());
}

#[test]
fn first_terms() {
    let want = [t(1, 1, 1), t(1, 1, 2), t(1, 1, 2), t(1, 2, 3), t(1, 1, 3), t(1, 2, 3), t(1, 1, 3)];
    for (m, w) in (1..=7u128).zip(&want) {
        assert_eq!(trip_stern_term(&TripMap::triangle(), m, &ones()).unwrap(), *w);
    }
    let monk = [t(1, 1, 1), t(1, 2, 1), t(1, 2, 1), t(1, 2, 2), t(2, 2, 1), t(1, 2, 2), t(2, 2, 1)];
    for (m, w) in (1..=7u128).zip(&monk) {
        assert_eq!(trip_stern_term(&map("13,132,132"), m, &ones()).unwrap(), *w);
    }
    let seed = t(4, 9, 2);
    assert_eq!(trip_stern_term(&map("e,12,123"), 1, &seed).unwrap(), seed);
}

#[test]
fn words() {
    let seed = t(2, 3, 7);
    let w = |s: &str| -> BinaryWord { s.parse().unwrap() };
    assert_eq!(triangle_word(&TripMap::triangle(), &w("00"), &seed), t(7, 9, 12));
    assert_eq!(triangle_word(&map("12,e,e"), &w("10"), &seed), t(3, 10, 12));
    assert_eq!(triangle_word(&map("e,23,e"), &BinaryWord::empty(), &seed), seed);
}

#[test]
fn levels() {
    let m = TripMap::triangle();
    assert_eq!(level(&m, 3, &ones()).unwrap().triples, vec![t(1, 2, 3), t(1, 1, 3), t(1, 2, 3), t(1, 1, 3)]);
    assert_eq!(level(&map("132,e,13"), 1, &t(5, 1, 2)).unwrap().triples, vec![t(5, 1, 2)]);
    let l4 = level(&m, 4, &ones()).unwrap().triples;
    assert_eq!(l4, vec![t(2, 3, 4), t(1, 2, 4), t(1, 3, 4), t(1, 1, 4), t(2, 3, 4), t(1, 2, 4), t(1, 3, 4), t(1, 1, 4)]);
    for (i, tr) in l4.iter().enumerate() {
        assert_eq!(*tr, trip_stern_term(&m, 8 + i as u128, &ones()).unwrap());
    }
}

#[test]
fn generating_function() {
    let m = TripMap::triangle();
    let c = generating_function_coefficients(&m, 2);
    assert_eq!(c, vec![&a0() * &a0(), &a1() * &a0(), &a0() * &a1(), &a1() * &a1()]);
    let mut want = vec![t(1, 2, 3), t(1, 2, 3), t(1, 1, 3), t(1, 1, 3)];
    want.sort();
    assert_eq!(level_via_generating_function(&m, 2).unwrap(), want);
    let m = map("23,132,12");
    let mut one = vec![row_apply(&ones(), m.f0()), row_apply(&ones(), m.f1())];
    one.sort();
    assert_eq!(level_via_generating_function(&m, 1).unwrap(), one);
}

#[test]
fn stern_baseline() {
    let v: Vec<u64> = (1..=9).map(|n| stern_diatomic(n).unwrap()).collect();
    assert_eq!(v, vec![1, 1, 2, 1, 3, 2, 3, 1, 4]);
    for k in 0..40 {
        assert_eq!(stern_diatomic(1 << k).unwrap(), 1);
    }
    assert_eq!(stern_diatomic(5).unwrap(), 3);
    let show = |n| stern_brocot_level(n).unwrap().iter().map(|r| format!("{}/{}", r.numer(), r.denom())).collect::<Vec<_>>().join(" ");
    assert_eq!(show(0), "0/1 1/1");
    assert_eq!(show(2), "0/1 1/3 1/2 2/3 1/1");
    assert_eq!(show(3), "0/1 1/4 1/3 2/5 1/2 3/5 2/3 3/4 1/1");
}

#[test]
fn level_statistics() {
    let m = TripMap::triangle();
    let max = maxima_sequence(&m, 9, &ones()).unwrap();
    assert_eq!(max, qs(&[1, 2, 3, 4, 6, 9, 13, 19, 28]).iter().map(|x| x.to_integer()).collect::<Vec<_>>());
    let fib: Vec<BigInt> = [1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144].iter().map(|&x| BigInt::from(x)).collect();
    assert_eq!(maxima_sequence(&map("e,123,e"), 11, &ones()).unwrap(), fib);
    for m in [map("e,e,e"), map("132,23,13")] {
        let s = level_stats(&m, 1, &ones()).unwrap();
        assert_eq!((s.max_value, s.min_value, s.s), (BigInt::from(1), BigInt::from(1), BigInt::from(3)));
    }
    let big = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    assert_eq!(maxima_sequence(&map("e,13,e"), 11, &ones()).unwrap(), big(&[1, 2, 3, 5, 7, 11, 16, 25, 36, 56, 81]));
    assert_eq!(maxima_sequence(&map("e,e,13"), 5, &ones()).unwrap(), big(&[1, 2, 3, 5, 8]));
    assert_eq!(maxima_sequence(&map("e,13,132"), 11, &ones()).unwrap(), big(&[1, 2, 3, 4, 6, 8, 11, 17, 23, 32, 48]));
    assert_eq!(maxima_sequence(&map("e,123,132"), 11, &ones()).unwrap(), big(&[1, 2, 3, 4, 5, 7, 10, 13, 18, 25, 34]));
}

#[test]
fn path_examples() {
    assert!(verify_max_path(&map("e,13,123"), PathPolicy::AlwaysRight, 12, &ones()).unwrap().all_hold());
    assert!(verify_max_path(&map("e,e,e"), PathPolicy::AlwaysLeft, 12, &ones()).unwrap().all_hold());
    assert!(verify_max_path(&map("e,13,12"), PathPolicy::AlternateLeftFirst, 12, &ones()).unwrap().all_hold());
    let r = verify_min_path(&map("e,12,12"), MinSide::Left, 12, &ones()).unwrap();
    assert!(r.all_hold() && r.min_always("1"));
    assert!(verify_min_path(&map("e,e,13"), MinSide::Right, 12, &ones()).unwrap().all_hold());
    assert!(verify_min_path(&map("e,13,12"), MinSide::Both, 12, &ones()).unwrap().all_hold());
}

#[test]
fn sum_examples() {
    let m = TripMap::triangle();
    let totals: Vec<BigInt> = (1..=4).map(|n| level_sums(&m, n, &ones()).unwrap().total).collect();
    assert_eq!(totals, [3, 8, 22, 60].map(BigInt::from).to_vec());
    let s = level_sums(&map("12,132,e"), 1, &t(2, 5, 7)).unwrap();
    assert_eq!((s.components, s.total), (t(2, 5, 7), BigInt::from(14)));
    assert_eq!(level_sums(&m, 2, &ones()).unwrap().components, t(2, 2, 4));
}

#[test]
fn growth_estimates() {
    let e = sum_ratio_estimate(&TripMap::triangle(), 30).unwrap();
    assert!((e.ratio - 2.69562).abs() < 1e-4);
    assert!((e.s2_over_s1 - 1.69562).abs() < 1e-3);
    assert!((e.s3_over_s2 - 1.69562).abs() < 1e-3);
    for m in trip_stern::all_maps().iter().step_by(7) {
        let r = sum_ratio_estimate(m, 30).unwrap().ratio;
        assert!((2.0..=3.0).contains(&r), "{m}: {r}");
    }
}

#[test]
fn conjugation_examples() {
    let m = map("e,13,132");
    assert_eq!(conjugate_map(&m, Perm3::E), m);
    let c = conjugate_map(&TripMap::triangle(), Perm3::P12);
    assert_eq!(maxima_sequence(&c, 12, &ones()).unwrap(), maxima_sequence(&TripMap::triangle(), 12, &ones()).unwrap());
    let w: BinaryWord = "0110100111".parse().unwrap();
    for k in Perm3::ALL {
        let c = conjugate_map(&m, k);
        assert_eq!(triangle_word(&c, &w, &ones()), k.inverse().permute(&triangle_word(&m, &w, &ones())));
    }
}

#[test]
fn generalized_paths() {
    let r = verify_generalized_paths(&TripMap::triangle(), &t(1, 2, 4), 10).unwrap();
    assert!(r.all_hold());
    assert!(verify_max_path(&TripMap::triangle(), PathPolicy::AlwaysLeft, 10, &t(1, 2, 4)).unwrap().all_hold());
    assert!(verify_max_path(&map("e,13,123"), PathPolicy::AlwaysRight, 10, &t(4, 2, 1)).unwrap().all_hold());
    let seed = t(5, 2, 7);
    let r = verify_generalized_paths(&map("e,12,e"), &seed, 10).unwrap();
    assert!(r.all_hold());
    let lvl_min: Vec<BigInt> =
        (1..=10).map(|n| level_stats(&map("e,12,e"), n, &seed).unwrap().min_value).collect();
    assert!(lvl_min.iter().all(|v| *v == BigInt::from(2)));
}

#[test]
fn recurrence_fitting() {
    let r = fit_min_recurrence(&qs(&[1, 2, 3, 5, 8, 13, 21, 34]), 3).unwrap().unwrap();
    assert_eq!(r, Recurrence::from_i64(&[1, 1]));
    let sums = qs(&[3, 8, 22, 60, 162, 436, 1174, 3164, 8530, 22996, 61990, 167100]);
    assert_eq!(fit_min_recurrence(&sums, 5).unwrap().unwrap(), Recurrence::from_i64(&[4, -5, 4]));
    let computed = qs(&[1, 2, 2, 3, 4, 5, 7, 9, 12, 16, 21]);
    assert_eq!(fit_min_recurrence(&computed, 4).unwrap().unwrap(), Recurrence::from_i64(&[0, 1, 1]));
    assert!(matches!(fit_min_recurrence(&qs(&[1, 2, 3]), 6), Err(Error::InsufficientPrefix { .. })));
    assert!(verify_recurrence(&qs(&[1, 2, 3, 4, 6, 9, 13, 19, 28]), &Recurrence::from_i64(&[1, 0, 1])));
    assert!(verify_recurrence(&qs(&[1, 2, 3, 5, 8, 13, 21, 34]), &Recurrence::from_i64(&[1, 1])));
    assert!(!verify_recurrence(&qs(&[1, 2, 3, 5, 7, 11, 16, 25, 36, 56, 81]), &Recurrence::from_i64(&[1, 1])));
}

#[test]
fn dominant_roots() {
    assert!((dominant_root(&(&a0() + &a1())).unwrap() - 2.69562).abs() < 1e-5);
    assert!((dominant_root_of(&[1, -1, 0, -1]).unwrap() - 1.46557).abs() < 1e-5);
    for m in trip_stern::all_maps() {
        let r = dominant_root(&m.sum_matrix()).unwrap();
        assert!((2.0..=3.0).contains(&r), "{m}: {r}");
    }
}

#[test]
fn generalized_sum_examples() {
    let g = verify_generalized_sums(&map("e,12,e"), 12).unwrap();
    assert!(g.holds);
    assert_eq!(g.joint, Some(Recurrence::from_i64(&[5, -6])));
    assert_eq!(verify_generalized_sums(&TripMap::triangle(), 12).unwrap().joint, Some(Recurrence::from_i64(&[4, -5, 4])));
    let zero: Triple<BigInt> = Triple::zeros();
    let z: Vec<BigRational> = (1..=12).map(|n| BigRational::from_integer(level_sums(&TripMap::triangle(), n, &zero).unwrap().total)).collect();
    assert!(verify_recurrence(&z, &Recurrence::from_i64(&[7, 1, -3])));
}

#[test]
fn catalogue() {
    let c = catalog();
    assert_eq!(oeis_lookup(&Recurrence::from_i64(&[1, 4]), &c.sums).unwrap().a_number, "A006131");
    assert_eq!(oeis_lookup(&Recurrence::from_i64(&[4, -5, 4]), &c.sums).unwrap().a_number, "A278612");
    assert_eq!(oeis_lookup(&Recurrence::from_i64(&[1, 1]), &c.maxima).unwrap().a_number, "A000045");
}

#[test]
fn germ_examples() {
    assert!(in_P(&t(1, 1, 1)));
    assert!(in_P(&t(1, 2, 3)));
    assert!(!in_P(&t(2, 1, 3)));
    let p = |a, b, c| PotentialTriple::from_i64(a, b, c).unwrap();
    assert_eq!(inverse_step(&p(1, 1, 2)), Some(t(1, 1, 1)));
    assert_eq!(inverse_step(&p(1, 2, 3)), Some(t(1, 1, 2)));
    assert_eq!(inverse_step(&p(1, 2, 4)), Some(t(1, 2, 3)));
    assert_eq!(germ_of(&p(1, 1, 1)).triple(), t(1, 1, 1));
    assert_eq!(germ_of(&p(1, 2, 3)).triple(), t(1, 1, 1));
    assert_eq!(germ_of(&p(2, 2, 3)).triple(), t(2, 2, 3));
    assert!(in_S(&t(1, 2, 3)));
    assert!(!in_S(&t(2, 2, 3)));
    assert!(in_S(&t(2, 3, 4)));
    assert!(enumerate_forbidden(7).contains(&t(2, 2, 3)));
    assert!(enumerate_forbidden(3).is_empty());
}

#[test]
fn census_examples() {
    let c = multiplicity_census(12).unwrap();
    assert!(c.holds());
    assert_eq!(c.histogram.get(&1), Some(&1));
    let count = |target: Triple<BigInt>| {
        (1..(1u128 << 12)).filter(|&m| trip_stern_term(&TripMap::triangle(), m, &ones()).unwrap() == target).count()
    };
    assert_eq!(count(t(1, 1, 2)), 2);
    assert_eq!(count(t(1, 2, 3)), 2);
    assert_eq!(count(t(1, 1, 1)), 1);
}

#[test]
fn projection_and_subdivision() {
    let v = |a: i64, b: i64, c: i64| [BigInt::from(a), BigInt::from(b), BigInt::from(c)];
    assert_eq!(project_pi(&v(1, 1, 1)).unwrap(), PlanePoint::from_ratios(1, 1, 1, 1));
    assert_eq!(project_pi(&v(1, 0, 0)).unwrap(), PlanePoint::from_ratios(0, 1, 0, 1));
    assert_eq!(project_pi(&v(2, 1, 1)).unwrap(), PlanePoint::from_ratios(1, 2, 1, 2));
    let cells = subdivision(&map("12,e,e"), 2).unwrap();
    assert_eq!(cells[0].label, t(1, 2, 3));
    assert_eq!(subdivision(&map("23,13,e"), 0).unwrap().len(), 1);
    let c1 = subdivision(&TripMap::triangle(), 1).unwrap();
    let shared: Vec<_> = c1[0].vertices.iter().filter(|p| c1[1].vertices.contains(p)).collect();
    assert_eq!(shared.len(), 2);
    let total: BigRational = cells.iter().map(|c| c.area()).sum();
    assert_eq!(format_rational(&total), "1/2");
}
