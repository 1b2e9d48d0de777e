use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::algebra::{int, BiPoly, XPoly};
use crate::diffpoly::{transform, Transform};
use crate::error::Error;

fn c(v: i64) -> XPoly {
    XPoly::constant(int(v))
}

fn cubic_slope() -> DiffPoly {
    DiffPoly::from_terms(&[(XPoly::x(), vec![0, 3]), (c(1), vec![1, 1]), (c(-1), vec![0])]).unwrap()
}

fn shifted_cusp() -> DiffPoly {
    DiffPoly::from_terms(&[(c(1), vec![1, 2]), (c(-1), vec![0, 2]), (c(1), vec![0])]).unwrap()
}

fn weierstrass() -> DiffPoly {
    DiffPoly::from_terms(&[(c(1), vec![0, 2]), (c(-4), vec![3]), (c(4), vec![1])]).unwrap()
}

fn riccati(a0: XPoly, a1: XPoly, a2: XPoly) -> DiffPoly {
    DiffPoly::from_terms(&[(c(1), vec![0, 1]), (-&a0, vec![2]), (-&a1, vec![1]), (-&a2, vec![0])]).unwrap()
}

#[test]
fn movable_examples() {
    let r = movable_report(&cubic_slope(), &BasePoint::Generic).unwrap();
    assert_eq!(r.movable_zero_orders, vec![int(1)]);
    assert!(!r.has_movable_poles);

    let f = riccati(c(-1), XPoly::zero(), XPoly::zero());
    let r = movable_report(&f, &BasePoint::Generic).unwrap();
    assert_eq!(r.movable_pole_orders, vec![int(1)]);
    assert!(!r.has_movable_zeros);

    let r = movable_report(&shifted_cusp(), &BasePoint::At(int(2))).unwrap();
    assert_eq!(r.movable_zero_orders, vec![int(1)]);
    assert!(r.movable_pole_orders.is_empty());
    assert!(!r.notes.is_empty());
}

#[test]
fn higher_order_orders_are_candidates() {
    let p1 = DiffPoly::from_terms(&[(c(1), vec![0, 0, 1]), (c(-6), vec![2]), (XPoly::from_ints(&[0, -1]), vec![0])])
        .unwrap();
    let r = movable_report(&p1, &BasePoint::Generic).unwrap();
    assert!(r.candidates_only);
    assert_eq!(r.movable_pole_orders, vec![int(2)]);
}

#[test]
fn fuchs_cubic_slope() {
    let r = fuchs_check(&cubic_slope()).unwrap();
    let v: Vec<&str> = r.conditions.iter().map(|c| c.verdict.as_str()).collect();
    assert_eq!(v, ["pass", "pass", "fail", "skipped"]);
    // x²(4y³ + 27x)
    let expected = BiPoly::bi(&[((2, 3), int(4)), ((3, 0), int(27))]);
    assert!(r.discriminant == expected || r.discriminant == expected.scale(&int(-1)));
    assert!(matches!(
        r.conditions[2].witnesses[0],
        FuchsWitness::NonIntegral { sample: Some(_), .. }
    ));
    assert_eq!(r.sample_points.len(), 3);
}

#[test]
fn fuchs_condition_two_fails() {
    let f = DiffPoly::from_terms(&[(c(1), vec![0, 1]), (c(-1), vec![3])]).unwrap();
    let r = fuchs_check(&f).unwrap();
    assert_eq!(r.conditions[0].verdict, Verdict::Pass);
    assert_eq!(r.conditions[1].verdict, Verdict::Fail);
    assert_eq!(r.conditions[1].witnesses, vec![FuchsWitness::DegreeExceeds { k: 1, degree: 3 }]);
    assert!(!r.passes());
}

#[test]
fn fuchs_condition_one_fails() {
    let f = DiffPoly::from_terms(&[(c(1), vec![1, 1]), (c(-1), vec![0])]).unwrap();
    let r = fuchs_check(&f).unwrap();
    assert_eq!(r.conditions[0].verdict, Verdict::Fail);
}

#[test]
fn fuchs_weierstrass() {
    let r = fuchs_check(&weierstrass()).unwrap();
    assert!(r.passes(), "{:?}", r.conditions);
    assert_eq!(r.conditions[2].verdict, Verdict::Pass);
    let pairs: Vec<_> = r.conditions[3]
        .witnesses
        .iter()
        .filter_map(|w| match w {
            FuchsWitness::Exponents { y0, k, m } => Some((y0.clone(), *k, *m)),
            _ => None,
        })
        .collect();
    assert_eq!(pairs.len(), 3);
    assert!(pairs.iter().all(|(_, k, m)| (*k, *m) == (1, 2)));
}

#[test]
fn fuchs_rejects_higher_order() {
    let f = DiffPoly::from_terms(&[(c(1), vec![0, 0, 1]), (c(1), vec![1])]).unwrap();
    assert_eq!(fuchs_check(&f), Err(Error::NotFirstOrder(2)));
}

#[test]
fn fuchs_rational_branch_exact() {
    // (y′ − 1)² = (y − x)·…: here F = p² − 2p + 1 − (y − x)²... use
    // F = (p − 1)² − (y − x), whose discriminant branch y = x is an integral.
    let f = DiffPoly::from_terms(&[
        (c(1), vec![0, 2]),
        (c(-2), vec![0, 1]),
        (c(1), vec![0]),
        (c(-1), vec![1]),
        (XPoly::x(), vec![0]),
    ])
    .unwrap();
    let r = fuchs_check(&f).unwrap();
    assert_eq!(r.conditions[2].verdict, Verdict::Pass);
    assert!(r.conditions[3].verdict.is_pass(), "{:?}", r.conditions[3]);
}

#[test]
fn fuchs_seed_is_reported_and_reproducible() {
    let opts = FuchsOptions { seed: 7, ..FuchsOptions::default() };
    let a = fuchs_check_with(&cubic_slope(), &opts).unwrap();
    let b = fuchs_check_with(&cubic_slope(), &opts).unwrap();
    assert_eq!(a.seed, 7);
    assert_eq!(a, b);
}

fn random_xpoly(rng: &mut ChaCha8Rng, nonzero: bool) -> XPoly {
    loop {
        let d = rng.gen_range(0..=2);
        let p = XPoly::from_ints(&(0..=d).map(|_| rng.gen_range(-5..=5)).collect::<Vec<_>>());
        if !nonzero || !p.is_zero() {
            return p;
        }
    }
}

#[test]
fn random_riccati_pass_fuchs() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..100 {
        let f = riccati(random_xpoly(&mut rng, true), random_xpoly(&mut rng, false), random_xpoly(&mut rng, false));
        let r = fuchs_check(&f).unwrap();
        assert!(r.passes(), "{}: {:?}", f, r.conditions);
    }
}

#[test]
fn reciprocal_duality_examples() {
    for f in [cubic_slope(), shifted_cusp(), weierstrass(), riccati(c(1), c(2), c(-3))] {
        let g = transform(&f, &Transform::ReciprocalY);
        let a = movable_report(&f, &BasePoint::Generic).unwrap();
        let b = movable_report(&g, &BasePoint::Generic).unwrap();
        assert_eq!(a.movable_zero_orders, b.movable_pole_orders, "{f}");
        assert_eq!(a.movable_pole_orders, b.movable_zero_orders, "{f}");
    }
}

#[test]
fn convergence_flag() {
    let full = DiffPoly::from_terms(&[(c(1), vec![1, 1]), (c(2), vec![2, 1])]).unwrap();
    assert_eq!(fine_convergence_check(&full), ConvergenceFlag { all_terms_full: true, offending: None });
    let flag = fine_convergence_check(&cubic_slope());
    assert!(!flag.all_terms_full);
    assert!(flag.offending.is_some());
}

fn brute_force_full(f: &DiffPoly) -> bool {
    f.monomials().iter().all(|m| {
        let mut e = m.exponents.clone();
        e.resize(f.order() + 1, 0);
        e.iter().all(|&k| k > 0)
    })
}

proptest! {
    #[test]
    fn convergence_matches_brute_force(
        terms in prop::collection::vec((-3i64..=3, prop::collection::vec(0u32..3, 1..4)), 1..5)
    ) {
        let t: Vec<(XPoly, Vec<u32>)> = terms.into_iter().filter(|(a, _)| *a != 0).map(|(a, e)| (c(a), e)).collect();
        if let Ok(f) = DiffPoly::from_terms(&t) {
            prop_assert_eq!(fine_convergence_check(&f).all_terms_full, brute_force_full(&f));
        }
    }

    #[test]
    fn reciprocal_duality(
        terms in prop::collection::vec((-3i64..=3, 0u32..4, 0u32..3), 2..5)
    ) {
        let t: Vec<(XPoly, Vec<u32>)> = terms.into_iter().filter(|(a, _, _)| *a != 0).map(|(a, i, j)| (c(a), vec![i, j])).collect();
        let Ok(f) = DiffPoly::from_terms(&t) else { return Ok(()) };
        if f.order() != 1 { return Ok(()); }
        let g = transform(&f, &Transform::ReciprocalY);
        let a = movable_report(&f, &BasePoint::Generic).unwrap();
        let b = movable_report(&g, &BasePoint::Generic).unwrap();
        prop_assert_eq!(a.movable_zero_orders, b.movable_pole_orders);
        prop_assert_eq!(a.movable_pole_orders, b.movable_zero_orders);
    }
}
