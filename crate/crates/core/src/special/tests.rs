use proptest::prelude::*;

use super::*;
use crate::algebra::{int, Complex, Rat, XPoly};
use crate::diffpoly::DiffPoly;
use crate::polygon::Face;
use crate::singularities::fuchs_check;

fn c(v: i64) -> XPoly {
    XPoly::constant(int(v))
}

/// `Σ c·w^i z^j` in variables (w, z) or (x, y).
fn bi(terms: &[(u32, u32, i64)]) -> BiPoly {
    BiPoly::bi(&terms.iter().map(|&(i, j, v)| ((i, j), int(v))).collect::<Vec<_>>())
}

#[test]
fn riccati_examples() {
    let w = BiPoly::var(2, 0);
    let z = BiPoly::var(2, 1);
    let one = BiPoly::one(2);
    let q = &(&w * &(&w - &one)) * &(&w - &z);
    let r = riccati_classify(&one, &q).unwrap();
    assert_eq!(r.distinct_root_count, 3);
    assert_eq!(r.verdict, RiccatiVerdict::AllSingleValuedRational);
    assert!(r.malmquist_note.is_some());

    let r = riccati_classify(&(&w.pow(2) + &z), &one).unwrap();
    assert_eq!(r.verdict, RiccatiVerdict::RiccatiAtMostThree);
    assert!(r.is_plain_riccati);
    assert_eq!(r.malmquist_note, None);

    let r = riccati_classify(&one, &w.pow(2)).unwrap();
    assert_eq!(r.distinct_root_count, 1);
    assert_eq!(r.verdict, RiccatiVerdict::AtMostTwoTranscendental);

    let r = riccati_classify(&one, &(&w.pow(2) - &z)).unwrap();
    assert_eq!(r.verdict, RiccatiVerdict::AtMostOneTranscendental);
}

#[test]
fn riccati_errors() {
    let w = BiPoly::var(2, 0);
    assert_eq!(riccati_classify(&w, &BiPoly::zero(2)), Err(Error::ZeroDenominator));
    assert_eq!(riccati_classify(&w.pow(2), &w), Err(Error::NotReduced));
}

#[test]
fn binomial_examples() {
    // m = 2, R = x(y − 1)(y + 2)
    let r = binomial_classify(2, &bi(&[(1, 2, 1), (1, 1, 1), (1, 0, -2)])).unwrap();
    assert_eq!(r.verdict, BinomialVerdict::TwoRootForm);
    assert_eq!(r.chi, Some(XPoly::x()));
    assert_eq!(r.roots.len(), 2);
    // m = 3, R = (x + 1)(y − 2)²
    let r = binomial_classify(3, &bi(&[(0, 2, 1), (0, 1, -4), (0, 0, 4), (1, 2, 1), (1, 1, -4), (1, 0, 4)])).unwrap();
    assert_eq!(r.verdict, BinomialVerdict::PowerForm);
    assert_eq!(r.roots, vec![Complex::real(int(2))]);
    assert!(r.yosida_ok);
    // m = 1, R = y³
    let r = binomial_classify(1, &bi(&[(0, 3, 1)])).unwrap();
    assert_eq!(r.verdict, BinomialVerdict::MovableSingularities);
    assert!(!r.yosida_ok);
    // m = 1, R = x·y + 1
    let r = binomial_classify(1, &bi(&[(1, 1, 1), (0, 0, 1)])).unwrap();
    assert_eq!(r.verdict, BinomialVerdict::Linear);
    // m = 2, R = y² + 1: irreducible quadratic still gives the two-root form
    let r = binomial_classify(2, &bi(&[(0, 2, 1), (0, 0, 1)])).unwrap();
    assert_eq!(r.verdict, BinomialVerdict::TwoRootForm);
    // m = 2, R = y³ − y: branch points
    let r = binomial_classify(2, &bi(&[(0, 3, 1), (0, 1, -1)])).unwrap();
    assert_eq!(r.verdict, BinomialVerdict::MovableSingularities);
    assert!(r.yosida_ok);
    // R depending on x beyond a factor χ(x)
    let r = binomial_classify(2, &bi(&[(0, 2, 1), (1, 0, 1)])).unwrap();
    assert_eq!(r.verdict, BinomialVerdict::MovableSingularities);
    assert_eq!(binomial_classify(0, &bi(&[(0, 1, 1)])), Err(Error::InvalidM));
}

fn second_order_binomial(m: u32, n: u32) -> DiffPoly {
    DiffPoly::from_terms(&[(c(1), vec![0, 0, m]), (c(-1), vec![n])]).unwrap()
}

#[test]
fn property_i_examples() {
    let r = property_i_check(&second_order_binomial(1, 2)).unwrap();
    assert!(r.holds);
    assert!(matches!(&r.witness, Some(PropertyIWitness::Edge { slope, .. }) if *slope == int(-2)));

    let weierstrass = DiffPoly::from_terms(&[(c(1), vec![0, 2]), (c(-4), vec![3]), (c(4), vec![1])]).unwrap();
    let r = property_i_check(&weierstrass).unwrap();
    match r.witness {
        Some(PropertyIWitness::Edge { face: Face::Edge { slope, .. }, .. }) => assert_eq!(slope, Some(int(-2))),
        other => panic!("unexpected witness {other:?}"),
    }

    let r = property_i_check(&second_order_binomial(2, 5)).unwrap();
    assert!(!r.holds);
    assert_eq!(r.witness, None);
    assert!(!r.checked_vertices.is_empty());

    let f = DiffPoly::from_terms(&[(XPoly::x(), vec![0, 1]), (c(1), vec![1])]).unwrap();
    assert_eq!(property_i_check(&f), Err(Error::NotAutonomous));
}

#[test]
fn property_i_vertex_witness() {
    // y·y″ − 2y′² + 1: the vertex (2, 2) has characteristic −λ² − λ with
    // root −1 below the single edge slope 1.
    let f = DiffPoly::from_terms(&[(c(1), vec![1, 0, 1]), (c(-2), vec![0, 2]), (c(1), vec![0])]).unwrap();
    let r = property_i_check(&f).unwrap();
    assert!(r.holds);
    assert_eq!(
        r.witness,
        Some(PropertyIWitness::Vertex { point: 1, root: int(-1), lower: None, upper: Some(int(1)) })
    );
}

#[test]
fn triangle_grid_matches_oracle() {
    for m in 1..=4i64 {
        for n in (m + 1)..=8 {
            let holds = property_i_check(&second_order_binomial(m as u32, n as u32)).unwrap().holds;
            let oracle = n > m && (2 * m) % (m - n) == 0;
            assert_eq!(holds, oracle, "(m, n) = ({m}, {n})");
        }
    }
}

#[test]
fn partial_first_integral_examples() {
    let f = second_order_binomial(1, 3);
    let psi = DiffPoly::from_terms(&[(c(1), vec![1, 1]), (c(-1), vec![2])]).unwrap();
    let r = partial_first_integral_report(&f, &psi, "y'^2 - y^4/2").unwrap();
    assert!(r.partial_first_integral);
    assert!(r.message.contains("partial first integral"));

    let r = partial_first_integral_report(&f, &second_order_binomial(1, 2), "R").unwrap();
    assert!(!r.partial_first_integral);
    assert!(r.message.starts_with("no conclusion"));

    let g = DiffPoly::from_terms(&[(XPoly::x(), vec![0, 1]), (c(1), vec![1])]).unwrap();
    assert_eq!(partial_first_integral_report(&g, &psi, "R"), Err(Error::NotAutonomous));
}

fn arb_bi(max_w: u32, max_z: u32) -> impl Strategy<Value = BiPoly> {
    prop::collection::vec((0..=max_w, 0..=max_z, -4i64..=4), 1..5).prop_map(|t| bi(&t))
}

fn shift_y(r: &BiPoly, k: i64) -> BiPoly {
    let y = &BiPoly::var(2, 1) + &BiPoly::constant(2, int(k));
    r.substitute(1, &y)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn plain_riccati_iff(p in arb_bi(4, 2), q in arb_bi(2, 2)) {
        prop_assume!(!q.is_zero());
        if let Ok(r) = riccati_classify(&p, &q) {
            let expected = q.free_of(0) && (p.is_zero() || p.degree_in(0) <= 2);
            prop_assert_eq!(r.is_plain_riccati, expected);
            if r.is_plain_riccati {
                // Q(x)·y′ − P(y, x)
                let mut terms = vec![];
                for (z, a) in q.to_upoly(1, 0).iter().enumerate() {
                    if !a.is_zero() {
                        prop_assert!(a.is_constant());
                        terms.push((XPoly::monomial(a.coeff(0), z), vec![0, 1]));
                    }
                }
                for (i, a) in p.to_upoly(0, 1).iter().enumerate() {
                    if !a.is_zero() {
                        terms.push((-a, vec![i as u32]));
                    }
                }
                let f = DiffPoly::from_terms(&terms).unwrap();
                prop_assert!(fuchs_check(&f).unwrap().passes());
            }
        }
    }

    #[test]
    fn riccati_verdict_depends_on_squarefree_part(q in arb_bi(2, 2), t in arb_bi(0, 1)) {
        prop_assume!(!q.is_zero() && !t.is_zero());
        let one = BiPoly::one(2);
        let a = riccati_classify(&one, &q).unwrap();
        let b = riccati_classify(&one, &(&q.pow(3) * &t.pow(2))).unwrap();
        prop_assert_eq!(a.verdict, b.verdict);
        prop_assert_eq!(a.distinct_root_count, b.distinct_root_count);
    }

    #[test]
    fn binomial_affine_invariance(m in 1i64..4, r in arb_bi(2, 4), k in -3i64..=3) {
        prop_assume!(!r.is_zero());
        let a = binomial_classify(m, &r).unwrap();
        let b = binomial_classify(m, &shift_y(&r, k)).unwrap();
        prop_assert_eq!(a.verdict, b.verdict);
        if a.verdict == BinomialVerdict::PowerForm {
            let shifted: Vec<Complex> = a.roots.iter().map(|z| z - &Complex::real(int(k))).collect();
            prop_assert_eq!(b.roots, shifted);
        }
    }

    #[test]
    fn binomial_forms_shift(m in 2u32..5, a in -5i64..=5, k in -3i64..=3) {
        // χ(x)(y − a)^{m−1} with χ = x + 1
        let lin = &BiPoly::var(2, 1) - &BiPoly::constant(2, int(a));
        let chi = &BiPoly::var(2, 0) + &BiPoly::one(2);
        let r = &chi * &lin.pow(m - 1);
        let v = binomial_classify(m as i64, &shift_y(&r, k)).unwrap();
        prop_assert_eq!(v.verdict, BinomialVerdict::PowerForm);
        prop_assert_eq!(v.roots, vec![Complex::real(Rat::from_integer((a - k).into()))]);
    }
}
