//! Acceptance suite: one line per criterion, `criterion N: PASS|FAIL: detail`.
//! Runs without the test harness so the lines always reach stdout.
//!
//! Every criterion is expected to pass except 6, whose literal closed form
//! solves `u u'^2 = +1` rather than the target equation. It is evaluated as
//! stated, reported as FAIL, and paired with the sign-corrected form.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use num_traits::Zero;
use odepoly::parse_equation;
use odepoly_core::algebra::{int, rat, BiPoly, Complex, MPoly, Rat, XPoly};
use odepoly_core::diffpoly::{substitute_series, transform, DiffPoly, Transform};
use odepoly_core::polygon::{fine_polygon, petrovic_points, petrovic_polygon, BasePoint, Face, LatticePoint, LatticePolygon, Side};
use odepoly_core::series::{extend_series, leading_branches, shift_and_recurse, BranchSide, ResonanceStatus, ResonanceValues};
use odepoly_core::singularities::{fuchs_check, movable_report, Verdict};
use odepoly_core::special::{binomial_classify, property_i_check, riccati_classify, BinomialVerdict, RiccatiVerdict};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn eq(s: &str) -> DiffPoly {
    parse_equation(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn generic(f: &DiffPoly) -> LatticePolygon {
    petrovic_polygon(f, &BasePoint::Generic).expect("generic polygon")
}

fn point_set(p: &LatticePolygon) -> BTreeSet<(i64, i64)> {
    p.points.iter().map(LatticePoint::coords).collect()
}

struct EdgeView {
    from: (i64, i64),
    to: (i64, i64),
    members: Vec<(i64, i64)>,
    slope: Option<Rat>,
    side: Option<Side>,
}

fn edges(p: &LatticePolygon) -> Vec<EdgeView> {
    p.edges()
        .map(|e| match e {
            Face::Edge { start, end, members, slope, side } => EdgeView {
                from: p.points[*start].coords(),
                to: p.points[*end].coords(),
                members: members.iter().map(|&i| p.points[i].coords()).collect(),
                slope: slope.clone(),
                side: *side,
            },
            Face::Vertex { .. } => unreachable!(),
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();

    let p = generic(&eq("y'^2*(y - 1) + 1 = 0"));
    ensure(point_set(&p) == BTreeSet::from([(3, 2), (2, 2), (0, 0)]), "shifted cusp point set")?;
    let e = edges(&p);
    ensure(e.len() == 2, "shifted cusp: expected two edges")?;
    ensure(e[0].slope == Some(int(1)) && e[0].side == Some(Side::Left), "shifted cusp: slope-1 left edge")?;
    ensure(e[1].slope == Some(int(0)) && e[1].side == Some(Side::Horizontal), "shifted cusp: horizontal edge")?;

    let e = edges(&generic(&eq("y*y'^2 + 1 = 0")));
    ensure(e.len() == 1 && e[0].slope == Some(rat(2, 3)), "cusp core: single edge of slope 2/3")?;

    let p = generic(&eq("x*y'^3 + y*y' - 1 = 0"));
    let e = edges(&p);
    ensure(e.len() == 1 && e[0].slope == Some(int(1)), "cubic slope: single edge of slope 1")?;
    ensure(e[0].from == (0, 0) && e[0].to == (3, 3), "cubic slope: edge through (0,0), (3,3)")?;
    // The edge is N = M, so (2,1) lies strictly below it.
    ensure(point_set(&p).contains(&(2, 1)) && !e[0].members.contains(&(2, 1)), "cubic slope: (2,1) below the edge")?;

    let e = edges(&generic(&eq("y'^2 - (y' - 1)*(y - 1) + x = 0")));
    ensure(
        e.iter().any(|e| {
            e.slope == Some(int(1)) && [(0, 0), (1, 1), (2, 2)].iter().all(|q| e.members.contains(q))
        }),
        "collinear edge: slope-1 edge through (0,0), (1,1), (2,2)",
    )?;

    let e = edges(&generic(&eq("y''^2 = y^4 + y^3 + y^2 + y + 1")));
    ensure(e.len() == 2, "quartic: expected two upper edges")?;
    ensure(e[0].from == (0, 0) && e[0].to == (2, 4) && e[1].to == (4, 0), "quartic: triangle (0,0), (2,4), (4,0)")?;

    let t = start.elapsed();
    ensure(t < Duration::from_secs(1), format!("took {t:?}"))?;
    Ok(format!("5 polygons exact in {t:?}"))
}

fn criterion_2() -> Outcome {
    let m = movable_report(&eq("x*y'^3 + y*y' - 1 = 0"), &BasePoint::Generic).map_err(|e| e.to_string())?;
    ensure(m.movable_zero_orders == vec![int(1)] && m.movable_pole_orders.is_empty(), "cubic slope: zeros of order 1, no poles")?;
    let m = movable_report(&eq("y' + y^2 = 0"), &BasePoint::Generic).map_err(|e| e.to_string())?;
    ensure(m.movable_pole_orders == vec![int(1)], "y' + y^2: pole of order 1")?;
    let m = movable_report(&eq("y'^2*(y - 1) + 1 = 0"), &BasePoint::Generic).map_err(|e| e.to_string())?;
    ensure(m.movable_zero_orders == vec![int(1)], "shifted cusp: zeros of order 1")?;
    Ok("three classifications exact".into())
}

fn random_xpoly(rng: &mut ChaCha8Rng, nonzero: bool) -> XPoly {
    loop {
        let deg = rng.gen_range(0..=2);
        let p = XPoly::new((0..=deg).map(|_| rat(rng.gen_range(-4..=4), rng.gen_range(1..=3))).collect());
        if !nonzero || !p.is_zero() {
            return p;
        }
    }
}

fn criterion_3() -> Outcome {
    let r = fuchs_check(&eq("x*y'^3 + y*y' - 1 = 0")).map_err(|e| e.to_string())?;
    let v: Vec<&str> = r.conditions.iter().map(|c| c.verdict.as_str()).collect();
    ensure(v == ["pass", "pass", "fail", "skipped"], format!("cubic slope verdicts {v:?}"))?;
    // Strip the x-power factor, then compare with 4y^3 + 27x up to a constant.
    let d = &r.discriminant;
    let k = d.min_degree_in(0);
    let x_k = BiPoly::bi(&[((k as u32, 0), int(1))]);
    let core = d.exact_div(&x_k).ok_or("discriminant not divisible by its x-power")?;
    let target = BiPoly::bi(&[((0, 3), int(4)), ((1, 0), int(27))]);
    let unit = core.coeff(&[0, 3]) / int(4);
    ensure(!unit.is_zero() && core == target.scale(&unit), format!("discriminant {d}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..100 {
        let (a0, a1, a2) = (random_xpoly(&mut rng, true), random_xpoly(&mut rng, false), random_xpoly(&mut rng, false));
        let f = eq(&format!("y' = ({a0})*y^2 + ({a1})*y + ({a2})"));
        let r = fuchs_check(&f).map_err(|e| e.to_string())?;
        ensure(r.passes(), format!("random Riccati #{i} {f}: {:?}", r.verdicts()))?;
    }

    let r = fuchs_check(&eq("y' - y^3 = 0")).map_err(|e| e.to_string())?;
    ensure(r.conditions[1].verdict == Verdict::Fail, "y' - y^3 must fail condition 2")?;
    let r = fuchs_check(&eq("y'^2 = 4*y^3 - 4*y")).map_err(|e| e.to_string())?;
    ensure(r.passes(), format!("Weierstrass verdicts {:?}", r.verdicts()))?;
    Ok("cubic slope (pass, pass, fail, skipped); 100 Riccati pass; y'=y^3 fails 2; Weierstrass passes".into())
}

fn criterion_4() -> Outcome {
    let cubic = eq("x*y'^3 + y*y' - 1 = 0");
    let none = ResonanceValues::new();

    let b = leading_branches(&cubic, &BasePoint::At(int(8)), BranchSide::Zeros).map_err(|e| e.to_string())?;
    let real = b[0].c0.iter().find(|c| c.is_exact()).ok_or("no exact c0 at x0 = 8")?;
    let s = extend_series(&cubic, &int(8), &int(1), real, 2, &none).map_err(|e| e.to_string())?;
    ensure(s.coefficient(&int(1)) == Complex::real(rat(1, 2)), "x0 = 8: c1 must be 1/2")?;

    let b = leading_branches(&cubic, &BasePoint::At(int(1)), BranchSide::Zeros).map_err(|e| e.to_string())?;
    let real = b[0].c0.iter().find(|c| c.is_exact()).ok_or("no exact c0 at x0 = 1")?;
    let s = extend_series(&cubic, &int(1), &int(1), real, 2, &none).map_err(|e| e.to_string())?;
    let got: Vec<Complex> = s.terms.iter().map(|t| t.coefficient.clone()).collect();
    ensure(got == vec![Complex::real(int(1)), Complex::real(rat(-1, 3))], "x0 = 1: expected [1, -1/3]")?;

    let p1 = eq("y'' - 6*y^2 - x = 0");
    let b = leading_branches(&p1, &BasePoint::At(int(0)), BranchSide::Poles).map_err(|e| e.to_string())?;
    ensure(b.len() == 1 && b[0].c0 == vec![Complex::real(int(1))], "Painleve I: c0 = 1")?;
    let s = extend_series(&p1, &int(0), &int(-2), &b[0].c0[0], 7, &none).map_err(|e| e.to_string())?;
    ensure(s.coefficient(&int(3)) == Complex::real(rat(-1, 6)), "Painleve I: -1/6 at exponent 3")?;
    ensure(
        s.resonances.iter().any(|r| r.exponent == int(4) && matches!(r.status, ResonanceStatus::FreeParameter { .. })),
        "Painleve I: free parameter at exponent 4",
    )?;

    let b = leading_branches(&eq("y*y'^2 + 1 = 0"), &BasePoint::At(int(0)), BranchSide::Zeros).map_err(|e| e.to_string())?;
    ensure(b.len() == 1 && b[0].power == 3 && b[0].power_roots == vec![Complex::real(rat(-9, 4))], "cusp core: c0^3 = -9/4")?;

    let start = Instant::now();
    let c1 = Complex::one();
    for n in [1usize, 10, 25, 50] {
        let s = extend_series(&cubic, &int(1), &int(1), &c1, n, &none).map_err(|e| e.to_string())?;
        let (val, _) = substitute_series(&cubic, &s);
        ensure(val.is_none_or(|v| v >= s.certified_valuation), format!("residual certificate fails at N = {n}"))?;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(1), format!("certificate sweep took {t:?}"))?;
    Ok(format!("series values exact; certificate to N = 50 in {t:?}"))
}

fn random_equation(rng: &mut ChaCha8Rng) -> Option<DiffPoly> {
    let order = rng.gen_range(1..=3usize);
    let n = rng.gen_range(1..=6);
    let terms: Vec<(XPoly, Vec<u32>)> = (0..n)
        .map(|_| {
            let deg = rng.gen_range(0..=3);
            let c = XPoly::from_ints(&(0..=deg).map(|_| rng.gen_range(-3..=3)).collect::<Vec<_>>());
            let e = (0..=order).map(|_| rng.gen_range(0..=2)).collect();
            (c, e)
        })
        .filter(|(c, _)| !c.is_zero())
        .collect();
    DiffPoly::from_terms(&terms).ok()
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    while checked < 200 {
        let Some(f) = random_equation(&mut rng) else { continue };
        let x0 = rat(rng.gen_range(-20..=20), rng.gen_range(1..=7));
        if f.monomials().iter().any(|m| m.coefficient.eval(&x0).is_zero()) {
            continue;
        }
        let shifted = transform(&f, &Transform::Shift(x0.clone()));
        let fine: BTreeSet<(i64, i64)> = fine_polygon(&shifted)
            .points
            .iter()
            .filter(|p| p.contributors.iter().any(|c| c.x_power == 0))
            .map(LatticePoint::coords)
            .collect();
        let rotated: BTreeSet<(i64, i64)> = petrovic_points(&f).iter().map(|p| (-p.second, p.first)).collect();
        ensure(fine == rotated, format!("{f} at {x0}: {fine:?} vs {rotated:?}"))?;
        checked += 1;
    }
    Ok(format!("{checked} random equations"))
}

/// Leading coefficients of `(k t)^(2/3)`: the three cube roots of `k^2`.
fn closed_form_leading(k: Complex64) -> Vec<Complex64> {
    let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    let r = (k * k).powf(1.0 / 3.0);
    vec![r, r * w, r * w * w]
}

/// Compares the closed form `u = (k t)^(2/3)` with the computed expansion of
/// the cusp equation at a zero of `y - 1`, through six terms.
fn closed_form_matches(k: Complex64) -> Result<usize, String> {
    let shifted = eq("y'^2*(y - 1) + 1 = 0");
    let f = shift_and_recurse(&shifted, &int(1));
    let b = leading_branches(&f, &BasePoint::At(int(0)), BranchSide::Zeros).map_err(|e| e.to_string())?;
    let lambda = rat(2, 3);
    let expected = closed_form_leading(k);
    let mut matched = 0;
    for c0 in &b[0].c0 {
        let s = extend_series(&f, &int(0), &lambda, c0, 6, &ResonanceValues::new()).map_err(|e| e.to_string())?;
        let lead = s.coefficient(&lambda).to_c64();
        let lead_matches = expected.iter().any(|e| (e - lead).norm() < 1e-12);
        // The closed form has no terms past the leading one.
        let rest_vanishes = (1..6).all(|j| s.coefficient(&(&lambda + rat(j, 3))).to_c64().norm() < 1e-12);
        if lead_matches && rest_vanishes {
            matched += 1;
        }
    }
    Ok(matched)
}

fn criterion_6() -> Outcome {
    // Literal: y = ((C +- 3x)/2)^(2/3) + 1, so near the zero u = (+-3/2 t)^(2/3).
    let literal = closed_form_matches(Complex64::new(1.5, 0.0))? + closed_form_matches(Complex64::new(-1.5, 0.0))?;
    let corrected = closed_form_matches(Complex64::new(0.0, 1.5))? + closed_form_matches(Complex64::new(0.0, -1.5))?;
    let detail = format!(
        "literal closed form has c0^3 = +9/4 and matches {literal} of 3 computed branches (c0^3 = -9/4); with 3i*x in place of 3x, {corrected} branch matches over both signs (6 expected)"
    );
    if literal == 0 {
        Err(detail)
    } else {
        Ok(detail)
    }
}

fn criterion_6_corrected() -> bool {
    (closed_form_matches(Complex64::new(0.0, 1.5)) == Ok(3))
        && (closed_form_matches(Complex64::new(0.0, -1.5)) == Ok(3))
}

fn random_bipoly(rng: &mut ChaCha8Rng, max_w: u32) -> BiPoly {
    let n = rng.gen_range(1..=4);
    MPoly::from_terms(
        2,
        (0..n).map(|_| (vec![rng.gen_range(0..=max_w), rng.gen_range(0..=2)], rat(rng.gen_range(-3..=3), 1))),
    )
}

fn criterion_7() -> Outcome {
    let w = |pw: u32, pz: u32, c: i64| (vec![pw, pz], int(c));
    // Q = w(w - 1)(w - z) = w^3 - w^2 z - w^2 + w z
    let q3 = MPoly::from_terms(2, [w(3, 0, 1), w(2, 1, -1), w(2, 0, -1), w(1, 1, 1)]);
    let one = MPoly::from_terms(2, [w(0, 0, 1)]);
    let c = riccati_classify(&one, &q3).map_err(|e| e.to_string())?;
    ensure(c.distinct_root_count == 3 && c.verdict == RiccatiVerdict::AllSingleValuedRational, "Q with three roots")?;
    let p = MPoly::from_terms(2, [w(2, 0, 1), w(0, 1, 1)]);
    let c = riccati_classify(&p, &one).map_err(|e| e.to_string())?;
    ensure(c.verdict == RiccatiVerdict::RiccatiAtMostThree && c.is_plain_riccati, "plain Riccati w^2 + z")?;
    let q1 = MPoly::from_terms(2, [w(2, 0, 1)]);
    let c = riccati_classify(&one, &q1).map_err(|e| e.to_string())?;
    ensure(c.distinct_root_count == 1 && c.verdict == RiccatiVerdict::AtMostTwoTranscendental, "Q = w^2")?;

    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let (mut classified, mut plain) = (0, 0);
    while classified < 100 {
        let p = random_bipoly(&mut rng, 3);
        let q = if rng.gen_bool(0.5) { random_bipoly(&mut rng, 0) } else { random_bipoly(&mut rng, 2) };
        if p.is_zero() || q.is_zero() {
            continue;
        }
        let Ok(c) = riccati_classify(&p, &q) else { continue };
        classified += 1;
        let oracle = q.terms().all(|(e, _)| e[0] == 0) && p.terms().all(|(e, _)| e[0] <= 2);
        ensure(c.is_plain_riccati == oracle, format!("plain flag for P = {p}, Q = {q}"))?;
        if c.is_plain_riccati {
            plain += 1;
            let f = eq(&format!("({})*y' = {}", q.fmt_with(&["y", "x"]), p.fmt_with(&["y", "x"])));
            let r = fuchs_check(&f).map_err(|e| e.to_string())?;
            ensure(r.passes(), format!("plain Riccati {f} must pass Fuchs: {:?}", r.verdicts()))?;
        }
    }
    Ok(format!("three case verdicts; {classified} random inputs, {plain} plain, all pass Fuchs"))
}

fn criterion_8() -> Outcome {
    let mut cells = 0;
    for m in 1..=4i64 {
        for n in (m + 1)..=8 {
            let r = property_i_check(&eq(&format!("y''^{m} = y^{n}"))).map_err(|e| e.to_string())?;
            let oracle = (2 * m) % (n - m) == 0;
            ensure(r.holds == oracle, format!("(y'')^{m} = y^{n}: got {} expected {oracle}", r.holds))?;
            cells += 1;
        }
    }
    for (m, n) in [(1, 2), (1, 3), (2, 4), (2, 6)] {
        let r = property_i_check(&eq(&format!("y''^{m} = y^{n}"))).map_err(|e| e.to_string())?;
        ensure(r.holds, format!("({m}, {n}) must hold"))?;
    }
    let r = property_i_check(&eq("y'^2 = 4*y^3 - 4*y")).map_err(|e| e.to_string())?;
    ensure(r.holds, "Weierstrass must hold")?;
    let r = property_i_check(&eq("y''^2 = y^5")).map_err(|e| e.to_string())?;
    ensure(!r.holds, "(y'')^2 = y^5 must fail")?;
    Ok(format!("{cells} grid cells match the divisibility oracle"))
}

fn criterion_9() -> Outcome {
    let t = |px: u32, py: u32, c: i64| ((px, py), int(c));
    // (x + 1)(y - 2)^2
    let r7 = BiPoly::bi(&[t(1, 2, 1), t(0, 2, 1), t(1, 1, -4), t(0, 1, -4), t(1, 0, 4), t(0, 0, 4)]);
    let c = binomial_classify(3, &r7).map_err(|e| e.to_string())?;
    ensure(c.verdict == BinomialVerdict::PowerForm && c.verdict.fixed_singularities_only(), "m = 3, (x+1)(y-2)^2")?;
    // x(y - 1)(y + 2) = x y^2 + x y - 2x
    let r8 = BiPoly::bi(&[t(1, 2, 1), t(1, 1, 1), t(1, 0, -2)]);
    let c = binomial_classify(2, &r8).map_err(|e| e.to_string())?;
    ensure(c.verdict == BinomialVerdict::TwoRootForm && c.verdict.fixed_singularities_only(), "m = 2, x(y-1)(y+2)")?;
    let c = binomial_classify(1, &BiPoly::bi(&[t(0, 3, 1)])).map_err(|e| e.to_string())?;
    ensure(c.verdict == BinomialVerdict::MovableSingularities && !c.yosida_ok, "y' = y^3")?;
    Ok("power and two-root forms fixed; y' = y^3 movable, Yosida bound exceeded".into())
}

fn criterion_10() -> Outcome {
    let dir = odepoly::corpus::default_dir();
    let n = odepoly::corpus::fixture_names(&dir, None).map_err(|e| e.to_string())?.len();
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_odepoly"))
        .args(["corpus", "run", "--dir"])
        .arg(&dir)
        .output()
        .map_err(|e| e.to_string())?;
    let t = start.elapsed();
    let stdout = String::from_utf8_lossy(&out.stdout);
    ensure(out.status.success(), format!("corpus run failed:\n{stdout}"))?;
    ensure(stdout.lines().filter(|l| !l.starts_with("ok ")).count() == 1, format!("unexpected lines:\n{stdout}"))?;
    ensure(t < Duration::from_secs(5), format!("took {t:?}"))?;
    Ok(format!("{n} fixtures, zero diffs, {t:?}"))
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let mut failed = Vec::new();
    for (n, check) in criteria {
        match check() {
            Ok(detail) => println!("criterion {n}: PASS: {detail}"),
            Err(detail) => {
                println!("criterion {n}: FAIL: {detail}");
                failed.push(n);
            }
        }
    }
    let corrected = criterion_6_corrected();
    println!("criterion 6 (sign-corrected closed form): {}", if corrected { "PASS" } else { "FAIL" });
    // Criterion 6 is known not to hold as stated; see the module docs.
    let expected = failed == [6] && corrected;
    println!("acceptance: {}", if expected { "as expected" } else { "UNEXPECTED RESULT" });
    if !expected {
        std::process::exit(1);
    }
}
