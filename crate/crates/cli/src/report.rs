//! JSON encodings of analysis results. Rationals are `"p/q"` strings;
//! approximate numbers are `{"value": …, "precision": …}`.

use odepoly_core::algebra::{Complex, MPoly, Rat};
use odepoly_core::diffpoly::{DiffPoly, SingularSet};
use odepoly_core::polygon::{Face, Flavor, LatticePolygon};
use odepoly_core::series::{Branch, BranchOrigin, PuiseuxSeries, ResonanceStatus};
use odepoly_core::singularities::{ConvergenceFlag, FuchsReport, FuchsWitness, MovableReport, Verdict};
use odepoly_core::special::{BinomialClass, PropertyIReport, PropertyIWitness, RiccatiClass};
use serde_json::{json, Value};

use crate::render::monomial_label;

pub fn rat(r: &Rat) -> Value {
    Value::String(r.to_string())
}

fn float(v: f64) -> Value {
    // Adding 0.0 folds -0.0 into 0.0.
    serde_json::Number::from_f64(v + 0.0).map_or(Value::Null, Value::Number)
}

pub fn complex(z: &Complex) -> Value {
    match z {
        Complex::Exact { re, im } if im == &Rat::from_integer(0.into()) => rat(re),
        Complex::Exact { re, im } => json!({ "re": rat(re), "im": rat(im) }),
        Complex::Approx { re, im, err } if *im == 0.0 => json!({ "value": float(*re), "precision": float(*err) }),
        Complex::Approx { re, im, err } => json!({
            "value": { "re": float(*re), "im": float(*im) },
            "precision": float(*err),
        }),
    }
}

fn coords(p: &LatticePolygon, i: usize) -> Value {
    json!([p.points[i].first, p.points[i].second])
}

pub fn face(p: &LatticePolygon, f: &Face) -> Value {
    match f {
        Face::Vertex { point } => json!({ "type": "vertex", "point": coords(p, *point) }),
        Face::Edge { start, end, members, slope, side } => {
            let mut v = json!({
                "type": "edge",
                "from": coords(p, *start),
                "to": coords(p, *end),
                "members": members.iter().map(|&i| coords(p, i)).collect::<Vec<_>>(),
                "slope": slope.as_ref().map_or(Value::Null, rat),
                "side": side.map_or(Value::Null, |s| Value::String(s.as_str().into())),
            });
            if p.flavor == Flavor::Fine {
                // Leading exponent at x = 0 carried by the edge.
                let lambda = match slope {
                    None => Some(Rat::from_integer(0.into())),
                    Some(s) if s.numer() == &0.into() => None,
                    Some(s) => Some(-s.recip()),
                };
                v["lambda"] = lambda.as_ref().map_or(Value::Null, rat);
            }
            v
        }
    }
}

pub fn polygon(p: &LatticePolygon, f: &DiffPoly, base_point: &str) -> Value {
    let points: Vec<Value> = p
        .points
        .iter()
        .map(|q| {
            let monomials: Vec<String> = q
                .contributors
                .iter()
                .map(|c| {
                    let xp = (p.flavor == Flavor::Fine).then_some(c.x_power);
                    monomial_label(&f.monomials()[c.monomial], xp)
                })
                .collect();
            json!({ "coords": [q.first, q.second], "monomials": monomials })
        })
        .collect();
    json!({
        "kind": match p.flavor { Flavor::Petrovic => "petrovic", Flavor::Fine => "fine" },
        "base_point": base_point,
        "points": points,
        "faces": p.faces.iter().map(|fc| face(p, fc)).collect::<Vec<_>>(),
    })
}

pub fn singular_points(s: &SingularSet) -> Value {
    json!({
        "finite": s.finite.iter().map(rat).collect::<Vec<_>>(),
        "algebraic": s.algebraic.iter().map(|q| q.fmt_with("x")).collect::<Vec<_>>(),
        "infinity": s.includes_infinity,
    })
}

pub fn movable(m: &MovableReport, p: &LatticePolygon) -> Value {
    json!({
        "movable_zero_orders": m.movable_zero_orders.iter().map(rat).collect::<Vec<_>>(),
        "movable_pole_orders": m.movable_pole_orders.iter().map(rat).collect::<Vec<_>>(),
        "has_movable_zeros": m.has_movable_zeros,
        "has_movable_poles": m.has_movable_poles,
        "candidate_only": m.candidate_only.iter().map(|f| face(p, f)).collect::<Vec<_>>(),
        "candidates_only": m.candidates_only,
        "notes": m.notes,
    })
}

fn mpoly(p: &MPoly) -> String {
    p.fmt_with(&["x", "y", "p"][..p.nvars()])
}

fn verdict(v: &Verdict) -> Value {
    match v {
        Verdict::NumericPass { tolerance } => json!({ "verdict": v.as_str(), "tolerance": float(*tolerance) }),
        _ => json!({ "verdict": v.as_str() }),
    }
}

fn fuchs_witness(w: &FuchsWitness) -> Value {
    match w {
        FuchsWitness::LeadingDependsOnY { coefficient } => {
            json!({ "kind": "leading-coefficient-depends-on-y", "coefficient": mpoly(coefficient) })
        }
        FuchsWitness::DegreeExceeds { k, degree } => {
            json!({ "kind": "degree-exceeds", "k": k, "degree": degree, "bound": 2 * k })
        }
        FuchsWitness::NonIntegral { branch, sample, residual } => json!({
            "kind": "non-integral-branch",
            "branch": format!("{} = 0", mpoly(branch)),
            "sample_x": sample.as_ref().map_or(Value::Null, rat),
            "relative_residual": if residual.is_nan() { Value::Null } else { json!({ "value": float(*residual), "precision": float(f64::EPSILON) }) },
        }),
        FuchsWitness::Exponents { y0, k, m } => json!({ "kind": "expansion-exponent", "y0": rat(y0), "k": k, "m": m }),
        FuchsWitness::Note(s) => json!({ "kind": "note", "text": s }),
    }
}

pub fn fuchs(r: &FuchsReport) -> Value {
    let conditions: Vec<Value> = r
        .conditions
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut v = verdict(&c.verdict);
            v["condition"] = json!(i + 1);
            v["witnesses"] = c.witnesses.iter().map(fuchs_witness).collect();
            v
        })
        .collect();
    json!({
        "conditions": conditions,
        "passes": r.passes(),
        "discriminant": mpoly(&r.discriminant),
        "seed": r.seed,
        "sample_points": r.sample_points.iter().map(rat).collect::<Vec<_>>(),
        "tolerance": float(r.tolerance),
    })
}

pub fn riccati(r: &RiccatiClass) -> Value {
    json!({
        "applicable": true,
        "distinct_root_count": r.distinct_root_count,
        "verdict": r.verdict.as_str(),
        "transcendental_bound": r.verdict.transcendental_bound(),
        "is_plain_riccati": r.is_plain_riccati,
        "note": r.malmquist_note,
    })
}

pub fn binomial(b: &BinomialClass) -> Value {
    json!({
        "applicable": true,
        "m": b.m,
        "verdict": b.verdict.as_str(),
        "fixed_singularities_only": b.verdict.fixed_singularities_only(),
        "yosida_ok": b.yosida_ok,
        "degree_in_y": b.degree_in_y,
        "chi": b.chi.as_ref().map(|c| c.fmt_with("x")),
        "roots": b.roots.iter().map(complex).collect::<Vec<_>>(),
    })
}

pub fn property_i(r: &PropertyIReport, p: &LatticePolygon) -> Value {
    let witness = match &r.witness {
        None => Value::Null,
        Some(PropertyIWitness::Edge { face: f, slope }) => json!({ "kind": "edge", "face": face(p, f), "slope": rat(slope) }),
        Some(PropertyIWitness::Vertex { point, root, lower, upper }) => json!({
            "kind": "vertex",
            "point": coords(p, *point),
            "root": rat(root),
            "interval": [lower.as_ref().map_or(Value::Null, rat), upper.as_ref().map_or(Value::Null, rat)],
        }),
    };
    json!({
        "holds": r.holds,
        "witness": witness,
        "checked_vertices": r.checked_vertices.iter().map(|&i| coords(p, i)).collect::<Vec<_>>(),
        "notes": r.notes,
    })
}

pub fn convergence(c: &ConvergenceFlag, f: &DiffPoly) -> Value {
    json!({
        "all_terms_full": c.all_terms_full,
        "offending": c.offending.map(|i| monomial_label(&f.monomials()[i], None)),
    })
}

pub fn not_applicable(reason: &str) -> Value {
    json!({ "applicable": false, "reason": reason })
}

pub fn branch(b: &Branch, p: &LatticePolygon) -> Value {
    json!({
        "face": face(p, &b.face),
        "origin": match b.origin { BranchOrigin::EdgeEquation => "edge", BranchOrigin::CharacteristicRoot => "vertex" },
        "lambda": complex(&b.lambda),
        "edge_equation": b.edge_equation.as_ref().map(|eq| eq.iter().map(|c| c.fmt_with("x0")).collect::<Vec<_>>()),
        "power": b.power,
        "power_roots": b.power_roots.iter().map(complex).collect::<Vec<_>>(),
        "c0": b.c0.iter().map(complex).collect::<Vec<_>>(),
        "on_edge_slope": b.on_edge_slope,
    })
}

pub fn series(s: &PuiseuxSeries) -> Value {
    json!({
        "base_point": rat(&s.base_point),
        "ramification": s.ramification,
        "terms": s.terms.iter().map(|t| json!({ "exponent": rat(&t.exponent), "coefficient": complex(&t.coefficient) })).collect::<Vec<_>>(),
        "resonances": s.resonances.iter().map(|r| match &r.status {
            ResonanceStatus::FreeParameter { name, value } => json!({ "exponent": rat(&r.exponent), "status": "free", "name": name, "value": complex(value) }),
            ResonanceStatus::Obstructed => json!({ "exponent": rat(&r.exponent), "status": "obstructed" }),
        }).collect::<Vec<_>>(),
        "certified_valuation": rat(&s.certified_valuation),
    })
}
