//! The `analyze` orchestrator.

use std::fmt::Write;

use odepoly_core::algebra::BiPoly;
use odepoly_core::diffpoly::{singular_points, DiffPoly};
use odepoly_core::polygon::{fine_polygon, petrovic_polygon, BasePoint, Flavor};
use odepoly_core::series::{extend_series_lenient, leading_branches, BranchSide, ResonanceValues};
use odepoly_core::singularities::{fine_convergence_check, fuchs_check_with, movable_report, FuchsOptions};
use odepoly_core::special::{binomial_classify, property_i_check, riccati_classify};
use serde_json::{json, Value};
use odepoly_core::Error as CoreError;

use crate::error::CliError;
use crate::parse::print_equation;
use crate::render::{render_polygon, PolygonFormat};
use crate::report;

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Check {
    Fuchs,
    Riccati,
    Binomial,
    Elliptic,
    Convergence,
}

impl Check {
    pub const ALL: [Check; 5] = [Check::Fuchs, Check::Riccati, Check::Binomial, Check::Elliptic, Check::Convergence];

    pub fn name(&self) -> &'static str {
        match self {
            Check::Fuchs => "fuchs",
            Check::Riccati => "riccati",
            Check::Binomial => "binomial",
            Check::Elliptic => "elliptic",
            Check::Convergence => "convergence",
        }
    }

    pub fn parse(s: &str) -> Result<Check, CliError> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| CliError::Usage(format!("unknown check {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnalyzeOptions {
    pub point: BasePoint,
    pub polygon: Flavor,
    pub series: Option<usize>,
    pub checks: Vec<Check>,
    /// Report checks whose preconditions fail as not applicable instead of
    /// returning the error. Set when the checks were requested as `all`.
    pub skip_inapplicable: bool,
    pub seed: u64,
    pub tolerance: f64,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            point: BasePoint::Generic,
            polygon: Flavor::Petrovic,
            series: None,
            checks: Vec::new(),
            skip_inapplicable: false,
            seed: DEFAULT_SEED,
            tolerance: DEFAULT_TOLERANCE,
        }
    }
}

fn base_point_name(x0: &BasePoint) -> String {
    match x0 {
        BasePoint::Generic => "generic".into(),
        BasePoint::At(a) => a.to_string(),
    }
}

/// `Q(x, y)·y′ = P(x, y)` as `(P, Q)` in the variables `(w = y, z = x)`.
fn riccati_parts(f: &DiffPoly) -> Option<(BiPoly, BiPoly)> {
    if f.order() != 1 {
        return None;
    }
    let mut p = BiPoly::zero(2);
    let mut q = BiPoly::zero(2);
    for m in f.monomials() {
        let target = match m.exponent(1) {
            0 => &mut p,
            1 => &mut q,
            _ => return None,
        };
        for (l, c) in m.coefficient.terms() {
            let c = if m.exponent(1) == 0 { -c.clone() } else { c.clone() };
            target.add_term(vec![m.exponent(0), l as u32], c);
        }
    }
    (!q.is_zero()).then_some((p, q))
}

/// `c·(y′)^m = R(x, y)` with constant `c` as `(m, R)` in `(x, y)`.
fn binomial_parts(f: &DiffPoly) -> Option<(i64, BiPoly)> {
    if f.order() != 1 {
        return None;
    }
    let mut lead = None;
    let mut r = BiPoly::zero(2);
    for m in f.monomials() {
        match m.exponent(1) {
            0 => {
                for (l, c) in m.coefficient.terms() {
                    r.add_term(vec![l as u32, m.exponent(0)], -c.clone());
                }
            }
            k if m.exponent(0) == 0 && m.coefficient.is_constant() && lead.is_none() => {
                lead = Some((k as i64, m.coefficient.coeff(0)));
            }
            _ => return None,
        }
    }
    let (k, c) = lead?;
    Some((k, r.scale(&c.recip())))
}

/// Runs the requested analysis and returns the JSON report.
pub fn analyze(f: &DiffPoly, opts: &AnalyzeOptions) -> Result<Value, CliError> {
    let x0 = &opts.point;
    // A singular base point is only tolerated when a series is requested and
    // some slanted side still yields branches there.
    let (petrovic, singular_base) = match petrovic_polygon(f, x0) {
        Ok(p) => (p, None),
        Err(e @ CoreError::SingularBasePoint(_)) if opts.series.is_some() => {
            (petrovic_polygon(f, &BasePoint::Generic)?, Some(e))
        }
        Err(e) => return Err(e.into()),
    };
    let polygon_point = if singular_base.is_some() { &BasePoint::Generic } else { x0 };
    let shown = match opts.polygon {
        Flavor::Petrovic => petrovic.clone(),
        Flavor::Fine => fine_polygon(f),
    };
    let base_name = match opts.polygon {
        Flavor::Petrovic => base_point_name(polygon_point),
        Flavor::Fine => "0".into(),
    };
    let movable = movable_report(f, polygon_point)?;

    let mut checks = serde_json::Map::new();
    for c in &opts.checks {
        let v = match c {
            Check::Fuchs => {
                let o = FuchsOptions { seed: opts.seed, tolerance: opts.tolerance, ..FuchsOptions::default() };
                fuchs_check_with(f, &o).map(|r| report::fuchs(&r))
            }
            Check::Riccati => match riccati_parts(f) {
                Some((p, q)) => riccati_classify(&p, &q).map(|r| report::riccati(&r)),
                None => Ok(report::not_applicable("not of the form Q(x, y)*y' = P(x, y)")),
            },
            Check::Binomial => match binomial_parts(f) {
                Some((m, r)) => binomial_classify(m, &r).map(|r| report::binomial(&r)),
                None => Ok(report::not_applicable("not of the form c*y'^m = R(x, y)")),
            },
            Check::Elliptic => property_i_check(f).map(|r| report::property_i(&r, &petrovic)),
            Check::Convergence => Ok(report::convergence(&fine_convergence_check(f), f)),
        };
        let v = match v {
            Ok(v) => v,
            Err(e @ (CoreError::NotFirstOrder(_) | CoreError::NotAutonomous)) if opts.skip_inapplicable => {
                report::not_applicable(&e.to_string())
            }
            Err(e) => return Err(e.into()),
        };
        checks.insert(c.name().into(), v);
    }

    let series = match opts.series {
        None => Value::Null,
        Some(n) => {
            let mut notes = Vec::new();
            let branches = match leading_branches(f, x0, BranchSide::All) {
                Ok(b) => b,
                Err(CoreError::SingularBasePoint(_)) => {
                    // Some face needs a coefficient that vanishes here; keep
                    // the slanted sides that do not.
                    let mut b = Vec::new();
                    for (side, name) in [(BranchSide::Zeros, "zero"), (BranchSide::Poles, "pole")] {
                        match leading_branches(f, x0, side) {
                            Ok(found) => b.extend(found),
                            Err(e) => notes.push(format!("{name} branches skipped: {e}")),
                        }
                    }
                    notes.push("vertex and horizontal faces skipped: a coefficient on them vanishes at the base point".into());
                    b
                }
                Err(e) => return Err(e.into()),
            };
            if let Some(e) = singular_base {
                if branches.is_empty() {
                    return Err(e.into());
                }
                notes.push(format!("{e}: polygon and movable report use a generic base point"));
            }
            let mut out = Vec::new();
            for b in &branches {
                let mut v = report::branch(b, &petrovic);
                let expansions: Vec<Value> = match (x0, b.lambda_rat()) {
                    (BasePoint::At(a), Some(lambda)) => b
                        .c0
                        .iter()
                        .map(|c0| match extend_series_lenient(f, a, lambda, c0, n, &ResonanceValues::new()) {
                            Ok(s) => report::series(&s),
                            Err(e) => json!({ "c0": report::complex(c0), "error": e.to_string() }),
                        })
                        .collect(),
                    _ => Vec::new(),
                };
                v["expansions"] = Value::Array(expansions);
                out.push(v);
            }
            if *x0 == BasePoint::Generic {
                notes.push("expansions need a concrete base point (--point)".into());
            }
            json!({ "terms": n, "branches": out, "notes": notes })
        }
    };

    Ok(json!({
        "equation": print_equation(f),
        "order": f.order(),
        "singular_points": report::singular_points(&singular_points(f)),
        "polygon": report::polygon(&shown, f, &base_name),
        "movable": report::movable(&movable, &petrovic),
        "checks": Value::Object(checks),
        "series": series,
        "meta": {
            "seed": opts.seed,
            "version": env!("CARGO_PKG_VERSION"),
            "tolerance": opts.tolerance,
        },
    }))
}

/// Plain-text summary of a report.
pub fn render_text(f: &DiffPoly, opts: &AnalyzeOptions, report: &Value) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "equation: {}", report["equation"].as_str().unwrap_or_default());
    let _ = writeln!(s, "order: {}", report["order"]);
    let sp = &report["singular_points"];
    let _ = writeln!(s, "singular points: finite {} algebraic {} infinity {}", sp["finite"], sp["algebraic"], sp["infinity"]);
    let poly = match opts.polygon {
        Flavor::Petrovic => petrovic_polygon(f, &opts.point).ok(),
        Flavor::Fine => Some(fine_polygon(f)),
    };
    let _ = writeln!(s, "polygon ({}):", report["polygon"]["kind"].as_str().unwrap_or_default());
    for face in report["polygon"]["faces"].as_array().into_iter().flatten() {
        if face["type"] == "edge" {
            let _ = writeln!(s, "  edge {} -> {} slope {} {}", face["from"], face["to"], face["slope"], face["side"]);
        } else {
            let _ = writeln!(s, "  vertex {}", face["point"]);
        }
    }
    if let Some(p) = poly {
        s.push_str(&render_polygon(&p, Some(f), PolygonFormat::Ascii));
    }
    let m = &report["movable"];
    let _ = writeln!(s, "movable zeros: {}", m["movable_zero_orders"]);
    let _ = writeln!(s, "movable poles: {}", m["movable_pole_orders"]);
    for n in m["notes"].as_array().into_iter().flatten() {
        let _ = writeln!(s, "  note: {}", n.as_str().unwrap_or_default());
    }
    if let Some(checks) = report["checks"].as_object() {
        for (k, v) in checks {
            let _ = writeln!(s, "check {k}: {v}");
        }
    }
    if !report["series"].is_null() {
        for b in report["series"]["branches"].as_array().into_iter().flatten() {
            let _ = writeln!(s, "branch lambda {} c0 {}", b["lambda"], b["c0"]);
            for e in b["expansions"].as_array().into_iter().flatten() {
                let _ = writeln!(s, "  terms {}", e["terms"]);
            }
        }
    }
    s
}
