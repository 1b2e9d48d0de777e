//! Polygon output as SVG, ASCII art or JSON.

use std::fmt::Write;

use odepoly_core::algebra::{Rat, XPoly};
use odepoly_core::diffpoly::{DiffMonomial, DiffPoly};
use odepoly_core::polygon::{Face, Flavor, LatticePolygon};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolygonFormat {
    Svg,
    Ascii,
    Json,
}

const UNIT: i64 = 40;

/// Human-readable name of the term feeding a lattice point.
pub fn monomial_label(m: &DiffMonomial, x_power: Option<usize>) -> String {
    let coefficient = match x_power {
        Some(l) => XPoly::monomial(Rat::from_integer(1.into()), l),
        None => m.coefficient.clone(),
    };
    let single = DiffPoly::from_terms(&[(coefficient, m.exponents.clone())]).expect("nonzero monomial");
    single.to_string()
}

fn point_labels(p: &LatticePolygon, f: Option<&DiffPoly>) -> Vec<String> {
    p.points
        .iter()
        .map(|pt| match f {
            Some(f) => pt
                .contributors
                .iter()
                .map(|c| {
                    let m = &f.monomials()[c.monomial];
                    let xp = (p.flavor == Flavor::Fine).then_some(c.x_power);
                    monomial_label(m, xp)
                })
                .collect::<Vec<_>>()
                .join(", "),
            None => format!("({}, {})", pt.first, pt.second),
        })
        .collect()
}

/// Renders `p`. Lattice points are labeled with their monomials when the
/// equation is supplied, with coordinates otherwise.
pub fn render_polygon(p: &LatticePolygon, f: Option<&DiffPoly>, format: PolygonFormat) -> String {
    match format {
        PolygonFormat::Json => polygon_json(p).to_string(),
        PolygonFormat::Ascii => ascii(p),
        PolygonFormat::Svg => svg(p, &point_labels(p, f)),
    }
}

fn slope_value(s: Option<&Rat>) -> Value {
    s.map_or(Value::Null, |s| Value::String(s.to_string()))
}

/// Compact form: sorted points and the edges left to right.
pub fn polygon_json(p: &LatticePolygon) -> Value {
    let points: Vec<Value> = p.points.iter().map(|q| json!([q.first, q.second])).collect();
    let edges: Vec<Value> = p
        .edges()
        .map(|e| {
            json!({
                "slope": slope_value(e.slope()),
                "side": e.side().map_or(Value::Null, |s| Value::String(s.as_str().into())),
            })
        })
        .collect();
    json!({ "points": points, "edges": edges })
}

fn chain(p: &LatticePolygon) -> Vec<usize> {
    p.faces
        .iter()
        .filter_map(|f| match f {
            Face::Vertex { point } => Some(*point),
            Face::Edge { .. } => None,
        })
        .collect()
}

fn extent(p: &LatticePolygon) -> (i64, i64, i64, i64) {
    let xs = p.points.iter().map(|q| q.first);
    let ys = p.points.iter().map(|q| q.second);
    (
        xs.clone().min().unwrap_or(0),
        xs.max().unwrap_or(0),
        ys.clone().min().unwrap_or(0),
        ys.max().unwrap_or(0),
    )
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
        .replace('\'', "&apos;")
}

fn svg(p: &LatticePolygon, labels: &[String]) -> String {
    let (x0, x1, y0, y1) = extent(p);
    let (vx, vy) = ((x0 - 1) * UNIT, -(y1 + 1) * UNIT);
    let (w, h) = ((x1 - x0 + 2) * UNIT, (y1 - y0 + 2) * UNIT);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{vx} {vy} {w} {h}" font-family="monospace" font-size="10">"#
    );
    let axis = |a: i64, b: i64, c: i64, d: i64| {
        format!(r##"<line x1="{a}" y1="{b}" x2="{c}" y2="{d}" stroke="#bbb" stroke-width="1"/>"##)
    };
    let _ = writeln!(s, "{}", axis(vx, 0, vx + w, 0));
    let _ = writeln!(s, "{}", axis(0, vy, 0, vy + h));
    let pts: Vec<String> = chain(p)
        .iter()
        .map(|&i| format!("{},{}", p.points[i].first * UNIT, -p.points[i].second * UNIT))
        .collect();
    let _ = writeln!(
        s,
        r##"<polyline class="face-chain" points="{}" fill="none" stroke="#1f4e9a" stroke-width="2"/>"##,
        pts.join(" ")
    );
    for e in p.edges() {
        if let Face::Edge { start, end, .. } = e {
            let (a, b) = (&p.points[*start], &p.points[*end]);
            let mx = (a.first + b.first) * UNIT / 2;
            let my = -(a.second + b.second) * UNIT / 2;
            let text = match e.slope() {
                Some(r) => format!("slope {r}"),
                None => "vertical".into(),
            };
            let _ = writeln!(s, r##"<text class="slope" x="{}" y="{}" fill="#1f4e9a">{}</text>"##, mx + 4, my - 4, escape(&text));
        }
    }
    for (q, label) in p.points.iter().zip(labels) {
        let (cx, cy) = (q.first * UNIT, -q.second * UNIT);
        let _ = writeln!(s, r#"<circle cx="{cx}" cy="{cy}" r="3" fill="black"/>"#);
        let _ = writeln!(s, r#"<text class="label" x="{}" y="{}">{}</text>"#, cx + 5, cy + 12, escape(label));
    }
    s.push_str("</svg>\n");
    s
}

fn ascii(p: &LatticePolygon) -> String {
    const W: i64 = 4;
    let (x0, x1, y0, y1) = extent(p);
    let cols = ((x1 - x0) * W + 1) as usize;
    let rows = (y1 - y0 + 1) as usize;
    let mut grid = vec![vec![' '; cols]; rows];
    let cell = |x: i64, y: i64| -> (usize, usize) { ((y1 - y) as usize, ((x - x0) * W) as usize) };
    for e in p.edges() {
        let Face::Edge { start, end, .. } = e else { continue };
        let (a, b) = (&p.points[*start], &p.points[*end]);
        let ch = match e.slope() {
            None => '|',
            Some(r) if r.numer() == &0.into() => '-',
            Some(r) if r.numer() > &0.into() => '/',
            Some(_) => '\\',
        };
        if a.first == b.first {
            let (lo, hi) = (a.second.min(b.second), a.second.max(b.second));
            for y in lo..=hi {
                let (r, c) = cell(a.first, y);
                grid[r][c] = ch;
            }
            continue;
        }
        let (ca, cb) = (cell(a.first, a.second).1, cell(b.first, b.second).1);
        for c in ca.min(cb)..=ca.max(cb) {
            let t = (c as f64 - ca as f64) / (cb as f64 - ca as f64);
            let y = a.second as f64 + t * (b.second - a.second) as f64;
            let r = (y1 as f64 - y).round() as usize;
            grid[r][c] = ch;
        }
    }
    for q in &p.points {
        let (r, c) = cell(q.first, q.second);
        grid[r][c] = '*';
    }
    let mut s = String::new();
    for row in grid {
        let line: String = row.into_iter().collect();
        let _ = writeln!(s, "{}", line.trim_end());
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_equation;
    use odepoly_core::polygon::{petrovic_polygon, BasePoint};

    fn petrovic(s: &str) -> LatticePolygon {
        petrovic_polygon(&parse_equation(s).unwrap(), &BasePoint::Generic).unwrap()
    }

    #[test]
    fn shifted_cusp_json() {
        let p = petrovic("y'^2*(y-1)+1=0");
        let v: Value = serde_json::from_str(&render_polygon(&p, None, PolygonFormat::Json)).unwrap();
        assert_eq!(
            v,
            json!({"points":[[0,0],[2,2],[3,2]], "edges":[{"slope":"1","side":"left"},{"slope":"0","side":"horizontal"}]})
        );
    }

    #[test]
    fn triangle_json() {
        let p = petrovic("y''^2 = y^4 + 1");
        let v = polygon_json(&p);
        assert_eq!(v["points"], json!([[0, 0], [2, 4], [4, 0]]));
        assert_eq!(v["edges"][1], json!({"slope": "-2", "side": "right"}));
    }

    #[test]
    fn ascii_marks_points_and_faces() {
        let s = render_polygon(&petrovic("y'^2*(y-1)+1=0"), None, PolygonFormat::Ascii);
        assert_eq!(s.matches('*').count(), 3);
        assert!(s.contains('/') && s.contains('-'));
    }

    #[test]
    fn svg_labels() {
        let f = parse_equation("x*y'^3+y*y'-1=0").unwrap();
        let p = petrovic_polygon(&f, &BasePoint::Generic).unwrap();
        let s = render_polygon(&p, Some(&f), PolygonFormat::Svg);
        assert!(s.contains("y&apos;^3"));
        assert_eq!(s.matches("<circle").count(), p.points.len());
    }
}
