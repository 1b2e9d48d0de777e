use num_traits::Signed;

use crate::algebra::roots::{all_roots, complex_roots};
use crate::algebra::{Complex, Rat, XPoly, DEFAULT_TOLERANCE};
use crate::diffpoly::DiffPoly;
use crate::error::{Error, Result};
use crate::polygon::{
    characteristic_polynomial, edge_polynomial, petrovic_hull, petrovic_points, BasePoint, Face,
    LatticePolygon, ParamPoly,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BranchSide {
    /// Left-slanted faces, `λ > 0`.
    Zeros,
    /// Right-slanted faces, `λ < 0`.
    Poles,
    All,
}

impl BranchSide {
    fn admits(&self, re: f64) -> bool {
        match self {
            BranchSide::Zeros => re > 0.0,
            BranchSide::Poles => re < 0.0,
            BranchSide::All => true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BranchOrigin {
    EdgeEquation,
    CharacteristicRoot,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Branch {
    pub face: Face,
    pub origin: BranchOrigin,
    /// Exact for edges and rational characteristic roots.
    pub lambda: Complex,
    /// Edge equation in `c`, coefficients polynomial in `x₀` (constant when
    /// the base point is concrete). `None` for vertices.
    pub edge_equation: Option<ParamPoly>,
    /// `g` such that the edge equation is a polynomial in `ζ = c^g`.
    pub power: u32,
    /// Nonzero roots `ζ = c₀^g` of the reduced edge equation.
    pub power_roots: Vec<Complex>,
    /// Admissible leading coefficients. Empty for vertex branches, whose
    /// `c₀` is arbitrary, and in generic mode.
    pub c0: Vec<Complex>,
    /// A complex characteristic root whose real part equals an adjacent edge
    /// slope; it is still reported against the vertex.
    pub on_edge_slope: bool,
}

impl Branch {
    pub fn lambda_rat(&self) -> Option<&Rat> {
        self.lambda.as_rat()
    }
}

/// All `g`-th roots of `z`, exact when they verify exactly, sorted by real
/// then imaginary part.
pub fn nth_roots(z: &Complex, g: u32) -> Vec<Complex> {
    let base = z.nth_root(g);
    let mut out = Vec::with_capacity(g as usize);
    for k in 0..g {
        let w = unit_root(k, g);
        let mut r = &base * &w;
        if z.is_exact() && !r.is_exact() {
            let target = z.clone();
            r = r.snap_with(1 << 20, |c| c.pow(g) == target);
        }
        out.push(r);
    }
    out.sort_by(|a, b| a.cmp_key(b));
    out
}

/// `exp(2πik/g)`, exact at quarter turns.
fn unit_root(k: u32, g: u32) -> Complex {
    let (a, b) = (4 * k, g);
    if a % b == 0 {
        return match (a / b) % 4 {
            0 => Complex::one(),
            1 => Complex::i(),
            2 => -Complex::one(),
            _ => -Complex::i(),
        };
    }
    let th = 2.0 * std::f64::consts::PI * k as f64 / g as f64;
    Complex::approx(num_complex::Complex64::new(th.cos(), th.sin()), 4.0 * f64::EPSILON)
}

/// Splits `Σ aₖ c^k` (lowest power first, `a₀ ≠ 0`) as a polynomial in
/// `ζ = c^g` with `g` maximal.
fn reduce_power(p: &[XPoly]) -> (u32, Vec<XPoly>) {
    let mut g = 0usize;
    for (k, a) in p.iter().enumerate() {
        if !a.is_zero() {
            g = num_integer::gcd(g, k);
        }
    }
    let g = g.max(1);
    let reduced = p.iter().step_by(g).cloned().collect();
    (g as u32, reduced)
}

fn edge_branch(f: &DiffPoly, p: &LatticePolygon, face: &Face, x0: &BasePoint) -> Result<Option<Branch>> {
    let (lambda, poly) = edge_polynomial(f, p, face, x0)?;
    // Drop the factor c^v; only nonzero c₀ are of interest.
    let v = poly.iter().position(|a| !a.is_zero()).unwrap_or(poly.len());
    let shifted: Vec<XPoly> = poly[v..].to_vec();
    if shifted.iter().filter(|a| !a.is_zero()).count() < 2 {
        return Ok(None);
    }
    let (g, reduced) = reduce_power(&shifted);
    let (power_roots, c0) = match x0 {
        BasePoint::Generic if !reduced.iter().all(XPoly::is_constant) => (Vec::new(), Vec::new()),
        _ => {
            let concrete = XPoly::new(reduced.iter().map(|a| a.coeff(0)).collect());
            let zetas: Vec<Complex> = all_roots(&concrete, DEFAULT_TOLERANCE)?
                .into_iter()
                .flat_map(|(z, m)| std::iter::repeat_n(z, m))
                .collect();
            let mut c0: Vec<Complex> = zetas.iter().flat_map(|z| nth_roots(z, g)).collect();
            c0.sort_by(|a, b| a.cmp_key(b));
            (zetas, c0)
        }
    };
    Ok(Some(Branch {
        face: face.clone(),
        origin: BranchOrigin::EdgeEquation,
        lambda: Complex::real(lambda),
        edge_equation: Some(poly),
        power: g,
        power_roots,
        c0,
        on_edge_slope: false,
    }))
}

fn vertex_branches(
    f: &DiffPoly,
    p: &LatticePolygon,
    pos: usize,
    point: usize,
    x0: &BasePoint,
    side: BranchSide,
) -> Result<Vec<Branch>> {
    let (prev, next) = p.adjacent_slopes(pos);
    // Slopes decrease left to right: the vertex carries (next, prev).
    let reachable = match side {
        BranchSide::Zeros => prev.as_ref().is_none_or(|s| s.is_positive()),
        BranchSide::Poles => next.as_ref().is_none_or(|s| s.is_negative()),
        BranchSide::All => true,
    };
    if !reachable {
        return Ok(Vec::new());
    }
    let ch = characteristic_polynomial(f, p, point, x0)?;
    let h = ch.lambda_factor().ok_or_else(|| {
        Error::UnsupportedBranch(
            "characteristic roots depend on the base point; choose a concrete point".into(),
        )
    })?;
    if h.deg() == 0 {
        return Ok(Vec::new());
    }
    let lo = next.as_ref().map(crate::algebra::rat::to_f64);
    let hi = prev.as_ref().map(crate::algebra::rat::to_f64);
    let mut out = Vec::new();
    let roots = complex_roots(
        &h.coeffs().iter().cloned().map(Complex::real).collect::<Vec<_>>(),
        DEFAULT_TOLERANCE,
    )?;
    for (root, _) in roots {
        let re = root.to_c64().re;
        let real = root.is_real();
        let exact_re = match &root {
            Complex::Exact { re, .. } => Some(re.clone()),
            _ => None,
        };
        let eq_slope = |s: &Option<Rat>, sf: Option<f64>| match (&exact_re, s, sf) {
            (Some(r), Some(s), _) => r == s,
            (None, _, Some(v)) => (re - v).abs() <= 1e-9 * (1.0 + v.abs()),
            _ => false,
        };
        let on_lo = eq_slope(&next, lo);
        let on_hi = eq_slope(&prev, hi);
        let inside = lo.is_none_or(|v| re > v || on_lo) && hi.is_none_or(|v| re < v || on_hi);
        if !inside || !side.admits(re) {
            continue;
        }
        let on_edge = on_lo || on_hi;
        if on_edge && real {
            continue;
        }
        out.push(Branch {
            face: Face::Vertex { point },
            origin: BranchOrigin::CharacteristicRoot,
            lambda: root,
            edge_equation: None,
            power: 1,
            power_roots: Vec::new(),
            c0: Vec::new(),
            on_edge_slope: on_edge,
        });
    }
    Ok(out)
}

/// Leading terms `c₀(x − x₀)^λ` read off the Petrović polygon. Monomials
/// whose coefficient vanishes at `x₀` are tolerated as long as they do not
/// sit on a face that is used.
pub fn leading_branches(f: &DiffPoly, x0: &BasePoint, side: BranchSide) -> Result<Vec<Branch>> {
    let p = petrovic_hull(petrovic_points(f));
    let mut out = Vec::new();
    for (pos, face) in p.faces.iter().enumerate() {
        match face {
            Face::Edge { slope, .. } => {
                let s = slope.as_ref().expect("Petrović edges have slopes");
                let admitted = match side {
                    BranchSide::Zeros => s.is_positive(),
                    BranchSide::Poles => s.is_negative(),
                    BranchSide::All => true,
                };
                if !admitted {
                    continue;
                }
                if let Some(b) = edge_branch(f, &p, face, x0)? {
                    out.push(b);
                }
            }
            Face::Vertex { point } => {
                out.extend(vertex_branches(f, &p, pos, *point, x0, side)?);
            }
        }
    }
    out.sort_by(|a, b| a.lambda.cmp_key(&b.lambda));
    Ok(out)
}
