//! Characteristic polynomials of vertices and edge equations.

use num_traits::Zero;

use crate::algebra::{int, Rat, XPoly};
use crate::diffpoly::{DiffMonomial, DiffPoly};
use crate::error::{Error, Result};

use super::{BasePoint, Face, Flavor, LatticePoint, LatticePolygon};

/// A polynomial whose coefficients are polynomials in the base point `x₀`
/// (constants once a concrete base point is chosen), lowest power first.
pub type ParamPoly = Vec<XPoly>;

/// Evaluates the `x₀`-dependence at a concrete point.
pub fn specialize(p: &ParamPoly, x0: &Rat) -> XPoly {
    XPoly::new(p.iter().map(|c| c.eval(x0)).collect())
}

/// `A(λ) = λ^{γ₁}(λ−1)^{γ₂}⋯(λ−n+1)^{γₙ}` with `γⱼ = mⱼ + … + mₙ`.
pub fn multiplier(exponents: &[u32]) -> XPoly {
    let mut acc = XPoly::one();
    let mut gamma: u32 = 0;
    for j in (1..exponents.len()).rev() {
        gamma += exponents[j];
        if gamma > 0 {
            acc = &acc * &XPoly::linear_root(&int(j as i64 - 1)).pow(gamma);
        }
    }
    acc
}

#[derive(Clone, Debug, PartialEq)]
pub struct CharacteristicPolynomial {
    pub vertex: LatticePoint,
    /// Polynomial in `λ`.
    pub poly: ParamPoly,
    /// The vertex's `N`-coordinate (Petrović) or `M`-coordinate (Fine).
    pub beta: i64,
}

impl CharacteristicPolynomial {
    /// The polynomial in `λ` when its coefficients do not depend on `x₀`.
    pub fn concrete(&self) -> Option<XPoly> {
        if self.poly.iter().all(XPoly::is_constant) {
            Some(XPoly::new(self.poly.iter().map(|c| c.coeff(0)).collect()))
        } else {
            None
        }
    }

    pub fn degree(&self) -> usize {
        self.poly.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    /// Splits `Σ aₖ(x₀) λ^k` as `g(x₀)·h(λ)` when possible and returns `h`.
    pub fn lambda_factor(&self) -> Option<XPoly> {
        if let Some(p) = self.concrete() {
            return Some(p);
        }
        let lead = self.poly.iter().find(|c| !c.is_zero())?;
        let mut h = Vec::with_capacity(self.poly.len());
        for c in &self.poly {
            if c.is_zero() {
                h.push(Rat::zero());
                continue;
            }
            let (q, r) = c.div_rem(lead);
            if !r.is_zero() || !q.is_constant() {
                return None;
            }
            h.push(q.coeff(0));
        }
        Some(XPoly::new(h))
    }
}

/// The coefficient a contributor brings at the base point: `φᵢ(x₀)` for
/// Petrović points (a polynomial in `x₀` in generic mode), the coefficient of
/// `x^l` for Fine points.
fn contributor_value(
    m: &DiffMonomial,
    x_power: usize,
    flavor: Flavor,
    x0: &BasePoint,
) -> XPoly {
    match (flavor, x0) {
        (Flavor::Fine, _) => XPoly::constant(m.coefficient.coeff(x_power)),
        (Flavor::Petrovic, BasePoint::Generic) => m.coefficient.clone(),
        (Flavor::Petrovic, BasePoint::At(a)) => XPoly::constant(m.coefficient.eval(a)),
    }
}

fn check_contributors(f: &DiffPoly, pt: &LatticePoint, flavor: Flavor, x0: &BasePoint) -> Result<()> {
    if let (Flavor::Petrovic, BasePoint::At(a)) = (flavor, x0) {
        for c in &pt.contributors {
            if f.monomials()[c.monomial].coefficient.eval(a).is_zero() {
                return Err(Error::SingularBasePoint(a.clone()));
            }
        }
    }
    Ok(())
}

/// `Σ Aᵢ(λ)·φᵢ(x₀)` over the contributors of a vertex.
pub fn characteristic_polynomial(
    f: &DiffPoly,
    p: &LatticePolygon,
    vertex: usize,
    x0: &BasePoint,
) -> Result<CharacteristicPolynomial> {
    let pt = p.points.get(vertex).ok_or_else(|| {
        Error::InvalidArgument(format!("vertex index {vertex} is not a point of the polygon"))
    })?;
    check_contributors(f, pt, p.flavor, x0)?;
    let mut poly: ParamPoly = Vec::new();
    for c in &pt.contributors {
        let m = &f.monomials()[c.monomial];
        let a = multiplier(&m.exponents);
        let v = contributor_value(m, c.x_power, p.flavor, x0);
        for (k, ak) in a.terms() {
            if poly.len() <= k {
                poly.resize(k + 1, XPoly::zero());
            }
            poly[k] = &poly[k] + &v.scale(ak);
        }
    }
    while poly.last().is_some_and(|c| c.is_zero()) {
        poly.pop();
    }
    Ok(CharacteristicPolynomial {
        vertex: pt.clone(),
        poly,
        beta: pt.second,
    })
}

/// Edge equation `Σ Aᵢ(λ)φᵢ(x₀)c^{Mᵢ − M_min}` in the unknown leading
/// coefficient `c`, for a Petrović edge (`λ` = slope) or a Fine edge
/// (`λ = −ΔÑ/ΔM`).
pub fn edge_polynomial(f: &DiffPoly, p: &LatticePolygon, face: &Face, x0: &BasePoint) -> Result<(Rat, ParamPoly)> {
    let (members, slope) = match face {
        Face::Edge { members, slope, .. } => (members, slope),
        Face::Vertex { .. } => {
            return Err(Error::InvalidArgument("edge equation requested for a vertex".into()))
        }
    };
    let lambda = match p.flavor {
        Flavor::Petrovic => slope.clone().expect("Petrović edges have a slope"),
        Flavor::Fine => match slope {
            None => Rat::zero(),
            Some(s) => -s.recip(),
        },
    };
    let degree_of = |pt: &LatticePoint| match p.flavor {
        Flavor::Petrovic => pt.first,
        Flavor::Fine => pt.second,
    };
    let mmin = members.iter().map(|&i| degree_of(&p.points[i])).min().unwrap();
    let mut poly: ParamPoly = Vec::new();
    for &i in members {
        let pt = &p.points[i];
        check_contributors(f, pt, p.flavor, x0)?;
        let k = (degree_of(pt) - mmin) as usize;
        if poly.len() <= k {
            poly.resize(k + 1, XPoly::zero());
        }
        for c in &pt.contributors {
            let m = &f.monomials()[c.monomial];
            let a = multiplier(&m.exponents).eval(&lambda);
            let v = contributor_value(m, c.x_power, p.flavor, x0);
            poly[k] = &poly[k] + &v.scale(&a);
        }
    }
    while poly.last().is_some_and(|c| c.is_zero()) {
        poly.pop();
    }
    Ok((lambda, poly))
}

/// True when `Σ aₖ c^k` has a nonzero root, i.e. at least two coefficients
/// are nonzero.
pub fn has_nonzero_root(p: &ParamPoly) -> bool {
    p.iter().filter(|c| !c.is_zero()).count() >= 2
}
