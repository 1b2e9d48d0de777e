//! Petrović and Fine polygons.

mod characteristic;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::algebra::Rat;
use crate::diffpoly::{singular_points, DiffPoly};
use crate::error::{Error, Result};

pub use characteristic::{
    characteristic_polynomial, edge_polynomial, has_nonzero_root, multiplier, specialize,
    CharacteristicPolynomial, ParamPoly,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    Petrovic,
    Fine,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BasePoint {
    /// Arbitrary nonsingular point; every `φᵢ(x₀)` is a nonzero symbol.
    Generic,
    At(Rat),
}

/// A monomial feeding a lattice point; `x_power` is the power `l` of `x`
/// taken from the coefficient (always 0 for Petrović points).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Contributor {
    pub monomial: usize,
    pub x_power: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePoint {
    pub first: i64,
    pub second: i64,
    pub contributors: Vec<Contributor>,
}

impl LatticePoint {
    pub fn coords(&self) -> (i64, i64) {
        (self.first, self.second)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
    Horizontal,
}

impl Side {
    pub fn as_str(&self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
            Side::Horizontal => "horizontal",
        }
    }
}

/// A boundary face. Points are referenced by index into
/// [`LatticePolygon::points`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Face {
    Vertex {
        point: usize,
    },
    Edge {
        start: usize,
        end: usize,
        /// Every point on the segment, endpoints included, in chain order.
        members: Vec<usize>,
        /// `Δsecond/Δfirst`; `None` for a vertical Fine edge.
        slope: Option<Rat>,
        /// Only set for Petrović edges.
        side: Option<Side>,
    },
}

impl Face {
    pub fn is_edge(&self) -> bool {
        matches!(self, Face::Edge { .. })
    }

    /// Indices of all points on the face.
    pub fn point_indices(&self) -> Vec<usize> {
        match self {
            Face::Vertex { point } => vec![*point],
            Face::Edge { members, .. } => members.clone(),
        }
    }

    pub fn slope(&self) -> Option<&Rat> {
        match self {
            Face::Edge { slope, .. } => slope.as_ref(),
            Face::Vertex { .. } => None,
        }
    }

    pub fn side(&self) -> Option<Side> {
        match self {
            Face::Edge { side, .. } => *side,
            Face::Vertex { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePolygon {
    pub flavor: Flavor,
    /// Sorted by `(first, second)`.
    pub points: Vec<LatticePoint>,
    /// Alternating vertex, edge, vertex, … along the boundary chain.
    pub faces: Vec<Face>,
}

impl LatticePolygon {
    pub fn point(&self, i: usize) -> &LatticePoint {
        &self.points[i]
    }

    pub fn edges(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(|f| f.is_edge())
    }

    pub fn vertices(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(|f| !f.is_edge())
    }

    pub fn index_of(&self, first: i64, second: i64) -> Option<usize> {
        self.points.iter().position(|p| p.first == first && p.second == second)
    }

    /// Position of a face in the chain.
    pub fn face_position(&self, face: &Face) -> Option<usize> {
        self.faces.iter().position(|f| f == face)
    }

    /// Slopes of the edges adjacent to the vertex at chain position `k`,
    /// as `(previous, next)`.
    pub fn adjacent_slopes(&self, k: usize) -> (Option<Rat>, Option<Rat>) {
        let prev = k.checked_sub(1).and_then(|i| self.faces[i].slope().cloned());
        let next = self.faces.get(k + 1).and_then(|f| f.slope().cloned());
        (prev, next)
    }
}

fn group_points(raw: Vec<((i64, i64), Contributor)>) -> Vec<LatticePoint> {
    let mut map: BTreeMap<(i64, i64), Vec<Contributor>> = BTreeMap::new();
    for (k, c) in raw {
        map.entry(k).or_default().push(c);
    }
    map.into_iter()
        .map(|((a, b), mut contributors)| {
            contributors.sort();
            LatticePoint {
                first: a,
                second: b,
                contributors,
            }
        })
        .collect()
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

fn on_segment(a: (i64, i64), b: (i64, i64), p: (i64, i64)) -> bool {
    cross(a, b, p) == 0
        && p.0 >= a.0.min(b.0)
        && p.0 <= a.0.max(b.0)
        && p.1 >= a.1.min(b.1)
        && p.1 <= a.1.max(b.1)
}

/// Builds the alternating face list for a chain of vertex indices.
fn chain_faces(
    points: &[LatticePoint],
    chain: &[usize],
    order_key: impl Fn(&LatticePoint) -> (i64, i64),
    slope_side: impl Fn((i64, i64), (i64, i64)) -> (Option<Rat>, Option<Side>),
) -> Vec<Face> {
    let mut faces = vec![Face::Vertex { point: chain[0] }];
    for w in chain.windows(2) {
        let (a, b) = (points[w[0]].coords(), points[w[1]].coords());
        let mut members: Vec<usize> = (0..points.len())
            .filter(|&i| on_segment(a, b, points[i].coords()))
            .collect();
        members.sort_by_key(|&i| order_key(&points[i]));
        let (slope, side) = slope_side(a, b);
        faces.push(Face::Edge {
            start: w[0],
            end: w[1],
            members,
            slope,
            side,
        });
        faces.push(Face::Vertex { point: w[1] });
    }
    faces
}

fn check_base_point(f: &DiffPoly, x0: &BasePoint) -> Result<()> {
    if let BasePoint::At(a) = x0 {
        if singular_points(f).contains(a)
            || f.monomials().iter().any(|m| m.coefficient.eval(a).is_zero())
        {
            return Err(Error::SingularBasePoint(a.clone()));
        }
    }
    Ok(())
}

/// Petrović points `(Mᵢ, Nᵢ)` (with contributors) without any base-point
/// check.
pub fn petrovic_points(f: &DiffPoly) -> Vec<LatticePoint> {
    group_points(
        f.monomials()
            .iter()
            .enumerate()
            .map(|(i, m)| {
                (
                    (m.degree(), m.weight()),
                    Contributor {
                        monomial: i,
                        x_power: 0,
                    },
                )
            })
            .collect(),
    )
}

/// Upper hull chain of already computed Petrović points.
pub fn petrovic_hull(points: Vec<LatticePoint>) -> LatticePolygon {
    // Top point of each column, then the upper hull left to right.
    let mut tops: BTreeMap<i64, usize> = BTreeMap::new();
    for (i, p) in points.iter().enumerate() {
        let e = tops.entry(p.first).or_insert(i);
        if points[*e].second < p.second {
            *e = i;
        }
    }
    let mut chain: Vec<usize> = Vec::new();
    for &i in tops.values() {
        while chain.len() >= 2 {
            let (a, b) = (points[chain[chain.len() - 2]].coords(), points[chain[chain.len() - 1]].coords());
            if cross(a, b, points[i].coords()) >= 0 {
                chain.pop();
            } else {
                break;
            }
        }
        chain.push(i);
    }
    let faces = chain_faces(&points, &chain, |p| (p.first, p.second), |a, b| {
        let s = Rat::new(BigInt::from(b.1 - a.1), BigInt::from(b.0 - a.0));
        let side = if s.is_positive() {
            Side::Left
        } else if s.is_negative() {
            Side::Right
        } else {
            Side::Horizontal
        };
        (Some(s), Some(side))
    });
    LatticePolygon {
        flavor: Flavor::Petrovic,
        points,
        faces,
    }
}

/// The Petrović polygon: upper convex-hull chain of the points
/// `(Mᵢ, Nᵢ)`, without the vertical end segments and the bottom.
pub fn petrovic_polygon(f: &DiffPoly, x0: &BasePoint) -> Result<LatticePolygon> {
    check_base_point(f, x0)?;
    Ok(petrovic_hull(petrovic_points(f)))
}

/// The Fine polygon at `x = 0`: left boundary chain (bottom to top) of the
/// points `(l − Nᵢ, Mᵢ)` over every power `x^l` in every coefficient.
pub fn fine_polygon(f: &DiffPoly) -> LatticePolygon {
    let mut raw = Vec::new();
    for (i, m) in f.monomials().iter().enumerate() {
        for (l, _) in m.coefficient.terms() {
            raw.push((
                (l as i64 - m.weight(), m.degree()),
                Contributor {
                    monomial: i,
                    x_power: l,
                },
            ));
        }
    }
    let points = group_points(raw);
    // Leftmost point of each row, then the left chain bottom to top.
    let mut lefts: BTreeMap<i64, usize> = BTreeMap::new();
    for (i, p) in points.iter().enumerate() {
        let e = lefts.entry(p.second).or_insert(i);
        if points[*e].first > p.first {
            *e = i;
        }
    }
    let mut chain: Vec<usize> = Vec::new();
    for &i in lefts.values() {
        while chain.len() >= 2 {
            let (a, b) = (points[chain[chain.len() - 2]].coords(), points[chain[chain.len() - 1]].coords());
            if cross(a, b, points[i].coords()) >= 0 {
                chain.pop();
            } else {
                break;
            }
        }
        chain.push(i);
    }
    let faces = chain_faces(&points, &chain, |p| (p.second, p.first), |a, b| {
        let dn = b.0 - a.0;
        let slope = if dn == 0 {
            None
        } else {
            Some(Rat::new(BigInt::from(b.1 - a.1), BigInt::from(dn)))
        };
        (slope, None)
    });
    LatticePolygon {
        flavor: Flavor::Fine,
        points,
        faces,
    }
}

/// `⟨(λ, −1), Q⟩ = λ·M − N`.
pub fn pairing(lambda: &Rat, p: &LatticePoint) -> Rat {
    lambda * Rat::from_integer(BigInt::from(p.first)) - Rat::from_integer(BigInt::from(p.second))
}

/// The face of a Petrović polygon on which `λM − N` is minimal, and the
/// minimum `γ_λ`.
pub fn support_face(p: &LatticePolygon, lambda: &Rat) -> (Face, Rat) {
    assert_eq!(p.flavor, Flavor::Petrovic, "support faces are defined for Petrović polygons");
    let gamma = p
        .points
        .iter()
        .map(|q| pairing(lambda, q))
        .min()
        .expect("polygon has points");
    if let Some(e) = p.edges().find(|e| e.slope() == Some(lambda)) {
        return (e.clone(), gamma);
    }
    let v = p
        .vertices()
        .find(|v| match v {
            Face::Vertex { point } => pairing(lambda, &p.points[*point]) == gamma,
            _ => false,
        })
        .expect("minimum is attained on the chain");
    (v.clone(), gamma)
}
