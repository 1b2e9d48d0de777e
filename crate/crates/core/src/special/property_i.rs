use num_traits::Signed;

use crate::algebra::roots::rational_roots;
use crate::algebra::Rat;
use crate::diffpoly::DiffPoly;
use crate::error::{Error, Result};
use crate::polygon::{characteristic_polynomial, petrovic_polygon, BasePoint, Face};

#[derive(Clone, Debug, PartialEq)]
pub enum PropertyIWitness {
    Edge { face: Face, slope: Rat },
    /// A negative-integer characteristic root of the vertex inside the open
    /// interval `(lower, upper)` of adjacent slopes (`None` = unbounded).
    Vertex {
        point: usize,
        root: Rat,
        lower: Option<Rat>,
        upper: Option<Rat>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct PropertyIReport {
    pub holds: bool,
    pub witness: Option<PropertyIWitness>,
    /// Point indices of the vertices whose characteristic roots were scanned.
    pub checked_vertices: Vec<usize>,
    pub notes: Vec<String>,
}

fn negative_integer(r: &Rat) -> bool {
    r.is_integer() && r.is_negative()
}

/// Scans edges for a negative-integer slope, then vertices for a
/// negative-integer characteristic root strictly between the adjacent
/// slopes. End vertices use a half-line.
pub fn property_i_check(f: &DiffPoly) -> Result<PropertyIReport> {
    if !f.is_autonomous() {
        return Err(Error::NotAutonomous);
    }
    let p = petrovic_polygon(f, &BasePoint::Generic)?;
    let mut notes = Vec::new();
    for e in p.edges() {
        let slope = e.slope().expect("Petrović edges have slopes");
        if negative_integer(slope) {
            return Ok(PropertyIReport {
                holds: true,
                witness: Some(PropertyIWitness::Edge { face: e.clone(), slope: slope.clone() }),
                checked_vertices: Vec::new(),
                notes,
            });
        }
    }
    let mut checked = Vec::new();
    let mut witness = None;
    for (pos, face) in p.faces.iter().enumerate() {
        let Face::Vertex { point } = face else { continue };
        let (upper, lower) = p.adjacent_slopes(pos);
        if (upper.is_none() || lower.is_none())
            && p.faces.len() > 1 && !notes.iter().any(|n: &String| n.starts_with("end vertices")) {
                notes.push("end vertices are tested against a half-line beyond their single edge".into());
            }
        checked.push(*point);
        let ch = characteristic_polynomial(f, &p, *point, &BasePoint::Generic)?;
        let Some(h) = ch.lambda_factor() else { continue };
        for (r, _) in rational_roots(&h) {
            let inside = lower.as_ref().is_none_or(|l| &r > l) && upper.as_ref().is_none_or(|u| &r < u);
            if negative_integer(&r) && inside {
                witness = Some(PropertyIWitness::Vertex {
                    point: *point,
                    root: r,
                    lower: lower.clone(),
                    upper: upper.clone(),
                });
                break;
            }
        }
        if witness.is_some() {
            break;
        }
    }
    Ok(PropertyIReport {
        holds: witness.is_some(),
        witness,
        checked_vertices: checked,
        notes,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct FirstIntegralReport {
    pub property_i: PropertyIReport,
    /// Set when the transformed equation lacks property I.
    pub partial_first_integral: bool,
    pub message: String,
}

/// Given `f` and the equation `ψ` satisfied by `z = R(y, …)`, decides
/// whether `R = const` is forced along doubly periodic solutions of `f`.
pub fn partial_first_integral_report(f: &DiffPoly, psi: &DiffPoly, r_description: &str) -> Result<FirstIntegralReport> {
    if !f.is_autonomous() {
        return Err(Error::NotAutonomous);
    }
    let property_i = property_i_check(psi)?;
    let partial = !property_i.holds;
    let message = if partial {
        format!(
            "{r_description} = const is a partial first integral along double-periodic solutions of {f}"
        )
    } else {
        "no conclusion: the transformed equation has property I".to_string()
    };
    Ok(FirstIntegralReport {
        property_i,
        partial_first_integral: partial,
        message,
    })
}
