//! Movable zeros and poles, the Fuchs test and Fine's convergence flag.

mod fuchs;

pub use fuchs::{fuchs_check, fuchs_check_with, Condition, FuchsOptions, FuchsReport, FuchsWitness, Verdict};

use num_traits::{Signed, Zero};

use crate::algebra::Rat;
use crate::diffpoly::DiffPoly;
use crate::error::Result;
use crate::polygon::{edge_polynomial, has_nonzero_root, petrovic_polygon, specialize, BasePoint, Face};

#[derive(Clone, Debug, PartialEq)]
pub struct MovableReport {
    /// Slopes of left-slanted edges whose edge equation has a root `c₀ ≠ 0`.
    pub movable_zero_orders: Vec<Rat>,
    /// Negated slopes of such right-slanted edges.
    pub movable_pole_orders: Vec<Rat>,
    pub has_movable_zeros: bool,
    pub has_movable_poles: bool,
    /// Slanted edges whose edge equation admits no nonzero `c₀`.
    pub candidate_only: Vec<Face>,
    /// Set for equations of order other than 1: the orders are candidates.
    pub candidates_only: bool,
    pub notes: Vec<String>,
}

/// Movable zeros and poles read off the slanted edges of the Petrović
/// polygon.
pub fn movable_report(f: &DiffPoly, x0: &BasePoint) -> Result<MovableReport> {
    let p = petrovic_polygon(f, x0)?;
    let mut zeros = Vec::new();
    let mut poles = Vec::new();
    let mut candidate_only = Vec::new();
    for e in p.edges() {
        let slope = e.slope().expect("Petrović edges have slopes");
        if slope.is_zero() {
            continue;
        }
        let (_, poly) = edge_polynomial(f, &p, e, x0)?;
        let solvable = match x0 {
            BasePoint::Generic => has_nonzero_root(&poly),
            BasePoint::At(a) => specialize(&poly, a).terms().count() >= 2,
        };
        if !solvable {
            candidate_only.push(e.clone());
        } else if slope.is_positive() {
            zeros.push(slope.clone());
        } else {
            poles.push(-slope.clone());
        }
    }
    zeros.sort();
    zeros.dedup();
    poles.sort();
    poles.dedup();
    let candidates_only = f.order() != 1;
    let mut notes = Vec::new();
    if candidates_only {
        notes.push(format!(
            "order {} equation: orders are leading-term candidates, not a classification",
            f.order()
        ));
    }
    if poles.is_empty() && !candidates_only {
        notes.push("no right-slanted edge: poles do not depend on the integration constants, and there are finitely many of them".into());
    }
    if zeros.is_empty() && !candidates_only {
        notes.push("no left-slanted edge: zeros do not depend on the integration constants".into());
    }
    Ok(MovableReport {
        has_movable_zeros: !zeros.is_empty(),
        has_movable_poles: !poles.is_empty(),
        movable_zero_orders: zeros,
        movable_pole_orders: poles,
        candidate_only,
        candidates_only,
        notes,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceFlag {
    /// Every monomial contains `y` and each derivative up to the order.
    pub all_terms_full: bool,
    /// First monomial (canonical order) missing some derivative.
    pub offending: Option<usize>,
}

pub fn fine_convergence_check(f: &DiffPoly) -> ConvergenceFlag {
    let offending = f
        .monomials()
        .iter()
        .position(|m| (0..=f.order()).any(|j| m.exponent(j) == 0));
    ConvergenceFlag {
        all_terms_full: offending.is_none(),
        offending,
    }
}

#[cfg(test)]
mod tests;
