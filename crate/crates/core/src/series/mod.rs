//! Formal Puiseux-series solutions at a base point.

mod branches;
mod extend;

pub use branches::{leading_branches, nth_roots, Branch, BranchOrigin, BranchSide};
pub use extend::{extend_branch, extend_series, extend_series_lenient, ResonanceValues};

use std::fmt;

use crate::algebra::{Complex, Rat};
use crate::diffpoly::{shift_y, DiffPoly};

#[derive(Clone, Debug, PartialEq)]
pub struct SeriesTerm {
    pub exponent: Rat,
    pub coefficient: Complex,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ResonanceStatus {
    /// The coefficient is arbitrary; `value` is the one used.
    FreeParameter { name: String, value: Complex },
    /// No power-series continuation exists at this exponent.
    Obstructed,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Resonance {
    pub exponent: Rat,
    pub status: ResonanceStatus,
}

/// `Σ cₖ (x − x₀)^{eₖ}` with exponents on the grid `λ + (1/q)ℤ≥0`. Only
/// nonzero coefficients are stored.
#[derive(Clone, Debug, PartialEq)]
pub struct PuiseuxSeries {
    pub base_point: Rat,
    pub ramification: u32,
    pub terms: Vec<SeriesTerm>,
    pub resonances: Vec<Resonance>,
    /// The equation evaluated on the truncation has at least this valuation.
    pub certified_valuation: Rat,
}

impl PuiseuxSeries {
    pub fn leading_exponent(&self) -> Option<&Rat> {
        self.terms.first().map(|t| &t.exponent)
    }

    /// Coefficient at `exponent`, zero when absent.
    pub fn coefficient(&self, exponent: &Rat) -> Complex {
        self.terms
            .iter()
            .find(|t| &t.exponent == exponent)
            .map(|t| t.coefficient.clone())
            .unwrap_or_else(Complex::zero)
    }
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let t = if self.base_point == Rat::from_integer(0.into()) {
            "x".to_string()
        } else {
            format!("(x - {})", self.base_point)
        };
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|s| format!("({})*{t}^({})", s.coefficient, s.exponent))
            .collect();
        write!(f, "{} + O({t}^({}))", parts.join(" + "), self.certified_valuation)
    }
}

/// The equation for `u` after `y = C₀ + u`, so that solutions with
/// `y(x₀) = C₀` become zeros of `u`.
pub fn shift_and_recurse(f: &DiffPoly, c0: &Rat) -> DiffPoly {
    shift_y(f, c0)
}
