//! Classification results for generalized Riccati, binomial and
//! autonomous equations.

mod binomial;
mod property_i;

pub use binomial::{binomial_classify, BinomialClass, BinomialVerdict};
pub use property_i::{partial_first_integral_report, property_i_check, FirstIntegralReport, PropertyIReport, PropertyIWitness};

use crate::algebra::{squarefree_distinct, ypoly, BiPoly};
use crate::error::{Error, Result};

const W: usize = 0;
const Z: usize = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RiccatiVerdict {
    /// More than two distinct roots of `Q` in `w`.
    AllSingleValuedRational,
    /// Exactly two distinct roots.
    AtMostOneTranscendental,
    /// Exactly one distinct root.
    AtMostTwoTranscendental,
    /// `Q` free of `w`.
    RiccatiAtMostThree,
}

impl RiccatiVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            RiccatiVerdict::AllSingleValuedRational => "all-single-valued-rational",
            RiccatiVerdict::AtMostOneTranscendental => "at-most-one-transcendental",
            RiccatiVerdict::AtMostTwoTranscendental => "at-most-two-transcendental",
            RiccatiVerdict::RiccatiAtMostThree => "riccati-at-most-three",
        }
    }

    /// Upper bound on essentially distinct transcendental single-valued
    /// solutions.
    pub fn transcendental_bound(&self) -> usize {
        match self {
            RiccatiVerdict::AllSingleValuedRational => 0,
            RiccatiVerdict::AtMostOneTranscendental => 1,
            RiccatiVerdict::AtMostTwoTranscendental => 2,
            RiccatiVerdict::RiccatiAtMostThree => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RiccatiClass {
    pub distinct_root_count: usize,
    pub verdict: RiccatiVerdict,
    pub is_plain_riccati: bool,
    pub malmquist_note: Option<String>,
}

/// Classifies `w′ = P(w, z)/Q(w, z)` (variables `w = 0`, `z = 1`) by the
/// number of distinct roots of `Q` in `w`. Verdicts are upper bounds.
pub fn riccati_classify(p: &BiPoly, q: &BiPoly) -> Result<RiccatiClass> {
    if q.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    let qu = q.to_upoly(W, Z);
    if !p.is_zero() || !q.free_of(W) {
        let g = ypoly::gcd(&p.to_upoly(W, Z), &qu);
        if ypoly::deg(&g) > 0 {
            return Err(Error::NotReduced);
        }
    }
    let free = q.free_of(W);
    let count = if free { 0 } else { squarefree_distinct(q, W)?.1 };
    let verdict = match (free, count) {
        (true, _) => RiccatiVerdict::RiccatiAtMostThree,
        (_, 1) => RiccatiVerdict::AtMostTwoTranscendental,
        (_, 2) => RiccatiVerdict::AtMostOneTranscendental,
        _ => RiccatiVerdict::AllSingleValuedRational,
    };
    let is_plain_riccati = free && (p.is_zero() || p.degree_in(W) <= 2);
    let malmquist_note = (!is_plain_riccati).then(|| {
        "not a Riccati equation: by Malmquist's theorem every single-valued solution is rational".to_string()
    });
    Ok(RiccatiClass {
        distinct_root_count: count,
        verdict,
        is_plain_riccati,
        malmquist_note,
    })
}

#[cfg(test)]
mod tests;
