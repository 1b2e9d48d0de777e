//! Differential polynomials `f = Σ φᵢ(x) y^{m₀ᵢ} (y′)^{m₁ᵢ} ⋯ (y⁽ⁿ⁾)^{mₙᵢ}`.

mod singular;
mod substitute;
mod sum;
mod transform;

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::algebra::{Rat, XPoly};
use crate::error::{Error, Result};

pub use singular::{singular_points, SingularSet};
pub use substitute::substitute_series;
pub use sum::DiffSum;
pub use transform::{shift_y, transform, Transform};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiffMonomial {
    pub coefficient: XPoly,
    /// `(m₀, m₁, …, mₙ)`, padded to the equation's order.
    pub exponents: Vec<u32>,
}

impl DiffMonomial {
    pub fn new(coefficient: XPoly, exponents: Vec<u32>) -> Self {
        DiffMonomial { coefficient, exponents }
    }

    /// Total degree `M = Σ mⱼ`.
    pub fn degree(&self) -> i64 {
        self.exponents.iter().map(|&m| m as i64).sum()
    }

    /// Weight `N = Σ j·mⱼ`.
    pub fn weight(&self) -> i64 {
        self.exponents
            .iter()
            .enumerate()
            .map(|(j, &m)| j as i64 * m as i64)
            .sum()
    }

    pub fn exponent(&self, j: usize) -> u32 {
        self.exponents.get(j).copied().unwrap_or(0)
    }

    /// The derivative part alone, e.g. `y'^2*y`; `1` when empty.
    pub fn derivative_label(&self) -> String {
        derivative_product(&self.exponents, "y")
    }
}

fn derivative_name(j: usize, dep: &str) -> String {
    match j {
        0..=3 => format!("{dep}{}", "'".repeat(j)),
        _ => format!("{dep}^({j})"),
    }
}

fn derivative_product(exps: &[u32], dep: &str) -> String {
    let parts: Vec<String> = exps
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &m)| m > 0)
        .map(|(j, &m)| {
            let base = derivative_name(j, dep);
            if m == 1 {
                base
            } else {
                format!("{base}^{m}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Canonical order: compare exponent vectors from the highest derivative
/// down, larger first.
fn canonical_cmp(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    let n = a.len().max(b.len());
    for j in (0..n).rev() {
        let (x, y) = (a.get(j).copied().unwrap_or(0), b.get(j).copied().unwrap_or(0));
        if x != y {
            return y.cmp(&x);
        }
    }
    std::cmp::Ordering::Equal
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiffPoly {
    order: usize,
    monomials: Vec<DiffMonomial>,
}

impl DiffPoly {
    /// Merges like monomials, drops zero coefficients, recomputes the order
    /// and sorts canonically. `declared_order` only sets the minimum length
    /// of the input exponent vectors that is accepted.
    pub fn normalize(raw: Vec<DiffMonomial>, declared_order: usize) -> Result<Self> {
        let mut sum = DiffSum::zero();
        for m in raw {
            if m.exponents.len() > declared_order + 1
                && m.exponents[declared_order + 1..].iter().any(|&e| e > 0)
            {
                return Err(Error::InvalidArgument(format!(
                    "monomial uses a derivative above the declared order {declared_order}"
                )));
            }
            sum.add_term(&m.exponents, &m.coefficient);
        }
        Self::from_sum(&sum)
    }

    pub fn from_sum(sum: &DiffSum) -> Result<Self> {
        if sum.is_zero() {
            return Err(Error::EmptyEquation);
        }
        let order = sum.order();
        let mut monomials: Vec<DiffMonomial> = sum
            .terms()
            .map(|(e, c)| {
                let mut e = e.clone();
                e.resize(order + 1, 0);
                DiffMonomial::new(c.clone(), e)
            })
            .collect();
        monomials.sort_by(|a, b| canonical_cmp(&a.exponents, &b.exponents));
        Ok(DiffPoly { order, monomials })
    }

    /// Convenience constructor from `(coefficient, exponents)` pairs.
    pub fn from_terms(terms: &[(XPoly, Vec<u32>)]) -> Result<Self> {
        let order = terms.iter().map(|(_, e)| e.len().saturating_sub(1)).max().unwrap_or(0);
        Self::normalize(
            terms
                .iter()
                .map(|(c, e)| DiffMonomial::new(c.clone(), e.clone()))
                .collect(),
            order,
        )
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn monomials(&self) -> &[DiffMonomial] {
        &self.monomials
    }

    pub fn to_sum(&self) -> DiffSum {
        let mut s = DiffSum::zero();
        for m in &self.monomials {
            s.add_term(&m.exponents, &m.coefficient);
        }
        s
    }

    /// True when no coefficient depends on `x`.
    pub fn is_autonomous(&self) -> bool {
        self.monomials.iter().all(|m| m.coefficient.is_constant())
    }

    /// Largest degree among the coefficients.
    pub fn max_coefficient_degree(&self) -> usize {
        self.monomials.iter().map(|m| m.coefficient.deg()).max().unwrap_or(0)
    }

    /// Multiplies every coefficient by `k`.
    pub fn scale(&self, k: &Rat) -> Self {
        assert!(!k.is_zero(), "scaling by zero");
        DiffPoly {
            order: self.order,
            monomials: self
                .monomials
                .iter()
                .map(|m| DiffMonomial::new(m.coefficient.scale(k), m.exponents.clone()))
                .collect(),
        }
    }

    /// Prints with custom variable names.
    pub fn display_with(&self, dep: &str, indep: &str) -> String {
        let mut s = String::new();
        for m in &self.monomials {
            let c = &m.coefficient;
            let deriv = derivative_product(&m.exponents, dep);
            let has_deriv = deriv != "1";
            let single = c.terms().count() == 1;
            let (neg, body) = if single {
                let (k, a) = c.terms().next().unwrap();
                let mut parts = Vec::new();
                if !a.abs().is_one() || (k == 0 && !has_deriv) {
                    parts.push(a.abs().to_string());
                }
                match k {
                    0 => {}
                    1 => parts.push(indep.to_string()),
                    _ => parts.push(format!("{indep}^{k}")),
                }
                if has_deriv {
                    parts.push(deriv);
                }
                (a.is_negative(), parts.join("*"))
            } else {
                let inner = c.fmt_with(indep);
                let body = if has_deriv {
                    format!("({inner})*{deriv}")
                } else {
                    format!("({inner})")
                };
                (false, body)
            };
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            s.push_str(&body);
        }
        s
    }
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("y", "x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn c(v: i64) -> XPoly {
        XPoly::constant(int(v))
    }

    #[test]
    fn shifted_cusp_normalizes() {
        // y'^2 (y - 1) + 1
        let f = DiffPoly::from_terms(&[
            (c(1), vec![1, 2]),
            (c(-1), vec![0, 2]),
            (c(1), vec![0, 0]),
        ])
        .unwrap();
        assert_eq!(f.order(), 1);
        let e: Vec<_> = f.monomials().iter().map(|m| m.exponents.clone()).collect();
        assert_eq!(e, vec![vec![1, 2], vec![0, 2], vec![0, 0]]);
        assert_eq!(f.to_string(), "y'^2*y - y'^2 + 1");
    }

    #[test]
    fn cancellation_is_empty() {
        let r = DiffPoly::from_terms(&[(c(2), vec![0, 1]), (c(-2), vec![0, 1])]);
        assert_eq!(r, Err(Error::EmptyEquation));
    }

    #[test]
    fn collinear_edge_order_and_points() {
        // y'^2 - (y' - 1)(y - 1) + x = y'^2 - y'y + y' + y - 1 + x
        let f = DiffPoly::from_terms(&[
            (c(1), vec![0, 2]),
            (c(-1), vec![1, 1]),
            (c(1), vec![0, 1]),
            (c(1), vec![1, 0]),
            (XPoly::from_ints(&[-1, 1]), vec![0, 0]),
        ])
        .unwrap();
        let pts: Vec<_> = f.monomials().iter().map(|m| (m.degree(), m.weight())).collect();
        assert_eq!(pts, vec![(2, 2), (2, 1), (1, 1), (1, 0), (0, 0)]);
        assert_eq!(f.to_string(), "y'^2 - y'*y + y' + y + (x - 1)");
    }

    #[test]
    fn order_recomputed() {
        let f = DiffPoly::from_terms(&[(c(1), vec![1, 0, 0, 0]), (c(3), vec![2])]).unwrap();
        assert_eq!(f.order(), 0);
    }

    #[test]
    fn high_derivatives_print() {
        let f = DiffPoly::from_terms(&[(c(1), vec![0, 0, 0, 0, 1]), (c(1), vec![1, 0, 1])]).unwrap();
        assert_eq!(f.to_string(), "y^(4) + y''*y");
    }
}
