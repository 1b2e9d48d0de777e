use crate::algebra::roots::rational_roots;
use crate::algebra::{Rat, XPoly};

use super::{transform, DiffPoly, Transform};

/// Points where some coefficient of the equation vanishes.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularSet {
    /// Rational roots of the coefficients, ascending.
    pub finite: Vec<Rat>,
    /// Squarefree polynomials without rational roots whose zeros are the
    /// remaining (irrational) singular points.
    pub algebraic: Vec<XPoly>,
    pub includes_infinity: bool,
}

impl SingularSet {
    pub fn contains(&self, x0: &Rat) -> bool {
        self.finite.contains(x0)
    }

    pub fn is_empty_finite(&self) -> bool {
        self.finite.is_empty() && self.algebraic.is_empty()
    }
}

pub fn singular_points(f: &DiffPoly) -> SingularSet {
    // Least common multiple of the squarefree parts of all coefficients.
    let mut l = XPoly::one();
    for m in f.monomials() {
        if m.coefficient.deg() == 0 {
            continue;
        }
        let s = m.coefficient.squarefree_part();
        let g = l.gcd(&s);
        l = (&l * &s).div_rem(&g).0;
    }
    let finite: Vec<Rat> = rational_roots(&l).into_iter().map(|(r, _)| r).collect();
    let mut rest = l;
    for r in &finite {
        rest = rest.div_rem(&XPoly::linear_root(r)).0;
    }
    let algebraic = if rest.deg() > 0 { vec![rest.monic()] } else { Vec::new() };
    let g = transform(f, &Transform::InverseX);
    let includes_infinity = g
        .monomials()
        .iter()
        .any(|m| m.coefficient.coeff(0) == Rat::from_integer(0.into()));
    SingularSet {
        finite,
        algebraic,
        includes_infinity,
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
    fn shifted_cusp_has_no_finite_points() {
        let f = DiffPoly::from_terms(&[(c(1), vec![1, 2]), (c(-1), vec![0, 2]), (c(1), vec![0])]).unwrap();
        let s = singular_points(&f);
        assert!(s.is_empty_finite());
    }

    #[test]
    fn cubic_slope() {
        let f = DiffPoly::from_terms(&[(XPoly::x(), vec![0, 3]), (c(1), vec![1, 1]), (c(-1), vec![0])]).unwrap();
        let s = singular_points(&f);
        assert_eq!(s.finite, vec![int(0)]);
        assert!(s.includes_infinity);
    }

    #[test]
    fn collinear_edge() {
        let f = DiffPoly::from_terms(&[
            (c(1), vec![0, 2]),
            (c(-1), vec![1, 1]),
            (c(1), vec![0, 1]),
            (c(1), vec![1, 0]),
            (XPoly::from_ints(&[-1, 1]), vec![0, 0]),
        ])
        .unwrap();
        let s = singular_points(&f);
        assert_eq!(s.finite, vec![int(1)]);
        assert!(s.includes_infinity);
    }

    #[test]
    fn irrational_points_recorded() {
        let f = DiffPoly::from_terms(&[(XPoly::from_ints(&[-2, 0, 1]), vec![0, 1]), (c(1), vec![1])]).unwrap();
        let s = singular_points(&f);
        assert!(s.finite.is_empty());
        assert_eq!(s.algebraic, vec![XPoly::from_ints(&[-2, 0, 1])]);
    }
}
