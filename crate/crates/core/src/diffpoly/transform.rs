//! Changes of variable.

use crate::algebra::{Rat, XPoly};

use super::{DiffPoly, DiffSum};

#[derive(Clone, Debug, PartialEq)]
pub enum Transform {
    /// `x = z + x₀`.
    Shift(Rat),
    /// `y = 1/w`, cleared by the minimal power of `w`.
    ReciprocalY,
    /// `x = 1/t`, cleared by the minimal power of `t`.
    InverseX,
}

pub fn transform(f: &DiffPoly, mode: &Transform) -> DiffPoly {
    let sum = match mode {
        Transform::Shift(x0) => {
            let mut s = DiffSum::zero();
            for m in f.monomials() {
                s.add_term(&m.exponents, &m.coefficient.taylor_shift(x0));
            }
            s
        }
        Transform::ReciprocalY => reciprocal_y(f),
        Transform::InverseX => inverse_x(f),
    };
    DiffPoly::from_sum(&sum).expect("invertible change of variable keeps the equation nonzero")
}

fn product_of_powers(images: &[DiffSum], exps: &[u32]) -> DiffSum {
    let mut acc = DiffSum::constant(XPoly::one());
    for (j, &m) in exps.iter().enumerate() {
        if m > 0 {
            acc = &acc * &images[j].pow(m);
        }
    }
    acc
}

fn reciprocal_y(f: &DiffPoly) -> DiffSum {
    let n = f.order();
    let w = DiffSum::derivative_var(0);
    let wp = DiffSum::derivative_var(1);
    // y^{(j)} = Q_j / w^{j+1}
    let mut q = vec![DiffSum::constant(XPoly::one())];
    for j in 0..n {
        let next = &(&w * &q[j].total_derivative())
            - &(&wp * &q[j]).scale(&Rat::from_integer((j as i64 + 1).into()));
        q.push(next);
    }
    let k = f
        .monomials()
        .iter()
        .map(|m| m.degree() + m.weight())
        .max()
        .unwrap_or(0);
    let mut out = DiffSum::zero();
    for m in f.monomials() {
        let extra = (k - m.degree() - m.weight()) as u32;
        let term = &product_of_powers(&q, &m.exponents) * &w.pow(extra);
        out = &out + &term.scale_poly(&m.coefficient);
    }
    let common = out.min_y_power();
    out.divide_y_power(common)
}

fn inverse_x(f: &DiffPoly) -> DiffSum {
    let n = f.order();
    let minus_t2 = DiffSum::constant(XPoly::from_ints(&[0, 0, -1]));
    // d/dx = -t² d/dt
    let mut p = vec![DiffSum::derivative_var(0)];
    for j in 0..n {
        let next = &minus_t2 * &p[j].total_derivative();
        p.push(next);
    }
    let d = f.max_coefficient_degree();
    let mut out = DiffSum::zero();
    for m in f.monomials() {
        let c = &m.coefficient;
        let coeff = c.reversed().shift_up(d - c.deg());
        out = &out + &product_of_powers(&p, &m.exponents).scale_poly(&coeff);
    }
    let common = out.min_x_power();
    out.divide_x_power(common)
}

/// The equation for `u` after `y = c + u`.
pub fn shift_y(f: &DiffPoly, c: &Rat) -> DiffPoly {
    let mut images = vec![&DiffSum::derivative_var(0) + &DiffSum::constant(XPoly::constant(c.clone()))];
    for j in 1..=f.order() {
        images.push(DiffSum::derivative_var(j));
    }
    let mut out = DiffSum::zero();
    for m in f.monomials() {
        out = &out + &product_of_powers(&images, &m.exponents).scale_poly(&m.coefficient);
    }
    DiffPoly::from_sum(&out).expect("translation keeps the equation nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    fn c(v: i64) -> XPoly {
        XPoly::constant(int(v))
    }

    #[test]
    fn reciprocal_of_riccati() {
        // y' + y^2 -> -w' + 1
        let f = DiffPoly::from_terms(&[(c(1), vec![0, 1]), (c(1), vec![2])]).unwrap();
        let g = transform(&f, &Transform::ReciprocalY);
        let expected = DiffPoly::from_terms(&[(c(-1), vec![0, 1]), (c(1), vec![0])]).unwrap();
        assert_eq!(g, expected);
    }

    #[test]
    fn inverse_x_chain_rule() {
        // y' - y -> -t² y' - y
        let f = DiffPoly::from_terms(&[(c(1), vec![0, 1]), (c(-1), vec![1])]).unwrap();
        let g = transform(&f, &Transform::InverseX);
        let expected = DiffPoly::from_terms(&[
            (XPoly::from_ints(&[0, 0, -1]), vec![0, 1]),
            (c(-1), vec![1]),
        ])
        .unwrap();
        assert_eq!(g, expected);
    }

    #[test]
    fn inverse_x_second_order() {
        // y'' : d²/dx² = t⁴ d²/dt² + 2t³ d/dt
        let f = DiffPoly::from_terms(&[(c(1), vec![0, 0, 1])]).unwrap();
        let g = transform(&f, &Transform::InverseX);
        // common t³ removed: t·y'' + 2·y'
        let expected = DiffPoly::from_terms(&[(XPoly::x(), vec![0, 0, 1]), (c(2), vec![0, 1])]).unwrap();
        assert_eq!(g, expected);
    }

    #[test]
    fn shift_roundtrip() {
        let f = DiffPoly::from_terms(&[
            (XPoly::from_ints(&[1, 2, 3]), vec![0, 2]),
            (XPoly::from_ints(&[0, 1]), vec![1]),
        ])
        .unwrap();
        let a = rat(5, 7);
        let g = transform(&transform(&f, &Transform::Shift(a.clone())), &Transform::Shift(-a));
        assert_eq!(g, f);
    }

    #[test]
    fn translate_shifted_cusp() {
        // y'^2 (y - 1) + 1 with y = 1 + u -> u'^2 u + 1
        let f = DiffPoly::from_terms(&[(c(1), vec![1, 2]), (c(-1), vec![0, 2]), (c(1), vec![0])]).unwrap();
        let g = shift_y(&f, &int(1));
        assert_eq!(g.to_string(), "y'^2*y + 1");
        let g0 = shift_y(&f, &int(3));
        assert_eq!(g0.to_string(), "y'^2*y + 2*y'^2 + 1");
    }
}
