//! Polynomials in a main variable with coefficients in ℚ[x], stored as a
//! coefficient list (lowest power first). Used for gcds over ℚ(x).

use num_traits::Zero;

use super::rat::{int, Rat};
use super::xpoly::XPoly;

pub type YPoly = Vec<XPoly>;

pub fn trim(mut p: YPoly) -> YPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn is_zero(p: &[XPoly]) -> bool {
    p.iter().all(|c| c.is_zero())
}

/// Degree in the main variable (0 for the zero polynomial).
pub fn deg(p: &[XPoly]) -> usize {
    p.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

pub fn derivative(p: &[XPoly]) -> YPoly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale(&int(k as i64)))
            .collect(),
    )
}

pub fn eval_x(p: &[XPoly], x: &Rat) -> XPoly {
    XPoly::new(p.iter().map(|c| c.eval(x)).collect())
}

/// Monic gcd of all coefficients.
pub fn content(p: &[XPoly]) -> XPoly {
    p.iter().fold(XPoly::zero(), |g, c| g.gcd(c))
}

/// Divides out the content; the leading coefficient is normalized to have
/// leading coefficient 1 in x.
pub fn primitive(p: &[XPoly]) -> YPoly {
    let p = trim(p.to_vec());
    if p.is_empty() {
        return p;
    }
    let c = content(&p);
    let mut out: YPoly = p.iter().map(|a| a.div_rem(&c).0).collect();
    let lc = out.last().unwrap().lc();
    if !lc.is_zero() {
        let inv = lc.recip();
        out = out.iter().map(|a| a.scale(&inv)).collect();
    }
    out
}

/// Pseudo-remainder of `a` by `b`.
pub fn prem(a: &[XPoly], b: &[XPoly]) -> YPoly {
    let b = trim(b.to_vec());
    assert!(!b.is_empty(), "pseudo-division by zero");
    let db = b.len() - 1;
    let lb = b[db].clone();
    let mut r = trim(a.to_vec());
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let k = dr - db;
        let mut next: YPoly = r.iter().map(|c| c * &lb).collect();
        for (j, bc) in b.iter().enumerate() {
            next[j + k] = &next[j + k] - &(bc * &lr);
        }
        r = trim(next);
        // Keep coefficient growth in check.
        if !r.is_empty() {
            let c = content(&r);
            if c.deg() > 0 {
                r = r.iter().map(|a| a.div_rem(&c).0).collect();
            }
        }
    }
    r
}

/// Primitive gcd over ℚ(x).
pub fn gcd(a: &[XPoly], b: &[XPoly]) -> YPoly {
    let mut a = primitive(a);
    let mut b = primitive(b);
    if a.is_empty() {
        return b;
    }
    if b.is_empty() {
        return a;
    }
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = prem(&a, &b);
        a = b;
        b = primitive(&r);
    }
    a
}

/// Exact quotient `a / b` in ℚ[x][y], if it exists.
pub fn exact_div(a: &[XPoly], b: &[XPoly]) -> Option<YPoly> {
    let b = trim(b.to_vec());
    assert!(!b.is_empty(), "division by zero");
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    if r.len() < b.len() {
        return if r.is_empty() { Some(Vec::new()) } else { None };
    }
    let mut q = vec![XPoly::zero(); r.len() - db];
    while !r.is_empty() {
        let dr = r.len() - 1;
        if dr < db {
            return None;
        }
        let (t, rem) = r[dr].div_rem(&b[db]);
        if !rem.is_zero() {
            return None;
        }
        let k = dr - db;
        for (j, bc) in b.iter().enumerate() {
            r[j + k] = &r[j + k] - &(bc * &t);
        }
        q[k] = t;
        r = trim(r);
    }
    Some(trim(q))
}

/// Primitive squarefree part over ℚ(x).
pub fn squarefree_part(p: &[XPoly]) -> YPoly {
    let p = primitive(p);
    if deg(&p) == 0 {
        return p;
    }
    let g = gcd(&p, &derivative(&p));
    if deg(&g) == 0 {
        return p;
    }
    primitive(&exact_div(&p, &g).expect("gcd divides its argument"))
}

pub fn mul(a: &[XPoly], b: &[XPoly]) -> YPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![XPoly::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    trim(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y_minus(c: XPoly) -> YPoly {
        vec![-&c, XPoly::one()]
    }

    #[test]
    fn gcd_over_function_field() {
        // (y - x)(y - 1) and (y - x)(y + x)
        let a = mul(&y_minus(XPoly::x()), &y_minus(XPoly::one()));
        let b = mul(&y_minus(XPoly::x()), &y_minus(-&XPoly::x()));
        let g = gcd(&a, &b);
        assert_eq!(g, y_minus(XPoly::x()));
    }

    #[test]
    fn squarefree_count() {
        // w(w-1)(w-z) squared in the first factor
        let w = vec![XPoly::zero(), XPoly::one()];
        let p = mul(&mul(&mul(&w, &w), &y_minus(XPoly::one())), &y_minus(XPoly::x()));
        assert_eq!(deg(&squarefree_part(&p)), 3);
    }

    #[test]
    fn exact_division() {
        let a = mul(&y_minus(XPoly::x()), &y_minus(XPoly::from_ints(&[0, 0, 1])));
        let q = exact_div(&a, &y_minus(XPoly::x())).unwrap();
        assert_eq!(q, y_minus(XPoly::from_ints(&[0, 0, 1])));
        assert!(exact_div(&a, &y_minus(XPoly::one())).is_none());
    }
}
