//! Sylvester resultants over multivariate polynomial coefficients.

use super::mpoly::MPoly;
use super::xpoly::XPoly;
use crate::error::{Error, Result};

/// The Sylvester matrix of `p` and `q` with respect to `var`; rows hold
/// coefficients from the highest power down.
pub fn sylvester_matrix(p: &MPoly, q: &MPoly, var: usize) -> Vec<Vec<MPoly>> {
    let nv = p.nvars();
    let pc = p.coeffs_in(var);
    let qc = q.coeffs_in(var);
    let m = pc.len() - 1;
    let n = qc.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for r in 0..n {
        let mut row = vec![MPoly::zero(nv); size];
        for (k, c) in pc.iter().rev().enumerate() {
            row[r + k] = c.clone();
        }
        rows.push(row);
    }
    for r in 0..m {
        let mut row = vec![MPoly::zero(nv); size];
        for (k, c) in qc.iter().rev().enumerate() {
            row[r + k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Determinant by fraction-free Bareiss elimination.
pub fn determinant(mut a: Vec<Vec<MPoly>>, nvars: usize) -> MPoly {
    let n = a.len();
    if n == 0 {
        return MPoly::one(nvars);
    }
    let mut negate = false;
    let mut prev = MPoly::one(nvars);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return MPoly::zero(nvars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num
                    .exact_div(&prev)
                    .expect("Bareiss step divides exactly");
            }
            a[i][k] = MPoly::zero(nvars);
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -&d
    } else {
        d
    }
}

/// `Res_var(p, q)`, a polynomial in which `var` no longer occurs.
pub fn resultant(p: &MPoly, q: &MPoly, var: usize) -> Result<MPoly> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let nv = p.nvars();
    let m = p.degree_in(var);
    let n = q.degree_in(var);
    if m == 0 && n == 0 {
        return Ok(MPoly::one(nv));
    }
    if n == 0 {
        return Ok(q.pow(m as u32));
    }
    if m == 0 {
        return Ok(p.pow(n as u32));
    }
    Ok(determinant(sylvester_matrix(p, q, var), nv))
}

/// Two-variable convenience: eliminates `var` and returns the result as a
/// univariate polynomial in the other variable.
pub fn resultant_bi(p: &MPoly, q: &MPoly, var: usize) -> Result<XPoly> {
    assert_eq!(p.nvars(), 2, "expected a two-variable polynomial");
    let r = resultant(p, q, var)?;
    Ok(r.to_xpoly(1 - var).expect("resultant is free of the eliminated variable"))
}

/// Discriminant-style resultant `Res_var(p, ∂p/∂var)`.
pub fn discriminant_resultant(p: &MPoly, var: usize) -> Result<MPoly> {
    resultant(p, &p.derivative(var), var)
}
