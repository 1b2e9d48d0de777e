//! Exact rational and numeric root finding.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::complex::Complex;
use super::rat::{convergents, divisors, to_f64, Rat};
use super::xpoly::XPoly;
use crate::error::{Error, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
const MAX_ITER: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RootMode {
    ExactRational,
    NegativeIntegers,
    Numeric { tolerance: f64 },
}

/// Roots of `p` according to `mode`, repeated by multiplicity.
///
/// The exact modes return every rational (respectively negative integer)
/// root. Numeric mode returns all complex roots; roots that are Gaussian
/// rationals are recognised and returned exactly.
pub fn root_find(p: &XPoly, mode: RootMode) -> Result<Vec<Complex>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let expand = |v: Vec<(Complex, usize)>| {
        v.into_iter()
            .flat_map(|(z, m)| std::iter::repeat_n(z, m))
            .collect::<Vec<_>>()
    };
    match mode {
        RootMode::ExactRational => Ok(expand(
            rational_roots(p).into_iter().map(|(r, m)| (Complex::real(r), m)).collect(),
        )),
        RootMode::NegativeIntegers => Ok(expand(
            rational_roots(p)
                .into_iter()
                .filter(|(r, _)| r.is_integer() && r.is_negative())
                .map(|(r, m)| (Complex::real(r), m))
                .collect(),
        )),
        RootMode::Numeric { tolerance } => Ok(expand(all_roots(p, tolerance)?)),
    }
}

/// Relative residual `|p(z)| / Σ |aₖ||z|^k`.
pub fn relative_residual(coeffs: &[Complex64], z: Complex64) -> f64 {
    let (mut v, mut s) = (Complex64::zero(), 0.0);
    let r = z.norm();
    for a in coeffs.iter().rev() {
        v = v * z + a;
        s = s * r + a.norm();
    }
    if s == 0.0 {
        0.0
    } else {
        v.norm() / s
    }
}

fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let (mut p, mut dp) = (Complex64::zero(), Complex64::zero());
    for a in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// All complex roots of a polynomial with floating coefficients
/// (lowest degree first) by the Aberth–Ehrlich iteration.
pub fn aberth(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().is_some_and(|z| z.norm() == 0.0) {
        c.pop();
    }
    if c.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let n = c.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = c[n];
    let c: Vec<Complex64> = c.iter().map(|z| z / lead).collect();
    // Fujiwara-style bound for the initial circle.
    let radius = (0..n)
        .map(|k| c[k].norm().powf(1.0 / (n - k) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3)
        * 1.2;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4))
        .collect();
    let mut converged = false;
    for _ in 0..MAX_ITER {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let (p, dp) = horner(&c, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d.norm() == 0.0 {
                        Complex64::zero()
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let w = ratio / (Complex64::one() - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                max_step = max_step.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if max_step < 1e-15 {
            converged = true;
            break;
        }
    }
    // Newton polish of each estimate.
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner(&c, *zi);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            if !step.is_finite() || step.norm() > 1e-6 * (1.0 + zi.norm()) {
                break;
            }
            *zi -= step;
        }
    }
    let worst = z.iter().map(|&r| relative_residual(&c, r)).fold(0.0, f64::max);
    if !converged && worst > 1e-6 {
        return Err(Error::NumericFailure(format!(
            "Aberth iteration stalled at relative residual {worst:.3e} (degree {n})"
        )));
    }
    Ok(z)
}

fn to_c64_coeffs(p: &XPoly) -> Vec<Complex64> {
    p.coeffs().iter().map(|c| Complex64::new(to_f64(c), 0.0)).collect()
}

/// `q^n · p(a/q)` for integer coefficients.
fn eval_scaled(coeffs: &[BigInt], a: &BigInt, q: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    let mut qpow = BigInt::one();
    for c in coeffs.iter().rev() {
        acc = acc * a + c * &qpow;
        qpow *= q;
    }
    acc
}

/// Rational roots of a squarefree polynomial with integer coefficients.
fn rational_roots_squarefree(p: &XPoly) -> Vec<Rat> {
    let mut out = Vec::new();
    let mut p = p.clone();
    if p.deg() == 0 {
        return out;
    }
    if p.coeff(0).is_zero() {
        out.push(Rat::zero());
        p = p.div_rem(&XPoly::x()).0;
    }
    if p.deg() == 0 {
        return out;
    }
    if p.deg() == 1 {
        out.push(-p.coeff(0) / p.coeff(1));
        return out;
    }
    let a = p.primitive_integer();
    let a0 = a[0].clone();
    let an = a[a.len() - 1].clone();
    let mut seen = std::collections::BTreeSet::new();
    let mut try_cand = |num: BigInt, den: BigInt, out: &mut Vec<Rat>| {
        if den.is_zero() {
            return;
        }
        let r = Rat::new(num, den);
        if seen.insert(r.clone())
            && eval_scaled(&a, r.numer(), r.denom()).is_zero()
        {
            out.push(r);
        }
    };
    match (divisors(&a0), divisors(&an)) {
        (Some(dp), Some(dq)) if dp.len() * dq.len() <= 200_000 => {
            // Cauchy bound on root magnitude prunes candidates.
            let bound = 1.0
                + a.iter()
                    .take(a.len() - 1)
                    .map(|c| (c.to_f64().unwrap_or(f64::INFINITY) / an.to_f64().unwrap_or(1.0)).abs())
                    .fold(0.0, f64::max);
            for num in &dp {
                for den in &dq {
                    let v = num.to_f64().unwrap_or(f64::INFINITY) / den.to_f64().unwrap_or(1.0);
                    if v > bound + 1.0 {
                        continue;
                    }
                    try_cand(num.clone(), den.clone(), &mut out);
                    try_cand(-num.clone(), den.clone(), &mut out);
                }
            }
        }
        (_, dq) => {
            // Numeric guidance: every rational root is a real root close to
            // a numeric estimate; candidates are checked exactly.
            if let Ok(z) = aberth(&to_c64_coeffs(&p)) {
                for r in z {
                    if r.im.abs() > 1e-6 * (1.0 + r.re.abs()) {
                        continue;
                    }
                    for c in convergents(r.re, 1_000_000_000_000) {
                        try_cand(c.numer().clone(), c.denom().clone(), &mut out);
                    }
                    if let Some(dq) = &dq {
                        for q in dq.iter().take(10_000) {
                            let qf = q.to_f64().unwrap_or(1.0);
                            let num = (r.re * qf).round();
                            if num.is_finite() && num.abs() < 1e18 {
                                try_cand(BigInt::from(num as i64), q.clone(), &mut out);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// All rational roots with multiplicities, sorted ascending.
pub fn rational_roots(p: &XPoly) -> Vec<(Rat, usize)> {
    let mut out = Vec::new();
    for (f, k) in p.squarefree_decomposition() {
        for r in rational_roots_squarefree(&f) {
            out.push((r, k));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Error estimate for an approximate simple root.
fn root_error(coeffs: &[Complex64], z: Complex64) -> f64 {
    let (p, dp) = horner(coeffs, z);
    let n = coeffs.len() as f64;
    let scale: f64 = coeffs
        .iter()
        .rev()
        .fold(0.0, |acc, a| acc * z.norm() + a.norm());
    let d = dp.norm();
    if d == 0.0 {
        return f64::INFINITY;
    }
    (p.norm() + 4.0 * n * f64::EPSILON * scale) / d
}

/// All complex roots of `p` with multiplicities. Rational and Gaussian
/// rational roots are exact; the others carry an error estimate. Fails if a
/// root's relative residual exceeds `tolerance`.
pub fn all_roots(p: &XPoly, tolerance: f64) -> Result<Vec<(Complex, usize)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for (f, k) in p.squarefree_decomposition() {
        let mut rest = f.clone();
        for r in rational_roots_squarefree(&f) {
            rest = rest.div_rem(&XPoly::linear_root(&r)).0;
            out.push((Complex::real(r), k));
        }
        if rest.deg() == 0 {
            continue;
        }
        let cs = to_c64_coeffs(&rest);
        for z in aberth(&cs)? {
            let res = relative_residual(&cs, z);
            if res > tolerance {
                return Err(Error::NumericFailure(format!(
                    "root {z} has relative residual {res:.3e} above tolerance {tolerance:.1e}"
                )));
            }
            let approx = Complex::approx(z, root_error(&cs, z));
            let snapped = approx.snap_with(1 << 16, |c| match c {
                Complex::Exact { re, im } => {
                    let (a, b) = rest.eval_gaussian(re, im);
                    a.is_zero() && b.is_zero()
                }
                _ => false,
            });
            out.push((snapped, k));
        }
    }
    out.sort_by(|a, b| a.0.cmp_key(&b.0));
    Ok(out)
}

/// Evaluates a polynomial with tagged complex coefficients.
pub fn eval_complex(coeffs: &[Complex], z: &Complex) -> Complex {
    let mut acc = Complex::zero();
    for c in coeffs.iter().rev() {
        acc = &(&acc * z) + c;
    }
    acc
}

fn derivative_complex(coeffs: &[Complex]) -> Vec<Complex> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * &Complex::real(Rat::from_integer(BigInt::from(k))))
        .collect()
}

/// Roots with multiplicities of a polynomial with tagged complex
/// coefficients. Coefficients that are exact and real go through the exact
/// path; otherwise roots are computed numerically and clustered, and exact
/// Gaussian-rational roots are confirmed by exact evaluation.
pub fn complex_roots(coeffs: &[Complex], tolerance: f64) -> Result<Vec<(Complex, usize)>> {
    let mut c = coeffs.to_vec();
    while c.last().is_some_and(|z| z.is_negligible(0.0)) {
        c.pop();
    }
    if c.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    if c.iter().all(|z| z.as_rat().is_some()) {
        let p = XPoly::new(c.iter().map(|z| z.as_rat().unwrap().clone()).collect());
        return all_roots(&p, tolerance);
    }
    let all_exact = c.iter().all(Complex::is_exact);
    let cs: Vec<Complex64> = c.iter().map(Complex::to_c64).collect();
    let z = aberth(&cs)?;
    // Cluster nearby estimates into multiple roots.
    let mut used = vec![false; z.len()];
    let mut out = Vec::new();
    for i in 0..z.len() {
        if used[i] {
            continue;
        }
        let mut group = vec![z[i]];
        used[i] = true;
        for j in i + 1..z.len() {
            if !used[j] && (z[j] - z[i]).norm() < 1e-5 * (1.0 + z[i].norm()) {
                used[j] = true;
                group.push(z[j]);
            }
        }
        let m = group.len();
        let centre = group.iter().sum::<Complex64>() / m as f64;
        let spread = group.iter().map(|g| (g - centre).norm()).fold(0.0, f64::max);
        let coeff_err = c.iter().map(Complex::err).fold(0.0, f64::max);
        let err = if m == 1 {
            root_error(&cs, centre) + coeff_err
        } else {
            spread + (coeff_err + 1e-14).powf(1.0 / m as f64)
        };
        let mut root = Complex::approx(centre, err);
        if all_exact {
            let c2 = c.clone();
            root = root.snap_with(1 << 16, |cand| eval_complex(&c2, cand).is_zero());
            if root.is_exact() {
                // Exact multiplicity from successive derivatives.
                let mut d = c.clone();
                let mut mult = 0;
                while eval_complex(&d, &root).is_zero() {
                    mult += 1;
                    d = derivative_complex(&d);
                }
                out.push((root, mult));
                continue;
            }
        }
        out.push((root, m));
    }
    out.sort_by(|a, b| a.0.cmp_key(&b.0));
    Ok(out)
}
