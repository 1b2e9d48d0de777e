//! Newton–Puiseux expansion of the branches `v(u)` of a plane curve
//! `F(u, v) = 0` near `u = 0`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::complex::Complex;
use super::mpoly::BiPoly;
use super::rat::Rat;
use super::roots::{complex_roots, DEFAULT_TOLERANCE};
use super::ypoly;
use crate::error::{Error, Result};

/// One representative of a conjugate cycle of branches
/// `v = Σₖ cₖ u^{λ + k/q}`.
///
/// The cycle consists of `ramification` branches obtained by running the
/// `q`-th roots of unity through `u^{1/q}`. The branch `v ≡ 0` is reported
/// with an empty coefficient list.
#[derive(Debug, Clone, PartialEq)]
pub struct PuiseuxBranch {
    pub ramification: u32,
    pub leading_exponent: Rat,
    /// Coefficients at exponents `λ + k/q`, `k = 0, 1, …` (zeros included).
    pub coefficients: Vec<Complex>,
    /// Lower bound for the `u`-valuation of `F(u, v_trunc(u))`; `None` when
    /// the truncation annihilates `F` exactly.
    pub residual_valuation: Option<Rat>,
}

impl PuiseuxBranch {
    pub fn is_zero_branch(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Exponent of the `k`-th stored coefficient.
    pub fn exponent(&self, k: usize) -> Rat {
        &self.leading_exponent + Rat::new(BigInt::from(k), BigInt::from(self.ramification))
    }

    pub fn leading_coefficient(&self) -> Option<&Complex> {
        self.coefficients.first()
    }
}

/// Polynomial in `(u, v)` with tagged complex coefficients, keyed by
/// `(e_u, e_v)`.
type CPoly2 = BTreeMap<(i64, u32), Complex>;

const MAX_DEPTH: usize = 48;

/// Branches of `v` as functions of `u` near `u = 0`, one representative per
/// conjugate cycle. `max_terms` bounds the number of coefficients solved in
/// the regular (simple-root) phase of each branch.
pub fn newton_puiseux_branches(f: &BiPoly, max_terms: usize) -> Result<Vec<PuiseuxBranch>> {
    assert_eq!(f.nvars(), 2, "expected a polynomial in (u, v)");
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.degree_in(1) == 0 {
        return Err(Error::NoBranch);
    }
    let up = f.to_upoly(1, 0);
    let g = ypoly::gcd(&up, &ypoly::derivative(&up));
    if ypoly::deg(&g) > 0 {
        return Err(Error::NotSquarefree);
    }
    let mut c2 = CPoly2::new();
    for (e, c) in f.terms() {
        c2.insert((e[0] as i64, e[1]), Complex::real(c.clone()));
    }
    let mut out = expand(c2, max_terms.max(1), false, 0)?;
    out.sort_by(|a, b| {
        a.leading_exponent.cmp(&b.leading_exponent).then_with(|| {
            match (a.coefficients.first(), b.coefficients.first()) {
                (Some(x), Some(y)) => x.cmp_key(y),
                (None, Some(_)) => std::cmp::Ordering::Less,
                (Some(_), None) => std::cmp::Ordering::Greater,
                (None, None) => std::cmp::Ordering::Equal,
            }
        })
    });
    Ok(out)
}

fn drop_negligible(f: CPoly2) -> CPoly2 {
    let scale = f.values().map(Complex::norm).fold(0.0, f64::max);
    let tol = DEFAULT_TOLERANCE * 1e-3 * scale;
    f.into_iter().filter(|(_, c)| !c.is_negligible(tol)).collect()
}

fn binomial_row(j: u32) -> Vec<Rat> {
    let mut row = vec![Rat::one()];
    for k in 1..=j as usize {
        let prev = row[k - 1].clone();
        row.push(prev * Rat::from_integer(BigInt::from(j as usize + 1 - k)) / Rat::from_integer(BigInt::from(k)));
    }
    row
}

/// `F(u^q, u^p (c + v)) / u^m`.
fn substitute_edge(f: &CPoly2, p: i64, q: i64, m: i64, c: &Complex) -> CPoly2 {
    let mut out = CPoly2::new();
    let mut cpow: Vec<Complex> = vec![Complex::one()];
    for ((i, j), a) in f {
        let e = q * i + p * (*j as i64) - m;
        debug_assert!(e >= 0, "edge substitution left a negative power");
        while cpow.len() <= *j as usize {
            let next = cpow.last().unwrap() * c;
            cpow.push(next);
        }
        for (k, b) in binomial_row(*j).into_iter().enumerate() {
            // term a · C(j,k) · c^{j-k} · v^k
            let t = &(a * &Complex::real(b)) * &cpow[*j as usize - k];
            let key = (e, k as u32);
            let v = match out.remove(&key) {
                Some(old) => &old + &t,
                None => t,
            };
            out.insert(key, v);
        }
    }
    out
}

fn expand(f: CPoly2, max_terms: usize, positive_only: bool, depth: usize) -> Result<Vec<PuiseuxBranch>> {
    if depth > MAX_DEPTH {
        return Err(Error::NotSquarefree);
    }
    let f = drop_negligible(f);
    let mut out = Vec::new();
    if f.is_empty() {
        return Ok(out);
    }
    let imin = f.keys().map(|k| k.0).min().unwrap();
    let f: CPoly2 = f.into_iter().map(|((i, j), c)| ((i - imin, j), c)).collect();
    let jmin = f.keys().map(|k| k.1).min().unwrap();
    if jmin > 0 {
        out.push(PuiseuxBranch {
            ramification: 1,
            leading_exponent: Rat::zero(),
            coefficients: Vec::new(),
            residual_valuation: None,
        });
    }
    // Lowest u-power in each column j.
    let mut column: BTreeMap<u32, i64> = BTreeMap::new();
    for &(i, j) in f.keys() {
        column
            .entry(j)
            .and_modify(|v| *v = (*v).min(i))
            .or_insert(i);
    }
    let pts: Vec<(i64, i64)> = column.iter().map(|(&j, &i)| (j as i64, i)).collect();
    // Lower convex hull in the (j, i) plane.
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 - a.0) * (pt.1 - a.1) - (b.1 - a.1) * (pt.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    for w in hull.windows(2) {
        let ((j1, i1), (j2, i2)) = (w[0], w[1]);
        // v ~ c·u^μ balances the edge: i + μ j is constant on it.
        let mu = Rat::new(BigInt::from(i1 - i2), BigInt::from(j2 - j1));
        if positive_only && !mu.is_positive() {
            continue;
        }
        let p = mu.numer().to_i64().expect("exponent fits in i64");
        let q = mu.denom().to_i64().expect("exponent fits in i64");
        // q·(i + μ j) = q i + p j is constant along the edge.
        let m = q * i1 + p * j1;
        let mut zeta_coeffs = vec![Complex::zero(); ((j2 - j1) / q + 1) as usize];
        for ((i, j), a) in &f {
            let (i, j) = (*i, *j as i64);
            if q * i + p * j == m {
                let k = j - j1;
                debug_assert!(k % q == 0);
                zeta_coeffs[(k / q) as usize] = a.clone();
            }
        }
        for (zeta, mult) in complex_roots(&zeta_coeffs, DEFAULT_TOLERANCE)? {
            if zeta.is_zero() {
                continue;
            }
            let c = zeta.nth_root(q as u32);
            let g = substitute_edge(&f, p, q, m, &c);
            let lead = mu.clone();
            if mult == 1 {
                out.push(regular_branch(&g, c, lead, q, m, max_terms));
            } else {
                for sub in expand(g, max_terms.saturating_sub(1).max(1), true, depth + 1)? {
                    out.push(compose(&c, &lead, q, m, sub));
                }
            }
        }
    }
    Ok(out)
}

/// Combines `v = u^{p/q}(c + v'(u'))`, `u' = u^{1/q}`, with a branch of `v'`.
fn compose(c: &Complex, lead: &Rat, q: i64, m: i64, sub: PuiseuxBranch) -> PuiseuxBranch {
    let qq = q * sub.ramification as i64;
    let residual = sub
        .residual_valuation
        .clone()
        .map(|g| (Rat::from_integer(BigInt::from(m)) + g) / Rat::from_integer(BigInt::from(q)));
    if sub.is_zero_branch() {
        return PuiseuxBranch {
            ramification: q as u32,
            leading_exponent: lead.clone(),
            coefficients: vec![c.clone()],
            residual_valuation: residual,
        };
    }
    // Sub-branch exponents a/q' + k/q' sit at index a + k in steps of 1/(q q').
    let a = (&sub.leading_exponent * Rat::from_integer(BigInt::from(sub.ramification)))
        .to_integer()
        .to_usize()
        .expect("positive sub-branch exponent");
    let mut coeffs = vec![Complex::zero(); a + sub.coefficients.len()];
    coeffs[0] = c.clone();
    for (k, d) in sub.coefficients.into_iter().enumerate() {
        coeffs[a + k] = d;
    }
    // Reduce the grid when the combined exponents allow a coarser step.
    let mut step = 0usize;
    for (k, d) in coeffs.iter().enumerate() {
        if !d.is_zero() {
            step = step.gcd(&k);
        }
    }
    let mut ram = qq as usize;
    let lead_num = lead * Rat::from_integer(BigInt::from(qq));
    let g = step.gcd(&ram).gcd(&lead_num.to_integer().abs().to_usize().unwrap_or(0));
    if g > 1 {
        coeffs = coeffs.into_iter().step_by(g).collect();
        ram /= g;
    }
    PuiseuxBranch {
        ramification: ram as u32,
        leading_exponent: lead.clone(),
        coefficients: coeffs,
        residual_valuation: residual,
    }
}

/// Truncated power series helpers (coefficient vectors of length `n`).
fn series_mul(a: &[Complex], b: &[Complex], n: usize) -> Vec<Complex> {
    let mut out = vec![Complex::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() && x.is_exact() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// `G(u, s(u)) mod u^n`.
fn eval_series(g: &CPoly2, s: &[Complex], n: usize) -> Vec<Complex> {
    let kmax = g.keys().map(|k| k.1).max().unwrap_or(0);
    let mut cols: Vec<Vec<Complex>> = vec![vec![Complex::zero(); n]; kmax as usize + 1];
    for ((e, k), a) in g {
        if (*e as usize) < n {
            cols[*k as usize][*e as usize] = a.clone();
        }
    }
    let mut acc = vec![Complex::zero(); n];
    for col in cols.iter().rev() {
        acc = series_mul(&acc, s, n);
        for (x, y) in acc.iter_mut().zip(col) {
            *x = &*x + y;
        }
    }
    acc
}

/// Simple-root case: `G(0,0) = 0`, `G_v(0,0) ≠ 0`, so `v'` is a power series
/// in `u'` solved term by term.
fn regular_branch(g: &CPoly2, c: Complex, lead: Rat, q: i64, m: i64, max_terms: usize) -> PuiseuxBranch {
    let k_terms = max_terms - 1;
    let n = k_terms + 1;
    let gv = g.get(&(0, 1)).cloned().unwrap_or_else(Complex::zero);
    let mut s = vec![Complex::zero(); n];
    for k in 1..n {
        let r = eval_series(g, &s, k + 1);
        s[k] = &(-&r[k]) / &gv;
    }
    let mut coeffs = vec![c];
    coeffs.extend(s.into_iter().skip(1));
    let residual = Rat::new(BigInt::from(m + k_terms as i64 + 1), BigInt::from(q));
    PuiseuxBranch {
        ramification: q as u32,
        leading_exponent: lead,
        coefficients: coeffs,
        residual_valuation: Some(residual),
    }
}

fn poly_mul(a: &[Complex], b: &[Complex]) -> Vec<Complex> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    series_mul(a, b, a.len() + b.len() - 1)
}

/// Evaluates `F(u, v_trunc(u))` exactly (the truncation is a polynomial in
/// `u^{1/q}`) and returns its valuation, or `None` when it vanishes.
pub fn residual_valuation(f: &BiPoly, b: &PuiseuxBranch) -> Option<Rat> {
    let q = b.ramification as i64;
    let lead_num = (&b.leading_exponent * Rat::from_integer(BigInt::from(q)))
        .to_integer()
        .to_i64()
        .unwrap();
    // v = u'^{lead_num} · w(u') with u' = u^{1/q}.
    let w = b.coefficients.clone();
    let mut terms: BTreeMap<i64, Complex> = BTreeMap::new();
    let mut wpow: Vec<Vec<Complex>> = vec![vec![Complex::one()]];
    for (e, a) in f.terms() {
        let (i, j) = (e[0] as i64, e[1] as usize);
        while wpow.len() <= j {
            let next = poly_mul(wpow.last().unwrap(), &w);
            wpow.push(next);
        }
        let base = q * i + lead_num * j as i64;
        for (k, c) in wpow[j].iter().enumerate() {
            let t = &Complex::real(a.clone()) * c;
            let entry = terms.entry(base + k as i64).or_insert_with(Complex::zero);
            *entry = &*entry + &t;
        }
    }
    let scale = terms.values().map(Complex::norm).fold(0.0, f64::max).max(1.0);
    terms
        .into_iter()
        .find(|(_, c)| !c.is_negligible(1e-9 * scale))
        .map(|(e, _)| Rat::new(BigInt::from(e), BigInt::from(q)))
}
