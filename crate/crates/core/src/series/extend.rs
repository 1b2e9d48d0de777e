use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::{Complex, Rat};
use crate::diffpoly::DiffPoly;
use crate::error::{Error, Result};

use super::{Branch, PuiseuxSeries, Resonance, ResonanceStatus, SeriesTerm};

/// Values for free resonance parameters, keyed by exponent.
pub type ResonanceValues = BTreeMap<Rat, Complex>;

fn r(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Falling factorial `e(e−1)⋯(e−j+1)`.
fn falling(e: &Rat, j: usize) -> Rat {
    (0..j).fold(Rat::one(), |acc, i| acc * (e - r(i as i64)))
}

/// Truncated Laurent series in `s`: `coeffs[i]` sits at `start + i`.
#[derive(Clone)]
struct Ser {
    start: i64,
    coeffs: Vec<Complex>,
}

impl Ser {
    fn mul_trunc(&self, o: &Ser, max_exp: i64) -> Ser {
        let start = self.start + o.start;
        let len = (max_exp - start + 1).max(0) as usize;
        let mut coeffs = vec![Complex::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_exact() && a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                let k = i + j;
                if k >= len {
                    break;
                }
                if b.is_exact() && b.is_zero() {
                    continue;
                }
                coeffs[k] = &coeffs[k] + &(a * b);
            }
        }
        Ser { start, coeffs }
    }

    fn at(&self, e: i64) -> Complex {
        if e < self.start {
            return Complex::zero();
        }
        self.coeffs.get((e - self.start) as usize).cloned().unwrap_or_else(Complex::zero)
    }
}

struct Problem<'a> {
    f: &'a DiffPoly,
    p: i64,
    q: i64,
    lambda: Rat,
    /// Coefficients of `φᵢ(x₀ + t)` in powers of `s = t^{1/q}`.
    coeff_series: Vec<Ser>,
    /// Minimal `s`-exponent over all monomial contributions.
    e0: i64,
}

impl<'a> Problem<'a> {
    fn new(f: &'a DiffPoly, x0: &Rat, lambda: &Rat) -> Result<Self> {
        let q = lambda.denom().to_i64().expect("small ramification");
        let p = lambda.numer().to_i64().expect("small exponent");
        let mut coeff_series = Vec::new();
        let mut e0: Option<i64> = None;
        let mut lowest_from_zero_coefficient = false;
        for m in f.monomials() {
            let a = m.coefficient.taylor_shift(x0);
            let deg = a.deg();
            let mut coeffs = vec![Complex::zero(); deg * q as usize + 1];
            for (l, c) in a.terms() {
                coeffs[l * q as usize] = Complex::real(c.clone());
            }
            coeff_series.push(Ser { start: 0, coeffs });
            let base = p * m.degree() - q * m.weight();
            let l = a.valuation().expect("nonzero coefficient") as i64;
            let e = base + q * l;
            match e0 {
                Some(v) if v < e => {}
                Some(v) if v == e => lowest_from_zero_coefficient |= l > 0,
                _ => {
                    e0 = Some(e);
                    lowest_from_zero_coefficient = l > 0;
                }
            }
        }
        if lowest_from_zero_coefficient {
            return Err(Error::SingularBasePoint(x0.clone()));
        }
        Ok(Problem {
            f,
            p,
            q,
            lambda: lambda.clone(),
            coeff_series,
            e0: e0.expect("equation has monomials"),
        })
    }

    fn exponent(&self, k: usize) -> Rat {
        Rat::new(BigInt::from(self.p + k as i64), BigInt::from(self.q))
    }

    /// Coefficient at `s^{e0 + k}` of `f(y)` for `y = Σ cᵢ s^{p+i}`.
    fn residual_at(&self, c: &[Complex], k: usize) -> Complex {
        let target = self.e0 + k as i64;
        let n = self.f.order();
        // Series of y^{(j)}.
        let derivs: Vec<Ser> = (0..=n)
            .map(|j| Ser {
                start: self.p - j as i64 * self.q,
                coeffs: c
                    .iter()
                    .enumerate()
                    .map(|(i, ci)| {
                        let ff = falling(&self.exponent(i), j);
                        if ff.is_zero() {
                            Complex::zero()
                        } else {
                            ci * &Complex::real(ff)
                        }
                    })
                    .collect(),
            })
            .collect();
        let mut total = Complex::zero();
        for (m, coeff) in self.f.monomials().iter().zip(&self.coeff_series) {
            let factors: Vec<&Ser> = m
                .exponents
                .iter()
                .enumerate()
                .flat_map(|(j, &e)| std::iter::repeat_n(&derivs[j], e as usize))
                .collect();
            let mut rest_min: i64 = factors.iter().map(|s| s.start).sum();
            let mut acc = coeff.clone();
            for s in factors {
                rest_min -= s.start;
                acc = acc.mul_trunc(s, target - rest_min);
            }
            total = &total + &acc.at(target);
        }
        total
    }

    /// Coefficient of `c_k` in the `s^{e0+k}` balance, from the monomials on
    /// the face.
    fn linear_coefficient(&self, c0: &Complex, k: usize) -> Complex {
        let ek = self.exponent(k);
        let mut total = Complex::zero();
        for (m, coeff) in self.f.monomials().iter().zip(&self.coeff_series) {
            let base = self.p * m.degree() - self.q * m.weight();
            if base != self.e0 || m.degree() == 0 {
                continue;
            }
            let a = coeff.at(0);
            let lead: Vec<Rat> = (0..m.exponents.len()).map(|j| falling(&self.lambda, j)).collect();
            let mut sum = Rat::zero();
            for (j, &mj) in m.exponents.iter().enumerate() {
                if mj == 0 {
                    continue;
                }
                let mut term = r(mj as i64) * falling(&ek, j);
                for (jj, &mjj) in m.exponents.iter().enumerate() {
                    let e = if jj == j { mjj - 1 } else { mjj };
                    for _ in 0..e {
                        term *= &lead[jj];
                    }
                }
                sum += term;
            }
            if sum.is_zero() {
                continue;
            }
            let c_pow = c0.pow((m.degree() - 1) as u32);
            total = &total + &(&(&a * &c_pow) * &Complex::real(sum));
        }
        total
    }
}

fn build(
    f: &DiffPoly,
    x0: &Rat,
    lambda: &Rat,
    c0: &Complex,
    n_terms: usize,
    values: &ResonanceValues,
    strict: bool,
) -> Result<PuiseuxSeries> {
    if c0.is_zero() {
        return Err(Error::InvalidArgument("leading coefficient must be nonzero".into()));
    }
    let prob = Problem::new(f, x0, lambda)?;
    let mut c = vec![c0.clone()];
    let r0 = prob.residual_at(&c, 0);
    if !r0.is_zero() {
        return Err(Error::InvalidArgument(format!(
            "c₀ = {c0} does not annihilate the leading balance (residual {r0})"
        )));
    }
    let mut resonances = Vec::new();
    let mut solved = 1usize;
    for k in 1..n_terms.max(1) {
        c.push(Complex::zero());
        let rk = prob.residual_at(&c, k);
        let lk = prob.linear_coefficient(c0, k);
        let exponent = prob.exponent(k);
        if lk.is_zero() {
            if rk.is_zero() {
                let value = values.get(&exponent).cloned().unwrap_or_else(Complex::zero);
                resonances.push(Resonance {
                    exponent: exponent.clone(),
                    status: ResonanceStatus::FreeParameter {
                        name: format!("c[{exponent}]"),
                        value: value.clone(),
                    },
                });
                c[k] = value;
            } else {
                if strict {
                    return Err(Error::ObstructedResonance(exponent));
                }
                resonances.push(Resonance {
                    exponent,
                    status: ResonanceStatus::Obstructed,
                });
                c.pop();
                break;
            }
        } else {
            c[k] = -(&rk / &lk);
        }
        solved = k + 1;
    }
    let terms = c
        .iter()
        .enumerate()
        .filter(|(_, ci)| !(ci.is_exact() && ci.is_zero()))
        .map(|(k, ci)| SeriesTerm {
            exponent: prob.exponent(k),
            coefficient: ci.clone(),
        })
        .collect();
    Ok(PuiseuxSeries {
        base_point: x0.clone(),
        ramification: prob.q as u32,
        terms,
        resonances,
        certified_valuation: Rat::new(BigInt::from(prob.e0 + solved as i64), BigInt::from(prob.q)),
    })
}

/// Solves `n_terms` coefficients on the grid `λ + k/q`, `q` the denominator
/// of `λ`. Free resonance parameters take their value from `values`
/// (default 0).
pub fn extend_series(
    f: &DiffPoly,
    x0: &Rat,
    lambda: &Rat,
    c0: &Complex,
    n_terms: usize,
    values: &ResonanceValues,
) -> Result<PuiseuxSeries> {
    build(f, x0, lambda, c0, n_terms, values, true)
}

/// Like [`extend_series`], but an obstructed resonance is recorded and ends
/// the expansion instead of failing.
pub fn extend_series_lenient(
    f: &DiffPoly,
    x0: &Rat,
    lambda: &Rat,
    c0: &Complex,
    n_terms: usize,
    values: &ResonanceValues,
) -> Result<PuiseuxSeries> {
    build(f, x0, lambda, c0, n_terms, values, false)
}

/// Extends the branch with its `index`-th leading coefficient.
pub fn extend_branch(
    f: &DiffPoly,
    branch: &Branch,
    x0: &Rat,
    index: usize,
    n_terms: usize,
    values: &ResonanceValues,
) -> Result<PuiseuxSeries> {
    let lambda = branch.lambda_rat().ok_or_else(|| {
        Error::UnsupportedBranch(format!("complex exponent {} is not expanded", branch.lambda))
    })?;
    let c0 = branch.c0.get(index).ok_or_else(|| {
        Error::InvalidArgument(format!("branch has no leading coefficient #{index}"))
    })?;
    extend_series(f, x0, lambda, c0, n_terms, values)
}
