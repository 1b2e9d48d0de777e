//! Sparse multivariate polynomials over ℚ.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rat::Rat;
use super::xpoly::XPoly;

/// A polynomial in a fixed number of variables, stored as a map from
/// exponent vectors to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rat>,
}

/// Two-variable polynomial; exponents are `[e_u, e_v]`.
pub type BiPoly = MPoly;

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    /// The variable with index `i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::from_terms(nvars, [(e, Rat::one())])
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rat)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector has wrong length");
            p.add_term(e, c);
        }
        p
    }

    /// Two-variable polynomial from `((e_u, e_v), c)` triples.
    pub fn bi(terms: &[((u32, u32), Rat)]) -> Self {
        Self::from_terms(2, terms.iter().map(|((a, b), c)| (vec![*a, *b], c.clone())))
    }

    /// Embeds a univariate polynomial as variable `var`.
    pub fn from_xpoly(nvars: usize, var: usize, p: &XPoly) -> Self {
        let mut out = Self::zero(nvars);
        for (k, c) in p.terms() {
            let mut e = vec![0; nvars];
            e[var] = k as u32;
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_constant() {
            Some(self.coeff(&vec![0; self.nvars]))
        } else {
            None
        }
    }

    pub fn degree_in(&self, var: usize) -> usize {
        self.terms.keys().map(|e| e[var] as usize).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, var: usize) -> usize {
        self.terms.keys().map(|e| e[var] as usize).min().unwrap_or(0)
    }

    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&k| k as usize).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn free_of(&self, var: usize) -> bool {
        self.degree_in(var) == 0
    }

    pub fn scale(&self, k: &Rat) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficients with respect to `var`, lowest power first.
    pub fn coeffs_in(&self, var: usize) -> Vec<MPoly> {
        let mut out = vec![Self::zero(self.nvars); self.degree_in(var) + 1];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[var] as usize;
            e2[var] = 0;
            out[k].add_term(e2, c.clone());
        }
        out
    }

    /// Inverse of [`MPoly::coeffs_in`].
    pub fn from_coeffs_in(nvars: usize, var: usize, cs: &[MPoly]) -> Self {
        let mut out = Self::zero(nvars);
        for (k, c) in cs.iter().enumerate() {
            for (e, v) in &c.terms {
                let mut e2 = e.clone();
                e2[var] += k as u32;
                out.add_term(e2, v.clone());
            }
        }
        out
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] > 0 {
                let mut e2 = e.clone();
                e2[var] -= 1;
                out.add_term(e2, c * Rat::from_integer(e[var].into()));
            }
        }
        out
    }

    /// Substitutes the value `a` for `var`; the variable stays in the
    /// signature with degree 0.
    pub fn eval_var(&self, var: usize, a: &Rat) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[var];
            e2[var] = 0;
            out.add_term(e2, c * num_traits::pow(a.clone(), k as usize));
        }
        out
    }

    /// Substitutes the polynomial `q` for `var`.
    pub fn substitute(&self, var: usize, q: &MPoly) -> Self {
        let cs = self.coeffs_in(var);
        let mut acc = Self::zero(self.nvars);
        for c in cs.iter().rev() {
            acc = &(&acc * q) + c;
        }
        acc
    }

    /// Full evaluation at a rational point.
    pub fn eval(&self, pt: &[Rat]) -> Rat {
        let mut s = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (k, &d) in e.iter().enumerate() {
                if d > 0 {
                    t *= num_traits::pow(pt[k].clone(), d as usize);
                }
            }
            s += t;
        }
        s
    }

    pub fn eval_f64(&self, pt: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .enumerate()
                    .fold(super::rat::to_f64(c), |acc, (k, &d)| acc * pt[k].powi(d as i32))
            })
            .sum()
    }

    /// Univariate view when every other variable has degree 0.
    pub fn to_xpoly(&self, var: usize) -> Option<XPoly> {
        let mut v = vec![Rat::zero(); self.degree_in(var) + 1];
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(k, &d)| k != var && d > 0) {
                return None;
            }
            v[e[var] as usize] = c.clone();
        }
        Some(XPoly::new(v))
    }

    /// Coefficients in `var` as univariate polynomials in `other`
    /// (two-variable view).
    pub fn to_upoly(&self, var: usize, other: usize) -> Vec<XPoly> {
        self.coeffs_in(var)
            .into_iter()
            .map(|c| c.to_xpoly(other).expect("polynomial has extra variables"))
            .collect()
    }

    pub fn from_upoly(nvars: usize, var: usize, other: usize, cs: &[XPoly]) -> Self {
        let mut out = Self::zero(nvars);
        for (k, c) in cs.iter().enumerate() {
            for (j, v) in c.terms() {
                let mut e = vec![0; nvars];
                e[var] = k as u32;
                e[other] = j as u32;
                out.add_term(e, v.clone());
            }
        }
        out
    }

    /// Drops variable `var` (which must have degree 0) from the signature.
    pub fn drop_var(&self, var: usize) -> Self {
        let mut out = Self::zero(self.nvars - 1);
        for (e, c) in &self.terms {
            assert_eq!(e[var], 0, "cannot drop a variable that occurs");
            let mut e2 = e.clone();
            e2.remove(var);
            out.add_term(e2, c.clone());
        }
        out
    }

    /// Keeps only the listed variables, in the given order. All other
    /// variables must have degree 0.
    pub fn select_vars(&self, keep: &[usize]) -> Self {
        let mut out = Self::zero(keep.len());
        for (e, c) in &self.terms {
            for (k, &d) in e.iter().enumerate() {
                assert!(d == 0 || keep.contains(&k), "selected away a live variable");
            }
            out.add_term(keep.iter().map(|&k| e[k]).collect(), c.clone());
        }
        out
    }

    /// Leading term in lexicographic order.
    fn lead(&self) -> Option<(&Vec<u32>, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &MPoly) -> Option<MPoly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let (de, dc) = d.lead().map(|(e, c)| (e.clone(), c.clone()))?;
        let mut r = self.clone();
        let mut q = MPoly::zero(self.nvars);
        while let Some((e, c)) = r.lead().map(|(e, c)| (e.clone(), c.clone())) {
            if e.iter().zip(&de).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Vec<u32> = e.iter().zip(&de).map(|(a, b)| a - b).collect();
            let qc = &c / &dc;
            for (te, tc) in &d.terms {
                let ne: Vec<u32> = te.iter().zip(&qe).map(|(a, b)| a + b).collect();
                r.add_term(ne, -(tc * &qc));
            }
            q.add_term(qe, qc);
        }
        Some(q)
    }

    pub fn fmt_with(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &d)| d > 0)
                .map(|(k, &d)| {
                    if d == 1 {
                        names[k].to_string()
                    } else {
                        format!("{}^{}", names[k], d)
                    }
                })
                .collect();
            if mono.is_empty() {
                s.push_str(&a.to_string());
            } else if a.is_one() {
                s.push_str(&mono.join("*"));
            } else {
                s.push_str(&format!("{}*{}", a, mono.join("*")));
            }
        }
        s
    }
}

const DEFAULT_NAMES: [&str; 6] = ["x", "y", "p", "z", "s", "t"];

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars)
            .map(|k| {
                DEFAULT_NAMES
                    .get(k)
                    .map(|s| s.to_string())
                    .unwrap_or_else(|| format!("v{k}"))
            })
            .collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.fmt_with(&refs))
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-Rat::one())
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, o: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}
