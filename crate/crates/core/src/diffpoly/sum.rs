use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::algebra::{int, Rat, XPoly};

/// Unnormalized differential polynomial used for arithmetic: a map from
/// trimmed exponent vectors to coefficients in ℚ[x].
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DiffSum {
    terms: BTreeMap<Vec<u32>, XPoly>,
}

fn trimmed(e: &[u32]) -> Vec<u32> {
    let mut v = e.to_vec();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

impl DiffSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: XPoly) -> Self {
        let mut s = Self::zero();
        s.add_term(&[], &c);
        s
    }

    /// The derivative `y⁽ʲ⁾`.
    pub fn derivative_var(j: usize) -> Self {
        let mut e = vec![0; j + 1];
        e[j] = 1;
        let mut s = Self::zero();
        s.add_term(&e, &XPoly::one());
        s
    }

    pub fn add_term(&mut self, e: &[u32], c: &XPoly) {
        if c.is_zero() {
            return;
        }
        let key = trimmed(e);
        let v = match self.terms.remove(&key) {
            Some(old) => &old + c,
            None => c.clone(),
        };
        if !v.is_zero() {
            self.terms.insert(key, v);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &XPoly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest derivative occurring.
    pub fn order(&self) -> usize {
        self.terms.keys().map(|e| e.len().saturating_sub(1)).max().unwrap_or(0)
    }

    pub fn scale_poly(&self, c: &XPoly) -> Self {
        let mut out = Self::zero();
        for (e, a) in &self.terms {
            out.add_term(e, &(a * c));
        }
        out
    }

    pub fn scale(&self, k: &Rat) -> Self {
        self.scale_poly(&XPoly::constant(k.clone()))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(XPoly::one());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Total derivative with respect to the independent variable.
    pub fn total_derivative(&self) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            out.add_term(e, &c.derivative());
            for (j, &m) in e.iter().enumerate() {
                if m == 0 {
                    continue;
                }
                let mut e2 = e.clone();
                e2[j] -= 1;
                if e2.len() <= j + 1 {
                    e2.resize(j + 2, 0);
                }
                e2[j + 1] += 1;
                out.add_term(&e2, &c.scale(&int(m as i64)));
            }
        }
        out
    }

    /// Smallest power of `y` over all terms.
    pub fn min_y_power(&self) -> u32 {
        self.terms.keys().map(|e| e.first().copied().unwrap_or(0)).min().unwrap_or(0)
    }

    /// Divides every term by `y^k`.
    pub fn divide_y_power(&self, k: u32) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            if e2.is_empty() {
                e2.push(0);
            }
            assert!(e2[0] >= k, "term is not divisible by y^{k}");
            e2[0] -= k;
            out.add_term(&e2, c);
        }
        out
    }

    /// Smallest `x`-valuation over all coefficients.
    pub fn min_x_power(&self) -> usize {
        self.terms.values().filter_map(XPoly::valuation).min().unwrap_or(0)
    }

    pub fn divide_x_power(&self, k: usize) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let v: Vec<Rat> = c.coeffs().iter().skip(k).cloned().collect();
            debug_assert!(c.coeffs().iter().take(k).all(|a| a.is_zero()));
            out.add_term(e, &XPoly::new(v));
        }
        out
    }
}

impl Add for &DiffSum {
    type Output = DiffSum;
    fn add(self, o: &DiffSum) -> DiffSum {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e, c);
        }
        out
    }
}

impl Neg for &DiffSum {
    type Output = DiffSum;
    fn neg(self) -> DiffSum {
        self.scale(&int(-1))
    }
}

impl Sub for &DiffSum {
    type Output = DiffSum;
    fn sub(self, o: &DiffSum) -> DiffSum {
        self + &(-o)
    }
}

impl Mul for &DiffSum {
    type Output = DiffSum;
    fn mul(self, o: &DiffSum) -> DiffSum {
        let mut out = DiffSum::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let n = e1.len().max(e2.len());
                let e: Vec<u32> = (0..n)
                    .map(|k| e1.get(k).copied().unwrap_or(0) + e2.get(k).copied().unwrap_or(0))
                    .collect();
                out.add_term(&e, &(c1 * c2));
            }
        }
        out
    }
}
