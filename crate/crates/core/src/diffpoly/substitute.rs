use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::algebra::{Complex, Rat};
use crate::series::PuiseuxSeries;

use super::DiffPoly;

/// Sparse Laurent polynomial in `s = t^{1/q}`.
type Laurent = BTreeMap<i64, Complex>;

fn mul(a: &Laurent, b: &Laurent) -> Laurent {
    let mut out = Laurent::new();
    for (i, x) in a {
        for (j, y) in b {
            let t = x * y;
            let e = out.entry(i + j).or_insert_with(Complex::zero);
            *e = &*e + &t;
        }
    }
    out
}

/// Valuation (in `t = x − x₀`) and leading coefficient of `f` evaluated on
/// the truncated series `S`. `None` means `f` vanishes identically on the
/// truncation (to working precision for approximate coefficients).
pub fn substitute_series(f: &DiffPoly, s: &PuiseuxSeries) -> (Option<Rat>, Complex) {
    let q = s.ramification as i64;
    let qr = Rat::from_integer(BigInt::from(q));
    let scaled: Vec<(i64, Rat, &Complex)> = s
        .terms
        .iter()
        .map(|t| {
            let e = (&t.exponent * &qr).to_integer().to_i64().expect("exponent on the series grid");
            (e, t.exponent.clone(), &t.coefficient)
        })
        .collect();
    // Series of y^{(j)} for j = 0..=n.
    let mut derivs: Vec<Laurent> = Vec::new();
    for j in 0..=f.order() {
        let mut d = Laurent::new();
        for (e, ex, c) in &scaled {
            let mut factor = Rat::from_integer(1.into());
            for i in 0..j {
                factor *= ex - Rat::from_integer(BigInt::from(i));
            }
            if factor == Rat::from_integer(0.into()) {
                continue;
            }
            d.insert(e - j as i64 * q, *c * &Complex::real(factor));
        }
        derivs.push(d);
    }
    let mut total = Laurent::new();
    for m in f.monomials() {
        let coeff = m.coefficient.taylor_shift(&s.base_point);
        let mut prod: Laurent = coeff
            .terms()
            .map(|(l, a)| (l as i64 * q, Complex::real(a.clone())))
            .collect();
        for (j, &mj) in m.exponents.iter().enumerate() {
            for _ in 0..mj {
                prod = mul(&prod, &derivs[j]);
            }
        }
        for (e, c) in prod {
            let slot = total.entry(e).or_insert_with(Complex::zero);
            *slot = &*slot + &c;
        }
    }
    let scale = total.values().map(Complex::norm).fold(0.0, f64::max);
    for (e, c) in total {
        if !(c.is_zero() || c.norm() <= 1e-12 * scale) {
            return (Some(Rat::new(BigInt::from(e), BigInt::from(q))), c);
        }
    }
    (None, Complex::zero())
}
