//! Complex numbers tagged as exact Gaussian rationals or floating
//! approximations with an absolute error bound.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use super::rat::{convergents, to_f64, Rat};

#[derive(Clone, PartialEq)]
pub enum Complex {
    Exact { re: Rat, im: Rat },
    /// `err` bounds the absolute error `|z - (re + i·im)|`.
    Approx { re: f64, im: f64, err: f64 },
}

fn ulp(m: f64) -> f64 {
    f64::EPSILON * m.max(f64::MIN_POSITIVE)
}

impl Complex {
    pub fn zero() -> Self {
        Self::real(Rat::zero())
    }

    pub fn one() -> Self {
        Self::real(Rat::one())
    }

    pub fn i() -> Self {
        Complex::Exact {
            re: Rat::zero(),
            im: Rat::one(),
        }
    }

    pub fn real(r: Rat) -> Self {
        Complex::Exact { re: r, im: Rat::zero() }
    }

    pub fn exact(re: Rat, im: Rat) -> Self {
        Complex::Exact { re, im }
    }

    pub fn approx(z: Complex64, err: f64) -> Self {
        Complex::Approx {
            re: z.re,
            im: z.im,
            err: err.max(ulp(z.norm())),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Complex::Exact { .. })
    }

    /// The rational value of an exact real number.
    pub fn as_rat(&self) -> Option<&Rat> {
        match self {
            Complex::Exact { re, im } if im.is_zero() => Some(re),
            _ => None,
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        match self {
            Complex::Exact { re, im } => Complex64::new(to_f64(re), to_f64(im)),
            Complex::Approx { re, im, .. } => Complex64::new(*re, *im),
        }
    }

    /// Absolute error bound; zero for exact values.
    pub fn err(&self) -> f64 {
        match self {
            Complex::Exact { .. } => 0.0,
            Complex::Approx { err, .. } => *err,
        }
    }

    pub fn norm(&self) -> f64 {
        self.to_c64().norm()
    }

    /// Exact zero, or an approximation indistinguishable from zero.
    pub fn is_zero(&self) -> bool {
        match self {
            Complex::Exact { re, im } => re.is_zero() && im.is_zero(),
            Complex::Approx { re, im, err } => re.hypot(*im) <= *err,
        }
    }

    /// Zero up to the larger of the recorded error and `tol`.
    pub fn is_negligible(&self, tol: f64) -> bool {
        match self {
            Complex::Exact { .. } => self.is_zero(),
            Complex::Approx { re, im, err } => re.hypot(*im) <= err.max(tol),
        }
    }

    pub fn is_real(&self) -> bool {
        match self {
            Complex::Exact { im, .. } => im.is_zero(),
            Complex::Approx { im, err, .. } => im.abs() <= *err,
        }
    }

    pub fn conj(&self) -> Self {
        match self {
            Complex::Exact { re, im } => Complex::Exact { re: re.clone(), im: -im },
            Complex::Approx { re, im, err } => Complex::Approx { re: *re, im: -im, err: *err },
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Complex::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn recip(&self) -> Self {
        &Complex::one() / self
    }

    /// Replaces an approximation by a nearby Gaussian rational with
    /// denominators at most `max_den` when `accept` confirms it exactly.
    pub fn snap_with(&self, max_den: u64, accept: impl Fn(&Complex) -> bool) -> Self {
        let (re, im) = match self {
            Complex::Exact { .. } => return self.clone(),
            Complex::Approx { re, im, .. } => (*re, *im),
        };
        let near = |v: f64| -> Vec<Rat> {
            if v.abs() < 1e-10 {
                return vec![Rat::zero()];
            }
            let mut c = convergents(v, max_den);
            c.reverse();
            c.truncate(4);
            c
        };
        for r in near(re) {
            for i in near(im) {
                let cand = Complex::exact(r.clone(), i);
                if (cand.to_c64() - Complex64::new(re, im)).norm() < 1e-6 * (1.0 + re.hypot(im))
                    && accept(&cand)
                {
                    return cand;
                }
            }
        }
        self.clone()
    }

    /// Principal `k`-th root; exact when a Gaussian-rational root exists.
    pub fn nth_root(&self, k: u32) -> Self {
        if k == 1 || self.is_zero() {
            return self.clone();
        }
        let z = self.to_c64();
        let r = z.powf(1.0 / k as f64);
        let err = self.err() / (k as f64 * z.norm().powf((k - 1) as f64 / k as f64)).max(1e-300)
            + 8.0 * ulp(r.norm());
        let approx = Complex::approx(r, err);
        if self.is_exact() {
            let target = self.clone();
            approx.snap_with(1 << 20, |c| c.pow(k) == target)
        } else {
            approx
        }
    }

    /// Total order used for deterministic sorting: real part, then imaginary.
    pub fn cmp_key(&self, other: &Self) -> Ordering {
        let a = self.to_c64();
        let b = other.to_c64();
        a.re
            .partial_cmp(&b.re)
            .unwrap_or(Ordering::Equal)
            .then(a.im.partial_cmp(&b.im).unwrap_or(Ordering::Equal))
    }
}

impl From<Rat> for Complex {
    fn from(r: Rat) -> Self {
        Complex::real(r)
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Complex::Exact { re, im } => {
                if im.is_zero() {
                    return write!(f, "{re}");
                }
                let ims = if im.is_one() {
                    "i".to_string()
                } else if (-im).is_one() {
                    "-i".to_string()
                } else {
                    format!("{im}*i")
                };
                if re.is_zero() {
                    write!(f, "{ims}")
                } else if im.is_negative() {
                    write!(f, "{re} - {}", ims.trim_start_matches('-'))
                } else {
                    write!(f, "{re} + {ims}")
                }
            }
            Complex::Approx { re, im, err } => {
                if im.abs() <= *err {
                    write!(f, "{re:.12} (±{err:.1e})")
                } else {
                    write!(f, "{re:.12} {} {:.12}*i (±{err:.1e})", if *im < 0.0 { "-" } else { "+" }, im.abs())
                }
            }
        }
    }
}

fn approx_parts(z: &Complex) -> (Complex64, f64) {
    (z.to_c64(), z.err())
}

impl Add for &Complex {
    type Output = Complex;
    fn add(self, o: &Complex) -> Complex {
        match (self, o) {
            (Complex::Exact { re: a, im: b }, Complex::Exact { re: c, im: d }) => {
                Complex::Exact { re: a + c, im: b + d }
            }
            _ => {
                let (x, ex) = approx_parts(self);
                let (y, ey) = approx_parts(o);
                let s = x + y;
                Complex::approx(s, ex + ey + ulp(x.norm() + y.norm()))
            }
        }
    }
}

impl Sub for &Complex {
    type Output = Complex;
    fn sub(self, o: &Complex) -> Complex {
        self + &(-o)
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        match self {
            Complex::Exact { re, im } => Complex::Exact { re: -re, im: -im },
            Complex::Approx { re, im, err } => Complex::Approx { re: -re, im: -im, err: *err },
        }
    }
}

impl Mul for &Complex {
    type Output = Complex;
    fn mul(self, o: &Complex) -> Complex {
        match (self, o) {
            (Complex::Exact { re: a, im: b }, Complex::Exact { re: c, im: d }) => {
                if b.is_zero() && d.is_zero() {
                    return Complex::real(a * c);
                }
                Complex::Exact {
                    re: a * c - b * d,
                    im: a * d + b * c,
                }
            }
            _ => {
                if self.as_rat().is_some_and(|r| r.is_zero()) || o.as_rat().is_some_and(|r| r.is_zero()) {
                    return Complex::zero();
                }
                let (x, ex) = approx_parts(self);
                let (y, ey) = approx_parts(o);
                let p = x * y;
                Complex::approx(p, x.norm() * ey + y.norm() * ex + ex * ey + 2.0 * ulp(p.norm()))
            }
        }
    }
}

impl Div for &Complex {
    type Output = Complex;
    fn div(self, o: &Complex) -> Complex {
        match (self, o) {
            (Complex::Exact { re: a, im: b }, Complex::Exact { re: c, im: d }) => {
                let den = c * c + d * d;
                assert!(!den.is_zero(), "division by exact zero");
                Complex::Exact {
                    re: (a * c + b * d) / &den,
                    im: (b * c - a * d) / &den,
                }
            }
            _ => {
                let (x, ex) = approx_parts(self);
                let (y, ey) = approx_parts(o);
                let q = x / y;
                let yn = y.norm();
                let err = if yn > ey {
                    (ex + q.norm() * ey) / (yn - ey)
                } else {
                    f64::INFINITY
                };
                Complex::approx(q, err + 2.0 * ulp(q.norm()))
            }
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Complex {
            type Output = Complex;
            fn $m(self, o: Complex) -> Complex { (&self).$m(&o) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        -&self
    }
}
