//! The four-condition Fuchs test for `F(x, y, y′) = 0`.

use std::fmt;

use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::puiseux::newton_puiseux_branches;
use crate::algebra::roots::{all_roots, rational_roots};
use crate::algebra::{int, resultant, squarefree_distinct, ypoly, BiPoly, Complex, MPoly, Rat, XPoly};
use crate::diffpoly::DiffPoly;
use crate::error::{Error, Result};

const X: usize = 0;
const Y: usize = 1;
const P: usize = 2;

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Pass,
    Fail,
    /// Passed at sampled points within the relative tolerance.
    NumericPass { tolerance: f64 },
    Undecided,
    /// Not evaluated because an earlier condition failed.
    Skipped,
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass | Verdict::NumericPass { .. })
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NumericPass { .. } => "numeric-pass",
            Verdict::Undecided => "undecided",
            Verdict::Skipped => "skipped",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::NumericPass { tolerance } => write!(f, "numeric-pass({tolerance:e})"),
            v => f.write_str(v.as_str()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum FuchsWitness {
    /// The leading coefficient `A₀` (in `x, y`) involves `y`.
    LeadingDependsOnY { coefficient: MPoly },
    /// `deg_y A_k` exceeds `2k`.
    DegreeExceeds { k: usize, degree: usize },
    /// A discriminant branch, given by its defining polynomial in `(x, y)`,
    /// that does not satisfy the equation; `sample` is set for numeric
    /// evidence.
    NonIntegral { branch: MPoly, sample: Option<Rat>, residual: f64 },
    /// Expansion `y′ − φ′(x₀) ∼ (y − y₀)^{k/m}` found at `(x₀, y₀)`.
    Exponents { y0: Rat, k: i64, m: u32 },
    Note(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Condition {
    pub verdict: Verdict,
    pub witnesses: Vec<FuchsWitness>,
}

impl Condition {
    fn new(verdict: Verdict) -> Self {
        Condition { verdict, witnesses: Vec::new() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FuchsReport {
    /// The four conditions in order.
    pub conditions: Vec<Condition>,
    /// `F` in the variables `(x, y, p = y′)`.
    pub equation: MPoly,
    /// `Res_p(F, ∂F/∂p)` in `(x, y)`.
    pub discriminant: BiPoly,
    pub seed: u64,
    pub sample_points: Vec<Rat>,
    pub tolerance: f64,
}

impl FuchsReport {
    pub fn passes(&self) -> bool {
        self.conditions.iter().all(|c| c.verdict.is_pass())
    }

    pub fn verdicts(&self) -> Vec<&Verdict> {
        self.conditions.iter().map(|c| &c.verdict).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FuchsOptions {
    pub seed: u64,
    pub tolerance: f64,
    pub samples: usize,
}

impl Default for FuchsOptions {
    fn default() -> Self {
        FuchsOptions {
            seed: 42,
            tolerance: crate::algebra::DEFAULT_TOLERANCE,
            samples: 3,
        }
    }
}

pub fn fuchs_check(f: &DiffPoly) -> Result<FuchsReport> {
    fuchs_check_with(f, &FuchsOptions::default())
}

fn to_mpoly(f: &DiffPoly) -> MPoly {
    let mut out = MPoly::zero(3);
    for m in f.monomials() {
        for (l, c) in m.coefficient.terms() {
            out.add_term(vec![l as u32, m.exponent(0), m.exponent(1)], c.clone());
        }
    }
    out
}

/// Evaluates at a complex point, returning the value and the sum of the
/// absolute values of the terms.
fn eval_c(p: &MPoly, pt: &[Complex64]) -> (Complex64, f64) {
    let mut v = Complex64::zero();
    let mut scale = 0.0;
    for (e, c) in p.terms() {
        let mut t = Complex64::new(crate::algebra::rat::to_f64(c), 0.0);
        for (k, &d) in e.iter().enumerate() {
            t *= pt[k].powu(d);
        }
        v += t;
        scale += t.norm();
    }
    (v, scale)
}

struct Sampler {
    rng: ChaCha8Rng,
    taken: Vec<Rat>,
}

impl Sampler {
    fn next(&mut self, ok: impl Fn(&Rat) -> bool) -> Option<Rat> {
        for _ in 0..2000 {
            let n: i64 = self.rng.gen_range(-40..=40);
            let d: i64 = self.rng.gen_range(1..=7);
            let r = Rat::new(n.into(), d.into());
            if !self.taken.contains(&r) && ok(&r) {
                self.taken.push(r.clone());
                return Some(r);
            }
        }
        None
    }
}

pub fn fuchs_check_with(f: &DiffPoly, opts: &FuchsOptions) -> Result<FuchsReport> {
    if f.order() != 1 {
        return Err(Error::NotFirstOrder(f.order()));
    }
    let big_f = to_mpoly(f);
    let coeffs = big_f.coeffs_in(P);
    let s = coeffs.len() - 1;

    let mut c1 = Condition::new(Verdict::Pass);
    if !coeffs[s].free_of(Y) {
        c1.verdict = Verdict::Fail;
        c1.witnesses.push(FuchsWitness::LeadingDependsOnY { coefficient: coeffs[s].clone() });
    }

    let mut c2 = Condition::new(Verdict::Pass);
    for k in 1..=s {
        let a = &coeffs[s - k];
        if a.is_zero() {
            continue;
        }
        let d = a.degree_in(Y);
        if d > 2 * k {
            c2.verdict = Verdict::Fail;
            c2.witnesses.push(FuchsWitness::DegreeExceeds { k, degree: d });
        }
    }

    let d3 = resultant(&big_f, &big_f.derivative(P), P)?;
    let discriminant = d3.drop_var(P);
    let mut sampler = Sampler {
        rng: ChaCha8Rng::seed_from_u64(opts.seed),
        taken: Vec::new(),
    };
    let coefficient_ok = |r: &Rat| f.monomials().iter().all(|m| !m.coefficient.eval(r).is_zero());

    let (c3, c4) = if discriminant.is_zero() {
        let mut c3 = Condition::new(Verdict::Undecided);
        c3.witnesses.push(FuchsWitness::Note("F has a repeated factor in y′; the discriminant vanishes".into()));
        (c3, Condition::new(Verdict::Undecided))
    } else {
        discriminant_conditions(&big_f, &discriminant, &mut sampler, &coefficient_ok, opts)?
    };

    Ok(FuchsReport {
        conditions: vec![c1, c2, c3, c4],
        equation: big_f,
        discriminant,
        seed: opts.seed,
        sample_points: sampler.taken,
        tolerance: opts.tolerance,
    })
}

/// Branch data collected for condition 4.
enum BranchPoint {
    Exact { y0: Rat, p0: Rat },
    Unavailable(String),
}

fn bi_from_y_upoly(up: &[XPoly]) -> BiPoly {
    BiPoly::from_upoly(2, 1, 0, up)
}

fn discriminant_conditions(
    big_f: &MPoly,
    disc: &BiPoly,
    sampler: &mut Sampler,
    coefficient_ok: &dyn Fn(&Rat) -> bool,
    opts: &FuchsOptions,
) -> Result<(Condition, Condition)> {
    let mut c3 = Condition::new(Verdict::Pass);
    let mut numeric = false;
    // Squarefree part in y with the x-content (vertical lines) removed.
    let sq = ypoly::squarefree_part(&disc.to_upoly(1, 0));
    let sq_bi = bi_from_y_upoly(&sq);
    let mut points: Vec<(Rat, BranchPoint)> = Vec::new();

    // Constant branches: common roots of the coefficients of x^i.
    let by_x = sq_bi.to_upoly(0, 1);
    let g = by_x.iter().fold(XPoly::zero(), |acc, d| acc.gcd(d));
    let rest_bi = if g.deg() >= 1 {
        let a_s = big_f.eval_var(P, &Rat::zero()).drop_var(P);
        let a_s_by_x = a_s.to_upoly(0, 1);
        let integral = a_s_by_x.iter().all(|c| c.div_rem(&g).1.is_zero());
        if !integral {
            c3.verdict = Verdict::Fail;
            let failing: Vec<Rat> = rational_roots(&g)
                .into_iter()
                .map(|(r, _)| r)
                .filter(|r| a_s_by_x.iter().any(|c| !c.eval(r).is_zero()))
                .collect();
            if failing.is_empty() {
                c3.witnesses.push(FuchsWitness::NonIntegral {
                    branch: BiPoly::from_upoly(2, 1, 0, g.coeffs().iter().map(|c| XPoly::constant(c.clone())).collect::<Vec<_>>().as_slice()),
                    sample: None,
                    residual: f64::NAN,
                });
            }
            for r in failing {
                c3.witnesses.push(FuchsWitness::NonIntegral {
                    branch: BiPoly::bi(&[((0, 1), int(1)), ((0, 0), -r)]),
                    sample: None,
                    residual: f64::NAN,
                });
            }
        } else {
            let x = sampler.next(coefficient_ok);
            let mut rest_g = g.clone();
            for (r, _) in rational_roots(&g) {
                if let Some(x) = &x {
                    points.push((x.clone(), BranchPoint::Exact { y0: r.clone(), p0: Rat::zero() }));
                }
                rest_g = rest_g.div_rem(&XPoly::linear_root(&r)).0;
            }
            if rest_g.deg() > 0 {
                points.push((
                    Rat::zero(),
                    BranchPoint::Unavailable(format!("irrational constant branches: roots of {}", rest_g.fmt_with("y"))),
                ));
            }
        }
        let quotient: Vec<XPoly> = by_x.iter().map(|d| d.div_rem(&g).0).collect();
        BiPoly::from_upoly(2, 0, 1, &quotient)
    } else {
        sq_bi.clone()
    };

    let rest = rest_bi.to_upoly(1, 0);
    let dy = ypoly::deg(&rest);
    if dy == 1 {
        // Rational branch y = N/D.
        let (num, den) = (-&rest[0], rest[1].clone());
        if rational_branch_residual(big_f, &num, &den).is_zero() {
            if let Some(x) = sampler.next(|r| coefficient_ok(r) && !den.eval(r).is_zero()) {
                let y0 = num.eval(&x) / den.eval(&x);
                let dn = &(&num.derivative() * &den) - &(&num * &den.derivative());
                let p0 = dn.eval(&x) / (den.eval(&x) * den.eval(&x));
                points.push((x, BranchPoint::Exact { y0, p0 }));
            }
        } else {
            c3.verdict = Verdict::Fail;
            c3.witnesses.push(FuchsWitness::NonIntegral { branch: rest_bi.clone(), sample: None, residual: f64::NAN });
        }
    } else if dy >= 2 {
        numeric = true;
        let rest_x = rest_bi.derivative(X);
        let rest_y = rest_bi.derivative(Y);
        let lc = rest[dy].clone();
        let disc_rest = resultant(&rest_bi, &rest_y, Y)?.to_xpoly(X).unwrap_or_else(XPoly::zero);
        let ok = |r: &Rat| coefficient_ok(r) && !lc.eval(r).is_zero() && !disc_rest.eval(r).is_zero();
        let mut first = true;
        for _ in 0..opts.samples {
            let Some(xi) = sampler.next(ok) else {
                c3.verdict = Verdict::Undecided;
                c3.witnesses.push(FuchsWitness::Note("no admissible sample point found".into()));
                break;
            };
            let roots = all_roots(&ypoly::eval_x(&rest, &xi), opts.tolerance)?;
            let xc = Complex64::new(crate::algebra::rat::to_f64(&xi), 0.0);
            for (yr, _) in &roots {
                let yc = yr.to_c64();
                let (fx, _) = eval_c(&rest_x, &[xc, yc]);
                let (fy, _) = eval_c(&rest_y, &[xc, yc]);
                let pc = -fx / fy;
                let (v, scale) = eval_c(big_f, &[xc, yc, pc]);
                let residual = if scale == 0.0 { 0.0 } else { v.norm() / scale };
                if residual > opts.tolerance && c3.verdict != Verdict::Fail {
                    c3.verdict = Verdict::Fail;
                    c3.witnesses.push(FuchsWitness::NonIntegral {
                        branch: rest_bi.clone(),
                        sample: Some(xi.clone()),
                        residual,
                    });
                }
                if first {
                    points.push((xi.clone(), exact_point(&rest_x, &rest_y, &xi, yr)));
                }
            }
            first = false;
        }
    }
    if numeric && c3.verdict == Verdict::Pass {
        c3.verdict = Verdict::NumericPass { tolerance: opts.tolerance };
    }

    let c4 = match c3.verdict {
        Verdict::Fail => Condition::new(Verdict::Skipped),
        Verdict::Undecided => Condition::new(Verdict::Undecided),
        _ => condition_four(big_f, &points)?,
    };
    Ok((c3, c4))
}

fn exact_point(fx: &BiPoly, fy: &BiPoly, x: &Rat, y: &Complex) -> BranchPoint {
    match y.as_rat() {
        Some(y0) => {
            let d = fy.eval(&[x.clone(), y0.clone()]);
            if d.is_zero() {
                return BranchPoint::Unavailable("singular point of the discriminant curve".into());
            }
            BranchPoint::Exact {
                y0: y0.clone(),
                p0: -(fx.eval(&[x.clone(), y0.clone()]) / d),
            }
        }
        None => BranchPoint::Unavailable(format!("branch value {y} at x = {x} is not rational")),
    }
}

/// Numerator of `F(x, N/D, (N/D)′)` after clearing `D`.
fn rational_branch_residual(big_f: &MPoly, num: &XPoly, den: &XPoly) -> XPoly {
    let dy = big_f.degree_in(Y) as u32;
    let dp = big_f.degree_in(P) as u32;
    let dnum = &(&num.derivative() * den) - &(num * &den.derivative());
    let mut total = XPoly::zero();
    for (e, c) in big_f.terms() {
        let (i, j, k) = (e[X] as usize, e[Y], e[P]);
        let term = XPoly::monomial(c.clone(), i)
            * num.pow(j)
            * den.pow(dy - j)
            * dnum.pow(k)
            * den.pow(2 * (dp - k));
        total = &total + &term;
    }
    total
}

fn condition_four(big_f: &MPoly, points: &[(Rat, BranchPoint)]) -> Result<Condition> {
    let mut c4 = Condition::new(Verdict::Pass);
    for (x0, pt) in points {
        let (y0, p0) = match pt {
            BranchPoint::Exact { y0, p0 } => (y0, p0),
            BranchPoint::Unavailable(why) => {
                if c4.verdict == Verdict::Pass {
                    c4.verdict = Verdict::Undecided;
                }
                c4.witnesses.push(FuchsWitness::Note(why.clone()));
                continue;
            }
        };
        // G(u, v) = F(x₀, y₀ + u, p₀ + v)
        let at_x = big_f.eval_var(X, x0).drop_var(X);
        let u = &MPoly::var(2, 0) + &MPoly::constant(2, y0.clone());
        let v = &MPoly::var(2, 1) + &MPoly::constant(2, p0.clone());
        let g = at_x.substitute(0, &u).substitute(1, &v);
        if g.degree_in(1) == 0 {
            continue;
        }
        let (g, _) = squarefree_distinct(&g, 1)?;
        for b in newton_puiseux_branches(&g, 2)? {
            if b.is_zero_branch() || !b.leading_exponent.is_positive() {
                continue;
            }
            let m = b.ramification;
            let k = (&b.leading_exponent * Rat::from_integer(m.into()))
                .to_integer()
                .to_i64()
                .expect("small exponent");
            c4.witnesses.push(FuchsWitness::Exponents { y0: y0.clone(), k, m });
            if k < m as i64 - 1 {
                c4.verdict = Verdict::Fail;
            }
        }
    }
    Ok(c4)
}
