use crate::algebra::roots::all_roots;
use crate::algebra::{int, ypoly, BiPoly, Complex, XPoly, DEFAULT_TOLERANCE};
use crate::error::{Error, Result};

const X: usize = 0;
const Y: usize = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinomialVerdict {
    Linear,
    /// `(y′)^m = χ(x)(y − a)^{m−1}`.
    PowerForm,
    /// `(y′)² = χ(x)(y − a)(y − b)`, `a ≠ b`.
    TwoRootForm,
    MovableSingularities,
}

impl BinomialVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            BinomialVerdict::Linear => "linear",
            BinomialVerdict::PowerForm => "power-form",
            BinomialVerdict::TwoRootForm => "two-root-form",
            BinomialVerdict::MovableSingularities => "movable-singularities",
        }
    }

    pub fn fixed_singularities_only(&self) -> bool {
        !matches!(self, BinomialVerdict::MovableSingularities)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BinomialClass {
    pub m: u32,
    pub verdict: BinomialVerdict,
    /// `deg_y R ≤ 2m`.
    pub yosida_ok: bool,
    pub degree_in_y: usize,
    /// `χ(x)` when `R = χ(x)·S(y)` with `S` monic.
    pub chi: Option<XPoly>,
    /// Roots `a` (and `b`) of `S`.
    pub roots: Vec<Complex>,
}

/// Splits `R = χ(x)·S(y)` with `S` monic and free of `x`.
fn separate(r: &[XPoly]) -> Option<(XPoly, XPoly)> {
    let chi = ypoly::content(r);
    let mut s = Vec::with_capacity(r.len());
    for c in r {
        let (q, rem) = c.div_rem(&chi);
        if !rem.is_zero() || !q.is_constant() {
            return None;
        }
        s.push(q.coeff(0));
    }
    let s = XPoly::new(s);
    let lc = s.lc();
    Some((chi.scale(&lc), s.scale(&lc.recip())))
}

/// Classifies `(y′)^m = R(x, y)` (variables `x = 0`, `y = 1`).
pub fn binomial_classify(m: i64, r: &BiPoly) -> Result<BinomialClass> {
    if m < 1 {
        return Err(Error::InvalidM);
    }
    let m = m as u32;
    let up = ypoly::trim(r.to_upoly(Y, X));
    let degree = ypoly::deg(&up);
    let mut out = BinomialClass {
        m,
        verdict: BinomialVerdict::MovableSingularities,
        yosida_ok: degree <= 2 * m as usize,
        degree_in_y: degree,
        chi: None,
        roots: Vec::new(),
    };
    if up.is_empty() || degree == 0 {
        out.verdict = BinomialVerdict::Linear;
        out.chi = up.first().cloned();
        return Ok(out);
    }
    // χ·(y − η(x))^m: an m-th root makes the equation linear.
    if degree == m as usize && ypoly::deg(&ypoly::squarefree_part(&up)) == 1 {
        out.verdict = BinomialVerdict::Linear;
        return Ok(out);
    }
    let Some((chi, s)) = separate(&up) else {
        return Ok(out);
    };
    if degree == (m - 1) as usize {
        // (y − a)^{m−1} with a = −s_{m−2}/(m−1)
        let a = -(s.coeff(degree - 1) / int(degree as i64));
        if XPoly::linear_root(&a).pow(degree as u32) == s {
            out.verdict = BinomialVerdict::PowerForm;
            out.chi = Some(chi);
            out.roots = vec![Complex::real(a)];
            return Ok(out);
        }
    }
    if m == 2 && degree == 2 && s.gcd(&s.derivative()).is_constant() {
        out.verdict = BinomialVerdict::TwoRootForm;
        out.chi = Some(chi);
        out.roots = all_roots(&s, DEFAULT_TOLERANCE)?.into_iter().map(|(z, _)| z).collect();
        return Ok(out);
    }
    Ok(out)
}
