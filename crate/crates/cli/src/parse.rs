//! Equation grammar:
//!
//! ```text
//! equation := expr "=" expr | expr
//! expr     := ["+"|"-"] term (("+"|"-") term)*
//! term     := factor ("*" factor)*
//! factor   := rational | "x" ["^" uint] | deriv ["^" uint] | "(" expr ")" ["^" uint]
//! deriv    := "y" "'"* | "y^(" uint ")"
//! rational := uint ["/" uint]
//! ```

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use odepoly_core::algebra::{Rat, XPoly};
use odepoly_core::diffpoly::DiffPoly;

use crate::error::{ParseError, ParseErrorKind};

const MAX_ORDER: usize = 32;
const MAX_EXPONENT: u32 = 64;
const MAX_TERMS: usize = 4096;
const MAX_X_DEGREE: usize = 512;
/// Bound on coefficient products per multiplication.
const MAX_WORK: usize = 200_000;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eq,
    X,
    /// `y` with the given derivative order.
    Y(usize),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(n) => format!("number {n}"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Eq => "'='".into(),
            Tok::X => "'x'".into(),
            Tok::Y(k) => format!("derivative of order {k}"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    column: usize,
}

fn err(pos: Pos, kind: ParseErrorKind) -> ParseError {
    ParseError { line: pos.line, column: pos.column, kind }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let pos = Pos { line, column };
        let c = chars[i];
        let advance = |n: usize, column: &mut usize, i: &mut usize| {
            *i += n;
            *column += n;
        };
        match c {
            '\n' => {
                line += 1;
                column = 1;
                i += 1;
            }
            c if c.is_whitespace() => advance(1, &mut column, &mut i),
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i - start > 1000 {
                    return Err(err(pos, ParseErrorKind::TooLarge("number".into())));
                }
                let s: String = chars[start..i].iter().collect();
                column += i - start;
                out.push((Tok::Num(s.parse().expect("digits")), pos));
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' | '=' | 'x' => {
                let t = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '=' => Tok::Eq,
                    _ => Tok::X,
                };
                out.push((t, pos));
                advance(1, &mut column, &mut i);
            }
            'y' => {
                advance(1, &mut column, &mut i);
                let mut order = 0;
                while i < chars.len() && (chars[i] == '\'' || chars[i] == '′') {
                    order += 1;
                    advance(1, &mut column, &mut i);
                }
                if order == 0 && chars.get(i) == Some(&'^') && chars.get(i + 1) == Some(&'(') {
                    advance(2, &mut column, &mut i);
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    column += i - start;
                    let here = Pos { line, column };
                    if start == i {
                        return Err(match chars.get(i) {
                            Some(&c) => err(here, ParseErrorKind::UnexpectedChar(c)),
                            None => err(here, ParseErrorKind::UnexpectedEnd),
                        });
                    }
                    let s: String = chars[start..i].iter().collect();
                    order = s.parse::<usize>().unwrap_or(usize::MAX);
                    if chars.get(i) != Some(&')') {
                        return Err(match chars.get(i) {
                            Some(&c) => err(here, ParseErrorKind::UnexpectedChar(c)),
                            None => err(here, ParseErrorKind::UnexpectedEnd),
                        });
                    }
                    advance(1, &mut column, &mut i);
                }
                if order > MAX_ORDER {
                    return Err(err(pos, ParseErrorKind::TooLarge("derivative order".into())));
                }
                out.push((Tok::Y(order), pos));
            }
            c => return Err(err(pos, ParseErrorKind::UnexpectedChar(c))),
        }
    }
    Ok(out)
}

/// Polynomial in `x, y, y′, …`: derivative exponent vector (no trailing
/// zeros) to coefficient.
#[derive(Clone, Debug, Default, PartialEq)]
struct Poly(BTreeMap<Vec<u32>, XPoly>);

impl Poly {
    fn constant(c: XPoly) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(Vec::new(), c);
        }
        Poly(m)
    }

    fn derivative(order: usize) -> Self {
        let mut e = vec![0; order + 1];
        e[order] = 1;
        let mut m = BTreeMap::new();
        m.insert(e, XPoly::one());
        Poly(m)
    }

    fn add(&mut self, o: &Poly, sign: bool) {
        for (e, c) in &o.0 {
            let c = if sign { c.clone() } else { -c };
            let entry = self.0.entry(e.clone()).or_insert_with(XPoly::zero);
            *entry = &*entry + &c;
            if entry.is_zero() {
                self.0.remove(e);
            }
        }
    }

    fn size(&self) -> usize {
        self.0.values().map(|c| c.deg() + 1).sum()
    }

    fn mul(&self, o: &Poly) -> Option<Poly> {
        if self.size().saturating_mul(o.size()) > MAX_WORK {
            return None;
        }
        let mut out = Poly::default();
        for (ea, ca) in &self.0 {
            for (eb, cb) in &o.0 {
                if ca.deg() + cb.deg() > MAX_X_DEGREE {
                    return None;
                }
                let n = ea.len().max(eb.len());
                let e: Vec<u32> = (0..n)
                    .map(|k| ea.get(k).copied().unwrap_or(0).checked_add(eb.get(k).copied().unwrap_or(0)))
                    .collect::<Option<_>>()?;
                let mut single = Poly::default();
                single.0.insert(e, ca * cb);
                out.add(&single, true);
                if out.0.len() > MAX_TERMS {
                    return None;
                }
            }
        }
        Some(out)
    }

    fn pow(&self, k: u32) -> Option<Poly> {
        let mut acc = Poly::constant(XPoly::one());
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Some(acc)
    }
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    i: usize,
    end: Pos,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(t, _)| t)
    }

    fn next(&mut self) -> Option<(Tok, Pos)> {
        let t = self.toks.get(self.i).cloned();
        self.i += 1;
        t
    }

    /// Position of the last consumed token: a dangling operator at the end
    /// of the input is reported where it stands.
    fn last_pos(&self) -> Pos {
        self.i
            .checked_sub(1)
            .and_then(|k| self.toks.get(k))
            .map_or(self.end, |(_, p)| *p)
    }

    fn unexpected(&self) -> ParseError {
        match self.toks.get(self.i) {
            Some((t, p)) => err(*p, ParseErrorKind::UnexpectedToken(t.describe())),
            None => err(self.last_pos(), ParseErrorKind::UnexpectedEnd),
        }
    }

    fn uint(&mut self) -> Result<BigInt, ParseError> {
        match self.peek() {
            Some(Tok::Num(_)) => match self.next() {
                Some((Tok::Num(n), _)) => Ok(n),
                _ => unreachable!(),
            },
            _ => Err(self.unexpected()),
        }
    }

    fn exponent(&mut self) -> Result<Option<u32>, ParseError> {
        if self.peek() != Some(&Tok::Caret) {
            return Ok(None);
        }
        let pos = self.toks[self.i].1;
        self.i += 1;
        let n = self.uint()?;
        match n.to_u32() {
            Some(k) if k <= MAX_EXPONENT => Ok(Some(k)),
            _ => Err(err(pos, ParseErrorKind::TooLarge("exponent".into()))),
        }
    }

    fn too_large(&self, pos: Pos) -> ParseError {
        err(pos, ParseErrorKind::TooLarge("expansion".into()))
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let pos = self.toks.get(self.i).map_or(self.last_pos(), |(_, p)| *p);
        let base = match self.peek() {
            Some(Tok::Num(_)) => {
                let n = self.uint()?;
                let d = if self.peek() == Some(&Tok::Slash) {
                    self.i += 1;
                    let dpos = self.toks.get(self.i).map_or(self.last_pos(), |(_, p)| *p);
                    let d = self.uint()?;
                    if d.is_zero() {
                        return Err(err(dpos, ParseErrorKind::ZeroDenominator));
                    }
                    d
                } else {
                    BigInt::from(1)
                };
                return Ok(Poly::constant(XPoly::constant(Rat::new(n, d))));
            }
            Some(Tok::X) => {
                self.i += 1;
                let k = self.exponent()?.unwrap_or(1) as usize;
                return Ok(Poly::constant(XPoly::monomial(Rat::from_integer(1.into()), k)));
            }
            Some(Tok::Y(_)) => match self.next() {
                Some((Tok::Y(k), _)) => Poly::derivative(k),
                _ => unreachable!(),
            },
            Some(Tok::LParen) => {
                self.i += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.unexpected());
                }
                self.i += 1;
                e
            }
            _ => return Err(self.unexpected()),
        };
        match self.exponent()? {
            Some(k) => base.pow(k).ok_or_else(|| self.too_large(pos)),
            None => Ok(base),
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            let pos = self.toks[self.i].1;
            self.i += 1;
            let f = self.factor()?;
            acc = acc.mul(&f).ok_or_else(|| self.too_large(pos))?;
        }
        Ok(acc)
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut sign = true;
        match self.peek() {
            Some(Tok::Plus) => self.i += 1,
            Some(Tok::Minus) => {
                sign = false;
                self.i += 1;
            }
            _ => {}
        }
        let mut acc = Poly::default();
        acc.add(&self.term()?, sign);
        loop {
            let sign = match self.peek() {
                Some(Tok::Plus) => true,
                Some(Tok::Minus) => false,
                _ => break,
            };
            self.i += 1;
            acc.add(&self.term()?, sign);
            if acc.0.len() > MAX_TERMS {
                return Err(self.too_large(self.last_pos()));
            }
        }
        Ok(acc)
    }
}

/// Parses `lhs = rhs` (or a bare expression) into `lhs − rhs`.
pub fn parse_equation(text: &str) -> Result<DiffPoly, ParseError> {
    let toks = lex(text)?;
    let end = {
        let lines: Vec<&str> = text.split('\n').collect();
        Pos { line: lines.len(), column: lines.last().map_or(0, |l| l.chars().count()) + 1 }
    };
    let mut p = Parser { toks, i: 0, end };
    if p.toks.is_empty() {
        return Err(err(Pos { line: 1, column: 1 }, ParseErrorKind::EmptyEquation));
    }
    let mut poly = p.expr()?;
    if p.peek() == Some(&Tok::Eq) {
        p.i += 1;
        let rhs = p.expr()?;
        poly.add(&rhs, false);
    }
    if p.i < p.toks.len() {
        return Err(p.unexpected());
    }
    let terms: Vec<(XPoly, Vec<u32>)> = poly.0.into_iter().map(|(e, c)| (c, e)).collect();
    DiffPoly::from_terms(&terms).map_err(|_| err(Pos { line: 1, column: 1 }, ParseErrorKind::EmptyEquation))
}

/// Parses a signed rational `[-]p[/q]`.
pub fn parse_rational(text: &str) -> Result<Rat, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, i: 0, end: Pos { line: 1, column: text.chars().count() + 1 } };
    let neg = match p.peek() {
        Some(Tok::Minus) => {
            p.i += 1;
            true
        }
        Some(Tok::Plus) => {
            p.i += 1;
            false
        }
        _ => false,
    };
    let n = p.uint()?;
    let d = if p.peek() == Some(&Tok::Slash) {
        p.i += 1;
        let pos = p.toks.get(p.i).map_or(p.last_pos(), |(_, q)| *q);
        let d = p.uint()?;
        if d.is_zero() {
            return Err(err(pos, ParseErrorKind::ZeroDenominator));
        }
        d
    } else {
        BigInt::from(1)
    };
    if p.i < p.toks.len() {
        return Err(p.unexpected());
    }
    let r = Rat::new(n, d);
    Ok(if neg { -r } else { r })
}

/// Prints an equation so that [`parse_equation`] reads it back unchanged.
pub fn print_equation(f: &DiffPoly) -> String {
    format!("{f} = 0")
}
