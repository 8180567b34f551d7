//! Multivariable Laurent polynomials with arbitrary-precision integer
//! coefficients.
//!
//! A [`LaurentPoly`] carries its ordered variable list; binary operations
//! require both operands to share it. Terms are stored in a `BTreeMap`
//! keyed by exponent vectors, so iteration is lexicographic and printing is
//! deterministic (highest term first).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Exponents = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("variable lists differ: {left:?} vs {right:?}")]
    VariableMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },
    #[error("the zero polynomial has no normal form")]
    ZeroPolynomial,
    #[error("exponent vector of length {got} for {expected} variables")]
    ExponentLength { expected: usize, got: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
}

pub type Result<T> = std::result::Result<T, LaurentError>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    vars: Vec<String>,
    terms: BTreeMap<Exponents, BigInt>,
}

impl LaurentPoly {
    pub fn zero<S: AsRef<str>>(vars: &[S]) -> Self {
        LaurentPoly {
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant<S: AsRef<str>>(vars: &[S], c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(vars);
        let c = c.into();
        if !c.is_zero() {
            p.terms.insert(vec![0; p.vars.len()], c);
        }
        p
    }

    pub fn one<S: AsRef<str>>(vars: &[S]) -> Self {
        Self::constant(vars, 1)
    }

    /// The variable `vars[index]` as a polynomial.
    pub fn var<S: AsRef<str>>(vars: &[S], index: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[index] = 1;
        Self::monomial(vars, e, 1).expect("exponent length matches")
    }

    pub fn monomial<S: AsRef<str>>(
        vars: &[S],
        exps: Exponents,
        coeff: impl Into<BigInt>,
    ) -> Result<Self> {
        Self::from_terms(vars, [(exps, coeff.into())])
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs; repeated
    /// exponents are summed and zero coefficients dropped.
    pub fn from_terms<S, I, C>(vars: &[S], terms: I) -> Result<Self>
    where
        S: AsRef<str>,
        I: IntoIterator<Item = (Exponents, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            if e.len() != p.vars.len() {
                return Err(LaurentError::ExponentLength {
                    expected: p.vars.len(),
                    got: e.len(),
                });
            }
            p.add_term(e, c.into());
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
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

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    /// Terms in ascending lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    /// `±(monomial)`, the units of the Laurent ring.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.abs().is_one())
    }

    pub fn coefficient(&self, exps: &[i64]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    /// Lexicographically largest term.
    pub fn leading(&self) -> Option<(&Exponents, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Lexicographically smallest term.
    pub fn trailing(&self) -> Option<(&Exponents, &BigInt)> {
        self.terms.iter().next()
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(LaurentError::VariableMismatch {
                left: self.vars.clone(),
                right: other.vars.clone(),
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = Self::zero(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        debug_assert_eq!(shift.len(), self.vars.len());
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..k {
            acc = acc.mul(self).expect("same variables");
        }
        acc
    }

    /// Substitutes every variable by its inverse.
    pub fn invert_variables(&self) -> Self {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|x| -x).collect(), c.clone()))
                .collect(),
        }
    }

    /// Value at `t_1 = … = t_n = 1`: the sum of all coefficients.
    pub fn eval_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Per-variable minimum and maximum exponents, `None` for zero.
    pub fn exponent_range(&self) -> Option<(Exponents, Exponents)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let mut lo = first.clone();
        let mut hi = first.clone();
        for e in it {
            for k in 0..e.len() {
                lo[k] = lo[k].min(e[k]);
                hi[k] = hi[k].max(e[k]);
            }
        }
        Some((lo, hi))
    }

    /// Canonical representative of the class `{±x^k · self}`.
    ///
    /// Each variable's exponent range is centred when its width is even and
    /// otherwise starts at zero. The sign makes the value at 1 positive, or
    /// the leading coefficient positive when that value is zero.
    pub fn normalize(&self) -> Result<Self> {
        let (lo, hi) = self.exponent_range().ok_or(LaurentError::ZeroPolynomial)?;
        let shift: Exponents = lo
            .iter()
            .zip(&hi)
            .map(|(&l, &h)| if (l + h) % 2 == 0 { -(l + h) / 2 } else { -l })
            .collect();
        let p = self.shift(&shift);
        let sign = match p.eval_one().sign() {
            num_bigint::Sign::Plus => 1,
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => {
                if p.leading().map(|(_, c)| c.is_positive()).unwrap_or(true) {
                    1
                } else {
                    -1
                }
            }
        };
        Ok(if sign < 0 { p.neg() } else { p })
    }

    /// Shifts so that every variable's minimum exponent is zero, returning
    /// the applied shift alongside the result.
    pub fn to_polynomial(&self) -> (Exponents, Self) {
        match self.exponent_range() {
            None => (vec![0; self.vars.len()], self.clone()),
            Some((lo, _)) => {
                let shift: Exponents = lo.iter().map(|x| -x).collect();
                (shift.clone(), self.shift(&shift))
            }
        }
    }

    /// `self / divisor` when the division is exact in the Laurent ring.
    pub fn div_exact(&self, divisor: &Self) -> Result<Option<Self>> {
        self.check_vars(divisor)?;
        let (d_lead_e, d_lead_c) = divisor.leading().ok_or(LaurentError::DivisionByZero)?;
        let (d_lead_e, d_lead_c) = (d_lead_e.clone(), d_lead_c.clone());
        if self.is_zero() {
            return Ok(Some(Self::zero(&self.vars)));
        }
        let floor: Exponents = sub_exps(self.trailing().unwrap().0, divisor.trailing().unwrap().0);
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.vars);
        while let Some((e, c)) = rem.leading() {
            let qe = sub_exps(e, &d_lead_e);
            if qe.cmp(&floor) == Ordering::Less {
                return Ok(None);
            }
            let (qc, r) = c.div_rem(&d_lead_c);
            if !r.is_zero() {
                return Ok(None);
            }
            let step = divisor.shift(&qe).scale(&qc);
            rem = rem.sub(&step)?;
            quot.add_term(qe, qc);
        }
        Ok(Some(quot))
    }

    /// Greatest common divisor up to units, returned with every minimum
    /// exponent zero and a positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let (_, a) = self.to_polynomial();
        let (_, b) = other.to_polynomial();
        Ok(poly_gcd(&a, &b))
    }

    /// Parses text such as `3 - 2*t + t^-1` over the given variables.
    pub fn parse<S: AsRef<str>>(text: &str, vars: &[S]) -> Result<Self> {
        let names: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        Parser::new(text, &names)?.parse()
    }
}

fn sub_exps(a: &[i64], b: &[i64]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn degree_in(p: &LaurentPoly, v: usize) -> i64 {
    p.terms.keys().map(|e| e[v]).max().unwrap_or(-1)
}

/// Coefficients of `p` viewed as a polynomial in variable `v`.
fn coefficients_in(p: &LaurentPoly, v: usize) -> BTreeMap<i64, LaurentPoly> {
    let mut out: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
    for (e, c) in &p.terms {
        let mut rest = e.clone();
        rest[v] = 0;
        out.entry(e[v])
            .or_insert_with(|| LaurentPoly::zero(&p.vars))
            .add_term(rest, c.clone());
    }
    out
}

fn content_in(p: &LaurentPoly, v: usize) -> LaurentPoly {
    coefficients_in(p, v)
        .values()
        .fold(LaurentPoly::zero(&p.vars), |acc, c| poly_gcd(&acc, c))
}

fn primitive_part_in(p: &LaurentPoly, v: usize) -> LaurentPoly {
    if p.is_zero() {
        return p.clone();
    }
    let c = content_in(p, v);
    p.div_exact(&c)
        .expect("same variables")
        .expect("content divides")
}

fn pseudo_remainder(a: &LaurentPoly, b: &LaurentPoly, v: usize) -> LaurentPoly {
    let db = degree_in(b, v);
    let lc = coefficients_in(b, v).remove(&db).expect("nonzero divisor");
    let mut r = a.clone();
    loop {
        let dr = degree_in(&r, v);
        if r.is_zero() || dr < db {
            return r;
        }
        let lr = coefficients_in(&r, v).remove(&dr).expect("nonzero");
        let mut x = vec![0; a.vars.len()];
        x[v] = dr - db;
        r = r
            .mul(&lc)
            .unwrap()
            .sub(&lr.mul(b).unwrap().shift(&x))
            .unwrap();
    }
}

fn positive_lead(p: LaurentPoly) -> LaurentPoly {
    match p.leading() {
        Some((_, c)) if c.is_negative() => p.neg(),
        _ => p,
    }
}

/// Recursive primitive-PRS gcd on polynomials with nonnegative exponents.
fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() {
        return positive_lead(b.clone());
    }
    if b.is_zero() {
        return positive_lead(a.clone());
    }
    let main = (0..a.vars.len()).find(|&v| degree_in(a, v) > 0 || degree_in(b, v) > 0);
    let Some(v) = main else {
        let g = a.eval_one().gcd(&b.eval_one());
        return LaurentPoly::constant(&a.vars, g);
    };
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let content = poly_gcd(&ca, &cb);
    let mut p = a.div_exact(&ca).unwrap().unwrap();
    let mut q = b.div_exact(&cb).unwrap().unwrap();
    if degree_in(&p, v) < degree_in(&q, v) {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_zero() {
        if degree_in(&q, v) == 0 {
            p = LaurentPoly::one(&a.vars);
            break;
        }
        let r = pseudo_remainder(&p, &q, v);
        p = q;
        q = primitive_part_in(&r, v);
    }
    let g = primitive_part_in(&p, v);
    positive_lead(g.mul(&content).unwrap())
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self} in {:?})", self.vars)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            match (k, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let factors: Vec<String> = e
                .iter()
                .zip(&self.vars)
                .filter(|(&x, _)| x != 0)
                .map(|(&x, v)| if x == 1 { v.clone() } else { format!("{v}^{x}") })
                .collect();
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Orders names like `t2` before `t10`.
fn natural_key(name: &str) -> (String, u64, String) {
    let split = name.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    let (stem, digits) = name.split_at(split);
    (stem.to_string(), digits.parse().unwrap_or(0), name.to_string())
}

impl FromStr for LaurentPoly {
    type Err = LaurentError;

    /// Parses with the variables that occur in the text, in natural order.
    fn from_str(s: &str) -> Result<Self> {
        let mut names: Vec<String> = Vec::new();
        for tok in Lexer::new(s).collect::<Result<Vec<_>>>()? {
            if let Token::Ident(name) = tok.1 {
                if !names.contains(&name) {
                    names.push(name);
                }
            }
        }
        names.sort_by_key(|n| natural_key(n));
        Self::parse(s, &names)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src, pos: 0 }
    }
}

impl Iterator for Lexer<'_> {
    type Item = Result<(usize, Token)>;

    fn next(&mut self) -> Option<Self::Item> {
        let rest = &self.src[self.pos..];
        let trimmed = rest.trim_start();
        self.pos += rest.len() - trimmed.len();
        let start = self.pos;
        let c = trimmed.chars().next()?;
        let single = match c {
            '+' => Some(Token::Plus),
            '-' => Some(Token::Minus),
            '*' => Some(Token::Star),
            '^' => Some(Token::Caret),
            '(' => Some(Token::LParen),
            ')' => Some(Token::RParen),
            _ => None,
        };
        if let Some(t) = single {
            self.pos += 1;
            return Some(Ok((start, t)));
        }
        if c.is_ascii_digit() {
            let len = trimmed.find(|c: char| !c.is_ascii_digit()).unwrap_or(trimmed.len());
            self.pos += len;
            let n = trimmed[..len].parse().expect("digits");
            return Some(Ok((start, Token::Int(n))));
        }
        if c.is_alphabetic() || c == '_' {
            let len = trimmed
                .find(|c: char| !(c.is_alphanumeric() || c == '_'))
                .unwrap_or(trimmed.len());
            self.pos += len;
            return Some(Ok((start, Token::Ident(trimmed[..len].to_string()))));
        }
        self.pos = self.src.len();
        Some(Err(LaurentError::Syntax {
            offset: start,
            message: format!("unexpected character `{c}`"),
        }))
    }
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    at: usize,
    vars: &'a [String],
    end: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &str, vars: &'a [String]) -> Result<Self> {
        let tokens = Lexer::new(text).collect::<Result<Vec<_>>>()?;
        Ok(Parser { tokens, at: 0, vars, end: text.len() })
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at).map(|t| &t.1)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.at).map(|t| t.0).unwrap_or(self.end)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(LaurentError::Syntax { offset: self.offset(), message: message.into() })
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.at).map(|t| t.1.clone());
        self.at += 1;
        t
    }

    fn parse(mut self) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero(self.vars);
        if self.peek().is_none() {
            return self.error("empty polynomial");
        }
        let mut first = true;
        while self.peek().is_some() {
            let negative = match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    false
                }
                Some(Token::Minus) => {
                    self.bump();
                    true
                }
                _ if first => false,
                _ => return self.error("expected `+` or `-`"),
            };
            first = false;
            let (e, c) = self.term()?;
            out.add_term(e, if negative { -c } else { c });
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Exponents, BigInt)> {
        let mut exps = vec![0; self.vars.len()];
        let mut coeff = BigInt::one();
        let mut factors = 0;
        loop {
            match self.peek() {
                Some(Token::Int(_)) => {
                    let Some(Token::Int(n)) = self.bump() else { unreachable!() };
                    coeff *= n;
                }
                Some(Token::Ident(_)) => {
                    let Some(Token::Ident(name)) = self.bump() else { unreachable!() };
                    let Some(k) = self.vars.iter().position(|v| *v == name) else {
                        return Err(LaurentError::UnknownVariable(name));
                    };
                    let power = if self.peek() == Some(&Token::Caret) {
                        self.bump();
                        self.exponent()?
                    } else {
                        1
                    };
                    exps[k] += power;
                }
                _ if factors == 0 => return self.error("expected a coefficient or variable"),
                _ => return self.error("expected a factor after `*`"),
            }
            factors += 1;
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                }
                Some(Token::Int(_)) | Some(Token::Ident(_)) => {}
                _ => return Ok((exps, coeff)),
            }
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        let paren = self.peek() == Some(&Token::LParen);
        if paren {
            self.bump();
        }
        let sign = match self.peek() {
            Some(Token::Minus) => {
                self.bump();
                -1
            }
            Some(Token::Plus) => {
                self.bump();
                1
            }
            _ => 1,
        };
        let value = match self.bump() {
            Some(Token::Int(n)) => match i64::try_from(n) {
                Ok(v) => v,
                Err(_) => {
                    self.at -= 1;
                    return self.error("exponent out of range");
                }
            },
            _ => {
                self.at -= 1;
                return self.error("expected an integer exponent");
            }
        };
        if paren && self.bump() != Some(Token::RParen) {
            self.at -= 1;
            return self.error("expected `)`");
        }
        Ok(sign * value)
    }
}
