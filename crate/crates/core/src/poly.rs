//! Sparse exact multivariate polynomials over the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{EngineError, Result};
use crate::order::RingOrder;
use crate::ring::Ring;

/// Exponent vector of a monomial; slot `i` is the exponent of the ring's
/// `i`-th variable. The derived `Ord` is a storage order only; semantic
/// comparisons go through [`crate::order::MonomialOrder`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self / other`, if `other` divides `self`.
    pub fn quotient(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
        } else {
            None
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }
}

/// A polynomial with exact rational coefficients, stored sparsely.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Polynomial {
        Polynomial { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Arc<Ring>) -> Polynomial {
        Polynomial::constant(ring, BigRational::one())
    }

    pub fn constant(ring: &Arc<Ring>, c: BigRational) -> Polynomial {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(ring.nvars()), c);
        }
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn integer(ring: &Arc<Ring>, n: i64) -> Polynomial {
        Polynomial::constant(ring, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn variable(ring: &Arc<Ring>, i: usize) -> Polynomial {
        assert!(i < ring.nvars(), "variable index out of range");
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(ring.nvars(), i), BigRational::one());
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn term(ring: &Arc<Ring>, mono: Monomial, coeff: BigRational) -> Polynomial {
        assert_eq!(mono.0.len(), ring.nvars(), "monomial arity mismatch");
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mono, coeff);
        }
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn from_terms<I>(ring: &Arc<Ring>, iter: I) -> Polynomial
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut p = Polynomial::zero(ring);
        for (m, c) in iter {
            p.add_term(&m, &c);
        }
        p
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn vars(&self) -> &[String] {
        self.ring.vars()
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    /// The same terms re-tagged with another ring descriptor over identical
    /// variables (e.g. moving a relation polynomial into its quotient ring).
    pub fn clone_into_ring(&self, ring: &Arc<Ring>) -> Polynomial {
        assert_eq!(self.vars(), ring.vars(), "rings have different variables");
        Polynomial { ring: ring.clone(), terms: self.terms.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, mono: &Monomial) -> BigRational {
        self.terms.get(mono).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// Leading term under the given ring order.
    pub fn leading_term(&self, order: RingOrder) -> Option<(&Monomial, &BigRational)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub(crate) fn add_term(&mut self, mono: &Monomial, coeff: &BigRational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono.clone()) {
            Entry::Vacant(v) => {
                v.insert(coeff.clone());
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Multiply by the single term `c * mono`.
    pub fn mul_term(&self, mono: &Monomial, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.mul(mono), a * c)).collect(),
        }
    }

    pub fn partial_derivative(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] -= 1;
            out.add_term(&Monomial(exps), &(c * BigRational::from_integer(BigInt::from(e))));
        }
        out
    }

    fn assert_compatible(&self, other: &Polynomial) {
        assert_eq!(self.vars(), other.vars(), "polynomials from different rings");
    }

    /// Parse a polynomial from text. Accepts `+ - * / ^`, parentheses,
    /// integer and fractional literals, and juxtaposition for products
    /// (`2x`, `x y`, `3x^2`, `(3*x + 2)*y`).
    pub fn parse(ring: &Arc<Ring>, input: &str) -> Result<Polynomial> {
        parser::parse(ring, input)
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.vars() == other.vars() && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m, c);
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m, &(-c));
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.assert_compatible(rhs);
        let mut out = Polynomial::zero(&self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(&m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }
}

/// Render a rational number as `p` or `p/q`.
pub fn rational_string(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Monomial, &BigRational)> = self.terms.iter().collect();
        terms.sort_by(|a, b| RingOrder::GrevLex.cmp(b.0, a.0));
        for (idx, (m, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if m.is_one() {
                write!(f, "{}", rational_string(&mag))?;
            } else {
                let mono = monomial_string(m, self.vars());
                if mag.is_one() {
                    write!(f, "{}", mono)?;
                } else {
                    write!(f, "{}*{}", rational_string(&mag), mono)?;
                }
            }
        }
        Ok(())
    }
}

pub fn monomial_string(m: &Monomial, vars: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars[i].clone()),
            _ => parts.push(format!("{}^{}", vars[i], e)),
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

mod parser {
    use super::*;

    #[derive(Clone, Debug, PartialEq)]
    enum Tok {
        Num(BigInt),
        Ident(String),
        Plus,
        Minus,
        Star,
        Slash,
        Caret,
        LParen,
        RParen,
    }

    fn lex(input: &str) -> Result<Vec<Tok>> {
        let mut toks = Vec::new();
        let chars: Vec<char> = input.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            match c {
                ' ' | '\t' | '\n' | '\r' => i += 1,
                '+' => {
                    toks.push(Tok::Plus);
                    i += 1;
                }
                '-' => {
                    toks.push(Tok::Minus);
                    i += 1;
                }
                '*' => {
                    toks.push(Tok::Star);
                    i += 1;
                }
                '/' => {
                    toks.push(Tok::Slash);
                    i += 1;
                }
                '^' => {
                    toks.push(Tok::Caret);
                    i += 1;
                }
                '(' => {
                    toks.push(Tok::LParen);
                    i += 1;
                }
                ')' => {
                    toks.push(Tok::RParen);
                    i += 1;
                }
                '0'..='9' => {
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let s: String = chars[start..i].iter().collect();
                    let n = s
                        .parse::<BigInt>()
                        .map_err(|e| EngineError::Parse(format!("bad integer {s:?}: {e}")))?;
                    toks.push(Tok::Num(n));
                }
                _ if c.is_alphabetic() || c == '_' => {
                    let start = i;
                    while i < chars.len()
                        && (chars[i].is_alphanumeric() || chars[i] == '_')
                    {
                        i += 1;
                    }
                    toks.push(Tok::Ident(chars[start..i].iter().collect()));
                }
                _ => {
                    return Err(EngineError::Parse(format!(
                        "unexpected character {c:?} in polynomial"
                    )))
                }
            }
        }
        Ok(toks)
    }

    struct P<'a> {
        ring: &'a Arc<Ring>,
        toks: Vec<Tok>,
        pos: usize,
    }

    impl<'a> P<'a> {
        fn peek(&self) -> Option<&Tok> {
            self.toks.get(self.pos)
        }

        fn next(&mut self) -> Option<Tok> {
            let t = self.toks.get(self.pos).cloned();
            if t.is_some() {
                self.pos += 1;
            }
            t
        }

        fn expr(&mut self) -> Result<Polynomial> {
            let mut acc = self.term()?;
            while let Some(tok) = self.peek() {
                match tok {
                    Tok::Plus => {
                        self.next();
                        let t = self.term()?;
                        acc = &acc + &t;
                    }
                    Tok::Minus => {
                        self.next();
                        let t = self.term()?;
                        acc = &acc - &t;
                    }
                    _ => break,
                }
            }
            Ok(acc)
        }

        fn term(&mut self) -> Result<Polynomial> {
            let mut acc = self.unary()?;
            loop {
                match self.peek() {
                    Some(Tok::Star) => {
                        self.next();
                        let u = self.unary()?;
                        acc = &acc * &u;
                    }
                    // Juxtaposition: `2x`, `x y`, `x(x+1)`.
                    Some(Tok::Ident(_)) | Some(Tok::Num(_)) | Some(Tok::LParen) => {
                        let u = self.unary()?;
                        acc = &acc * &u;
                    }
                    _ => break,
                }
            }
            Ok(acc)
        }

        fn unary(&mut self) -> Result<Polynomial> {
            if matches!(self.peek(), Some(Tok::Minus)) {
                self.next();
                let u = self.unary()?;
                return Ok(-&u);
            }
            self.power()
        }

        fn power(&mut self) -> Result<Polynomial> {
            let base = self.atom()?;
            if matches!(self.peek(), Some(Tok::Caret)) {
                self.next();
                match self.next() {
                    Some(Tok::Num(n)) => {
                        let e: u32 = n.try_into().map_err(|_| {
                            EngineError::Parse("exponent out of range".into())
                        })?;
                        let mut acc = Polynomial::one(self.ring);
                        for _ in 0..e {
                            acc = &acc * &base;
                        }
                        Ok(acc)
                    }
                    other => Err(EngineError::Parse(format!(
                        "expected integer exponent after '^', found {other:?}"
                    ))),
                }
            } else {
                Ok(base)
            }
        }

        fn atom(&mut self) -> Result<Polynomial> {
            match self.next() {
                Some(Tok::Num(n)) => {
                    // Fraction literal `p/q` (only between two numerals).
                    if matches!(self.peek(), Some(Tok::Slash)) {
                        if let Some(Tok::Num(_)) = self.toks.get(self.pos + 1) {
                            self.next();
                            if let Some(Tok::Num(d)) = self.next() {
                                if d.is_zero() {
                                    return Err(EngineError::Parse(
                                        "zero denominator".into(),
                                    ));
                                }
                                return Ok(Polynomial::constant(
                                    self.ring,
                                    BigRational::new(n, d),
                                ));
                            }
                        }
                    }
                    Ok(Polynomial::constant(self.ring, BigRational::from_integer(n)))
                }
                Some(Tok::Ident(name)) => match self.ring.var_index(&name) {
                    Some(i) => Ok(Polynomial::variable(self.ring, i)),
                    None => Err(EngineError::Parse(format!(
                        "unknown variable {name:?} (ring variables: {})",
                        self.ring.vars().join(", ")
                    ))),
                },
                Some(Tok::LParen) => {
                    let inner = self.expr()?;
                    match self.next() {
                        Some(Tok::RParen) => Ok(inner),
                        _ => Err(EngineError::Parse("unbalanced parentheses".into())),
                    }
                }
                other => Err(EngineError::Parse(format!(
                    "unexpected token {other:?} in polynomial"
                ))),
            }
        }
    }

    pub fn parse(ring: &Arc<Ring>, input: &str) -> Result<Polynomial> {
        let toks = lex(input)?;
        if toks.is_empty() {
            return Err(EngineError::Parse("empty polynomial".into()));
        }
        let mut p = P { ring, toks, pos: 0 };
        let out = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(EngineError::Parse(format!(
                "trailing input at token {}",
                p.pos
            )));
        }
        Ok(out)
    }
}
