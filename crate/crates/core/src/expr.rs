//! Sparse multivariate polynomials with rational coefficients, and a small
//! parser for expressions like `Y^2 - X*Z` or `t^8 + c1*t^10 - 2*t^12`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::rational_string;

/// Exponent vector, with trailing zeros trimmed.
pub type Monomial = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, BigRational>,
}

fn trim(mut m: Monomial) -> Monomial {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

impl SparsePoly {
    pub fn zero(vars: &[String]) -> Self {
        SparsePoly {
            vars: vars.to_vec(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[String], c: BigRational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Vec::new(), c);
        }
        p
    }

    /// The variable with index `i`.
    pub fn var(vars: &[String], i: usize) -> Self {
        let mut m = vec![0; i + 1];
        m[i] = 1;
        let mut p = Self::zero(vars);
        p.terms.insert(m, BigRational::one());
        p
    }

    pub fn from_terms(vars: &[String], terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            p.add_term(trim(m), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Parses with a fixed variable list; unknown identifiers are errors.
    pub fn parse_with_vars(s: &str, vars: &[String]) -> Result<Self> {
        let mut p = Parser::new(s, vars.to_vec(), false);
        let out = p.parse_all()?;
        Ok(out)
    }

    /// Parses, registering variables in order of first appearance.
    pub fn parse(s: &str) -> Result<Self> {
        let mut p = Parser::new(s, Vec::new(), true);
        let mut out = p.parse_all()?;
        out.vars = p.vars;
        Ok(out)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exponent of variable `i` in `m`.
    pub fn exponent(m: &Monomial, i: usize) -> u32 {
        m.get(i).copied().unwrap_or(0)
    }

    pub fn total_degree(m: &Monomial) -> u32 {
        m.iter().sum()
    }

    /// Smallest total degree of a term, `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Self::total_degree).min()
    }

    /// Re-expresses over a larger variable list containing all of ours.
    pub fn with_vars(&self, vars: &[String]) -> Result<Self> {
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                vars.iter()
                    .position(|w| w == v)
                    .ok_or_else(|| Error::Parse(format!("variable {v} missing")))
            })
            .collect::<Result<_>>()?;
        let terms = self.terms.iter().map(|(m, c)| {
            let mut out = vec![0; vars.len()];
            for (i, &e) in m.iter().enumerate() {
                out[map[i]] = e;
            }
            (out, c.clone())
        });
        Ok(Self::from_terms(vars, terms))
    }

    fn aligned(&self, other: &SparsePoly) -> (SparsePoly, SparsePoly) {
        if self.vars == other.vars {
            return (self.clone(), other.clone());
        }
        let mut vars = self.vars.clone();
        for v in &other.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        (
            self.with_vars(&vars).expect("superset"),
            other.with_vars(&vars).expect("superset"),
        )
    }

    pub fn add(&self, other: &SparsePoly) -> SparsePoly {
        let (mut a, b) = self.aligned(other);
        for (m, c) in b.terms {
            a.add_term(m, c);
        }
        a
    }

    pub fn neg(&self) -> SparsePoly {
        SparsePoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &SparsePoly) -> SparsePoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &SparsePoly) -> SparsePoly {
        let (a, b) = self.aligned(other);
        let mut out = SparsePoly::zero(&a.vars);
        for (m1, c1) in &a.terms {
            for (m2, c2) in &b.terms {
                let n = m1.len().max(m2.len());
                let m: Monomial = (0..n)
                    .map(|i| Self::exponent(m1, i) + Self::exponent(m2, i))
                    .collect();
                out.add_term(trim(m), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> SparsePoly {
        let mut acc = SparsePoly::constant(&self.vars, BigRational::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn scale(&self, c: &BigRational) -> SparsePoly {
        Self::from_terms(&self.vars, self.terms.iter().map(|(m, v)| (m.clone(), v * c)))
    }

    /// Substitutes `X_i -> t^{w_i}`; the image as a map from exponent to
    /// coefficient, zero coefficients dropped.
    pub fn eval_weights(&self, weights: &[i64]) -> Result<BTreeMap<i64, BigRational>> {
        if weights.len() < self.vars.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} weights for {} variables",
                weights.len(),
                self.vars.len()
            )));
        }
        let mut out: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (m, c) in &self.terms {
            let d: i64 = m.iter().zip(weights).map(|(&e, &w)| e as i64 * w).sum();
            *out.entry(d).or_insert_with(BigRational::zero) += c;
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest total degree last reads naturally for series in t.
        let mut terms: Vec<(&Monomial, &BigRational)> = self.terms.iter().collect();
        terms.sort_by_key(|(m, _)| (Self::total_degree(m), std::cmp::Reverse((*m).clone())));
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        self.vars[i].clone()
                    } else {
                        format!("{}^{}", self.vars[i], e)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", rational_string(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", rational_string(&abs), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Serialize for SparsePoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SparsePoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        SparsePoly::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    vars: Vec<String>,
    dynamic: bool,
    err: Option<Error>,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let lit: String = chars[start..i].iter().collect();
            out.push(Tok::Num(lit.parse().expect("digits")));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else if c == '−' {
            out.push(Tok::Sym('-'));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

impl Parser {
    fn new(s: &str, vars: Vec<String>, dynamic: bool) -> Self {
        let (toks, err) = match tokenize(s) {
            Ok(t) => (t, None),
            Err(e) => (Vec::new(), Some(e)),
        };
        Parser {
            toks,
            pos: 0,
            vars,
            dynamic,
            err,
        }
    }

    fn parse_all(&mut self) -> Result<SparsePoly> {
        if let Some(e) = self.err.take() {
            return Err(e);
        }
        if self.toks.is_empty() {
            return Err(Error::Parse("empty expression".into()));
        }
        let p = self.expr()?;
        if self.pos != self.toks.len() {
            return Err(Error::Parse(format!("trailing input at token {}", self.pos)));
        }
        // Terms were built against a growing variable list; pad to the end.
        let vars = self.vars.clone();
        Ok(SparsePoly::from_terms(&vars, p.terms))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<SparsePoly> {
        let mut acc = if self.eat('-') {
            self.term()?.neg()
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<SparsePoly> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.factor()?);
            } else if self.eat('/') {
                let Some(Tok::Num(d)) = self.peek().cloned() else {
                    return Err(Error::Parse("only numeric divisors are supported".into()));
                };
                self.pos += 1;
                if d.is_zero() {
                    return Err(Error::Parse("division by zero".into()));
                }
                acc = acc.scale(&BigRational::new(BigInt::one(), d));
            } else if matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::Sym('('))) {
                // implicit product, e.g. `2t^3`
                acc = acc.mul(&self.factor()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<SparsePoly> {
        let base = self.atom()?;
        if self.eat('^') {
            let Some(Tok::Num(e)) = self.peek().cloned() else {
                return Err(Error::Parse("exponent must be a non-negative integer".into()));
            };
            self.pos += 1;
            let e: u32 = e
                .try_into()
                .map_err(|_| Error::Parse("exponent too large".into()))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<SparsePoly> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(SparsePoly::constant(&self.vars, BigRational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let i = match self.vars.iter().position(|v| *v == name) {
                    Some(i) => i,
                    None if self.dynamic => {
                        self.vars.push(name);
                        self.vars.len() - 1
                    }
                    None => return Err(Error::Parse(format!("unknown variable {name}"))),
                };
                Ok(SparsePoly::var(&self.vars, i))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let p = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing )".into()));
                }
                Ok(p)
            }
            Some(Tok::Sym('-')) => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parse_and_evaluate() {
        let xyzw = vars(&["X", "Y", "Z", "W"]);
        let p = SparsePoly::parse_with_vars("Y^2 - X*Z", &xyzw).unwrap();
        assert!(p.eval_weights(&[5, 7, 9, 13]).unwrap().is_empty());
        let q = SparsePoly::parse_with_vars("X - Y", &xyzw).unwrap();
        assert_eq!(q.eval_weights(&[5, 7, 9, 13]).unwrap().len(), 2);
        assert!(SparsePoly::parse_with_vars("X - V", &xyzw).is_err());
    }

    #[test]
    fn dynamic_variables_and_display() {
        let p = SparsePoly::parse("t^8 + 2*t^10 - t^12").unwrap();
        assert_eq!(p.vars(), &["t".to_string()]);
        assert_eq!(p.to_string(), "t^8 + 2*t^10 - t^12");
        let f = SparsePoly::parse("t^8 + c1*t^10").unwrap();
        assert_eq!(f.vars(), &["t".to_string(), "c1".to_string()]);
        assert_eq!(SparsePoly::parse("(X+1)^2 - X^2 - 2X").unwrap().to_string(), "1");
    }

    #[test]
    fn cancellation_and_rationals() {
        let p = SparsePoly::parse("X*Y - Y*X").unwrap();
        assert!(p.is_zero());
        let h = SparsePoly::parse("X/2 + X/2").unwrap();
        assert_eq!(h.to_string(), "X");
        assert!(SparsePoly::parse("X/0").is_err());
        assert!(SparsePoly::parse("").is_err());
        assert!(SparsePoly::parse("X +").is_err());
        assert!(SparsePoly::parse("X $ Y").is_err());
    }

    #[test]
    fn json_roundtrip() {
        let p = SparsePoly::parse("-Z^2 + X*W").unwrap();
        let js = serde_json::to_string(&p).unwrap();
        let back: SparsePoly = serde_json::from_str(&js).unwrap();
        assert_eq!(back.with_vars(p.vars()).unwrap(), p);
    }
}
