//! Closed-form single-qubit operators such as `(-i)^j X^{i+j} Z^i`, used to
//! encode correction tables as data.
//!
//! A formula is a product of factors `base` or `base^exp`. Bases are the
//! one-qubit gates `I X Y Z W H S T`, the scalars `(-1)`, `(i)`, `(-i)`, `(w)`,
//! and named scalars such as `E_Q` supplied by the caller. Exponents are a
//! single variable or digit, or a braced sum of products of variables,
//! integers and parenthesized sums.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::gates::make_gate;
use crate::linalg::DenseMatrix;
use crate::ring::RingScalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndexExpr {
    Const(i64),
    Var(String),
    Sum(Vec<IndexExpr>),
    Product(Vec<IndexExpr>),
}

/// Variable and scalar bindings for evaluation.
#[derive(Clone, Debug, Default)]
pub struct Env {
    vars: BTreeMap<String, i64>,
    scalars: BTreeMap<String, RingScalar>,
}

impl Env {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn var(mut self, name: &str, value: i64) -> Self {
        self.vars.insert(name.to_string(), value);
        self
    }

    pub fn set_var(&mut self, name: &str, value: i64) {
        self.vars.insert(name.to_string(), value);
    }

    pub fn set_scalar(&mut self, name: &str, value: RingScalar) {
        self.scalars.insert(name.to_string(), value);
    }

    pub fn get_var(&self, name: &str) -> Result<i64> {
        self.vars
            .get(name)
            .copied()
            .ok_or_else(|| Error::InvalidArgument(format!("unbound index `{name}`")))
    }
}

impl IndexExpr {
    pub fn parse(s: &str) -> Result<Self> {
        let mut p = Parser::new(s);
        let e = p.sum()?;
        p.skip_ws();
        if !p.at_end() {
            return Err(p.error("trailing input"));
        }
        Ok(e)
    }

    pub fn eval(&self, env: &Env) -> Result<i64> {
        match self {
            IndexExpr::Const(c) => Ok(*c),
            IndexExpr::Var(v) => env.get_var(v),
            IndexExpr::Sum(ts) => ts.iter().try_fold(0i64, |acc, t| acc.checked_add(t.eval(env)?).ok_or(Error::Overflow)),
            IndexExpr::Product(fs) => fs.iter().try_fold(1i64, |acc, f| acc.checked_mul(f.eval(env)?).ok_or(Error::Overflow)),
        }
    }
}

impl fmt::Display for IndexExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexExpr::Const(c) => write!(f, "{c}"),
            IndexExpr::Var(v) => write!(f, "{v}"),
            IndexExpr::Sum(ts) => {
                let parts: Vec<String> = ts.iter().map(|t| t.to_string()).collect();
                write!(f, "({})", parts.join("+"))
            }
            IndexExpr::Product(fs) => {
                let parts: Vec<String> = fs.iter().map(|t| t.to_string()).collect();
                write!(f, "{}", parts.join("*"))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Base {
    Gate(char),
    Scalar(RingScalar),
    Named(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Formula {
    source: String,
    factors: Vec<(Base, Option<IndexExpr>)>,
}

impl Formula {
    pub fn parse(s: &str) -> Result<Self> {
        let mut p = Parser::new(s);
        let mut factors = Vec::new();
        loop {
            p.skip_ws();
            if p.at_end() {
                break;
            }
            let base = p.base()?;
            p.skip_ws();
            let exp = if p.eat('^') { Some(p.exponent()?) } else { None };
            factors.push((base, exp));
        }
        if factors.is_empty() {
            return Err(Error::Parse("empty formula".into()));
        }
        Ok(Formula { source: s.trim().to_string(), factors })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// The 2x2 operator for the given bindings.
    pub fn eval(&self, env: &Env) -> Result<DenseMatrix> {
        let mut acc = DenseMatrix::identity(2);
        for (base, exp) in &self.factors {
            let e = match exp {
                Some(e) => e.eval(env)?,
                None => 1,
            };
            if e < 0 {
                return Err(Error::InvalidArgument(format!("negative exponent in `{}`", self.source)));
            }
            match base {
                Base::Gate(c) => {
                    let g = make_gate(&c.to_string())?;
                    for _ in 0..e % 8 {
                        acc = acc.matmul(&g)?;
                    }
                }
                Base::Scalar(s) => acc = acc.scale(&pow(s, e)?)?,
                Base::Named(n) => {
                    let s = env
                        .scalars
                        .get(n)
                        .ok_or_else(|| Error::InvalidArgument(format!("unbound scalar `{n}`")))?;
                    acc = acc.scale(&pow(s, e)?)?;
                }
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

fn pow(s: &RingScalar, e: i64) -> Result<RingScalar> {
    let mut acc = RingScalar::ONE;
    // Every scalar base here is an 8th root of unity.
    for _ in 0..e % 8 {
        acc = acc.checked_mul(s)?;
    }
    Ok(acc)
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, chars: src.chars().collect(), pos: 0 }
    }

    fn error(&self, why: &str) -> Error {
        Error::Parse(format!("formula `{}` at offset {}: {why}", self.src, self.pos))
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn base(&mut self) -> Result<Base> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let start = self.pos;
                while self.peek().is_some_and(|c| c != ')') {
                    self.pos += 1;
                }
                let inner: String = self.chars[start..self.pos].iter().filter(|c| !c.is_whitespace()).collect();
                self.expect(')')?;
                let s = match inner.as_str() {
                    "-1" => RingScalar::from_int(-1),
                    "i" => RingScalar::i(),
                    "-i" => -RingScalar::i(),
                    "w" => RingScalar::omega_pow(1),
                    _ => return Err(self.error(&format!("unknown scalar `({inner})`"))),
                };
                Ok(Base::Scalar(s))
            }
            Some(c) if c.is_ascii_uppercase() => {
                self.pos += 1;
                if self.peek() == Some('_') {
                    let start = self.pos - 1;
                    self.pos += 1;
                    while self.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
                        self.pos += 1;
                    }
                    return Ok(Base::Named(self.chars[start..self.pos].iter().collect()));
                }
                if "IXYZWHST".contains(c) {
                    Ok(Base::Gate(c))
                } else {
                    Err(self.error(&format!("unknown gate `{c}`")))
                }
            }
            _ => Err(self.error("expected a factor")),
        }
    }

    fn exponent(&mut self) -> Result<IndexExpr> {
        self.skip_ws();
        if self.eat('{') {
            let e = self.sum()?;
            self.expect('}')?;
            Ok(e)
        } else {
            self.atom()
        }
    }

    fn sum(&mut self) -> Result<IndexExpr> {
        let mut terms = vec![self.product()?];
        loop {
            self.skip_ws();
            if !self.eat('+') {
                break;
            }
            terms.push(self.product()?);
        }
        Ok(if terms.len() == 1 { terms.pop().expect("one term") } else { IndexExpr::Sum(terms) })
    }

    fn product(&mut self) -> Result<IndexExpr> {
        let mut factors = vec![self.atom()?];
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') | Some('·') => {
                    self.pos += 1;
                    factors.push(self.atom()?);
                }
                Some(c) if c == '(' || c.is_ascii_lowercase() || c.is_ascii_digit() => factors.push(self.atom()?),
                _ => break,
            }
        }
        Ok(if factors.len() == 1 { factors.pop().expect("one factor") } else { IndexExpr::Product(factors) })
    }

    fn atom(&mut self) -> Result<IndexExpr> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.sum()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let s: String = self.chars[start..self.pos].iter().collect();
                s.parse().map(IndexExpr::Const).map_err(|_| self.error("bad integer"))
            }
            Some(c) if c.is_ascii_lowercase() => {
                let start = self.pos;
                self.pos += 1;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                Ok(IndexExpr::Var(self.chars[start..self.pos].iter().collect()))
            }
            _ => Err(self.error("expected an index")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::PauliWord;

    fn word(s: &str) -> DenseMatrix {
        PauliWord::parse(s, 1).unwrap().to_matrix()
    }

    #[test]
    fn index_expressions() {
        let env = Env::new().var("k1", 1).var("l1", 0).var("j1", 0);
        assert_eq!(IndexExpr::parse("(k1+l1)*(j1+1)").unwrap().eval(&env).unwrap(), 1);
        assert_eq!(IndexExpr::parse("(k1+l1)(j1+1)").unwrap().eval(&env).unwrap(), 1);
        assert_eq!(IndexExpr::parse("k1 + k1 + 1").unwrap().eval(&env).unwrap(), 3);
        assert!(IndexExpr::parse("k1 +").is_err());
        assert!(IndexExpr::parse("q").unwrap().eval(&env).is_err());
    }

    #[test]
    fn operator_formulas() {
        let env = Env::new().var("i", 1).var("j", 1);
        // (-i)^1 X^0 Z^1
        let f = Formula::parse("(-i)^j X^{i+j} Z^i").unwrap();
        assert_eq!(f.eval(&env).unwrap(), word("-iZ"));
        let f = Formula::parse("Z^{j+1} X^{i+j}").unwrap();
        assert_eq!(f.eval(&env).unwrap(), DenseMatrix::identity(2));
        let f = Formula::parse("X Y").unwrap();
        assert_eq!(f.eval(&env).unwrap(), word("X").matmul(&word("Y")).unwrap());
    }

    #[test]
    fn named_scalars() {
        let mut env = Env::new().var("a", 1);
        env.set_scalar("E_Q", RingScalar::i());
        let f = Formula::parse("(-1)^a E_Q X^a").unwrap();
        assert_eq!(f.eval(&env).unwrap(), word("-iX"));
        assert!(Formula::parse("E_P").unwrap().eval(&env).is_err());
    }

    #[test]
    fn parse_errors() {
        assert!(Formula::parse("").is_err());
        assert!(Formula::parse("Q^a").is_err());
        assert!(Formula::parse("(2)^a").is_err());
        assert!(Formula::parse("X^").is_err());
    }
}
