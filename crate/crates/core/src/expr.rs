//! Operator expressions for gate identities.
//!
//! An expression is a product read left to right as a matrix product.
//! Factors:
//!
//! * `NAME` or `NAME<sites>`: a catalog gate; one-qubit gates take one site
//!   number (`H1`, `S2`), k-qubit gates one digit per site (`CNOT21`).
//!   Without sites the gate must span the whole register.
//! * `(product)` or `(product)<sites>`: a sub-product, placed on the sites.
//! * `-`, `i`, `-i`, `w`, `w^k`: scalar phases, with w = e^{iπ/4}.
//! * `exp(m; [c*]WORD, ...)`: exponential at angle m·π/4 of a commuting sum of
//!   dense Pauli words; Hermitian words M give e^{−iθcM}, anti-Hermitian ones
//!   give e^{θcM}.
//! * `ctrl<c><t>(product)`: the one-qubit product controlled on site c.
//! * `parity(A | B)`: the two-qubit parity-preserving gate with blocks A, B.
//! * `transp(J)`: the transposition of basis labels J and J+1.
//!
//! Gates and sub-products accept `^-1` (inverse) or `^k` (power).

use std::fmt;

use crate::error::{Error, Result};
use crate::gates::{controlled, make_gate, parity_gate, transposition_gate};
use crate::linalg::{DenseMatrix, QuarterPi};
use crate::pauli::{exp_pauli_sum, PauliWord};
use crate::ring::RingScalar;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Power {
    One,
    Inverse,
    Times(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Factor {
    Phase(RingScalar),
    Gate { name: String, sites: Option<String>, power: Power },
    Group { body: Vec<Factor>, sites: Option<String>, power: Power },
    Exp { angle: i64, terms: Vec<(i64, String)> },
    Ctrl { control: usize, target: usize, body: Vec<Factor> },
    Parity(Vec<Factor>, Vec<Factor>),
    Transposition(usize),
}

/// A parsed operator expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    source: String,
    factors: Vec<Factor>,
}

impl Expr {
    pub fn parse(s: &str) -> Result<Expr> {
        let mut p = Parser { src: s, chars: s.chars().collect(), pos: 0 };
        let factors = p.product()?;
        p.skip_ws();
        if !p.at_end() {
            return Err(p.error("unexpected input"));
        }
        if factors.is_empty() {
            return Err(Error::Parse("empty expression".into()));
        }
        Ok(Expr { source: s.trim().to_string(), factors })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// The operator on an n-qubit register.
    pub fn eval(&self, n: usize) -> Result<DenseMatrix> {
        eval_product(&self.factors, n)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

fn eval_product(factors: &[Factor], n: usize) -> Result<DenseMatrix> {
    let mut acc = DenseMatrix::identity_qubits(n)?;
    for f in factors {
        acc = match f {
            Factor::Phase(p) => acc.scale(p)?,
            other => acc.matmul(&eval_factor(other, n)?)?,
        };
    }
    Ok(acc)
}

fn parse_sites(sites: &str, arity: usize, n: usize) -> Result<Vec<usize>> {
    let list: Vec<usize> = if arity == 1 {
        vec![sites.parse().map_err(|_| Error::Parse(format!("bad site `{sites}`")))?]
    } else {
        sites.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect::<Option<_>>().ok_or_else(|| Error::Parse(format!("bad sites `{sites}`")))?
    };
    if list.len() != arity {
        return Err(Error::Parse(format!("`{sites}` names {} sites for a {arity}-qubit operator", list.len())));
    }
    if list.iter().any(|&s| s == 0 || s > n) {
        return Err(Error::Parse(format!("site in `{sites}` outside 1..={n}")));
    }
    Ok(list.into_iter().map(|s| s - 1).collect())
}

fn place(op: DenseMatrix, sites: &Option<String>, arity: usize, n: usize) -> Result<DenseMatrix> {
    match sites {
        Some(s) => op.embed(&parse_sites(s, arity, n)?, n),
        None if arity == n => Ok(op),
        None => Err(Error::DimensionMismatch(format!("{arity}-qubit operator used on {n} qubits without sites"))),
    }
}

fn raise(m: DenseMatrix, power: &Power) -> Result<DenseMatrix> {
    match power {
        Power::One => Ok(m),
        Power::Inverse => Ok(m.dagger()),
        Power::Times(k) => {
            let mut acc = DenseMatrix::identity(m.rows());
            for _ in 0..*k {
                acc = acc.matmul(&m)?;
            }
            Ok(acc)
        }
    }
}

fn group_width(sites: &Option<String>, n: usize) -> usize {
    match sites {
        Some(s) if s.len() == 1 || n < 10 => s.len(),
        // Only single-site groups can use two-digit site numbers.
        Some(_) => 1,
        None => n,
    }
}

fn eval_factor(f: &Factor, n: usize) -> Result<DenseMatrix> {
    match f {
        Factor::Phase(p) => DenseMatrix::identity_qubits(n)?.scale(p),
        Factor::Gate { name, sites, power } => {
            let g = raise(make_gate(name)?, power)?;
            let arity = g.qubits().ok_or_else(|| Error::DimensionMismatch(format!("gate `{name}`")))?;
            place(g, sites, arity, n)
        }
        Factor::Group { body, sites, power } => {
            let w = group_width(sites, n);
            let m = raise(eval_product(body, w)?, power)?;
            place(m, sites, w, n)
        }
        Factor::Exp { angle, terms } => {
            let words = terms
                .iter()
                .map(|(c, w)| Ok((PauliWord::parse(w, n)?, *c)))
                .collect::<Result<Vec<_>>>()?;
            exp_pauli_sum(&words, QuarterPi(*angle))
        }
        Factor::Ctrl { control, target, body } => {
            if *control == 0 || *target == 0 || *control > n || *target > n || control == target {
                return Err(Error::Parse(format!("bad control/target {control}{target} on {n} qubits")));
            }
            controlled(&eval_product(body, 1)?, control - 1, target - 1, n)
        }
        Factor::Parity(a, b) => {
            if n != 2 {
                return Err(Error::DimensionMismatch("parity gate spans two qubits".into()));
            }
            parity_gate(&eval_product(a, 1)?, &eval_product(b, 1)?)
        }
        Factor::Transposition(j) => transposition_gate(n, *j),
    }
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, why: &str) -> Error {
        Error::Parse(format!("expression `{}` at offset {}: {why}", self.src, self.pos))
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace() || c == '*' || c == '·') {
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
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> String {
        let start = self.pos;
        while self.peek().is_some_and(&f) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn digits(&mut self) -> Option<String> {
        let d = self.take_while(|c| c.is_ascii_digit());
        (!d.is_empty()).then_some(d)
    }

    fn int(&mut self) -> Result<i64> {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
        let neg = self.eat('-');
        let d = self.digits().ok_or_else(|| self.error("expected an integer"))?;
        let v: i64 = d.parse().map_err(|_| self.error("integer out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn power(&mut self) -> Result<Power> {
        if !self.eat('^') {
            return Ok(Power::One);
        }
        match self.int()? {
            -1 => Ok(Power::Inverse),
            k if k >= 0 => Ok(Power::Times(k as u32)),
            _ => Err(self.error("only ^-1 and non-negative powers are supported")),
        }
    }

    fn product(&mut self) -> Result<Vec<Factor>> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(')') | Some('|') => return Ok(out),
                _ => out.push(self.factor()?),
            }
        }
    }

    fn factor(&mut self) -> Result<Factor> {
        let c = self.peek().ok_or_else(|| self.error("expected a factor"))?;
        if c == '-' {
            self.pos += 1;
            return Ok(Factor::Phase(RingScalar::from_int(-1)));
        }
        if c == '(' {
            self.pos += 1;
            let body = self.product()?;
            self.expect(')')?;
            let sites = self.digits();
            let power = self.power()?;
            return Ok(Factor::Group { body, sites, power });
        }
        if c.is_ascii_uppercase() {
            let name = self.take_while(|c| c.is_ascii_uppercase() || c == '_');
            let sites = self.digits();
            let power = self.power()?;
            return Ok(Factor::Gate { name, sites, power });
        }
        if c.is_ascii_lowercase() {
            let word = self.take_while(|c| c.is_ascii_lowercase());
            return match word.as_str() {
                "i" => Ok(Factor::Phase(RingScalar::i())),
                "w" => {
                    let k = if self.eat('^') { self.int()? } else { 1 };
                    Ok(Factor::Phase(RingScalar::omega_pow(k)))
                }
                "exp" => self.exp(),
                "ctrl" => {
                    let d = self.digits().ok_or_else(|| self.error("ctrl needs control and target digits"))?;
                    let ds: Vec<usize> = d.chars().filter_map(|c| c.to_digit(10)).map(|v| v as usize).collect();
                    if ds.len() != 2 {
                        return Err(self.error("ctrl needs exactly two site digits"));
                    }
                    self.expect('(')?;
                    let body = self.product()?;
                    self.expect(')')?;
                    Ok(Factor::Ctrl { control: ds[0], target: ds[1], body })
                }
                "parity" => {
                    self.expect('(')?;
                    let a = self.product()?;
                    self.expect('|')?;
                    let b = self.product()?;
                    self.expect(')')?;
                    Ok(Factor::Parity(a, b))
                }
                "transp" => {
                    self.expect('(')?;
                    let j = self.int()?;
                    self.expect(')')?;
                    let j = usize::try_from(j).map_err(|_| self.error("label must be positive"))?;
                    Ok(Factor::Transposition(j))
                }
                _ => Err(self.error(&format!("unknown keyword `{word}`"))),
            };
        }
        Err(self.error(&format!("unexpected `{c}`")))
    }

    fn exp(&mut self) -> Result<Factor> {
        self.expect('(')?;
        let angle = self.int()?;
        self.expect(';')?;
        let start = self.pos;
        while self.peek().is_some_and(|c| c != ')') {
            self.pos += 1;
        }
        let body: String = self.chars[start..self.pos].iter().collect();
        self.expect(')')?;
        let mut terms = Vec::new();
        for t in body.split(',') {
            let t: String = t.chars().filter(|c| !c.is_whitespace()).collect();
            let (coef, word) = match t.split_once('*') {
                Some((c, w)) => (c.parse::<i64>().map_err(|_| self.error(&format!("bad coefficient in `{t}`")))?, w.to_string()),
                None => (1, t),
            };
            if word.is_empty() {
                return Err(self.error("empty exponent term"));
            }
            terms.push((coef, word));
        }
        Ok(Factor::Exp { angle, terms })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(s: &str, n: usize) -> DenseMatrix {
        Expr::parse(s).unwrap().eval(n).unwrap()
    }

    #[test]
    fn products_are_matrix_products_in_reading_order() {
        let h = make_gate("H").unwrap();
        let cnot = make_gate("CNOT").unwrap();
        let expect = cnot.matmul(&h.tensor(&DenseMatrix::identity(2)).unwrap()).unwrap();
        assert_eq!(ev("CNOT12 H1", 2), expect);
        assert_eq!(ev("CNOT H1", 2), expect);
        assert_eq!(ev("CH", 2), expect);
    }

    #[test]
    fn sites_and_groups() {
        let cnot21 = ev("CNOT21", 2);
        let swap = make_gate("SWAP").unwrap();
        assert_eq!(cnot21, swap.matmul(&ev("CNOT12", 2)).unwrap().matmul(&swap).unwrap());
        let zh = make_gate("Z").unwrap().matmul(&make_gate("H").unwrap()).unwrap();
        assert_eq!(ev("(Z H)2", 2), DenseMatrix::identity(2).tensor(&zh).unwrap());
        assert_eq!(ev("S2^-1", 2), ev("SINV2", 2));
        assert_eq!(ev("S1^2", 1), make_gate("Z").unwrap());
    }

    #[test]
    fn phases_and_exponentials() {
        assert_eq!(ev("- X", 1), make_gate("X").unwrap().neg().unwrap());
        assert_eq!(ev("-i Z", 1), PauliWord::parse("-iZ", 1).unwrap().to_matrix());
        assert_eq!(ev("w^2", 1), ev("i", 1));
        // e^{(π/4)Y} with Y² = −I
        let ab = ev("exp(1; Y)", 1);
        let h = RingScalar::inv_sqrt2();
        assert_eq!(ab, DenseMatrix::from_rows(vec![vec![h, h], vec![-h, h]]).unwrap());
        assert_eq!(ev("exp(1; XY)", 2), make_gate("B").unwrap());
    }

    #[test]
    fn controlled_parity_and_transpositions() {
        assert_eq!(ev("ctrl12(X)", 2), make_gate("CNOT").unwrap());
        assert_eq!(ev("parity(I | -I)", 2), PauliWord::parse("ZZ", 2).unwrap().to_matrix());
        assert_eq!(ev("transp(2)", 2), make_gate("SWAP").unwrap());
        assert_eq!(ev("transp(7)", 3), make_gate("TOFFOLI").unwrap());
    }

    #[test]
    fn errors() {
        assert!(Expr::parse("").is_err());
        assert!(Expr::parse("CNOT12 (H").is_err());
        assert!(Expr::parse("foo(1)").is_err());
        assert!(Expr::parse("CNOT123").unwrap().eval(3).is_err());
        assert!(Expr::parse("CNOT").unwrap().eval(3).is_err());
        assert!(Expr::parse("NOPE1").unwrap().eval(2).is_err());
        assert!(Expr::parse("exp(1; XI, ZI)").unwrap().eval(2).is_err());
        assert!(Expr::parse("H3").unwrap().eval(2).is_err());
    }
}
