//! Recursive-descent parser for polynomial equations in `x, y, z, w`.
//!
//! ```text
//! equation := expr ('=' expr)?
//! expr     := term (('+' | '-') term)*
//! term     := unary (('*' | '/') unary)*
//! unary    := ('+' | '-') unary | power
//! power    := atom ('^' exponent)?
//! exponent := integer | '(' integer ')'
//! atom     := integer | variable | '(' expr ')'
//! ```
//!
//! Division is only allowed by a nonzero constant, which covers literals
//! such as `1/2`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact_forms::Rational;

/// Exponents of `(x, y, z, w)`.
pub type Monomial = [u32; 4];

pub const VARIABLES: [char; 4] = ['x', 'y', 'z', 'w'];
pub const WEIGHTS: [u32; 4] = [1, 1, 2, 3];

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown variable '{name}' at position {pos}")]
    UnknownVariable { pos: usize, name: String },
    #[error("division by a non-constant or zero expression at position {pos}")]
    BadDivision { pos: usize },
    #[error("non-homogeneous input: weighted degree of {monomial} is {degree}, not {expected}")]
    NonHomogeneous { monomial: String, degree: u32, expected: u32 },
    #[error("weighted degree is {degree}, not {expected}")]
    WrongDegree { degree: u32, expected: u32 },
}

/// Sparse polynomial with rational coefficients, no zero entries.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn constant(c: Rational) -> Self {
        let mut p = Polynomial::default();
        if !c.is_zero() {
            p.terms.insert([0; 4], c);
        }
        p
    }

    pub fn variable(index: usize) -> Self {
        let mut m = [0; 4];
        m[index] = 1;
        let mut p = Polynomial::default();
        p.terms.insert(m, Rational::one());
        p
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&[0; 4]).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Polynomial::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = [ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2], ma[3] + mb[3]];
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Polynomial::default();
        }
        Polynomial { terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Polynomial::constant(Rational::one()), |acc, _| acc.mul(self))
    }

    /// Checks that every monomial has the given weighted degree.
    pub fn check_weighted_degree(&self, weights: &[u32; 4], expected: u32) -> Result<(), ParseError> {
        let degree_of = |m: &Monomial| m.iter().zip(weights).map(|(e, w)| e * w).sum::<u32>();
        let degrees: Vec<u32> = self.terms.keys().map(degree_of).collect();
        if degrees.iter().all(|&d| d == expected) {
            return Ok(());
        }
        if degrees.windows(2).all(|w| w[0] == w[1]) {
            return Err(ParseError::WrongDegree { degree: degrees[0], expected });
        }
        let (m, d) = self
            .terms
            .keys()
            .map(|m| (m, degree_of(m)))
            .find(|(_, d)| *d != expected)
            .expect("some monomial has the wrong degree");
        Err(ParseError::NonHomogeneous { monomial: monomial_string(m), degree: d, expected })
    }
}

fn monomial_string(m: &Monomial) -> String {
    let parts: Vec<String> = m
        .iter()
        .zip(VARIABLES)
        .filter(|(e, _)| **e > 0)
        .map(|(e, v)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{}", monomial_string(m))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Equals,
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().map(|(_, c)| *c).collect();
            out.push((Token::Int(digits.parse().expect("ascii digits")), pos));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let name: String = chars[start..i].iter().map(|(_, c)| *c).collect();
            out.push((Token::Ident(name), pos));
            continue;
        }
        let tok = match c {
            '+' => Token::Plus,
            '-' | '\u{2212}' => Token::Minus,
            '*' | '\u{b7}' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            '(' => Token::LParen,
            ')' => Token::RParen,
            '=' => Token::Equals,
            other => {
                return Err(ParseError::Syntax {
                    pos,
                    message: format!("unexpected character '{other}'"),
                })
            }
        };
        out.push((tok, pos));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(Token, usize)>,
    idx: usize,
    end: usize,
    variables: &'a [char],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.idx).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.idx).map_or(self.end, |(_, p)| *p)
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.pos(), message: message.into() })
    }

    fn equation(&mut self) -> Result<Polynomial, ParseError> {
        let lhs = self.expr()?;
        let result = if self.peek() == Some(&Token::Equals) {
            self.idx += 1;
            let rhs = self.expr()?;
            lhs.sub(&rhs)
        } else {
            lhs
        };
        match self.peek() {
            None => Ok(result),
            Some(Token::Equals) => self.syntax("more than one '='"),
            Some(Token::RParen) => self.syntax("unbalanced ')'"),
            Some(_) => self.syntax("expected an operator (multiplication must be written with '*')"),
        }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.idx += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Token::Minus) => {
                    self.idx += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.idx += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(Token::Slash) => {
                    self.idx += 1;
                    let pos = self.pos();
                    let divisor = self.unary()?;
                    match divisor.as_constant() {
                        Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                        _ => return Err(ParseError::BadDivision { pos }),
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Some(Token::Minus) => {
                self.idx += 1;
                Ok(self.unary()?.neg())
            }
            Some(Token::Plus) => {
                self.idx += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.idx += 1;
        let parenthesized = self.peek() == Some(&Token::LParen);
        if parenthesized {
            self.idx += 1;
        }
        let exp = match self.peek() {
            Some(Token::Int(n)) => match u32::try_from(n.clone()) {
                Ok(e) if e <= 64 => e,
                _ => return self.syntax("exponent too large"),
            },
            _ => return self.syntax("expected a non-negative integer exponent"),
        };
        self.idx += 1;
        if parenthesized {
            if self.peek() != Some(&Token::RParen) {
                return self.syntax("expected ')' after exponent");
            }
            self.idx += 1;
        }
        if self.peek() == Some(&Token::Caret) {
            return self.syntax("chained exponents are ambiguous; use parentheses");
        }
        Ok(base.pow(exp))
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let pos = self.pos();
        match self.tokens.get(self.idx).map(|(t, _)| t.clone()) {
            Some(Token::Int(n)) => {
                self.idx += 1;
                Ok(Polynomial::constant(Rational::from_integer(n)))
            }
            Some(Token::Ident(name)) => {
                self.idx += 1;
                let mut chars = name.chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) if self.variables.contains(&c) => {
                        let index = VARIABLES.iter().position(|v| *v == c).unwrap();
                        Ok(Polynomial::variable(index))
                    }
                    _ => Err(ParseError::UnknownVariable { pos, name }),
                }
            }
            Some(Token::LParen) => {
                self.idx += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Token::RParen) {
                    return self.syntax("expected ')'");
                }
                self.idx += 1;
                Ok(inner)
            }
            Some(_) => self.syntax("expected a number, variable or '('"),
            None => self.syntax("unexpected end of input"),
        }
    }
}

fn parse_with(text: &str, variables: &[char]) -> Result<Polynomial, ParseError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser { tokens, idx: 0, end: text.len(), variables };
    parser.equation()
}

/// Parses `LHS = RHS` (or an expression, meaning `= 0`) as `LHS - RHS`
/// over the variables `x, y, z, w`.
pub fn parse_polynomial(text: &str) -> Result<Polynomial, ParseError> {
    parse_with(text, &VARIABLES)
}

/// Parses an expression in `x, y` only.
pub fn parse_xy_polynomial(text: &str) -> Result<Polynomial, ParseError> {
    parse_with(text, &VARIABLES[..2])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn precedence_and_unary_minus() {
        let p = parse_polynomial("-x^2 + 2*y*3").unwrap();
        assert_eq!(p.coefficient(&[2, 0, 0, 0]), r(-1));
        assert_eq!(p.coefficient(&[0, 1, 0, 0]), r(6));
        let q = parse_polynomial("(x+y)^2").unwrap();
        assert_eq!(q.coefficient(&[1, 1, 0, 0]), r(2));
    }

    #[test]
    fn fractions_and_equations() {
        let p = parse_polynomial("w^2 = 1/2*x^6 - x^6/3").unwrap();
        assert_eq!(p.coefficient(&[0, 0, 0, 2]), r(1));
        assert_eq!(p.coefficient(&[6, 0, 0, 0]), Rational::new((-1).into(), 6.into()));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert_eq!(
            parse_polynomial("x + * y").unwrap_err(),
            ParseError::Syntax { pos: 4, message: "expected a number, variable or '('".into() }
        );
        assert!(matches!(parse_polynomial("(x + y"), Err(ParseError::Syntax { pos: 6, .. })));
        assert!(matches!(parse_polynomial("2x"), Err(ParseError::Syntax { pos: 1, .. })));
        assert!(matches!(parse_polynomial("x^y"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_polynomial("x = y = z"), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn unknown_variables() {
        assert_eq!(
            parse_polynomial("w^2 + t^6").unwrap_err(),
            ParseError::UnknownVariable { pos: 6, name: "t".into() }
        );
        assert!(matches!(parse_xy_polynomial("x*z"), Err(ParseError::UnknownVariable { .. })));
    }

    #[test]
    fn division_by_non_constant_is_rejected() {
        assert!(matches!(parse_polynomial("x/y"), Err(ParseError::BadDivision { .. })));
        assert!(matches!(parse_polynomial("x/(1-1)"), Err(ParseError::BadDivision { .. })));
    }

    #[test]
    fn weighted_degree_checks() {
        let p = parse_polynomial("w^2 + z^2").unwrap();
        let err = p.check_weighted_degree(&WEIGHTS, 6).unwrap_err();
        assert_eq!(
            err,
            ParseError::NonHomogeneous { monomial: "z^2".into(), degree: 4, expected: 6 }
        );
        let q = parse_polynomial("z^2 + x^4").unwrap();
        assert_eq!(
            q.check_weighted_degree(&WEIGHTS, 6).unwrap_err(),
            ParseError::WrongDegree { degree: 4, expected: 6 }
        );
    }
}
