//! Text grammar for polynomials and polynomial differential forms.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'|'/'] factor)*        juxtaposition means '*'
//! factor := atom ('^' (uint | atom))*         '^' atom is a wedge
//! atom   := uint | ident | '(' expr ')'
//! ```
//!
//! Identifiers are variable names, or `d` followed by a variable name for a
//! basis 1-form. Division is only by nonzero constants. Errors carry the byte
//! offset of the offending token.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use super::{Polynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedToken { found: String, expected: &'static str },
    UnexpectedEnd { expected: &'static str },
    UnknownVariable(String),
    ExponentOverflow,
    DivisionByZero,
    NonConstantDivisor,
    /// A wedge or basis differential appeared where only a polynomial is
    /// allowed.
    NotAPolynomial,
    /// Summands of different form degree.
    MixedDegree { left: usize, right: usize },
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::UnexpectedToken { found, expected } => {
                write!(f, "unexpected {found}, expected {expected}")
            }
            ParseErrorKind::UnexpectedEnd { expected } => {
                write!(f, "unexpected end of input, expected {expected}")
            }
            ParseErrorKind::UnknownVariable(v) => write!(f, "unknown variable {v:?}"),
            ParseErrorKind::ExponentOverflow => write!(f, "exponent overflow"),
            ParseErrorKind::DivisionByZero => write!(f, "division by zero"),
            ParseErrorKind::NonConstantDivisor => write!(f, "division by a non-constant"),
            ParseErrorKind::NotAPolynomial => write!(f, "differentials are not allowed here"),
            ParseErrorKind::MixedDegree { left, right } => {
                write!(f, "cannot add forms of degree {left} and {right}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at byte {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub fn new(offset: usize, kind: ParseErrorKind) -> Self {
        ParseError { offset, kind }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
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

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(n) => format!("number {n}"),
            Tok::Ident(s) => format!("identifier {s:?}"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("ascii digits");
                out.push((start, Tok::Num(n)));
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
            }
            b'+' | b'-' | b'*' | b'/' | b'^' | b'(' | b')' => {
                let t = match c {
                    b'+' => Tok::Plus,
                    b'-' => Tok::Minus,
                    b'*' => Tok::Star,
                    b'/' => Tok::Slash,
                    b'^' => Tok::Caret,
                    b'(' => Tok::LParen,
                    _ => Tok::RParen,
                };
                out.push((i, t));
                i += 1;
            }
            _ => {
                let ch = text[i..].chars().next().expect("in bounds");
                return Err(ParseError::new(i, ParseErrorKind::UnexpectedChar(ch)));
            }
        }
    }
    Ok(out)
}

/// Parsed expression tree. Every node remembers the byte offset it starts
/// at, for diagnostics during evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Number(usize, BigInt),
    Ident(usize, String),
    Neg(usize, Box<Expr>),
    Add(usize, Box<Expr>, Box<Expr>),
    Sub(usize, Box<Expr>, Box<Expr>),
    Mul(usize, Box<Expr>, Box<Expr>),
    Div(usize, Box<Expr>, Box<Expr>),
    Pow(usize, Box<Expr>, u32),
    Wedge(usize, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn offset(&self) -> usize {
        match self {
            Expr::Number(o, _)
            | Expr::Ident(o, _)
            | Expr::Neg(o, _)
            | Expr::Add(o, ..)
            | Expr::Sub(o, ..)
            | Expr::Mul(o, ..)
            | Expr::Div(o, ..)
            | Expr::Pow(o, ..)
            | Expr::Wedge(o, ..) => *o,
        }
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let start = self.offset();
        let mut lhs = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Expr::Neg(start, Box::new(self.term()?))
            }
            Some(Tok::Plus) => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    let o = self.offset();
                    self.bump();
                    lhs = Expr::Add(o, Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    let o = self.offset();
                    self.bump();
                    lhs = Expr::Sub(o, Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            let o = self.offset();
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    lhs = Expr::Mul(o, Box::new(lhs), Box::new(self.factor()?));
                }
                Some(Tok::Slash) => {
                    self.bump();
                    lhs = Expr::Div(o, Box::new(lhs), Box::new(self.factor()?));
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    lhs = Expr::Mul(o, Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let mut base = self.atom()?;
        while let Some(Tok::Caret) = self.peek() {
            let o = self.offset();
            self.bump();
            match self.peek() {
                Some(Tok::Num(n)) => {
                    let e = n.to_u32().ok_or_else(|| {
                        ParseError::new(self.offset(), ParseErrorKind::ExponentOverflow)
                    })?;
                    self.bump();
                    base = Expr::Pow(o, Box::new(base), e);
                }
                Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    let rhs = self.atom()?;
                    base = Expr::Wedge(o, Box::new(base), Box::new(rhs));
                }
                Some(t) => {
                    return Err(ParseError::new(
                        self.offset(),
                        ParseErrorKind::UnexpectedToken {
                            found: t.describe(),
                            expected: "exponent or differential",
                        },
                    ))
                }
                None => {
                    return Err(ParseError::new(
                        self.end,
                        ParseErrorKind::UnexpectedEnd { expected: "exponent" },
                    ))
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let o = self.offset();
        match self.bump() {
            Some((_, Tok::Num(n))) => Ok(Expr::Number(o, n)),
            Some((_, Tok::Ident(s))) => Ok(Expr::Ident(o, s)),
            Some((_, Tok::LParen)) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some((_, Tok::RParen)) => Ok(inner),
                    Some((at, t)) => Err(ParseError::new(
                        at,
                        ParseErrorKind::UnexpectedToken { found: t.describe(), expected: "')'" },
                    )),
                    None => Err(ParseError::new(
                        self.end,
                        ParseErrorKind::UnexpectedEnd { expected: "')'" },
                    )),
                }
            }
            Some((at, t)) => Err(ParseError::new(
                at,
                ParseErrorKind::UnexpectedToken { found: t.describe(), expected: "a term" },
            )),
            None => Err(ParseError::new(self.end, ParseErrorKind::UnexpectedEnd { expected: "a term" })),
        }
    }
}

/// Parses `text` into an expression tree.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len() };
    let e = p.expr()?;
    if let Some((at, t)) = p.toks.get(p.pos).cloned() {
        return Err(ParseError::new(
            at,
            ParseErrorKind::UnexpectedToken { found: t.describe(), expected: "operator or end of input" },
        ));
    }
    Ok(e)
}

/// Exponent-safe product.
pub(crate) fn checked_product(a: &Polynomial, b: &Polynomial, offset: usize) -> Result<Polynomial, ParseError> {
    if a.max_exponent() as u64 + b.max_exponent() as u64 > u32::MAX as u64 {
        return Err(ParseError::new(offset, ParseErrorKind::ExponentOverflow));
    }
    Ok(a * b)
}

pub(crate) fn checked_power(a: &Polynomial, e: u32, offset: usize) -> Result<Polynomial, ParseError> {
    if a.max_exponent() as u64 * e as u64 > u32::MAX as u64 {
        return Err(ParseError::new(offset, ParseErrorKind::ExponentOverflow));
    }
    Ok(a.pow(e))
}

/// The nonzero constant value of a divisor, or a diagnostic.
pub(crate) fn constant_divisor(d: &Polynomial, offset: usize) -> Result<Rational, ParseError> {
    match d.constant_value() {
        Some(c) if c.is_zero() => Err(ParseError::new(offset, ParseErrorKind::DivisionByZero)),
        Some(c) => Ok(c),
        None => Err(ParseError::new(offset, ParseErrorKind::NonConstantDivisor)),
    }
}

fn eval_poly(e: &Expr, vars: &[String]) -> Result<Polynomial, ParseError> {
    let n = vars.len();
    Ok(match e {
        Expr::Number(_, v) => Polynomial::constant(n, Rational::from_integer(v.clone())),
        Expr::Ident(o, name) => match vars.iter().position(|v| v == name) {
            Some(i) => Polynomial::var(n, i),
            None => {
                let is_differential =
                    name.strip_prefix('d').is_some_and(|rest| vars.iter().any(|v| v == rest));
                let kind = if is_differential {
                    ParseErrorKind::NotAPolynomial
                } else {
                    ParseErrorKind::UnknownVariable(name.clone())
                };
                return Err(ParseError::new(*o, kind));
            }
        },
        Expr::Neg(_, a) => -eval_poly(a, vars)?,
        Expr::Add(_, a, b) => eval_poly(a, vars)? + eval_poly(b, vars)?,
        Expr::Sub(_, a, b) => eval_poly(a, vars)? - eval_poly(b, vars)?,
        Expr::Mul(o, a, b) => checked_product(&eval_poly(a, vars)?, &eval_poly(b, vars)?, *o)?,
        Expr::Div(o, a, b) => {
            let c = constant_divisor(&eval_poly(b, vars)?, *o)?;
            eval_poly(a, vars)?.scale(&(Rational::from_integer(1.into()) / c))
        }
        Expr::Pow(o, a, k) => checked_power(&eval_poly(a, vars)?, *k, *o)?,
        Expr::Wedge(o, ..) => return Err(ParseError::new(*o, ParseErrorKind::NotAPolynomial)),
    })
}

/// Parses a polynomial in the named variables.
pub fn parse_poly(text: &str, vars: &[String]) -> Result<Polynomial, ParseError> {
    eval_poly(&parse_expr(text)?, vars)
}
