//! Text format for polynomials.
//!
//! Variables match `[a-zA-Z][a-zA-Z0-9]*`, coefficients are integers or `p/q`
//! rationals, operators are `+ - * ^`, whitespace is insignificant and `#`
//! starts a comment running to end of line. Parse/format round-trips are
//! lossless up to term reordering.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use super::{Monomial, MonomialOrder, Polynomial, Ring};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, col: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            col,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at line {}, column {}: {}",
            self.line, self.col, self.message
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Number(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str, start_line: usize) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
            line: start_line,
            col: 1,
        }
    }

    fn bump(&mut self) -> u8 {
        let c = self.src[self.pos];
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        c
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn tokens(mut self) -> Result<Vec<(Tok, usize, usize)>, ParseError> {
        let mut out = Vec::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_whitespace() {
                self.bump();
                continue;
            }
            if c == b'#' {
                while let Some(c) = self.peek() {
                    if c == b'\n' {
                        break;
                    }
                    self.bump();
                }
                continue;
            }
            let (line, col) = (self.line, self.col);
            let tok = match c {
                b'+' => {
                    self.bump();
                    Tok::Plus
                }
                b'-' => {
                    self.bump();
                    Tok::Minus
                }
                b'*' => {
                    self.bump();
                    Tok::Star
                }
                b'^' => {
                    self.bump();
                    Tok::Caret
                }
                b'/' => {
                    self.bump();
                    Tok::Slash
                }
                b'0'..=b'9' => {
                    let start = self.pos;
                    while matches!(self.peek(), Some(b'0'..=b'9')) {
                        self.bump();
                    }
                    let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    Tok::Number(BigInt::from_str(text).unwrap())
                }
                c if c.is_ascii_alphabetic() => {
                    let start = self.pos;
                    while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric()) {
                        self.bump();
                    }
                    let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    Tok::Ident(text.to_string())
                }
                other => {
                    return Err(ParseError::new(
                        line,
                        col,
                        format!("unexpected character `{}`", other as char),
                    ))
                }
            };
            out.push((tok, line, col));
        }
        Ok(out)
    }
}

struct Parser<'a> {
    ring: &'a Ring,
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    end: (usize, usize),
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _, _)| t)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|&(_, l, c)| (l, c))
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        let (line, col) = self.here();
        ParseError::new(line, col, message)
    }

    fn parse_poly(&mut self) -> Result<Polynomial, ParseError> {
        if self.peek().is_none() {
            return Err(self.err("empty polynomial"));
        }
        let mut poly = Polynomial::zero(self.ring);
        let mut first = true;
        while self.peek().is_some() {
            let mut sign = 1i64;
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                }
                Some(Tok::Minus) => {
                    self.bump();
                    sign = -1;
                }
                _ if first => {}
                _ => return Err(self.err("expected `+` or `-` between terms")),
            }
            first = false;
            let (coeff, mono) = self.parse_term()?;
            poly.add_term(mono, coeff * Rational::from(sign));
        }
        Ok(poly)
    }

    fn parse_term(&mut self) -> Result<(Rational, Monomial), ParseError> {
        let mut coeff = Rational::one();
        let mut mono = Monomial::one(self.ring.num_vars());
        loop {
            match self.peek() {
                Some(Tok::Number(_)) => {
                    let base = self.parse_number()?;
                    let exp = self.parse_exponent()?;
                    coeff = coeff * base.pow(exp as i64).expect("nonnegative exponent");
                }
                Some(Tok::Ident(_)) => {
                    let name = match self.bump() {
                        Some(Tok::Ident(n)) => n,
                        _ => unreachable!(),
                    };
                    let var = self.ring.var_index(&name).ok_or_else(|| {
                        self.err(format!("unknown variable `{name}`"))
                    })?;
                    let exp = self.parse_exponent()?;
                    mono = mono.mul(&Monomial::var(self.ring.num_vars(), var, exp));
                }
                _ => return Err(self.err("expected a coefficient or variable")),
            }
            if matches!(self.peek(), Some(Tok::Star)) {
                self.bump();
                continue;
            }
            break;
        }
        Ok((coeff, mono))
    }

    fn parse_number(&mut self) -> Result<Rational, ParseError> {
        let num = match self.bump() {
            Some(Tok::Number(n)) => n,
            _ => return Err(self.err("expected a number")),
        };
        if matches!(self.peek(), Some(Tok::Slash)) {
            self.bump();
            let den = match self.bump() {
                Some(Tok::Number(n)) => n,
                _ => return Err(self.err("expected a denominator after `/`")),
            };
            Rational::new(num, den).map_err(|_| self.err("zero denominator"))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    /// Parses an optional `^` exponent; defaults to 1.
    fn parse_exponent(&mut self) -> Result<u32, ParseError> {
        if !matches!(self.peek(), Some(Tok::Caret)) {
            return Ok(1);
        }
        self.bump();
        match self.bump() {
            Some(Tok::Number(n)) => u32::try_from(n)
                .map_err(|_| self.err("exponent out of range")),
            _ => Err(self.err("expected an integer exponent after `^`")),
        }
    }
}

pub(super) fn parse_polynomial(ring: &Ring, src: &str) -> Result<Polynomial, ParseError> {
    parse_polynomial_at(ring, src, 1)
}

fn parse_polynomial_at(ring: &Ring, src: &str, start_line: usize) -> Result<Polynomial, ParseError> {
    let toks = Lexer::new(src, start_line).tokens()?;
    let end_line = start_line + src.lines().count().saturating_sub(1);
    let end = (end_line, src.lines().last().map_or(1, |l| l.len() + 1));
    let mut parser = Parser {
        ring,
        toks,
        pos: 0,
        end,
    };
    parser.parse_poly()
}

/// Parses one polynomial per nonblank, noncomment line.
pub fn parse_ideal_source(ring: &Ring, src: &str) -> Result<Vec<Polynomial>, ParseError> {
    let mut polys = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let line = match raw.split_once('#') {
            Some((before, _)) => before,
            None => raw,
        };
        if line.trim().is_empty() {
            continue;
        }
        polys.push(parse_polynomial_at(ring, line, i + 1)?);
    }
    Ok(polys)
}

/// Canonical text rendering: terms descending under `ord`, variables inside a
/// term in precedence order, unit coefficients elided.
pub fn format_polynomial(p: &Polynomial, ord: &MonomialOrder) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (mono, coeff)) in p.terms_desc(ord).into_iter().enumerate() {
        let neg = coeff.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mag = coeff.abs();
        let vars = format_monomial(mono, ord, p.ring());
        if vars.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&vars);
        } else {
            out.push_str(&mag.to_string());
            out.push('*');
            out.push_str(&vars);
        }
    }
    out
}

fn format_monomial(m: &Monomial, ord: &MonomialOrder, ring: &Ring) -> String {
    let mut parts = Vec::new();
    for &v in ord.precedence() {
        let e = m.exp(v);
        if e == 1 {
            parts.push(ring.vars()[v].clone());
        } else if e > 1 {
            parts.push(format!("{}^{}", ring.vars()[v], e));
        }
    }
    parts.join("*")
}
