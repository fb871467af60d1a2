//! Exact parser for polynomial and rational-function expressions.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | variable | '(' expr ')'
//! ```
//!
//! Rational literals are written `a/b` and parse as a division. Exponents are
//! nonnegative integer literals. Division is allowed only by expressions free
//! of the outer variable.

use num_bigint::BigInt;
use thiserror::Error;

use super::bipoly::{BiPoly, BiRational};
use super::poly::{Polynomial, Rational};
use super::ratfunc::RationalFunction;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = src[start..i].parse().expect("digits");
            out.push((start, Tok::Num(n)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(src[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(ParseError { position: i, message: format!("unexpected character {c:?}") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    outer: Option<&'a str>,
    inner: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { position: self.here(), message: msg.into() })
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<BiRational, ParseError> {
        let mut acc = self.term()?;
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

    fn term(&mut self) -> Result<BiRational, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                let at = self.here();
                let d = self.unary()?;
                let Some(d) = d.as_inner() else {
                    return Err(ParseError {
                        position: at,
                        message: "division by an expression containing the outer variable".into(),
                    });
                };
                acc = match acc.div_inner(&d) {
                    Some(q) => q,
                    None => return Err(ParseError { position: at, message: "division by zero".into() }),
                };
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<BiRational, ParseError> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<BiRational, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let Ok(e) = u32::try_from(n) else {
                        return self.err("exponent too large");
                    };
                    if e > 4096 {
                        return self.err("exponent too large");
                    }
                    return Ok(base.pow(e));
                }
                _ => return self.err("expected a nonnegative integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<BiRational, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(BiRational::constant(RationalFunction::constant(Rational::from_integer(n))))
            }
            Some(Tok::Ident(name)) => {
                let at = self.here();
                self.pos += 1;
                if name == self.inner {
                    Ok(BiRational::constant(RationalFunction::var()))
                } else if Some(name.as_str()) == self.outer {
                    Ok(BiRational::outer())
                } else {
                    Err(ParseError { position: at, message: format!("unknown variable {name:?}") })
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(_) => self.err("expected a number, variable or '('"),
            None => self.err("unexpected end of input"),
        }
    }
}

fn parse_general(src: &str, outer: Option<&str>, inner: &str) -> Result<BiRational, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, end: src.len(), outer, inner };
    if p.peek().is_none() {
        return p.err("empty expression");
    }
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Parses a rational function of `var`.
pub fn parse_rational_function(src: &str, var: &str) -> Result<RationalFunction, ParseError> {
    let e = parse_general(src, None, var)?;
    Ok(e.as_inner().expect("no outer variable"))
}

/// Parses a polynomial in `var`; rejects genuine denominators.
pub fn parse_polynomial(src: &str, var: &str) -> Result<Polynomial, ParseError> {
    let f = parse_rational_function(src, var)?;
    if !f.is_polynomial() {
        return Err(ParseError { position: 0, message: "expected a polynomial".into() });
    }
    Ok(f.num().scale(&f.den().leading().recip()))
}

/// Parses an expression polynomial in `outer` with coefficients in ℚ(`inner`).
pub fn parse_birational(src: &str, outer: &str, inner: &str) -> Result<BiRational, ParseError> {
    parse_general(src, Some(outer), inner)
}

/// Parses an expression polynomial in both `outer` and `inner`.
pub fn parse_bipoly(src: &str, outer: &str, inner: &str) -> Result<BiPoly, ParseError> {
    parse_birational(src, outer, inner)?
        .to_bipoly()
        .ok_or_else(|| ParseError { position: 0, message: format!("expected a polynomial in {outer} and {inner}") })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::ratio;

    #[test]
    fn literals_and_precedence() {
        let f = parse_rational_function("-t^2 + 3/4*t - (1)", "t").unwrap();
        assert_eq!(f.num(), &Polynomial::new(vec![ratio(-1, 1), ratio(3, 4), ratio(-1, 1)]));
        let g = parse_rational_function(" 1 / ( t - 1 ) ", "t").unwrap();
        assert_eq!(g.den(), &Polynomial::from_i64(&[-1, 1]));
    }

    #[test]
    fn legendre_depressed_form() {
        let p = parse_rational_function("-(t^2 - t + 1)/3", "t").unwrap();
        let q = parse_rational_function("-(2*t^3 - 3*t^2 - 3*t + 2)/27", "t").unwrap();
        assert_eq!(p.num().coeff(2), ratio(-1, 3));
        assert_eq!(q.num().coeff(0), ratio(-2, 27));
    }

    #[test]
    fn bivariate() {
        let f = parse_bipoly("x^3 - t", "x", "t").unwrap();
        assert_eq!(f.degree(), 3);
        assert_eq!(f.coeff(0), Polynomial::from_i64(&[0, -1]));
        assert!(parse_bipoly("x / t", "x", "t").is_err());
        assert!(parse_birational("t / x", "x", "t").is_err());
    }

    #[test]
    fn errors() {
        assert!(parse_rational_function("", "t").is_err());
        assert!(parse_rational_function("t^-1", "t").is_err());
        assert!(parse_rational_function("2t", "t").is_err());
        assert!(parse_rational_function("t/0", "t").is_err());
        assert!(parse_rational_function("(t", "t").is_err());
        assert!(parse_rational_function("s", "t").is_err());
        assert!(parse_rational_function("t $ 1", "t").is_err());
    }
}
