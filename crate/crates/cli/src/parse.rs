//! Recursive descent parser for univariate polynomials in `x` with rational
//! coefficients.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | 'x' | '(' expr ')'
//! ```
//!
//! Division is only allowed by nonzero constants, which is how rational
//! coefficients such as `x^2 - 1/2` are written.

use galois_core::arith::{PolyRing, QPoly, Rationals};
use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at column {column}: {message}")]
pub struct ParseError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

struct Parser<'s> {
    chars: Vec<char>,
    pos: usize,
    ring: PolyRing<'s, Rationals>,
}

/// Parses `input` into an exact polynomial; whitespace is ignored.
pub fn parse_polynomial(input: &str) -> Result<QPoly, ParseError> {
    let mut p = Parser {
        chars: input.chars().collect(),
        pos: 0,
        ring: PolyRing::new(&Rationals),
    };
    p.skip_ws();
    if p.peek().is_none() {
        return Err(p.error("empty input"));
    }
    let f = p.expr()?;
    p.skip_ws();
    match p.peek() {
        None => Ok(f),
        Some(c) => Err(p.error(format!("unexpected '{c}'"))),
    }
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            column: self.pos + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    /// Consumes `c` after whitespace if it is next.
    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<QPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                let t = self.term()?;
                acc = self.ring.add(&acc, &t);
            } else if self.eat('-') {
                let t = self.term()?;
                acc = self.ring.sub(&acc, &t);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<QPoly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                let f = self.unary()?;
                acc = self.ring.mul(&acc, &f);
            } else if self.eat('/') {
                let at = self.pos;
                let d = self.unary()?;
                let c = match d.degree() {
                    Some(0) => d.coeffs()[0].clone(),
                    _ => {
                        return Err(ParseError {
                            column: at + 1,
                            message: "division is only allowed by a nonzero constant".into(),
                        })
                    }
                };
                acc = self.ring.scale(&(BigRational::from_integer(1.into()) / c), &acc);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<QPoly, ParseError> {
        if self.eat('-') {
            let f = self.unary()?;
            return Ok(self.ring.neg(&f));
        }
        self.power()
    }

    fn power(&mut self) -> Result<QPoly, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        self.skip_ws();
        let at = self.pos;
        let Some(e) = self.integer()? else {
            return Err(self.error("expected a non-negative integer exponent"));
        };
        let e = u32::try_from(&e)
            .ok()
            .filter(|&e| e <= MAX_EXPONENT)
            .ok_or_else(|| ParseError {
                column: at + 1,
                message: format!("exponent exceeds {MAX_EXPONENT}"),
            })?;
        Ok(self.ring.pow(&base, e))
    }

    fn atom(&mut self) -> Result<QPoly, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some('x') => {
                self.pos += 1;
                Ok(QPoly::from_ints(&[0, 1]))
            }
            Some('(') => {
                self.pos += 1;
                let f = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(f)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?.expect("digit present");
                Ok(self.ring.constant(BigRational::from_integer(n)))
            }
            Some(c) => Err(self.error(format!("unexpected '{c}'"))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    /// An unsigned integer literal; decimals are rejected because they are
    /// not exact.
    fn integer(&mut self) -> Result<Option<BigInt>, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Ok(None);
        }
        if self.peek() == Some('.') {
            return Err(self.error("decimal coefficients are not exact; write them as p/q"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok(Some(digits.parse().expect("ascii digits")))
    }
}

/// Whether the parsed polynomial is constant (including zero).
pub fn is_constant(f: &QPoly) -> bool {
    f.degree().is_none_or(|d| d == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> String {
        parse_polynomial(s).unwrap().to_string()
    }

    #[test]
    fn examples() {
        assert_eq!(p("x^2 - 2"), QPoly::from_ints(&[-2, 0, 1]).to_string());
        assert_eq!(p("x^4 - 10*x^2 + 1"), QPoly::from_ints(&[1, 0, -10, 0, 1]).to_string());
        assert_eq!(p("(x-1)*(x+1)"), QPoly::from_ints(&[-1, 0, 1]).to_string());
        assert_eq!(p("  x ^ 2-2 "), p("x^2-2"));
        assert_eq!(p("-x^2"), QPoly::from_ints(&[0, 0, -1]).to_string());
        assert_eq!(p("x^2 - 1/2"), "x^2 - 1/2");
        assert_eq!(p("(x+1)^0"), "1");
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_polynomial("x^2 + + 1").unwrap_err();
        assert_eq!(e.column, 7);
        assert_eq!(parse_polynomial("x^2 - 1.5").unwrap_err().column, 8);
        assert!(parse_polynomial("x^2 - y").is_err());
        assert!(parse_polynomial("(x + 1").is_err());
        assert!(parse_polynomial("x / x").is_err());
        assert!(parse_polynomial("x / 0").is_err());
        assert!(parse_polynomial("x^x").is_err());
        assert!(parse_polynomial("x^1000").is_err());
        assert!(parse_polynomial("").is_err());
        assert!(parse_polynomial("x)").is_err());
    }
}
