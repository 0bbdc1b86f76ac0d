//! Reader for polynomial expressions.
//!
//! Accepts everything [`Poly::canonical_string`] prints, plus ordinary
//! hand-written input such as `t1^2 - 2*t2*y3 + (1/2+1/3*i)*t1` or
//! `(t1 + t2)^2 / 3`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::gauss::{GaussRat, Rational};
use super::poly::{Poly, Var};
use crate::error::ParseError;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Poly { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<&'a str, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn small_uint(&mut self) -> Result<u32, ParseError> {
        let d = self.digits()?;
        match d.parse::<u32>() {
            Ok(v) => Ok(v),
            Err(_) => self.err("integer too large"),
        }
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = if self.eat(b'-') {
            -self.term()?
        } else {
            self.eat(b'+');
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                acc += &self.term()?;
            } else if self.eat(b'-') {
                acc -= &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.power()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.power()?;
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.power()?;
                match d.as_constant() {
                    Some(c) if !c.is_zero() => acc = acc.scale(&(&GaussRat::one() / &c)),
                    _ => {
                        self.pos = at;
                        return self.err("can only divide by a non-zero constant");
                    }
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.small_uint()?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected `)`");
                }
                Ok(inner)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.atom()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits()?;
                let n = BigInt::from_str(d).unwrap();
                Ok(Poly::rational(Rational::from_integer(n)))
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(Poly::constant(GaussRat::i()))
            }
            Some(c @ (b't' | b'y')) => {
                self.pos += 1;
                let k = self.small_uint()?;
                if k == 0 {
                    return self.err("variable index must be at least 1");
                }
                Ok(Poly::var(if c == b't' { Var::t(k) } else { Var::y(k) }))
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

impl FromStr for Poly {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let out = p.expr()?;
        if p.peek().is_some() {
            return p.err("trailing input");
        }
        Ok(out)
    }
}
