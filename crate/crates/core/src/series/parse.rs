//! Parser for the textual series form.
//!
//! ```text
//! series := side ("/" side)?
//! side   := poly | group ("*"? group)*
//! group  := "(" poly ")" ("^" uint)?
//! poly   := ["+" | "-"] term (("+" | "-") term)*
//! term   := uint ["*"] "z" ["^" uint] | uint | "z" ["^" uint]
//! ```
//!
//! Whitespace is insignificant. Exponents are capped so hostile input
//! cannot request enormous polynomials.

use num_bigint::BigInt;

use crate::error::ParseError;

use super::{IntPolynomial, RationalSeries};

const MAX_EXPONENT: u32 = 512;
const MAX_DIGITS: usize = 512;

pub(crate) fn parse_integer(s: &str) -> Option<BigInt> {
    let t = s.trim();
    let digits = t.strip_prefix('-').unwrap_or(t);
    if digits.is_empty() || digits.len() > MAX_DIGITS || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    t.parse().ok()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T, ParseError> {
        Err(ParseError::Series { pos: self.pos, msg: msg.to_string() })
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

    fn digits(&mut self) -> Result<Option<&'a str>, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Ok(None);
        }
        if self.pos - start > MAX_DIGITS {
            return self.err("number too long");
        }
        Ok(Some(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits")))
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        let Some(d) = self.digits()? else {
            return self.err("expected exponent");
        };
        match d.parse::<u32>() {
            Ok(e) if e <= MAX_EXPONENT => Ok(e),
            _ => self.err("exponent too large"),
        }
    }

    fn term(&mut self) -> Result<IntPolynomial, ParseError> {
        let coeff = self.digits()?.map(|d| d.parse::<BigInt>().expect("digits parse"));
        let had_coeff = coeff.is_some();
        if had_coeff {
            // optional "*" only when a z follows
            let save = self.pos;
            if self.eat(b'*') && self.peek() != Some(b'z') {
                self.pos = save;
            }
        }
        if self.eat(b'z') {
            let k = if self.eat(b'^') { self.exponent()? } else { 1 };
            Ok(IntPolynomial::monomial(coeff.unwrap_or_else(|| BigInt::from(1)), k as usize))
        } else if let Some(c) = coeff {
            Ok(IntPolynomial::constant(c))
        } else {
            self.err("expected a term")
        }
    }

    fn poly(&mut self) -> Result<IntPolynomial, ParseError> {
        let mut negative = false;
        if self.eat(b'-') {
            negative = true;
        } else {
            self.eat(b'+');
        }
        let mut acc = IntPolynomial::zero();
        loop {
            let t = self.term()?;
            acc = if negative { acc.sub(&t) } else { acc.add(&t) };
            match self.peek() {
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn group(&mut self) -> Result<IntPolynomial, ParseError> {
        if !self.eat(b'(') {
            return self.err("expected '('");
        }
        let p = self.poly()?;
        if !self.eat(b')') {
            return self.err("expected ')'");
        }
        if self.eat(b'^') {
            let e = self.exponent()?;
            if p.degree().unwrap_or(0) as u64 * e as u64 > MAX_EXPONENT as u64 {
                return self.err("power too large");
            }
            return Ok(p.pow(e));
        }
        Ok(p)
    }

    fn side(&mut self) -> Result<IntPolynomial, ParseError> {
        if self.peek() != Some(b'(') {
            return self.poly();
        }
        let mut acc = self.group()?;
        loop {
            let save = self.pos;
            let star = self.eat(b'*');
            if self.peek() == Some(b'(') {
                acc = acc.mul(&self.group()?);
                if acc.degree().unwrap_or(0) > MAX_EXPONENT as usize {
                    return self.err("product too large");
                }
            } else {
                if star {
                    return self.err("expected '(' after '*'");
                }
                self.pos = save;
                return Ok(acc);
            }
        }
    }
}

/// Parses `P / Q` (or a bare `P`) into a canonical series.
pub fn parse_series(text: &str) -> Result<RationalSeries, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let num = p.side()?;
    let den = if p.eat(b'/') { p.side()? } else { IntPolynomial::one() };
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    RationalSeries::new(num, den).map_err(|e| ParseError::Series { pos: text.len(), msg: e.to_string() })
}
