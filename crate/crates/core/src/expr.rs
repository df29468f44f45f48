//! Text format for ring elements: sums of terms `c*w(i,j)*w(k,l)*...` with
//! optional integer (or `a/b` rational) coefficients, e.g.
//!
//! ```text
//! w(1,2)*w(3,4) - 2*w(1,3)
//! ```
//!
//! Parsing returns the normal form, so every string an [`Element`] prints
//! re-parses to an equal element. Indices outside `1..=q` are rejected.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::ring::{Element, Monomial, RingParams};
use crate::scalar::Scalar;

/// Parse an expression into normal form in the given ring.
pub fn parse_element(src: &str, params: &RingParams) -> Result<Element> {
    let mut p = Parser { src, pos: 0 };
    let words = p.expression()?;
    Element::from_words(*params, words)
}

/// Parse an expression that must name a single basis monomial up to an
/// invertible coefficient; returns the monomial and that coefficient.
/// Used for pairing-table keys, where `w(2,1)` canonicalizes to `w(1,2)`
/// with the sign pushed into the stored value.
pub fn parse_monomial_key(src: &str, params: &RingParams) -> Result<(Monomial, Scalar)> {
    let e = parse_element(src, params)?;
    let mut terms = e.terms();
    match (terms.next(), terms.next()) {
        (Some((m, c)), None) => Ok((m.clone(), c.clone())),
        _ => Err(Error::NotMonomial(src.trim().to_string())),
    }
}

type Word = Vec<(usize, usize)>;

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self
            .src
            .as_bytes()
            .get(self.pos)
            .is_some_and(u8::is_ascii_whitespace)
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.as_bytes().get(self.pos).copied()
    }

    fn eat(&mut self, ch: u8) -> Result<()> {
        match self.peek() {
            Some(c) if c == ch => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => self.error(format!("expected '{}', found '{}'", ch as char, c as char)),
            None => self.error(format!("expected '{}', found end of input", ch as char)),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self
            .src
            .as_bytes()
            .get(self.pos)
            .is_some_and(u8::is_ascii_digit)
        {
            self.pos += 1;
        }
        if self.pos == start {
            return self.error("expected a number");
        }
        Ok(self.src[start..self.pos]
            .parse()
            .expect("digit run parses as an integer"))
    }

    fn index(&mut self) -> Result<usize> {
        let v = self.integer()?;
        u32::try_from(&v)
            .map(|v| v as usize)
            .or_else(|_| self.error("point index too large"))
    }

    /// expression := ['+'|'-'] term { ('+'|'-') term }
    fn expression(&mut self) -> Result<Vec<(Word, Scalar)>> {
        let mut words = Vec::new();
        let mut negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            Some(_) => false,
            None => return self.error("empty expression"),
        };
        loop {
            let (pairs, coeff) = self.term()?;
            words.push((pairs, if negative { -coeff } else { coeff }));
            match self.peek() {
                None => return Ok(words),
                Some(b'+') => {
                    self.pos += 1;
                    negative = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    negative = true;
                }
                Some(c) => return self.error(format!("unexpected '{}'", c as char)),
            }
        }
    }

    /// term := factor { '*' factor }
    fn term(&mut self) -> Result<(Word, Scalar)> {
        let mut pairs = Vec::new();
        let mut coeff = Scalar::one();
        loop {
            match self.peek() {
                Some(b'w') => {
                    self.pos += 1;
                    self.eat(b'(')?;
                    let i = self.index()?;
                    self.eat(b',')?;
                    let j = self.index()?;
                    self.eat(b')')?;
                    pairs.push((i, j));
                }
                Some(c) if c.is_ascii_digit() => {
                    let num = self.integer()?;
                    // Allow a rational coefficient `a/b` so printed elements
                    // always re-parse, though the CLI only emits integers
                    // over Z.
                    if self.peek() == Some(b'/') {
                        self.pos += 1;
                        let den = self.integer()?;
                        if den == BigInt::from(0) {
                            return self.error("zero denominator");
                        }
                        coeff *= Scalar::new(num, den);
                    } else {
                        coeff *= Scalar::from(num);
                    }
                }
                _ => return self.error("expected a coefficient or w(i,j)"),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok((pairs, coeff));
            }
        }
    }
}
