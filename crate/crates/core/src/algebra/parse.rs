use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use super::{BiLaurent, BigRat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse polynomial {input:?}: {reason}")]
pub struct ParsePolyError {
    pub input: String,
    pub reason: String,
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.s[start..self.pos]).ok()?.parse().ok()
    }

    fn exponent(&mut self) -> Result<i64, String> {
        if !self.eat(b'^') {
            return Ok(1);
        }
        let neg = self.eat(b'-');
        let d = self.digits().ok_or("missing exponent")?;
        let e: i64 = d.try_into().map_err(|_| "exponent out of range")?;
        Ok(if neg { -e } else { e })
    }
}

fn term(c: &mut Cursor<'_>) -> Result<((i64, i64), BigRat), String> {
    let mut coeff = BigRat::one();
    let mut exp = (0i64, 0i64);
    if let Some(n) = c.digits() {
        let d = if c.eat(b'/') { c.digits().ok_or("missing denominator")? } else { BigInt::one() };
        if d == BigInt::from(0) {
            return Err("zero denominator".into());
        }
        coeff = BigRat::new(n, d);
        if !c.eat(b'*') {
            return Ok((exp, coeff));
        }
    }
    loop {
        match c.peek() {
            Some(b'y') => {
                c.pos += 1;
                exp.0 += c.exponent()?;
            }
            Some(b't') => {
                c.pos += 1;
                exp.1 += c.exponent()?;
            }
            _ => return Err("expected y or t".into()),
        }
        if !c.eat(b'*') {
            return Ok((exp, coeff));
        }
    }
}

/// Parses the canonical rendering (and minor whitespace variants).
pub(crate) fn parse_bilaurent(input: &str) -> Result<BiLaurent, ParsePolyError> {
    let err = |reason: String| ParsePolyError { input: input.to_string(), reason };
    let mut c = Cursor { s: input.as_bytes(), pos: 0 };
    if c.peek().is_none() {
        return Err(err("empty input".into()));
    }
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        let neg = if c.eat(b'-') {
            true
        } else if c.eat(b'+') || first {
            false
        } else {
            return Err(err(format!("unexpected character at byte {}", c.pos)));
        };
        first = false;
        let (e, k) = term(&mut c).map_err(&err)?;
        terms.push((e, if neg { -k } else { k }));
        if c.peek().is_none() {
            break;
        }
    }
    Ok(BiLaurent::from_terms(terms))
}
