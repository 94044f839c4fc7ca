//! Scalar literals such as `-1/16`, `sqrt(2)/4`, `3/512*sqrt(105) - 1`.

use alloc::string::{String, ToString};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::scalar::Scalar;
use crate::error::{Error, Result};

struct Cursor<'a> {
    s: &'a [u8],
    i: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.i).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn eat_word(&mut self, w: &str) -> bool {
        self.skip_ws();
        if self.s[self.i..].starts_with(w.as_bytes()) {
            self.i += w.len();
            true
        } else {
            false
        }
    }

    fn uint(&mut self) -> Option<BigUint> {
        self.skip_ws();
        let st = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if st == self.i {
            return None;
        }
        core::str::from_utf8(&self.s[st..self.i]).ok()?.parse().ok()
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(alloc::format!("{} at offset {} in {:?}", msg, self.i, String::from_utf8_lossy(self.s)))
    }
}

fn term(c: &mut Cursor<'_>, neg: bool) -> Result<Scalar> {
    let mut q = BigRational::one();
    let mut rad = BigUint::one();
    let mut saw = false;
    if let Some(n) = c.uint() {
        q = BigRational::from_integer(BigInt::from(n));
        saw = true;
        if c.eat(b'/') {
            let d = c.uint().ok_or_else(|| c.err("expected denominator"))?;
            if d.is_zero() {
                return Err(c.err("zero denominator"));
            }
            q /= BigRational::from_integer(BigInt::from(d));
        }
        c.eat(b'*');
    }
    if c.eat_word("sqrt") {
        if !c.eat(b'(') {
            return Err(c.err("expected '('"));
        }
        rad = c.uint().ok_or_else(|| c.err("expected radicand"))?;
        if rad.is_zero() {
            return Err(c.err("radicand must be positive"));
        }
        if !c.eat(b')') {
            return Err(c.err("expected ')'"));
        }
        saw = true;
        if c.eat(b'/') {
            let d = c.uint().ok_or_else(|| c.err("expected denominator"))?;
            if d.is_zero() {
                return Err(c.err("zero denominator"));
            }
            q /= BigRational::from_integer(BigInt::from(d));
        }
    }
    if !saw {
        return Err(c.err("expected a term"));
    }
    if neg {
        q = -q;
    }
    Ok(Scalar::from_surd(q, &rad))
}

pub fn parse_scalar(src: &str) -> Result<Scalar> {
    let mut c = Cursor { s: src.as_bytes(), i: 0 };
    let mut acc = Scalar::zero();
    let mut neg = c.eat(b'-');
    if !neg {
        c.eat(b'+');
    }
    loop {
        acc = &acc + &term(&mut c, neg)?;
        match c.peek() {
            None => break,
            Some(b'+') => {
                c.i += 1;
                neg = false;
            }
            Some(b'-') => {
                c.i += 1;
                neg = true;
            }
            Some(_) => return Err(c.err("unexpected character")),
        }
    }
    Ok(acc)
}

impl core::str::FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Scalar> {
        parse_scalar(s)
    }
}

pub fn render(s: &Scalar) -> String {
    s.to_string()
}
