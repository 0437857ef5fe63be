use std::str::FromStr;

use num_bigint::BigInt;

use super::{MultiPoly, Rational, Var};
use crate::error::{Error, Result};

/// Recursive-descent parser for the canonical polynomial text.
///
/// Grammar: `expr = term (('+'|'-') term)*`, `term = unary (('*'|'/') unary)*`,
/// `unary = '-' unary | power`, `power = atom ('^' int)?`,
/// `atom = int | 'a' | 'h' | 'x' int | '(' expr ')'`.
/// Division is allowed only by nonzero constants.
struct Parser<'s> {
    src: &'s [u8],
    pos: usize,
}

impl<'s> Parser<'s> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: 1,
            column: self.pos + 1,
            message: message.into(),
        }
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

    fn digits(&mut self) -> Option<&'s str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc += self.term()?;
            } else if self.eat(b'-') {
                acc -= self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.unary()?;
                match d.constant_value() {
                    Some(c) if c != Rational::from_integer(0.into()) => {
                        acc = acc.scale(&c.recip());
                    }
                    _ => {
                        self.pos = at;
                        return Err(self.error("division only by nonzero constants"));
                    }
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        if self.eat(b'-') {
            Ok(-self.unary()?)
        } else if self.eat(b'+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let e = self
                .digits()
                .ok_or_else(|| self.error("expected exponent"))?;
            let e: u32 = e.parse().map_err(|_| self.error("exponent too large"))?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n: BigInt = self.digits().unwrap().parse().unwrap();
                Ok(MultiPoly::constant(Rational::from_integer(n)))
            }
            Some(b'a') => {
                self.pos += 1;
                Ok(MultiPoly::var(Var::A))
            }
            Some(b'h') => {
                self.pos += 1;
                Ok(MultiPoly::var(Var::H))
            }
            Some(b'x') => {
                self.pos += 1;
                let i = self
                    .digits()
                    .ok_or_else(|| self.error("expected variable index after 'x'"))?;
                let i: u32 = i.parse().map_err(|_| self.error("variable index too large"))?;
                Ok(MultiPoly::var(Var::X(i)))
            }
            Some(c) => Err(self.error(format!("unexpected character {:?}", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

impl FromStr for MultiPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let out = p.expr()?;
        if p.peek().is_some() {
            return Err(p.error("trailing input"));
        }
        Ok(out)
    }
}
