//! Text grammar for polynomials.
//!
//! ```text
//! poly     := ['-'] term (('+'|'-') term)*
//! term     := rational ('*' factor)* | factor ('*' factor)*
//! factor   := ident ('^' uint)?
//! rational := uint ('/' uint)?
//! ```
//!
//! Whitespace is insignificant. Printing a polynomial and parsing it back
//! reproduces the canonical form bit-exactly.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{Monomial, MultiPoly, Rat};
use crate::vars::VarTable;

struct Scanner<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(src: &'a str) -> Self {
        Scanner {
            src: src.as_bytes(),
            pos: 0,
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

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an unsigned integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(text.parse::<BigInt>().unwrap())
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        match self.src.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() => self.pos += 1,
            _ => return self.err("expected an identifier"),
        }
        while self
            .src
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_')
        {
            self.pos += 1;
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .to_string())
    }

    fn rational(&mut self) -> Result<Rat> {
        let n = self.uint()?;
        if self.peek() == Some(b'/') {
            self.bump();
            let d = self.uint()?;
            if d.is_zero() {
                return self.err("zero denominator");
            }
            Ok(Rat::new(n, d))
        } else {
            Ok(Rat::from_integer(n))
        }
    }

    /// factor := ident ('^' uint)? : returns (variable index, exponent)
    fn factor(&mut self, table: &VarTable) -> Result<(usize, u32)> {
        let at = self.pos;
        let name = self.ident()?;
        let idx = match table.index_of(&name) {
            Some(i) => i,
            None => {
                return Err(Error::Parse {
                    pos: at,
                    msg: format!("unknown variable `{name}`"),
                })
            }
        };
        let mut exp = 1u32;
        if self.peek() == Some(b'^') {
            self.bump();
            let e = self.uint()?;
            exp = match u32::try_from(&e) {
                Ok(v) => v,
                Err(_) => return self.err("exponent too large"),
            };
        }
        Ok((idx, exp))
    }

    fn term(&mut self, table: &Arc<VarTable>) -> Result<MultiPoly> {
        let mut coeff = Rat::from_integer(BigInt::from(1));
        let mut exps = vec![0u32; table.arity()];
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                coeff = self.rational()?;
                while self.peek() == Some(b'*') {
                    self.bump();
                    let (idx, e) = self.factor(table)?;
                    exps[idx] += e;
                }
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let (idx, e) = self.factor(table)?;
                exps[idx] += e;
                while self.peek() == Some(b'*') {
                    self.bump();
                    let (idx, e) = self.factor(table)?;
                    exps[idx] += e;
                }
            }
            _ => return self.err("expected a term"),
        }
        MultiPoly::monomial(table, Monomial::from_exponents(exps), coeff)
    }

    fn poly(&mut self, table: &Arc<VarTable>) -> Result<MultiPoly> {
        let mut negate = false;
        if self.peek() == Some(b'-') {
            self.bump();
            negate = true;
        }
        let first = self.term(table)?;
        let mut acc = if negate { first.neg_ref() } else { first };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    let t = self.term(table)?;
                    acc = acc.try_add(&t)?;
                }
                Some(b'-') => {
                    self.bump();
                    let t = self.term(table)?;
                    acc = acc.try_sub(&t)?;
                }
                None => return Ok(acc),
                Some(c) => return self.err(format!("unexpected character `{}`", c as char)),
            }
        }
    }
}

impl MultiPoly {
    /// Parse polynomial text against a fixed variable table.
    pub fn parse(src: &str, table: &Arc<VarTable>) -> Result<MultiPoly> {
        Scanner::new(src).poly(table)
    }
}
