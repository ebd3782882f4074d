//! Plain-text polynomial syntax: `3*Y0^2*Y3 + 31*Y1*Y2*Y3`.
//!
//! Printing emits terms in canonical order with coefficients in `[0, p)`;
//! a unit coefficient is omitted and an exponent of one is omitted. The
//! parser additionally accepts `-`, repeated factors and arbitrary-size
//! integer literals, so printed text always parses back to the same value.

use std::fmt;

use super::monomial::{Monomial, MonomialOrder};
use super::poly::MultiPoly;
use crate::error::{Error, Result};
use crate::exactalg::PrimeField;

/// `prefix0 .. prefix{n-1}`.
pub fn variable_names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

impl MultiPoly {
    pub fn to_text(&self, names: &[impl AsRef<str>]) -> String {
        assert!(names.len() >= self.nvars(), "not enough variable names");
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, &(m, c)) in self.terms().iter().enumerate() {
            if k > 0 {
                out.push_str(" + ");
            }
            let mut factors: Vec<String> = Vec::new();
            if c != 1 || m.is_one() {
                factors.push(c.to_string());
            }
            for (i, name) in names.iter().enumerate().take(self.nvars()) {
                match m.exp(i) {
                    0 => {}
                    1 => factors.push(name.as_ref().to_string()),
                    e => factors.push(format!("{}^{e}", name.as_ref())),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(&variable_names("x", self.nvars())))
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: PrimeField,
    names: &'a [String],
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at byte {} of {:?}", self.pos, String::from_utf8_lossy(self.src)))
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

    fn integer_mod_p(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        let mut acc = 0u64;
        while let Some(&d) = self.src.get(self.pos) {
            if !d.is_ascii_digit() {
                break;
            }
            acc = self.field.add(self.field.mul(acc, self.field.reduce(10)), (d - b'0') as u64 % self.field.modulus());
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected integer"));
        }
        Ok(acc)
    }

    fn small_integer(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.err("expected exponent"))
    }

    fn identifier(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        let ident = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        self.names
            .iter()
            .position(|n| n == ident)
            .ok_or_else(|| self.err(&format!("unknown variable {ident:?}")))
    }

    fn term(&mut self) -> Result<(Monomial, u64)> {
        let f = self.field;
        let mut coeff = 1u64;
        let mut exps = vec![0u32; self.names.len()];
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => coeff = f.mul(coeff, self.integer_mod_p()?),
                Some(c) if c.is_ascii_alphabetic() => {
                    let v = self.identifier()?;
                    let mut e = 1;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        e = self.small_integer()?;
                    }
                    exps[v] += e;
                }
                _ => return Err(self.err("expected factor")),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((Monomial::from_exponents(&exps), coeff))
    }
}

/// Parses a polynomial over `field` in the variables `names`.
pub fn parse_poly(text: &str, names: &[String], field: PrimeField, order: MonomialOrder) -> Result<MultiPoly> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        field,
        names,
    };
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        let mut negate = false;
        match p.peek() {
            None if !first => break,
            None => return Err(p.err("empty polynomial")),
            Some(b'+') if !first => p.pos += 1,
            Some(b'-') => {
                p.pos += 1;
                negate = true;
            }
            Some(_) if first => {}
            Some(_) => return Err(p.err("expected '+' or '-'")),
        }
        first = false;
        let (m, c) = p.term()?;
        terms.push((m, if negate { field.neg(c) } else { c }));
    }
    Ok(MultiPoly::from_terms(field, names.len(), order, terms))
}
