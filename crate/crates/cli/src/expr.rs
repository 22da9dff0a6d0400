//! Linear combinations and products of basis elements, e.g. `2*x[1,2] - 1/2*y[] * (xS + x[1p])`.
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary (('*')? unary)*
//! unary   := '-' unary | atom
//! atom    := integer ('/' integer)? | basis | '(' sum ')'
//! basis   := ('x' | 'y' | 'xp') ('S' | '[' names? ']')
//! ```
//! A scalar `c` stands for `c` times the unit `xS`.

use std::sync::Arc;

use descent_core::linalg::Rational;
use descent_core::{Basis, DescentAlgebra, DescentVector, Subset};
use num_traits::Zero;

use crate::error::{CliError, Result};

pub fn parse(algebra: &Arc<DescentAlgebra>, input: &str) -> Result<DescentVector> {
    let mut p = Parser { alg: algebra, src: input.as_bytes(), pos: 0 };
    let v = p.sum()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(format!("unexpected `{}`", p.src[p.pos] as char)));
    }
    Ok(v)
}

struct Parser<'a> {
    alg: &'a Arc<DescentAlgebra>,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> CliError {
        CliError::Parse { position: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
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

    fn sum(&mut self) -> Result<DescentVector> {
        let mut acc = self.product()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.product()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.product()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<DescentVector> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(c) if c == b'(' || c == b'x' || c == b'y' || c.is_ascii_digit() => {
                    acc = &acc * &self.unary()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<DescentVector> {
        if self.eat(b'-') {
            return Ok(-&self.unary()?);
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<DescentVector> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.sum()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let c = self.rational()?;
                Ok(self.alg.unit().scale(&c))
            }
            Some(b'x' | b'y') => self.basis_element(),
            Some(c) => Err(self.error(format!("unexpected `{}`", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<Rational> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(Rational::from_integer(text.parse().expect("digits parse as an integer")))
    }

    fn rational(&mut self) -> Result<Rational> {
        let num = self.integer()?;
        if !self.eat(b'/') {
            return Ok(num);
        }
        let at = self.pos;
        let den = self.integer()?;
        if den.is_zero() {
            return Err(CliError::Parse { position: at, message: "division by zero".into() });
        }
        Ok(num / den)
    }

    fn basis_element(&mut self) -> Result<DescentVector> {
        let start = self.pos;
        let basis = if self.src[self.pos..].starts_with(b"xp") {
            self.pos += 2;
            Basis::XPrime
        } else if self.src[self.pos] == b'x' {
            self.pos += 1;
            Basis::X
        } else {
            self.pos += 1;
            Basis::Y
        };
        let set = match self.src.get(self.pos) {
            Some(b'S') => {
                self.pos += 1;
                self.alg.system().full_set()
            }
            Some(b'[') => {
                self.pos += 1;
                self.index_list()?
            }
            _ => {
                return Err(CliError::Parse {
                    position: start,
                    message: format!("expected `S` or `[` after `{}`", basis.prefix()),
                })
            }
        };
        let v = match basis {
            Basis::X => self.alg.basis_x(set),
            Basis::Y => self.alg.basis_y(set),
            Basis::XPrime => self.alg.basis_xprime(set),
        };
        Ok(v.to_basis(Basis::X))
    }

    /// Comma-separated generator names up to the closing `]`.
    fn index_list(&mut self) -> Result<Subset> {
        let w = self.alg.system();
        let mut set = Subset::EMPTY;
        if self.eat(b']') {
            return Ok(set);
        }
        loop {
            self.skip_ws();
            let start = self.pos;
            while self.src.get(self.pos).is_some_and(u8::is_ascii_alphanumeric) {
                self.pos += 1;
            }
            let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            let Some(g) = w.parse_generator(name) else {
                let msg = if name.is_empty() {
                    "expected a generator name".to_string()
                } else {
                    format!("`{name}` is not a generator of {}", w.label())
                };
                return Err(CliError::Parse { position: start, message: msg });
            };
            if set.contains(g) {
                return Err(CliError::Parse { position: start, message: format!("generator `{name}` repeated") });
            }
            set.insert(g);
            if self.eat(b']') {
                return Ok(set);
            }
            if !self.eat(b',') {
                return Err(self.error("expected `,` or `]`"));
            }
        }
    }
}

/// Product of two expressions, written in `basis`.
pub fn multiply(algebra: &Arc<DescentAlgebra>, left: &str, right: &str, basis: Basis) -> Result<DescentVector> {
    let (a, b) = (parse(algebra, left)?, parse(algebra, right)?);
    Ok((&a * &b).to_basis(basis))
}
