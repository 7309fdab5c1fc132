//! Laurent polynomial text format, one polynomial per line:
//!
//! ```text
//! poly   := ['-'] term (('+' | '-') term)*
//! term   := coeff ('*' factor)* | factor ('*' factor)*
//! factor := 'x' INDEX ['^' SIGNED_INT]
//! coeff  := SIGNED_RATIONAL            ("p" or "p/q")
//! ```
//!
//! Whitespace is ignored. Variables are `x1 .. xn`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{LaurentPolynomial, NewtonError};
use crate::rational::Rational;

struct Scanner {
    chars: Vec<(usize, char)>,
    pos: usize,
    line: usize,
    num_vars: usize,
}

impl Scanner {
    fn new(text: &str, line: usize, num_vars: usize) -> Self {
        // Columns are 1-based character positions in the original line.
        let chars = text.chars().enumerate().filter(|(_, c)| !c.is_whitespace()).map(|(i, c)| (i + 1, c)).collect();
        Self { chars, pos: 0, line, num_vars }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn column(&self) -> usize {
        self.chars.get(self.pos).map_or_else(|| self.chars.last().map_or(1, |&(c, _)| c + 1), |&(c, _)| c)
    }

    fn error(&self, message: impl Into<String>) -> NewtonError {
        NewtonError::Syntax { line: self.line, column: self.column(), message: message.into() }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().map(|&(_, c)| c).collect())
    }

    fn signed_int(&mut self) -> Result<i64, NewtonError> {
        let negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let col = self.column();
        let d = self.digits().ok_or_else(|| self.error("expected an integer exponent"))?;
        let v: i64 = d
            .parse()
            .map_err(|_| NewtonError::Syntax { line: self.line, column: col, message: "exponent too large".into() })?;
        Ok(if negative { -v } else { v })
    }

    fn coefficient(&mut self) -> Result<Rational, NewtonError> {
        let negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let num = self.digits().ok_or_else(|| self.error("expected a coefficient or variable"))?;
        let num: BigInt = num.parse().expect("digits");
        let den: BigInt = if self.eat('/') {
            let col = self.column();
            let d = self.digits().ok_or_else(|| self.error("expected a denominator"))?;
            let d: BigInt = d.parse().expect("digits");
            if d.is_zero() {
                return Err(NewtonError::Syntax { line: self.line, column: col, message: "zero denominator".into() });
            }
            d
        } else {
            BigInt::one()
        };
        let q = Rational::new(num, den);
        Ok(if negative { -q } else { q })
    }

    fn factor(&mut self, exps: &mut [i64]) -> Result<(), NewtonError> {
        if !self.eat('x') {
            return Err(self.error("expected a variable x<index>"));
        }
        let col = self.column();
        let idx = self.digits().ok_or_else(|| self.error("expected a variable index"))?;
        let index: usize = idx.parse().unwrap_or(usize::MAX);
        if index == 0 || index > self.num_vars {
            return Err(NewtonError::VariableOutOfRange { line: self.line, column: col, index, num_vars: self.num_vars });
        }
        let e = if self.eat('^') { self.signed_int()? } else { 1 };
        let slot = &mut exps[index - 1];
        *slot = slot.checked_add(e).ok_or_else(|| self.error("exponent overflow"))?;
        Ok(())
    }

    fn term(&mut self) -> Result<(Rational, Vec<i64>), NewtonError> {
        let mut exps = vec![0i64; self.num_vars];
        let coeff = if self.peek() == Some('x') {
            self.factor(&mut exps)?;
            Rational::one()
        } else {
            self.coefficient()?
        };
        while self.eat('*') {
            self.factor(&mut exps)?;
        }
        Ok((coeff, exps))
    }

    fn polynomial(&mut self) -> Result<BTreeMap<Vec<i64>, Rational>, NewtonError> {
        if self.peek().is_none() {
            return Err(self.error("empty polynomial"));
        }
        let mut terms: BTreeMap<Vec<i64>, Rational> = BTreeMap::new();
        let mut sign = if self.eat('-') { -Rational::one() } else { Rational::one() };
        loop {
            let (c, e) = self.term()?;
            *terms.entry(e).or_insert_with(Rational::zero) += sign * c;
            match self.peek() {
                None => break,
                Some('+') => sign = Rational::one(),
                Some('-') => sign = -Rational::one(),
                Some(c) => return Err(self.error(format!("unexpected character {c:?}"))),
            }
            self.pos += 1;
        }
        Ok(terms)
    }
}

/// Parses one polynomial in `num_vars` variables; `line` only labels errors.
pub(super) fn parse_line(text: &str, line: usize, num_vars: usize) -> Result<LaurentPolynomial, NewtonError> {
    let terms = Scanner::new(text, line, num_vars).polynomial()?;
    let terms: Vec<(Rational, Vec<i64>)> =
        terms.into_iter().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (c, e)).collect();
    if terms.is_empty() {
        return Err(NewtonError::ZeroPolynomial { line });
    }
    Ok(LaurentPolynomial { num_vars, terms })
}
