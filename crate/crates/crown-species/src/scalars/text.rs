//! Text form of Puiseux elements: `(1/2)*e^(-3/4) + z12^5*e^(1/2)`.
//!
//! The parser accepts sums and products of rationals, roots of unity `zN^k`, powers of
//! `ε` written `e^(j/n)`, parenthesised subexpressions and a trailing `O(e^(p/n))`
//! precision marker. The ramification of the result is the lcm of the written
//! denominators, so `e^(2/4)` lives in `k_4`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::cyclo::CycScalar;
use super::puiseux::PuiseuxElement;
use crate::error::{Error, Result};

pub(crate) fn write_element(x: &PuiseuxElement, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let n = x.ram();
    if x.terms().is_empty() && x.prec().is_none() {
        return write!(f, "0");
    }
    let mut first = true;
    for (j, c) in x.terms() {
        let negative = c.monomial_negative() == Some(true);
        match (first, negative) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        first = false;
        if *j == 0 {
            c.fmt_abs(f)?;
            continue;
        }
        if !(c.is_one() || c.neg().is_one()) {
            c.fmt_abs(f)?;
            write!(f, "*")?;
        }
        write!(f, "e^({}/{})", j, n)?;
    }
    if let Some(p) = x.prec() {
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "O(e^({}/{}))", p, n)?;
    }
    Ok(())
}

pub fn parse_element(s: &str) -> Result<PuiseuxElement> {
    parse_element_at(s, 1, 1)
}

/// Parses with an explicit line/column origin (used by multi-line file formats).
pub fn parse_element_at(s: &str, line: usize, col: usize) -> Result<PuiseuxElement> {
    let mut p = Parser { src: s, chars: s.char_indices().collect(), pos: 0, prec: None, base: (line, col) };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(match p.prec {
        Some((num, den)) => {
            let l = v.ram().lcm(&den);
            v.embed(l).expect("lcm").truncate(num * (l / den) as i64)
        }
        None => v,
    })
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
    prec: Option<(i64, u32)>,
    base: (usize, usize),
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        let offset = self.chars.get(self.pos).map(|c| c.0).unwrap_or(self.src.len());
        let before = &self.src[..offset];
        let line = before.matches('\n').count();
        let col = before.rsplit('\n').next().map(|l| l.chars().count()).unwrap_or(0);
        let (bl, bc) = self.base;
        Error::Parse {
            line: bl + line,
            col: if line == 0 { bc + col } else { col + 1 },
            msg: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, ch: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(ch) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, ch: char) -> Result<()> {
        if self.eat(ch) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{ch}'")))
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let neg = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().map(|c| c.1).collect();
        let v: BigInt = digits.parse().map_err(|_| self.err("bad integer"))?;
        Ok(if neg { -v } else { v })
    }

    fn small_int(&mut self) -> Result<i64> {
        let v = self.int()?;
        i64::try_from(&v).map_err(|_| self.err("integer out of range"))
    }

    fn expr(&mut self) -> Result<PuiseuxElement> {
        self.skip_ws();
        let mut acc = PuiseuxElement::zero();
        let mut sign = 1;
        if self.eat('-') {
            sign = -1;
        } else {
            self.eat('+');
        }
        loop {
            if let Some(t) = self.term()? {
                acc = if sign < 0 { acc.sub(&t) } else { acc.add(&t) };
            }
            if self.eat('+') {
                sign = 1;
            } else if self.eat('-') {
                sign = -1;
            } else {
                return Ok(acc);
            }
        }
    }

    /// A product of factors; `None` for a precision marker.
    fn term(&mut self) -> Result<Option<PuiseuxElement>> {
        self.skip_ws();
        if self.peek() == Some('O') {
            self.pos += 1;
            self.expect('(')?;
            self.skip_ws();
            if self.peek() != Some('e') {
                return Err(self.err("expected e^(...) inside O(...)"));
            }
            self.pos += 1;
            let (j, n) = self.eps_exponent()?;
            self.expect(')')?;
            self.prec = Some(match self.prec {
                Some((pj, pn)) if (pj as i128) * (n as i128) < (j as i128) * (pn as i128) => (pj, pn),
                _ => (j, n),
            });
            return Ok(None);
        }
        let mut acc = self.factor()?;
        while self.eat('*') {
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(Some(acc))
    }

    fn eps_exponent(&mut self) -> Result<(i64, u32)> {
        if !self.eat('^') {
            return Ok((1, 1));
        }
        if self.eat('(') {
            let j = self.small_int()?;
            let n = if self.eat('/') { self.small_int()? } else { 1 };
            self.expect(')')?;
            if n <= 0 {
                return Err(self.err("denominator must be positive"));
            }
            Ok((j, n as u32))
        } else {
            Ok((self.small_int()?, 1))
        }
    }

    fn factor(&mut self) -> Result<PuiseuxElement> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Some('z') => {
                self.pos += 1;
                let order = self.small_int()?;
                if order <= 0 {
                    return Err(self.err("root of unity order must be positive"));
                }
                let k = if self.eat('^') { self.small_int()? } else { 1 };
                Ok(PuiseuxElement::constant(CycScalar::zeta(order as u32, k)))
            }
            Some('e') => {
                self.pos += 1;
                let (j, n) = self.eps_exponent()?;
                Ok(PuiseuxElement::eps(j, n))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.int()?;
                let den = if self.eat('/') { self.int()? } else { BigInt::one() };
                if den.is_zero() {
                    return Err(self.err("zero denominator"));
                }
                Ok(PuiseuxElement::from_rational(BigRational::new(num, den)))
            }
            Some('-') => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            _ => Err(self.err("expected a number, zN^k, e^(j/n) or '('")),
        }
    }
}
