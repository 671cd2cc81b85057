//! Canonical text form of polynomials and rational functions.
//!
//! A polynomial prints in descending powers of `x`, e.g. `-1/2*x^3 + x - 4`.
//! A unit coefficient is omitted in front of `x`, zero terms are skipped and
//! the zero polynomial prints as `0`. A rational function prints as
//! `(num)/(den)`, or as the bare numerator when the denominator is `1`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{format_rational, Polynomial, RatFun, Rational};
use crate::error::{Error, Result};

pub(super) fn format_polynomial(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mag = c.abs();
        match (k, mag.is_one()) {
            (0, _) => out.push_str(&format_rational(&mag)),
            (_, true) => {}
            (_, false) => {
                out.push_str(&format_rational(&mag));
                out.push('*');
            }
        }
        match k {
            0 => {}
            1 => out.push('x'),
            _ => {
                out.push_str("x^");
                out.push_str(&k.to_string());
            }
        }
    }
    out
}

pub(super) fn format_ratfun(f: &RatFun) -> String {
    if f.den().is_one() {
        format_polynomial(f.num())
    } else {
        format!(
            "({})/({})",
            format_polynomial(f.num()),
            format_polynomial(f.den())
        )
    }
}

pub(super) fn parse_ratfun(s: &str) -> Result<RatFun> {
    let mut p = Parser {
        src: s.as_bytes(),
        pos: 0,
    };
    let f = p.ratfun()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(f)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::parse(1, self.pos + 1, msg)
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

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", b as char)))
        }
    }

    fn ratfun(&mut self) -> Result<RatFun> {
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let num = self.polynomial()?;
            self.expect(b')')?;
            if self.peek() != Some(b'/') {
                return Ok(RatFun::from_poly(num));
            }
            self.pos += 1;
            self.expect(b'(')?;
            let at = self.pos;
            let den = self.polynomial()?;
            self.expect(b')')?;
            if den.is_zero() {
                return Err(Error::parse(1, at + 1, "zero denominator"));
            }
            RatFun::new(num, den)
        } else {
            Ok(RatFun::from_poly(self.polynomial()?))
        }
    }

    fn polynomial(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero();
        let mut first = true;
        loop {
            let neg = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let (c, k) = self.term()?;
            let c = if neg { -c } else { c };
            acc = acc + Polynomial::monomial(c, k);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<(Rational, usize)> {
        match self.peek() {
            Some(b'x') => Ok((Rational::one(), self.power()?)),
            Some(b) if b.is_ascii_digit() => {
                let c = self.coefficient()?;
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    if self.peek() != Some(b'x') {
                        return Err(self.error("expected 'x' after '*'"));
                    }
                    Ok((c, self.power()?))
                } else {
                    Ok((c, 0))
                }
            }
            _ => Err(self.error("expected a term")),
        }
    }

    fn power(&mut self) -> Result<usize> {
        self.expect(b'x')?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let digits = self.digits()?;
            digits
                .parse()
                .map_err(|_| self.error("exponent out of range"))
        } else {
            Ok(1)
        }
    }

    fn coefficient(&mut self) -> Result<Rational> {
        let n: BigInt = self.digits()?.parse().expect("digits");
        // A '/' directly followed by a digit belongs to the coefficient; a
        // '/' followed by '(' separates numerator and denominator.
        let save = self.pos;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            if self.peek().is_some_and(|b| b.is_ascii_digit()) {
                let d: BigInt = self.digits()?.parse().expect("digits");
                if d.is_zero() {
                    return Err(self.error("zero denominator in coefficient"));
                }
                return Ok(Rational::new(n, d));
            }
            self.pos = save;
        }
        Ok(Rational::from_integer(n))
    }

    fn digits(&mut self) -> Result<&str> {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }
}
