//! Text syntax: a `+`/`-` separated sum of terms, each a product of rational
//! coefficients and `name` or `name^k` factors, with `*` optional between factors.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::monomial::Monomial;
use super::poly::Polynomial;
use super::ring::Ring;
use crate::error::{Error, Result};

fn err<T>(column: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse { column, message: message.into() })
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn column(&self) -> usize {
        self.pos + 1
    }

    fn number(&mut self) -> BigInt {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().unwrap()
    }

    fn ident(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.s.len()
            && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_')
        {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).unwrap()
    }
}

/// Parses `text` into a canonical polynomial of `ring`.
pub fn parse_poly(ring: &Ring, text: &str) -> Result<Polynomial> {
    let field = ring.field();
    let mut cur = Cursor { s: text.as_bytes(), pos: 0 };
    if cur.peek().is_none() {
        return err(1, "empty polynomial");
    }
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        let mut sign = BigRational::one();
        match cur.peek() {
            Some(b'+') => {
                cur.pos += 1;
            }
            Some(b'-') => {
                sign = -sign;
                cur.pos += 1;
            }
            None => break,
            Some(_) if first => {}
            Some(c) => return err(cur.column(), format!("expected `+` or `-`, found `{}`", c as char)),
        }
        first = false;
        let mut coeff = sign;
        let mut exps = vec![0u16; ring.arity()];
        let mut factors = 0;
        loop {
            match cur.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let num = cur.number();
                    let mut val = BigRational::from_integer(num);
                    if cur.peek() == Some(b'/') {
                        cur.pos += 1;
                        match cur.peek() {
                            Some(c) if c.is_ascii_digit() => {}
                            _ => return err(cur.column(), "expected denominator after `/`"),
                        }
                        let col = cur.column();
                        let den = cur.number();
                        if den == BigInt::from(0) {
                            return err(col, "zero denominator");
                        }
                        val /= BigRational::from_integer(den);
                    }
                    coeff *= val;
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    let name = cur.ident();
                    let idx = ring
                        .var_index(name)
                        .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
                    let mut e: u16 = 1;
                    if cur.peek() == Some(b'^') {
                        cur.pos += 1;
                        match cur.peek() {
                            Some(c) if c.is_ascii_digit() => {}
                            _ => return err(cur.column(), "expected exponent after `^`"),
                        }
                        let col = cur.column();
                        let v = cur.number();
                        e = u16::try_from(v).or_else(|_| err(col, "exponent too large"))?;
                    }
                    exps[idx] += e;
                }
                Some(c) => return err(cur.column(), format!("unexpected `{}`", c as char)),
                None => return err(cur.column(), "unexpected end of input"),
            }
            factors += 1;
            match cur.peek() {
                Some(b'*') => {
                    cur.pos += 1;
                }
                Some(c) if c.is_ascii_alphanumeric() || c == b'_' => {}
                _ => break,
            }
        }
        debug_assert!(factors > 0);
        terms.push((field.from_rational(&coeff)?, Monomial(exps)));
    }
    Ok(Polynomial::from_terms(ring, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::polyring::{MonomialOrder, RingSpec};

    fn ring() -> Ring {
        RingSpec::plain(FieldSpec::Rationals, &["x1", "x2", "x3"], MonomialOrder::RevLex).unwrap()
    }

    #[test]
    fn two_terms() {
        let p = parse_poly(&ring(), "x1^2 - 2*x2*x3").unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.to_string(), "x1^2 - 2*x2*x3");
    }

    #[test]
    fn zero_is_empty() {
        assert!(parse_poly(&ring(), "0").unwrap().is_zero());
        assert!(parse_poly(&ring(), "x1 - x1").unwrap().is_zero());
    }

    #[test]
    fn repeated_factor_normalizes() {
        let r = ring();
        assert_eq!(parse_poly(&r, "x1*x1").unwrap(), parse_poly(&r, "x1^2").unwrap());
        assert_eq!(parse_poly(&r, "2x1 x2").unwrap(), parse_poly(&r, "2*x1*x2").unwrap());
    }

    #[test]
    fn rational_coefficients() {
        let p = parse_poly(&ring(), "3/2*x1 - 1/3").unwrap();
        assert_eq!(p.to_string(), "3/2*x1 - 1/3");
    }

    #[test]
    fn errors() {
        let r = ring();
        assert!(matches!(parse_poly(&r, "x1 + y"), Err(Error::UnknownVariable(_))));
        assert!(matches!(parse_poly(&r, "x1 +"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly(&r, "x1 ^ "), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly(&r, "x1 ) x2"), Err(Error::Parse { column: 4, .. })));
        let f3 = RingSpec::plain(FieldSpec::Prime(3), &["x1"], MonomialOrder::RevLex).unwrap();
        assert!(matches!(parse_poly(&f3, "1/3*x1"), Err(Error::CoefficientNotInField(_))));
    }
}
