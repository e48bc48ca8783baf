//! Hand-rolled parser for the textual scalar grammar.
//!
//! ```text
//! scalar   := [sign] term { sign term }
//! term     := rational [ '*' symbol ] | symbol
//! rational := INT [ '/' INT ]
//! sign     := '+' | '-'
//! ```
//!
//! Parsing is exact; decimal floats are rejected. Errors carry the byte
//! position of the offending character.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

use super::{ExactScalar, IrrationalBasis, Rational};

struct Cursor<'a> {
    input: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(input: &'a str) -> Self {
        Cursor { input, pos: 0 }
    }

    fn peek(&self) -> Option<char> {
        self.input[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.bump();
        }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        if self.pos == start {
            return Err(self.err("expected an integer"));
        }
        if self.peek() == Some('.') {
            return Err(self.err("decimal floats are not accepted; use p/q rationals"));
        }
        Ok(self.input[start..self.pos]
            .parse()
            .expect("digit run parses"))
    }

    fn symbol_name(&mut self) -> Result<&'a str> {
        let start = self.pos;
        if !matches!(self.peek(), Some(c) if c.is_ascii_lowercase()) {
            return Err(self.err("expected a symbol name"));
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_lowercase() || c.is_ascii_digit()) {
            self.bump();
        }
        Ok(&self.input[start..self.pos])
    }

    fn rational(&mut self) -> Result<Rational> {
        let numer = self.integer()?;
        if self.peek() == Some('/') {
            self.bump();
            let denom_pos = self.pos;
            let denom = self.integer()?;
            if denom.is_zero() {
                return Err(Error::Parse {
                    position: denom_pos,
                    message: "zero denominator".into(),
                });
            }
            Ok(Rational::new(numer, denom))
        } else {
            Ok(Rational::from_integer(numer))
        }
    }
}

pub(super) fn parse_scalar(basis: &Arc<IrrationalBasis>, input: &str) -> Result<ExactScalar> {
    let mut cur = Cursor::new(input);
    let mut coeffs: BTreeMap<usize, Rational> = BTreeMap::new();

    cur.skip_ws();
    if cur.peek().is_none() {
        return Err(cur.err("empty scalar"));
    }

    let mut first = true;
    loop {
        cur.skip_ws();
        if cur.peek().is_none() {
            if first {
                return Err(cur.err("empty scalar"));
            }
            break;
        }

        // sign (optional on the first term)
        let negative = match cur.peek() {
            Some('+') => {
                cur.bump();
                false
            }
            Some('-') => {
                cur.bump();
                true
            }
            _ if first => false,
            _ => return Err(cur.err("expected '+' or '-' between terms")),
        };
        first = false;
        cur.skip_ws();

        // term: rational ['*' symbol] | symbol
        let (key, coeff) = match cur.peek() {
            Some(c) if c.is_ascii_digit() => {
                let q = cur.rational()?;
                cur.skip_ws();
                if cur.peek() == Some('*') {
                    cur.bump();
                    cur.skip_ws();
                    let name_pos = cur.pos;
                    let name = cur.symbol_name()?;
                    let idx = basis.index_of(name).ok_or(Error::Parse {
                        position: name_pos,
                        message: format!("unknown symbol '{name}'"),
                    })?;
                    (idx + 1, q)
                } else {
                    (0, q)
                }
            }
            Some(c) if c.is_ascii_lowercase() => {
                let name_pos = cur.pos;
                let name = cur.symbol_name()?;
                let idx = basis.index_of(name).ok_or(Error::Parse {
                    position: name_pos,
                    message: format!("unknown symbol '{name}'"),
                })?;
                (idx + 1, Rational::from_integer(BigInt::from(1)))
            }
            Some('.') => return Err(cur.err("decimal floats are not accepted; use p/q rationals")),
            _ => return Err(cur.err("expected a rational or a symbol")),
        };

        let coeff = if negative { -coeff } else { coeff };
        *coeffs.entry(key).or_insert_with(Rational::zero) += coeff;
    }

    Ok(ExactScalar::from_map(Arc::clone(basis), coeffs))
}

#[cfg(test)]
mod tests {
    use super::super::{ExactScalar, IrrationalBasis};
    use crate::error::Error;

    #[test]
    fn parses_the_documented_example() {
        let b = IrrationalBasis::sqrt_primes(2);
        let x = ExactScalar::parse(&b, "3/2*sqrt2-1").unwrap();
        assert_eq!(x.to_string(), "3/2*sqrt2-1");
    }

    #[test]
    fn roundtrips_via_display() {
        let b = IrrationalBasis::sqrt_primes(3);
        for s in [
            "0",
            "-1",
            "7/3",
            "sqrt2",
            "-sqrt3+2",
            "5*sqrt5-1/2*sqrt2+4/7",
        ] {
            let x = ExactScalar::parse(&b, s).unwrap();
            let y = ExactScalar::parse(&b, &x.to_string()).unwrap();
            assert_eq!(x, y, "inputs {s}");
        }
    }

    #[test]
    fn accumulates_repeated_terms() {
        let b = IrrationalBasis::sqrt_primes(2);
        let x = ExactScalar::parse(&b, "sqrt2+sqrt2-1+1").unwrap();
        assert_eq!(x.to_string(), "2*sqrt2");
    }

    #[test]
    fn rejects_floats_with_position() {
        let b = IrrationalBasis::sqrt_primes(2);
        match ExactScalar::parse(&b, "1.5") {
            Err(Error::Parse { position, message }) => {
                assert_eq!(position, 1);
                assert!(message.contains("decimal floats"));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_unknown_symbol_and_zero_denominator() {
        let b = IrrationalBasis::sqrt_primes(2);
        assert!(matches!(
            ExactScalar::parse(&b, "2*sqrt7"),
            Err(Error::Parse { position: 2, .. })
        ));
        assert!(matches!(
            ExactScalar::parse(&b, "1/0"),
            Err(Error::Parse { position: 2, .. })
        ));
        assert!(matches!(
            ExactScalar::parse(&b, ""),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            ExactScalar::parse(&b, "2*3"),
            Err(Error::Parse { .. })
        ));
    }
}
