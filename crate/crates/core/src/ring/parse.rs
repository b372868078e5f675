//! Ring expressions: `GF(q)`, `GF(p^k)`, `Z(n)`, `D(p)`, joined by an infix
//! `x` for direct products, e.g. `GF(8)xGF(4)` or `Z(4) x (GF(3)xD(2))`.
//! Whitespace is ignored everywhere.

use thiserror::Error;

use super::{RingError, RingSpec};
use crate::numtheory::{is_prime, prime_power};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("ring expression error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

pub fn parse_ring(input: &str) -> Result<RingSpec, ParseError> {
    let mut p = Parser { src: input, pos: 0 };
    let r = p.product()?;
    p.skip_ws();
    if p.pos != input.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(r)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn product(&mut self) -> Result<RingSpec, ParseError> {
        let mut factors = vec![self.factor()?];
        while self.eat('x') || self.eat('×') {
            factors.push(self.factor()?);
        }
        if factors.len() == 1 {
            Ok(factors.pop().unwrap())
        } else {
            let start = self.pos;
            RingSpec::product(factors).map_err(|e| ParseError {
                offset: start,
                message: e.to_string(),
            })
        }
    }

    fn factor(&mut self) -> Result<RingSpec, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.eat('(') {
            let inner = self.product()?;
            self.expect(')')?;
            return Ok(inner);
        }
        let rest = &self.src[self.pos..];
        let kind = if rest.starts_with("GF") {
            self.pos += 2;
            "GF"
        } else if rest.starts_with('Z') {
            self.pos += 1;
            "Z"
        } else if rest.starts_with('D') {
            self.pos += 1;
            "D"
        } else {
            return Err(self.error("expected GF(...), Z(...), D(...) or '('"));
        };
        self.expect('(')?;
        let a = self.number()?;
        let b = if kind == "GF" && self.eat('^') {
            Some(self.number()?)
        } else {
            None
        };
        self.expect(')')?;
        let fail = |e: RingError| ParseError {
            offset: start,
            message: e.to_string(),
        };
        match (kind, b) {
            ("GF", Some(k)) => {
                if !is_prime(a) {
                    return Err(fail(RingError::NotPrime(a)));
                }
                let k = u32::try_from(k).map_err(|_| ParseError {
                    offset: start,
                    message: "exponent too large".into(),
                })?;
                RingSpec::galois_field(a, k).map_err(fail)
            }
            ("GF", None) => {
                let (p, k) = prime_power(a)
                    .ok_or(RingError::NotPrimePower(a))
                    .map_err(fail)?;
                RingSpec::galois_field(p, k).map_err(fail)
            }
            ("Z", _) => RingSpec::integers_mod(a).map_err(fail),
            _ => RingSpec::dual_numbers(a).map_err(fail),
        }
    }

    fn number(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        self.src[start..self.pos].parse().map_err(|_| ParseError {
            offset: start,
            message: "number out of range".into(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_catalog_forms() {
        assert_eq!(parse_ring("GF(8)").unwrap().to_string(), "GF(2^3)");
        assert_eq!(parse_ring("GF(2^3)").unwrap(), parse_ring("GF(8)").unwrap());
        assert_eq!(parse_ring("GF(5)").unwrap(), RingSpec::PrimeField { p: 5 });
        assert_eq!(
            parse_ring("GF(5^1)").unwrap(),
            RingSpec::PrimeField { p: 5 }
        );
        assert_eq!(
            parse_ring(" Z( 4 ) x GF(3) ").unwrap().to_string(),
            "Z(4)xGF(3)"
        );
        assert_eq!(parse_ring("D(2)").unwrap(), RingSpec::DualNumbers { p: 2 });
        let nested = parse_ring("Z(4)x(GF(3)xD(2))").unwrap();
        assert_eq!(nested.to_string(), "Z(4)x(GF(3)xD(2))");
        assert_eq!(nested.size(), 48);
    }

    #[test]
    fn reports_offsets() {
        let e = parse_ring("GF(8)xQ(3)").unwrap_err();
        assert_eq!(e.offset, 6);
        let e = parse_ring("GF(6)").unwrap_err();
        assert_eq!(e.offset, 0);
        assert!(e.message.contains("prime power"));
        let e = parse_ring("GF(4").unwrap_err();
        assert_eq!(e.offset, 4);
        let e = parse_ring("GF(4) GF(2)").unwrap_err();
        assert_eq!(e.offset, 6);
        assert!(parse_ring("D(4)").is_err());
        assert!(parse_ring("Z(1)").is_err());
        assert!(parse_ring("").is_err());
    }
}
