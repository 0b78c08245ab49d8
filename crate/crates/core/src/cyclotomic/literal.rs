//! Parser for cyclotomic literals such as `1/2 - 3*z^5 + z`.
//!
//! ```text
//! expression ::= term (('+'|'-') term)*
//! term       ::= rational | rational '*' 'z' '^' integer | 'z' '^' integer | 'z'
//! rational   ::= integer | integer '/' positive-integer
//! ```
//!
//! `z` is ζ_N for the conductor supplied by the caller. Whitespace is
//! insignificant. A leading sign on the first term is accepted, as is the
//! shorthand `rational*z`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{CyclotomicError, CyclotomicNumber, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("at column {column}: {message}")]
pub struct LiteralError {
    /// 1-based character column in the literal.
    pub column: usize,
    pub message: String,
}

struct Cursor {
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl Cursor {
    fn new(src: &str) -> Self {
        let chars = src.chars().enumerate().filter(|(_, c)| !c.is_whitespace()).collect();
        Cursor { chars, pos: 0 }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn column(&self) -> usize {
        self.chars.get(self.pos).map_or_else(|| self.chars.last().map_or(1, |&(i, _)| i + 2), |&(i, _)| i + 1)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, LiteralError> {
        Err(LiteralError { column: self.column(), message: message.into() })
    }

    fn digits(&mut self) -> Result<BigInt, LiteralError> {
        let start = self.pos;
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.pos += 1;
        }
        if s.is_empty() {
            self.pos = start;
            return self.error("expected digits");
        }
        Ok(s.parse().expect("ascii digits"))
    }

    fn integer(&mut self) -> Result<BigInt, LiteralError> {
        let negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let v = self.digits()?;
        Ok(if negative { -v } else { v })
    }

    fn exponent(&mut self) -> Result<i64, LiteralError> {
        if !self.eat('^') {
            return Ok(1);
        }
        let col = self.column();
        let e = self.integer()?;
        i64::try_from(&e).map_err(|_| LiteralError { column: col, message: "exponent out of range".to_string() })
    }

    fn term(&mut self) -> Result<(Rational, i64), LiteralError> {
        if self.eat('z') {
            return Ok((Rational::one(), self.exponent()?));
        }
        let numer = self.integer()?;
        let denom = if self.eat('/') {
            let col = self.column();
            let d = self.digits()?;
            if d.is_zero() {
                return Err(LiteralError { column: col, message: "denominator must be positive".to_string() });
            }
            d
        } else {
            BigInt::one()
        };
        let coeff = Rational::new(numer, denom);
        if self.eat('*') {
            if !self.eat('z') {
                return self.error("expected 'z' after '*'");
            }
            return Ok((coeff, self.exponent()?));
        }
        Ok((coeff, 0))
    }
}

/// Parses a literal into an element of ℚ(ζ_conductor).
pub fn parse_literal(text: &str, conductor: u32) -> Result<CyclotomicNumber, LiteralError> {
    let mut cur = Cursor::new(text);
    if cur.peek().is_none() {
        return cur.error("empty literal");
    }
    let mut terms = Vec::new();
    let mut sign = if cur.eat('-') {
        -Rational::one()
    } else {
        cur.eat('+');
        Rational::one()
    };
    loop {
        let (c, e) = cur.term()?;
        terms.push((c * &sign, e));
        match cur.peek() {
            None => break,
            Some('+') => {
                cur.pos += 1;
                sign = Rational::one();
            }
            Some('-') => {
                cur.pos += 1;
                sign = -Rational::one();
            }
            Some(c) => return cur.error(alloc::format!("unexpected character '{c}'")),
        }
        if cur.peek().is_none() {
            return cur.error("dangling operator");
        }
    }
    CyclotomicNumber::make(conductor, &terms)
        .map_err(|e: CyclotomicError| LiteralError { column: 1, message: e.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn grammar_forms() {
        let z8 = |k| CyclotomicNumber::zeta(8, k).unwrap();
        assert_eq!(parse_literal("z", 8).unwrap(), z8(1));
        assert_eq!(parse_literal("z^3", 8).unwrap(), z8(3));
        assert_eq!(parse_literal("z^-1", 8).unwrap(), z8(7));
        assert_eq!(parse_literal("-1", 8).unwrap(), z8(4));
        assert_eq!(parse_literal(" 1 / 2 * z ^ 2 ", 8).unwrap(), z8(2).scale(&q(1, 2)));
        let mixed = parse_literal("1/2 - 3*z^5 + z", 8).unwrap();
        let expect = CyclotomicNumber::make(8, &[(q(1, 2), 0), (q(-3, 1), 5), (q(1, 1), 1)]).unwrap();
        assert_eq!(mixed, expect);
    }

    #[test]
    fn rendering_round_trips() {
        let a = CyclotomicNumber::make(12, &[(q(-7, 3), 0), (q(1, 1), 1), (q(2, 5), 3), (q(-1, 1), 2)]).unwrap();
        assert_eq!(parse_literal(&a.to_literal(), 12).unwrap(), a);
    }

    #[test]
    fn errors_carry_column() {
        assert_eq!(parse_literal("1/0", 4).unwrap_err().column, 3);
        assert_eq!(parse_literal("2*y", 4).unwrap_err().column, 3);
        assert!(parse_literal("1+", 4).is_err());
        assert!(parse_literal("", 4).is_err());
        assert!(parse_literal("z^", 4).is_err());
    }
}
