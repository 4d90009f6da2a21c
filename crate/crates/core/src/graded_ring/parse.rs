//! A small expression reader for polynomials.
//!
//! Grammar (juxtaposition multiplies):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'] factor | '/' number)*
//! factor := number | symbol ['^' int] | '(' expr ')' ['^' int]
//! number := digits ['/' digits]
//! ```
//!
//! Symbols are the generators of the alphabet plus `Delta`, which expands
//! to `(E4^3 - E6^2)/1728`. Every sum must be bihomogeneous.

use num_bigint::BigInt;
use num_traits::Zero;

use super::alphabet::{Alphabet, Monomial};
use super::coeff::Rational;
use super::frac::delta_in;
use super::poly::Poly;
use super::RingError;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Token>, RingError> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1
            }
            '-' | '\u{2212}' => {
                out.push(Token::Minus);
                i += 1
            }
            '*' | '\u{b7}' => {
                out.push(Token::Star);
                i += 1
            }
            '/' => {
                out.push(Token::Slash);
                i += 1
            }
            '^' => {
                out.push(Token::Caret);
                i += 1
            }
            '(' => {
                out.push(Token::LParen);
                i += 1
            }
            ')' => {
                out.push(Token::RParen);
                i += 1
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push(Token::Num(text.parse().expect("digits")));
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => {
                return Err(RingError::Parse(format!("unexpected character {other:?}")));
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    alphabet: &'static Alphabet,
    tokens: &'a [Token],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<&Token> {
        let t = self.tokens.get(self.pos);
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Poly, RingError> {
        let mut acc = Poly::zero(self.alphabet);
        let mut sign = match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                -1
            }
            Some(Token::Plus) => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 {
                acc.checked_sub(&t)?
            } else {
                acc.checked_add(&t)?
            };
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    sign = -1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, RingError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.mul(&f)?;
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    let d = self.number()?;
                    if d.is_zero() {
                        return Err(RingError::Parse("division by zero".into()));
                    }
                    acc = acc.scale(&(Rational::from_integer(1.into()) / d));
                }
                Some(Token::Num(_)) | Some(Token::Ident(_)) | Some(Token::LParen) => {
                    let f = self.factor()?;
                    acc = acc.mul(&f)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn number(&mut self) -> Result<Rational, RingError> {
        match self.next() {
            Some(Token::Num(n)) => {
                let n = n.clone();
                if let (Some(Token::Slash), Some(Token::Num(d))) =
                    (self.tokens.get(self.pos), self.tokens.get(self.pos + 1))
                {
                    let d = d.clone();
                    self.pos += 2;
                    if d.is_zero() {
                        return Err(RingError::Parse("zero denominator".into()));
                    }
                    return Ok(Rational::new(n, d));
                }
                Ok(Rational::from_integer(n))
            }
            other => Err(RingError::Parse(format!("expected number, found {other:?}"))),
        }
    }

    fn exponent(&mut self) -> Result<u32, RingError> {
        if let Some(Token::Caret) = self.peek() {
            self.pos += 1;
            match self.next() {
                Some(Token::Num(n)) => n
                    .to_string()
                    .parse()
                    .map_err(|_| RingError::Parse("exponent too large".into())),
                other => Err(RingError::Parse(format!("expected exponent, found {other:?}"))),
            }
        } else {
            Ok(1)
        }
    }

    fn factor(&mut self) -> Result<Poly, RingError> {
        match self.peek().cloned() {
            Some(Token::Num(_)) => {
                let q = self.number()?;
                Ok(Poly::constant(self.alphabet, q))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                let e = self.exponent()?;
                let base = if name == "Delta" {
                    delta_in(self.alphabet)
                } else {
                    let i = self
                        .alphabet
                        .position(&name)
                        .ok_or_else(|| RingError::Parse(format!("unknown symbol {name}")))?;
                    let m = Monomial::power(i, e as u16);
                    return Ok(Poly::monomial(self.alphabet, m, Rational::from_integer(1.into())));
                };
                Ok(base.pow_fast(e))
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.next() {
                    Some(Token::RParen) => {}
                    other => return Err(RingError::Parse(format!("expected ')', found {other:?}"))),
                }
                let e = self.exponent()?;
                Ok(inner.pow_fast(e))
            }
            other => Err(RingError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Reads a bihomogeneous polynomial written over `alphabet`.
pub fn parse_poly(alphabet: &'static Alphabet, text: &str) -> Result<Poly, RingError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Ok(Poly::zero(alphabet));
    }
    let mut p = Parser {
        alphabet,
        tokens: &tokens,
        pos: 0,
    };
    let out = p.expr()?;
    if p.pos != tokens.len() {
        return Err(RingError::Parse(format!(
            "trailing input at token {}: {:?}",
            p.pos, tokens[p.pos]
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::alphabet::{upper, AB, LOWER_AB};
    use super::super::coeff::{rat, ratio};
    use super::*;

    #[test]
    fn reads_products_and_fractions() {
        let p = parse_poly(&AB, "864 A1^3 A2 + 3825*A1 B2^2 - 18/5 E4 A1^2 A3").unwrap();
        assert_eq!(p.len(), 3);
        let m = Monomial([1, 0, 2, 0, 1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(p.coefficient(&m), Some(&ratio(-18, 5)));
    }

    #[test]
    fn delta_expands() {
        let d = parse_poly(&AB, "1728 Delta").unwrap();
        let e = parse_poly(&AB, "E4^3 - E6^2").unwrap();
        assert_eq!(d, e);
    }

    #[test]
    fn nested_parentheses_and_powers() {
        let p = parse_poly(&LOWER_AB, "-(E4 b1 - 2 E4 b1)^2 / 3").unwrap();
        let q = parse_poly(&LOWER_AB, "-1/3 E4^2 b1^2").unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn rejects_inhomogeneous_and_unknown() {
        assert!(matches!(parse_poly(&AB, "E4 + E6"), Err(RingError::Inhomogeneous { .. })));
        assert!(matches!(parse_poly(&AB, "a2"), Err(RingError::Parse(_))));
        assert!(parse_poly(&AB, "(E4").is_err());
    }

    #[test]
    fn constant() {
        let p = parse_poly(&AB, "7").unwrap();
        assert_eq!(p, Poly::constant(&AB, rat(7)));
        assert_eq!(parse_poly(&AB, "E4").unwrap(), Poly::generator(&AB, upper::E4));
    }
}
