//! Text syntax for ring elements, e.g. `3/2*t^-1*u - 2*t^3`.

use std::fmt;

use super::{RingBasis, RingElem};
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Token {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
}

pub(crate) fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => {
                i += 1;
                continue;
            }
            '+' => out.push(Token::Plus),
            '-' => out.push(Token::Minus),
            '*' => out.push(Token::Star),
            '/' => out.push(Token::Slash),
            '^' => out.push(Token::Caret),
            '(' => out.push(Token::LParen),
            ')' => out.push(Token::RParen),
            '[' => out.push(Token::LBracket),
            ']' => out.push(Token::RBracket),
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Token::Num(chars[start..i].iter().collect()));
                continue;
            }
            a if a.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
                continue;
            }
            other => {
                return Err(Error::Parse(format!(
                    "unexpected character {other:?} in {s:?}"
                )))
            }
        }
        i += 1;
    }
    Ok(out)
}

/// Recursive-descent cursor over a token list.
#[derive(Clone)]
pub(crate) struct Cursor<'a> {
    toks: &'a [Token],
    pos: usize,
    src: &'a str,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(toks: &'a [Token], src: &'a str) -> Self {
        Cursor { toks, pos: 0, src }
    }

    pub(crate) fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    pub(crate) fn next(&mut self) -> Option<&Token> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub(crate) fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at token {} in {:?}", self.pos, self.src))
    }

    pub(crate) fn expect(&mut self, t: Token) -> Result<()> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected {t:?}")))
        }
    }

    pub(crate) fn signed_int(&mut self) -> Result<i64> {
        let neg = match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                true
            }
            Some(Token::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        match self.next() {
            Some(Token::Num(n)) => {
                let v: i64 = n
                    .parse()
                    .map_err(|_| Error::Parse(format!("integer {n} out of range")))?;
                Ok(if neg { -v } else { v })
            }
            _ => Err(self.err("expected integer")),
        }
    }

    /// Unsigned `p` or `p/q`.
    pub(crate) fn rational(&mut self) -> Result<Rational> {
        let num = match self.next() {
            Some(Token::Num(n)) => n.clone(),
            _ => return Err(self.err("expected number")),
        };
        if self.peek() == Some(&Token::Slash) {
            self.pos += 1;
            match self.next() {
                Some(Token::Num(d)) => format!("{num}/{d}").parse(),
                _ => Err(self.err("expected denominator")),
            }
        } else {
            num.parse()
        }
    }

    /// `expr := [sign] term ((+|-) term)*`
    pub(crate) fn ring_expr(&mut self) -> Result<RingElem> {
        let mut acc = RingElem::zero();
        let mut sign = Rational::one();
        match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                sign = -sign;
            }
            Some(Token::Plus) => self.pos += 1,
            _ => {}
        }
        loop {
            let term = self.ring_term()?;
            acc = &acc + &term.scale(&sign);
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    sign = Rational::one();
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    sign = -Rational::one();
                }
                _ => return Ok(acc),
            }
        }
    }

    fn ring_term(&mut self) -> Result<RingElem> {
        let mut acc = self.ring_factor()?;
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            let f = self.ring_factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn ring_factor(&mut self) -> Result<RingElem> {
        match self.peek().cloned() {
            Some(Token::Num(_)) => Ok(RingElem::constant(self.rational()?)),
            Some(Token::LParen) => {
                self.pos += 1;
                let e = self.ring_expr()?;
                self.expect(Token::RParen)?;
                Ok(e)
            }
            Some(Token::Ident(name)) if name == "t" => {
                self.pos += 1;
                let k = self.exponent()?;
                Ok(RingElem::t_pow(k))
            }
            Some(Token::Ident(name)) if name == "u" => {
                self.pos += 1;
                let k = self.exponent()?;
                if k < 0 {
                    return Err(self.err("u is not invertible"));
                }
                Ok(RingElem::u().pow(k as u32))
            }
            _ => Err(self.err("expected a number, t, u or (")),
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            self.signed_int()
        } else {
            Ok(1)
        }
    }
}

pub(crate) fn parse_ring(s: &str) -> Result<RingElem> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty ring element".into()));
    }
    let mut cur = Cursor::new(&toks, s);
    let e = cur.ring_expr()?;
    if !cur.at_end() {
        return Err(cur.err("trailing input"));
    }
    Ok(e)
}

/// Writes `coeff*mono` terms joined with ` + ` / ` - `. `mono` returns `None`
/// for the unit monomial, which prints as a bare coefficient.
pub(crate) fn write_terms<'a, B: 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (B, &'a Rational)>,
    mono: impl Fn(&B) -> Option<String>,
) -> fmt::Result {
    let mut first = true;
    for (b, c) in terms {
        let neg = c.is_negative();
        let mag = c.abs();
        let body = match mono(&b) {
            None => mag.to_string(),
            Some(m) if mag.is_one() => m,
            Some(m) => format!("{mag}*{m}"),
        };
        match (first, neg) {
            (true, false) => write!(f, "{body}")?,
            (true, true) => write!(f, "-{body}")?,
            (false, false) => write!(f, " + {body}")?,
            (false, true) => write!(f, " - {body}")?,
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

pub(crate) fn write_ring(f: &mut fmt::Formatter<'_>, x: &RingElem) -> fmt::Result {
    write_terms(f, x.terms().rev(), |b: &RingBasis| match (b.t, b.u) {
        (0, false) => None,
        (0, true) => Some("u".to_string()),
        _ => Some(b.to_string()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_example() {
        let x = parse_ring("3/2*t^-1*u - 2*t^3").unwrap();
        let mut want = RingElem::zero();
        want.add_term(RingBasis::tu(-1), &Rational::new(3, 2));
        want.add_term(RingBasis::t(3), &Rational::from_int(-2));
        assert_eq!(x, want);
        assert_eq!(x.to_string(), "-2*t^3 + 3/2*t^-1*u");
    }

    #[test]
    fn products_and_parentheses() {
        assert_eq!(parse_ring("u*u").unwrap(), parse_ring("t^2 + 4*t").unwrap());
        assert!(parse_ring("(t + 2 + u)/2").is_err());
        assert_eq!(
            parse_ring("1/2*(t + 2 + u)").unwrap().to_string(),
            "1/2*t^1 + 1/2*u + 1"
        );
        assert_eq!(parse_ring("-u + t^0").unwrap().to_string(), "-u + 1");
        assert_eq!(parse_ring("0").unwrap().to_string(), "0");
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "t^", "x", "3/", "t^-1*", "u^-1", "2 3", "t % 2"] {
            assert!(parse_ring(bad).is_err(), "{bad:?} should fail");
        }
    }
}
