//! The universal central extension `g^ = (sl2 (x) R) + C w0 + C w1`.
//!
//! The Lie part is stored sparsely over `{e, f, h} x {t^k, t^k u}`; the
//! central part as a [`CentralPair`]. The bracket is Kassel's
//! `[x (x) f, y (x) g] = [x, y] (x) fg + (x, y) class(f dg)` with the trace
//! form `(e, f) = 1`, `(h, h) = 2`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kahler::{pairing, CentralPair};
use crate::rational::Rational;
use crate::ring::syntax::{tokenize, write_terms, Cursor, Token};
use crate::ring::{RingBasis, RingElem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sl2Basis {
    E,
    F,
    H,
}

impl Sl2Basis {
    pub const ALL: [Sl2Basis; 3] = [Sl2Basis::E, Sl2Basis::F, Sl2Basis::H];

    /// `[a, b]` as a (basis, coefficient) list.
    pub fn bracket(a: Sl2Basis, b: Sl2Basis) -> Option<(Sl2Basis, i64)> {
        use Sl2Basis::*;
        match (a, b) {
            (H, E) => Some((E, 2)),
            (E, H) => Some((E, -2)),
            (H, F) => Some((F, -2)),
            (F, H) => Some((F, 2)),
            (E, F) => Some((H, 1)),
            (F, E) => Some((H, -1)),
            _ => None,
        }
    }

    /// Trace form of the defining representation.
    pub fn form(a: Sl2Basis, b: Sl2Basis) -> i64 {
        use Sl2Basis::*;
        match (a, b) {
            (E, F) | (F, E) => 1,
            (H, H) => 2,
            _ => 0,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sl2Basis::E => "e",
            Sl2Basis::F => "f",
            Sl2Basis::H => "h",
        }
    }
}

/// The generator symbols `e_n, e1_n, f_n, f1_n, h_n, h1_n, w0, w1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Generator {
    #[serde(rename = "e")]
    E,
    #[serde(rename = "e1")]
    E1,
    #[serde(rename = "f")]
    F,
    #[serde(rename = "f1")]
    F1,
    #[serde(rename = "h")]
    H,
    #[serde(rename = "h1")]
    H1,
    #[serde(rename = "w0")]
    W0,
    #[serde(rename = "w1")]
    W1,
}

impl Generator {
    /// The six current generators (everything except the central ones).
    pub const CURRENTS: [Generator; 6] = [
        Generator::E,
        Generator::E1,
        Generator::F,
        Generator::F1,
        Generator::H,
        Generator::H1,
    ];

    pub const ALL: [Generator; 8] = [
        Generator::E,
        Generator::E1,
        Generator::F,
        Generator::F1,
        Generator::H,
        Generator::H1,
        Generator::W0,
        Generator::W1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Generator::E => "e",
            Generator::E1 => "e1",
            Generator::F => "f",
            Generator::F1 => "f1",
            Generator::H => "h",
            Generator::H1 => "h1",
            Generator::W0 => "w0",
            Generator::W1 => "w1",
        }
    }

    /// The `sl2` part and whether the ring factor carries `u`.
    pub fn split(self) -> Option<(Sl2Basis, bool)> {
        match self {
            Generator::E => Some((Sl2Basis::E, false)),
            Generator::E1 => Some((Sl2Basis::E, true)),
            Generator::F => Some((Sl2Basis::F, false)),
            Generator::F1 => Some((Sl2Basis::F, true)),
            Generator::H => Some((Sl2Basis::H, false)),
            Generator::H1 => Some((Sl2Basis::H, true)),
            Generator::W0 | Generator::W1 => None,
        }
    }

    pub fn from_parts(x: Sl2Basis, odd: bool) -> Generator {
        match (x, odd) {
            (Sl2Basis::E, false) => Generator::E,
            (Sl2Basis::E, true) => Generator::E1,
            (Sl2Basis::F, false) => Generator::F,
            (Sl2Basis::F, true) => Generator::F1,
            (Sl2Basis::H, false) => Generator::H,
            (Sl2Basis::H, true) => Generator::H1,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Generator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Generator::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown generator {s:?}")))
    }
}

/// An element of `g^`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct CurrentElem {
    terms: BTreeMap<(Sl2Basis, RingBasis), Rational>,
    pub central: CentralPair,
}

impl CurrentElem {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `x (x) b`
    pub fn basis(x: Sl2Basis, b: RingBasis) -> Self {
        let mut e = Self::zero();
        e.add_term(x, b, &Rational::one());
        e
    }

    /// `x (x) f` for an arbitrary ring element.
    pub fn tensor(x: Sl2Basis, f: &RingElem) -> Self {
        let mut e = Self::zero();
        for (b, c) in f.terms() {
            e.add_term(x, b, c);
        }
        e
    }

    pub fn central(c0: Rational, c1: Rational) -> Self {
        CurrentElem {
            terms: BTreeMap::new(),
            central: CentralPair::new(c0, c1),
        }
    }

    /// The generator `g_m` (mode index ignored for `w0`, `w1`).
    pub fn generator(g: Generator, m: i64) -> Self {
        match g.split() {
            Some((x, odd)) => Self::basis(x, RingBasis { t: m, u: odd }),
            None if g == Generator::W0 => Self::central(Rational::one(), Rational::zero()),
            None => Self::central(Rational::zero(), Rational::one()),
        }
    }

    pub fn add_term(&mut self, x: Sl2Basis, b: RingBasis, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let key = (x, b);
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Sl2Basis, RingBasis, &Rational)> + '_ {
        self.terms.iter().map(|((x, b), c)| (*x, *b, c))
    }

    pub fn lie_len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.central.is_zero()
    }

    pub fn coeff(&self, x: Sl2Basis, b: RingBasis) -> Rational {
        self.terms.get(&(x, b)).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (x, b, v) in self.terms() {
            out.add_term(x, b, &(v * c));
        }
        out.central = self.central.scale(c);
        out
    }

    /// Lie part with the central coordinates dropped.
    pub fn lie_part(&self) -> Self {
        CurrentElem {
            terms: self.terms.clone(),
            central: CentralPair::zero(),
        }
    }
}

impl<'a> Add<&'a CurrentElem> for &'a CurrentElem {
    type Output = CurrentElem;
    fn add(self, rhs: &CurrentElem) -> CurrentElem {
        let mut out = self.clone();
        for (x, b, c) in rhs.terms() {
            out.add_term(x, b, c);
        }
        out.central = &out.central + &rhs.central;
        out
    }
}

impl Neg for &CurrentElem {
    type Output = CurrentElem;
    fn neg(self) -> CurrentElem {
        self.scale(&-Rational::one())
    }
}

impl<'a> Sub<&'a CurrentElem> for &'a CurrentElem {
    type Output = CurrentElem;
    fn sub(self, rhs: &CurrentElem) -> CurrentElem {
        self + &(-rhs)
    }
}

/// Kassel's bracket on `g^`.
pub fn bracket(x: &CurrentElem, y: &CurrentElem) -> CurrentElem {
    let mut out = CurrentElem::zero();
    for (a, ba, ca) in x.terms() {
        for (b, bb, cb) in y.terms() {
            let coef = ca * cb;
            if let Some((c, s)) = Sl2Basis::bracket(a, b) {
                let sc = &coef * &Rational::from_int(s);
                for (rb, rc) in RingElem::basis_product(ba, bb).terms() {
                    out.add_term(c, rb, &(&sc * rc));
                }
            }
            let form = Sl2Basis::form(a, b);
            if form != 0 {
                let class = pairing(
                    &RingElem::monomial(ba, Rational::one()),
                    &RingElem::monomial(bb, Rational::one()),
                );
                out.central = &out.central + &class.scale(&(&coef * &Rational::from_int(form)));
            }
        }
    }
    out
}

fn delta(a: i64, b: i64) -> i64 {
    (a == b) as i64
}

fn lie(terms: &[(Generator, i64, i64)]) -> CurrentElem {
    let mut out = CurrentElem::zero();
    for &(g, m, c) in terms {
        out = &out + &CurrentElem::generator(g, m).scale(&Rational::from_int(c));
    }
    out
}

fn with_central(mut x: CurrentElem, c0: i64, c1: i64) -> CurrentElem {
    x.central = &x.central + &CentralPair::new(Rational::from_int(c0), Rational::from_int(c1));
    x
}

/// The published presentation of `g^` by generators and relations, written
/// out literally. Ordered pairs not listed directly follow by antisymmetry.
pub fn relation_table_rhs(x: Generator, m: i64, y: Generator, n: i64) -> CurrentElem {
    use Generator::*;
    match (x, y) {
        (W0 | W1, _) | (_, W0 | W1) => CurrentElem::zero(),
        (E | E1, E | E1) | (F | F1, F | F1) => CurrentElem::zero(),
        (H, H) => CurrentElem::central(Rational::from_int(-2 * m * delta(m, -n)), Rational::zero()),
        (H1, H1) => CurrentElem::central(
            Rational::from_int(2 * ((n + 1) * delta(m + n, -2) + (4 * n + 2) * delta(m + n, -1))),
            Rational::zero(),
        ),
        (H, H1) => {
            CurrentElem::central(Rational::zero(), Rational::from_int(-2 * m * delta(m, -n)))
        }
        (E, F) => with_central(lie(&[(H, m + n, 1)]), -m * delta(m, -n), 0),
        (E, F1) | (E1, F) => with_central(lie(&[(H1, m + n, 1)]), 0, -m * delta(m, -n)),
        (E1, F1) => with_central(
            lie(&[(H, m + n + 2, 1), (H, m + n + 1, 4)]),
            (n + 1) * delta(m + n, -2) + (4 * n + 2) * delta(m + n, -1),
            0,
        ),
        (H, E) => lie(&[(E, m + n, 2)]),
        (H, E1) | (H1, E) => lie(&[(E1, m + n, 2)]),
        (H1, E1) => lie(&[(E, m + n + 2, 2), (E, m + n + 1, 8)]),
        (H, F) => lie(&[(F, m + n, -2)]),
        (H, F1) | (H1, F) => lie(&[(F1, m + n, -2)]),
        (H1, F1) => lie(&[(F, m + n + 2, -2), (F, m + n + 1, -8)]),
        // antisymmetry
        (H1, H) | (F | F1, E | E1) | (E | E1 | F | F1, H | H1) => -&relation_table_rhs(y, n, x, m),
    }
}

/// Quasi-degree of a single basis term: `deg t^k = k`, `deg t^k u = k + 1/2`.
pub fn quasi_degree(x: &CurrentElem) -> Result<Rational> {
    if x.lie_len() != 1 || !x.central.is_zero() {
        return Err(Error::InvalidArgument(format!(
            "quasi_degree needs a single basis term, got {x}"
        )));
    }
    let (_, b, _) = x.terms().next().expect("one term");
    Ok(Rational::new(b.twice_degree(), 2))
}

impl fmt::Display for CurrentElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        #[derive(Clone, Copy)]
        enum Key {
            Lie(Sl2Basis, RingBasis),
            W0,
            W1,
        }
        let mut items: Vec<(Key, &Rational)> = Vec::new();
        for x in Sl2Basis::ALL {
            let mut row: Vec<_> = self.terms().filter(|(y, _, _)| *y == x).collect();
            row.reverse();
            items.extend(row.into_iter().map(|(x, b, c)| (Key::Lie(x, b), c)));
        }
        if !self.central.c0.is_zero() {
            items.push((Key::W0, &self.central.c0));
        }
        if !self.central.c1.is_zero() {
            items.push((Key::W1, &self.central.c1));
        }
        write_terms(f, items.into_iter(), |k: &Key| {
            Some(match k {
                Key::Lie(x, b) => format!("{}[{}]", x.symbol(), b),
                Key::W0 => "w0".to_string(),
                Key::W1 => "w1".to_string(),
            })
        })
    }
}

impl fmt::Debug for CurrentElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CurrentElem({self})")
    }
}

fn parse_current_term(cur: &mut Cursor<'_>) -> Result<CurrentElem> {
    let coef = if matches!(cur.peek(), Some(Token::Num(_))) {
        let c = cur.rational()?;
        if cur.peek() != Some(&Token::Star) {
            return Err(cur.err("a coefficient must be followed by '*'"));
        }
        cur.next();
        c
    } else {
        Rational::one()
    };
    let name = match cur.next() {
        Some(Token::Ident(s)) => s.clone(),
        _ => return Err(cur.err("expected a generator name")),
    };
    let g: Generator = name.parse()?;
    let elem = match g.split() {
        None => CurrentElem::generator(g, 0),
        Some((x, odd)) => {
            cur.expect(Token::LBracket)?;
            let close = cur_find_close(cur)?;
            let elem = if close.iter().any(|t| matches!(t, Token::Ident(_))) {
                let f = cur.ring_expr()?;
                let f = if odd { &f * &RingElem::u() } else { f };
                CurrentElem::tensor(x, &f)
            } else {
                CurrentElem::generator(g, cur.signed_int()?)
            };
            cur.expect(Token::RBracket)?;
            elem
        }
    };
    Ok(elem.scale(&coef))
}

fn cur_find_close(cur: &Cursor<'_>) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut probe = cur.clone();
    loop {
        match probe.next() {
            Some(Token::RBracket) => return Ok(out),
            Some(t) => out.push(t.clone()),
            None => return Err(cur.err("unclosed '['")),
        }
    }
}

impl FromStr for CurrentElem {
    type Err = Error;

    /// Sums of terms like `2*e[t^1]`, `f[t^-1*u]`, `h1[0]` (mode index),
    /// `-3/2*w0`. A bracket holding only an integer is a mode index; anything
    /// mentioning `t` or `u` is a ring element.
    fn from_str(s: &str) -> Result<Self> {
        let toks = tokenize(s)?;
        if toks.is_empty() {
            return Err(Error::Parse("empty element".into()));
        }
        let mut cur = Cursor::new(&toks, s);
        let mut acc = CurrentElem::zero();
        let mut sign = Rational::one();
        match cur.peek() {
            Some(Token::Minus) => {
                cur.next();
                sign = -sign;
            }
            Some(Token::Plus) => {
                cur.next();
            }
            _ => {}
        }
        loop {
            let term = parse_current_term(&mut cur)?;
            acc = &acc + &term.scale(&sign);
            match cur.next() {
                None => return Ok(acc),
                Some(Token::Plus) => sign = Rational::one(),
                Some(Token::Minus) => sign = -Rational::one(),
                Some(_) => return Err(cur.err("expected '+' or '-'")),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Generator::*;

    fn c(s: &str) -> CurrentElem {
        s.parse().unwrap()
    }

    fn gen(g: Generator, m: i64) -> CurrentElem {
        CurrentElem::generator(g, m)
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(bracket(&c("e[t^1]"), &c("f[t^-1]")), c("h[t^0] - w0"));
        assert_eq!(bracket(&gen(H1, 0), &gen(E1, 0)), c("2*e[t^2] + 8*e[t^1]"));
        assert!(bracket(&gen(W0, 0), &c("3*e[t^2] + f[u]")).is_zero());
        assert_eq!(bracket(&c("h[t^2]"), &c("h[t^-2]")), c("-4*w0"));
    }

    #[test]
    fn table_examples() {
        assert_eq!(
            relation_table_rhs(E1, 0, F1, -2),
            c("h[t^0] + 4*h[t^-1] - w0")
        );
        assert_eq!(relation_table_rhs(H, 2, H1, -2), c("-4*w1"));
        for (m, n) in [(0, 0), (3, -3), (-2, 5)] {
            assert!(relation_table_rhs(E, m, E, n).is_zero());
        }
        assert_eq!(
            relation_table_rhs(F, 1, E, -1),
            -&relation_table_rhs(E, -1, F, 1)
        );
    }

    #[test]
    fn degrees() {
        assert_eq!(quasi_degree(&c("e[t^3]")).unwrap(), Rational::from_int(3));
        assert_eq!(quasi_degree(&c("h[t^-1*u]")).unwrap(), Rational::new(-1, 2));
        assert_eq!(quasi_degree(&c("f[t^0]")).unwrap(), Rational::zero());
        assert!(quasi_degree(&c("e[t^1] + f[t^1]")).is_err());
        assert!(quasi_degree(&c("w0")).is_err());
    }

    #[test]
    fn syntax() {
        assert_eq!(
            c("h1[0]"),
            CurrentElem::basis(Sl2Basis::H, RingBasis::tu(0))
        );
        assert_eq!(c("e[1]"), CurrentElem::basis(Sl2Basis::E, RingBasis::t(1)));
        assert_eq!(
            c("e1[t^1]"),
            CurrentElem::basis(Sl2Basis::E, RingBasis::tu(1))
        );
        assert_eq!(c("e[t^1 + 2*u]").to_string(), "e[t^1] + 2*e[t^0*u]");
        assert_eq!(c("-3/2*w0 + w1").to_string(), "-3/2*w0 + w1");
        assert_eq!(
            c("f[t^-1*u] - 2*h[-3]").to_string(),
            "f[t^-1*u] - 2*h[t^-3]"
        );
        for bad in ["", "e", "e[", "x[1]", "e[1] f[2]", "2 e[1]"] {
            assert!(bad.parse::<CurrentElem>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn central_elements_are_central() {
        for g in Generator::CURRENTS {
            for m in -3..=3 {
                assert!(bracket(&gen(W0, 0), &gen(g, m)).is_zero());
                assert!(bracket(&gen(g, m), &gen(W1, 0)).is_zero());
            }
        }
    }
}
