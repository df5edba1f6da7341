//! The three-point ring `R = C[t, t^-1, u | u^2 = t^2 + 4t]` over the rationals.
//!
//! Elements are stored in the basis `{t^k, t^k u : k in Z}`; every product is
//! reduced with `u^2 -> t^2 + 4t` before it is stored, so the representation is
//! canonical and equality is structural.

mod fraction;
mod iso;
pub(crate) mod syntax;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::Error;
use crate::rational::Rational;

pub use fraction::{PoleFraction, SFraction, UPoly};
pub use iso::{from_a, from_s, to_a, to_s};

/// A basis monomial `t^t` (`u = false`) or `t^t u` (`u = true`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RingBasis {
    pub t: i64,
    pub u: bool,
}

impl RingBasis {
    pub const ONE: RingBasis = RingBasis { t: 0, u: false };

    pub fn t(k: i64) -> Self {
        RingBasis { t: k, u: false }
    }

    pub fn tu(k: i64) -> Self {
        RingBasis { t: k, u: true }
    }

    /// Eigenvalue class under `u -> -u`: 0 for `t^k`, 1 for `t^k u`.
    pub fn parity(self) -> u8 {
        self.u as u8
    }

    /// Quasi-degree doubled: `deg t^k = k`, `deg t^k u = k + 1/2`.
    pub fn twice_degree(self) -> i64 {
        2 * self.t + self.u as i64
    }
}

impl fmt::Display for RingBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.u {
            write!(f, "t^{}*u", self.t)
        } else {
            write!(f, "t^{}", self.t)
        }
    }
}

/// An element of `R`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct RingElem {
    terms: BTreeMap<RingBasis, Rational>,
}

impl RingElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(RingBasis::ONE, Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(RingBasis::ONE, c)
    }

    pub fn monomial(b: RingBasis, c: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(b, &c);
        e
    }

    /// `t^k`
    pub fn t_pow(k: i64) -> Self {
        Self::monomial(RingBasis::t(k), Rational::one())
    }

    /// `t^k u`
    pub fn t_pow_u(k: i64) -> Self {
        Self::monomial(RingBasis::tu(k), Rational::one())
    }

    pub fn u() -> Self {
        Self::t_pow_u(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, b: RingBasis) -> Rational {
        self.terms.get(&b).cloned().unwrap_or_default()
    }

    /// Terms in ascending basis order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (RingBasis, &Rational)> + '_ {
        self.terms.iter().map(|(b, c)| (*b, c))
    }

    pub fn add_term(&mut self, b: RingBasis, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&b) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&b);
                }
            }
            None => {
                self.terms.insert(b, c.clone());
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RingElem {
            terms: self.terms.iter().map(|(b, x)| (*b, x * c)).collect(),
        }
    }

    /// Multiplies two basis monomials, reducing `u^2`.
    pub fn basis_product(a: RingBasis, b: RingBasis) -> Self {
        let k = a.t + b.t;
        match (a.u, b.u) {
            (true, true) => {
                let mut e = Self::t_pow(k + 2);
                e.add_term(RingBasis::t(k + 1), &Rational::from_int(4));
                e
            }
            (ua, ub) => Self::monomial(RingBasis { t: k, u: ua || ub }, Rational::one()),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// The involution `t -> t, u -> -u`.
    pub fn conjugate(&self) -> Self {
        RingElem {
            terms: self
                .terms
                .iter()
                .map(|(b, c)| (*b, if b.u { -c } else { c.clone() }))
                .collect(),
        }
    }

    /// Which eigenspace of the involution the element lies in.
    pub fn parity(&self) -> Parity {
        let has_even = self.terms.keys().any(|b| !b.u);
        let has_odd = self.terms.keys().any(|b| b.u);
        match (has_even, has_odd) {
            (_, false) => Parity::Even,
            (false, true) => Parity::Odd,
            (true, true) => Parity::Mixed,
        }
    }
}

/// `R = R^0 + R^1`; zero counts as even.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

impl<'a> Add<&'a RingElem> for &'a RingElem {
    type Output = RingElem;
    fn add(self, rhs: &RingElem) -> RingElem {
        let mut out = self.clone();
        for (b, c) in &rhs.terms {
            out.add_term(*b, c);
        }
        out
    }
}

impl<'a> Sub<&'a RingElem> for &'a RingElem {
    type Output = RingElem;
    fn sub(self, rhs: &RingElem) -> RingElem {
        let mut out = self.clone();
        for (b, c) in &rhs.terms {
            out.add_term(*b, &-c);
        }
        out
    }
}

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        self.scale(&-Rational::one())
    }
}

impl<'a> Mul<&'a RingElem> for &'a RingElem {
    type Output = RingElem;
    fn mul(self, rhs: &RingElem) -> RingElem {
        let mut out = RingElem::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let xy = x * y;
                for (c, z) in RingElem::basis_product(*a, *b).terms {
                    out.add_term(c, &(&xy * &z));
                }
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RingElem> for RingElem {
            type Output = RingElem;
            fn $m(self, rhs: RingElem) -> RingElem {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        syntax::write_ring(f, self)
    }
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingElem({self})")
    }
}

impl FromStr for RingElem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        syntax::parse_ring(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(s: &str) -> RingElem {
        s.parse().unwrap()
    }

    #[test]
    fn addition() {
        assert_eq!(&RingElem::t_pow(1) + &RingElem::zero(), RingElem::t_pow(1));
        assert_eq!(&r("t^1 + u") + &r("t^1 - u"), r("2*t^1"));
        let x = RingElem::t_pow_u(-1);
        assert_eq!(&x + &x, r("2*t^-1*u"));
    }

    #[test]
    fn u_squared_reduces() {
        assert_eq!(&RingElem::u() * &RingElem::u(), r("t^2 + 4*t^1"));
        for (m, n) in [(0, 0), (3, -5), (-2, -1)] {
            let p = &RingElem::t_pow_u(m) * &RingElem::t_pow_u(n);
            let mut want = RingElem::t_pow(m + n + 2);
            want.add_term(RingBasis::t(m + n + 1), &Rational::from_int(4));
            assert_eq!(p, want);
        }
        let f = r("3/2*t^-1*u - 2*t^3");
        assert_eq!(&RingElem::one() * &f, f);
    }

    #[test]
    fn parity_classes() {
        assert_eq!(RingElem::t_pow(5).parity(), Parity::Even);
        assert_eq!(RingElem::t_pow_u(-2).parity(), Parity::Odd);
        assert_eq!(r("1 + u").parity(), Parity::Mixed);
        assert_eq!(RingElem::zero().parity(), Parity::Even);
        let x = r("t^2 - 3*t^-1*u");
        assert_eq!(x.conjugate(), r("t^2 + 3*t^-1*u"));
    }

    pub(crate) fn arb_elem() -> impl Strategy<Value = RingElem> {
        prop::collection::vec((-6i64..=6, any::<bool>(), -9i64..=9, 1i64..=4), 0..=6).prop_map(
            |terms| {
                let mut e = RingElem::zero();
                for (k, u, n, d) in terms {
                    e.add_term(RingBasis { t: k, u }, &Rational::new(n, d));
                }
                e
            },
        )
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_elem(), b in arb_elem(), c in arb_elem()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn canonical_storage(a in arb_elem(), b in arb_elem()) {
            let s = &a + &b;
            prop_assert!(s.terms().all(|(_, c)| !c.is_zero()));
            prop_assert_eq!(&(&s - &b), &a);
        }

        #[test]
        fn text_roundtrip(a in arb_elem()) {
            let back: RingElem = a.to_string().parse().unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
