//! Rational functions with poles at two fixed points.
//!
//! `S = C[s, s^-1, (s-1)^-1]` and `A = C[z, (z-a)^-1, (z+a)^-1]` are both
//! rings of the form `C[x, (x-p0)^-1, (x-p1)^-1]`; an element is stored as a
//! single fraction `N(x) / ((x-p0)^e0 (x-p1)^e1)` with all common factors
//! cancelled.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::rational::Rational;

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UPoly(Vec<Rational>);

impl UPoly {
    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn constant(c: Rational) -> Self {
        UPoly(vec![c]).trimmed()
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        UPoly(coeffs).trimmed()
    }

    /// `x - p`
    pub fn linear_root(p: &Rational) -> Self {
        UPoly(vec![-p, Rational::one()])
    }

    /// `x^k`
    pub fn x_pow(k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = Rational::one();
        UPoly(v)
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        UPoly(self.0.iter().map(|x| x * c).collect()).trimmed()
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = UPoly::constant(Rational::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Synthetic division by `x - p`; returns `(quotient, remainder)`.
    pub fn div_linear(&self, p: &Rational) -> (UPoly, Rational) {
        if self.0.is_empty() {
            return (UPoly::zero(), Rational::zero());
        }
        let n = self.0.len();
        let mut q = vec![Rational::zero(); n - 1];
        let mut carry = Rational::zero();
        for i in (0..n).rev() {
            let v = &self.0[i] + &(&carry * p);
            if i == 0 {
                return (UPoly(q).trimmed(), v);
            }
            q[i - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    /// `self(g(x))`
    pub fn compose(&self, g: &UPoly) -> UPoly {
        let mut acc = UPoly::zero();
        for c in self.0.iter().rev() {
            acc = &(&acc * g) + &UPoly::constant(c.clone());
        }
        acc
    }
}

impl<'a> Add<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.0.len().max(rhs.0.len());
        let z = Rational::zero();
        UPoly(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&z) + rhs.0.get(i).unwrap_or(&z))
                .collect(),
        )
        .trimmed()
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly(self.0.iter().map(|c| -c).collect())
    }
}

impl<'a> Sub<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a UPoly> for &'a UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.0.is_empty() || rhs.0.is_empty() {
            return UPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UPoly(out).trimmed()
    }
}

/// `num / ((x - poles[0])^orders[0] (x - poles[1])^orders[1])` in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PoleFraction {
    var: char,
    poles: [Rational; 2],
    num: UPoly,
    orders: [u32; 2],
}

/// An element of `S = C[s, s^-1, (s-1)^-1]`.
pub type SFraction = PoleFraction;

impl PoleFraction {
    pub fn new(var: char, poles: [Rational; 2], num: UPoly, orders: [u32; 2]) -> Self {
        assert!(poles[0] != poles[1], "poles must be distinct");
        PoleFraction {
            var,
            poles,
            num,
            orders,
        }
        .canonical()
    }

    /// `num / (s^a (s-1)^b)` in `S`.
    pub fn in_s(num: UPoly, a: u32, b: u32) -> Self {
        Self::new('s', Self::s_poles(), num, [a, b])
    }

    pub fn s_poles() -> [Rational; 2] {
        [Rational::zero(), Rational::one()]
    }

    /// The zero element of the ring with the same variable and poles.
    pub fn zero_like(&self) -> Self {
        PoleFraction {
            var: self.var,
            poles: self.poles.clone(),
            num: UPoly::zero(),
            orders: [0, 0],
        }
    }

    pub fn constant_like(&self, c: Rational) -> Self {
        Self::new(self.var, self.poles.clone(), UPoly::constant(c), [0, 0])
    }

    pub fn var(&self) -> char {
        self.var
    }

    pub fn poles(&self) -> &[Rational; 2] {
        &self.poles
    }

    pub fn numerator(&self) -> &UPoly {
        &self.num
    }

    pub fn orders(&self) -> [u32; 2] {
        self.orders
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `x - poles[i]` to the power `k`, as a fraction (`k` may be negative).
    pub fn pole_power(var: char, poles: [Rational; 2], i: usize, k: i64) -> Self {
        let lin = UPoly::linear_root(&poles[i]);
        if k >= 0 {
            Self::new(var, poles, lin.pow(k as u32), [0, 0])
        } else {
            let mut orders = [0, 0];
            orders[i] = (-k) as u32;
            Self::new(var, poles, UPoly::constant(Rational::one()), orders)
        }
    }

    fn canonical(mut self) -> Self {
        if self.num.is_zero() {
            self.orders = [0, 0];
            return self;
        }
        for i in 0..2 {
            while self.orders[i] > 0 {
                let (q, rem) = self.num.div_linear(&self.poles[i]);
                if !rem.is_zero() {
                    break;
                }
                self.num = q;
                self.orders[i] -= 1;
            }
        }
        self
    }

    fn same_ring(&self, other: &Self) {
        assert!(
            self.var == other.var && self.poles == other.poles,
            "fractions from different rings"
        );
    }

    /// Numerator rescaled to the denominator orders `target`.
    fn lifted(&self, target: [u32; 2]) -> UPoly {
        let mut n = self.num.clone();
        for (i, &want) in target.iter().enumerate() {
            let extra = want - self.orders[i];
            if extra > 0 {
                n = &n * &UPoly::linear_root(&self.poles[i]).pow(extra);
            }
        }
        n
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = self.constant_like(Rational::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.var, self.poles.clone(), self.num.scale(c), self.orders)
    }
}

impl<'a> Add<&'a PoleFraction> for &'a PoleFraction {
    type Output = PoleFraction;
    fn add(self, rhs: &PoleFraction) -> PoleFraction {
        self.same_ring(rhs);
        let target = [
            self.orders[0].max(rhs.orders[0]),
            self.orders[1].max(rhs.orders[1]),
        ];
        let num = &self.lifted(target) + &rhs.lifted(target);
        PoleFraction::new(self.var, self.poles.clone(), num, target)
    }
}

impl<'a> Sub<&'a PoleFraction> for &'a PoleFraction {
    type Output = PoleFraction;
    fn sub(self, rhs: &PoleFraction) -> PoleFraction {
        self + &rhs.scale(&-Rational::one())
    }
}

impl<'a> Mul<&'a PoleFraction> for &'a PoleFraction {
    type Output = PoleFraction;
    fn mul(self, rhs: &PoleFraction) -> PoleFraction {
        self.same_ring(rhs);
        PoleFraction::new(
            self.var,
            self.poles.clone(),
            &self.num * &rhs.num,
            [
                self.orders[0] + rhs.orders[0],
                self.orders[1] + rhs.orders[1],
            ],
        )
    }
}

fn write_poly(f: &mut fmt::Formatter<'_>, p: &UPoly, var: char) -> fmt::Result {
    let terms: Vec<(usize, &Rational)> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .rev()
        .collect();
    crate::ring::syntax::write_terms(f, terms.into_iter(), |k: &usize| match *k {
        0 => None,
        1 => Some(var.to_string()),
        k => Some(format!("{var}^{k}")),
    })
}

fn linear_factor(var: char, p: &Rational) -> String {
    if p.is_zero() {
        var.to_string()
    } else if p.is_negative() {
        format!("({var}+{})", -p)
    } else {
        format!("({var}-{p})")
    }
}

impl fmt::Display for PoleFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        write_poly(f, &self.num, self.var)?;
        write!(f, ")")?;
        let dens: Vec<String> = (0..2)
            .filter(|&i| self.orders[i] > 0)
            .map(|i| {
                let base = linear_factor(self.var, &self.poles[i]);
                if self.orders[i] == 1 {
                    base
                } else {
                    format!("{base}^{}", self.orders[i])
                }
            })
            .collect();
        if !dens.is_empty() {
            write!(f, "/({})", dens.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn s() -> SFraction {
        SFraction::in_s(UPoly::x_pow(1), 0, 0)
    }

    #[test]
    fn cancels_common_factors() {
        // (s^2 - s) / (s (s-1)) = 1
        let x = SFraction::in_s(UPoly::from_coeffs(vec![q(0), q(-1), q(1)]), 1, 1);
        assert_eq!(x, SFraction::in_s(UPoly::constant(q(1)), 0, 0));
        let y = &SFraction::pole_power('s', SFraction::s_poles(), 0, -3) * &s().pow(3);
        assert_eq!(y, s().constant_like(q(1)));
    }

    #[test]
    fn add_over_common_denominator() {
        // 1/s - 1/(s-1) = -1/(s(s-1))
        let a = SFraction::pole_power('s', SFraction::s_poles(), 0, -1);
        let b = SFraction::pole_power('s', SFraction::s_poles(), 1, -1);
        let d = &a - &b;
        assert_eq!(d, SFraction::in_s(UPoly::constant(q(-1)), 1, 1));
        assert_eq!(d.to_string(), "(-1)/(s*(s-1))");
    }

    #[test]
    fn synthetic_division() {
        let p = UPoly::from_coeffs(vec![q(-6), q(11), q(-6), q(1)]); // (x-1)(x-2)(x-3)
        let (quot, rem) = p.div_linear(&q(2));
        assert!(rem.is_zero());
        assert_eq!(quot, UPoly::from_coeffs(vec![q(3), q(-4), q(1)]));
        assert_eq!(p.div_linear(&q(0)).1, q(-6));
    }

    #[test]
    fn composition() {
        let p = UPoly::from_coeffs(vec![q(1), q(0), q(1)]); // x^2 + 1
        let g = UPoly::from_coeffs(vec![q(1), q(2)]); // 2x + 1
        assert_eq!(p.compose(&g), UPoly::from_coeffs(vec![q(2), q(4), q(4)]));
    }
}
