//! Ring isomorphisms `R -> S` and `R -> A`.
//!
//! `R -> S` sends `t -> s^-1 (s-1)^2` and `u -> s - s^-1`, with inverse
//! `s -> (t+2+u)/2`. `A = C[z, (z-a)^-1, (z+a)^-1]` is identified with `S`
//! through `z = 2as - a`, so `z -> a(t+u+1)`, `(z+a)^-1 -> (t+2-u)/(4a)` and
//! `(z-a)^-1 -> (t^-1 u - 1)/(4a)`.

use super::fraction::{PoleFraction, SFraction, UPoly};
use super::{RingBasis, RingElem};
use crate::error::{Error, Result};
use crate::rational::Rational;

fn image_of_basis(b: RingBasis) -> SFraction {
    let k = b.t;
    let s_minus_1 = UPoly::linear_root(&Rational::one());
    let t_part = if k >= 0 {
        SFraction::in_s(s_minus_1.pow(2 * k as u32), k as u32, 0)
    } else {
        SFraction::in_s(UPoly::x_pow((-k) as usize), 0, 2 * (-k) as u32)
    };
    if b.u {
        // s - s^-1 = (s^2 - 1)/s
        let u_img = SFraction::in_s(
            UPoly::from_coeffs(vec![-Rational::one(), Rational::zero(), Rational::one()]),
            1,
            0,
        );
        &t_part * &u_img
    } else {
        t_part
    }
}

/// The isomorphism `R -> S`.
pub fn to_s(x: &RingElem) -> SFraction {
    let mut acc = SFraction::in_s(UPoly::zero(), 0, 0);
    for (b, c) in x.terms() {
        acc = &acc + &image_of_basis(b).scale(c);
    }
    acc
}

fn half(x: RingElem) -> RingElem {
    x.scale(&Rational::new(1, 2))
}

/// The inverse isomorphism `S -> R`.
pub fn from_s(y: &SFraction) -> Result<RingElem> {
    if y.var() != 's' || *y.poles() != SFraction::s_poles() {
        return Err(Error::NotInRing(format!(
            "{y} is not an element of C[s, s^-1, (s-1)^-1]"
        )));
    }
    let two = RingElem::constant(Rational::from_int(2));
    let t = RingElem::t_pow(1);
    let u = RingElem::u();
    let phi_s = half(&(&t + &two) + &u);
    let phi_s_inv = half(&(&t + &two) - &u);
    let phi_s1_inv = half(&RingElem::t_pow_u(-1) - &RingElem::one());

    let mut num = RingElem::zero();
    for c in y.numerator().coeffs().iter().rev() {
        num = &(&num * &phi_s) + &RingElem::constant(c.clone());
    }
    let [a, b] = y.orders();
    Ok(&(&num * &phi_s_inv.pow(a)) * &phi_s1_inv.pow(b))
}

fn a_poles(a: &Rational) -> [Rational; 2] {
    [a.clone(), -a]
}

/// The isomorphism `R -> A_a`; the result has poles `[a, -a]` in the variable `z`.
pub fn to_a(x: &RingElem, a: &Rational) -> Result<PoleFraction> {
    if a.is_zero() {
        return Err(Error::InvalidArgument(
            "the A-ring parameter a must be nonzero".into(),
        ));
    }
    let y = to_s(x);
    let two_a = &Rational::from_int(2) * a;
    let inv_two_a = two_a.recip().expect("a != 0");
    // s = (z + a)/(2a)
    let g = UPoly::from_coeffs(vec![Rational::new(1, 2), inv_two_a]);
    let [p, q] = y.orders();
    let num = y.numerator().compose(&g).scale(&two_a.pow(p + q));
    Ok(PoleFraction::new('z', a_poles(a), num, [q, p]))
}

/// The inverse isomorphism `A_a -> R`.
pub fn from_a(y: &PoleFraction, a: &Rational) -> Result<RingElem> {
    if a.is_zero() {
        return Err(Error::InvalidArgument(
            "the A-ring parameter a must be nonzero".into(),
        ));
    }
    if y.var() != 'z' || *y.poles() != a_poles(a) {
        return Err(Error::NotInRing(format!("{y} is not an element of A_{a}")));
    }
    let two_a = &Rational::from_int(2) * a;
    // z = 2as - a
    let g = UPoly::from_coeffs(vec![-a, two_a.clone()]);
    let [q, p] = y.orders();
    let scale = two_a.pow(p + q).recip().expect("a != 0");
    let num = y.numerator().compose(&g).scale(&scale);
    from_s(&SFraction::in_s(num, p, q))
}
