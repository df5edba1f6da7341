//! Kähler differentials of `R` modulo exact forms.
//!
//! `Omega_R / dR` is two-dimensional with basis `w0 = t^-1 dt` and
//! `w1 = t^-1 u dt`. Every one-form is stored as `a dt + b du` and reduced to
//! those two coordinates by a fixed rewriting pipeline.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::rational::Rational;
use crate::ring::{RingBasis, RingElem};

/// `dt_part * dt + du_part * du`
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OneForm {
    pub dt_part: RingElem,
    pub du_part: RingElem,
}

impl OneForm {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn dt() -> Self {
        OneForm {
            dt_part: RingElem::one(),
            du_part: RingElem::zero(),
        }
    }

    pub fn du() -> Self {
        OneForm {
            dt_part: RingElem::zero(),
            du_part: RingElem::one(),
        }
    }

    /// Left multiplication by a ring element.
    pub fn left_mul(&self, f: &RingElem) -> Self {
        OneForm {
            dt_part: f * &self.dt_part,
            du_part: f * &self.du_part,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.dt_part.is_zero() && self.du_part.is_zero()
    }
}

impl<'a> Add<&'a OneForm> for &'a OneForm {
    type Output = OneForm;
    fn add(self, rhs: &OneForm) -> OneForm {
        OneForm {
            dt_part: &self.dt_part + &rhs.dt_part,
            du_part: &self.du_part + &rhs.du_part,
        }
    }
}

impl fmt::Display for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) dt + ({}) du", self.dt_part, self.du_part)
    }
}

/// Coordinates `c0 w0 + c1 w1` of a class in `Omega_R / dR`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CentralPair {
    pub c0: Rational,
    pub c1: Rational,
}

impl CentralPair {
    pub fn new(c0: Rational, c1: Rational) -> Self {
        CentralPair { c0, c1 }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        CentralPair {
            c0: &self.c0 * c,
            c1: &self.c1 * c,
        }
    }
}

impl<'a> Add<&'a CentralPair> for &'a CentralPair {
    type Output = CentralPair;
    fn add(self, rhs: &CentralPair) -> CentralPair {
        CentralPair {
            c0: &self.c0 + &rhs.c0,
            c1: &self.c1 + &rhs.c1,
        }
    }
}

impl<'a> Sub<&'a CentralPair> for &'a CentralPair {
    type Output = CentralPair;
    fn sub(self, rhs: &CentralPair) -> CentralPair {
        CentralPair {
            c0: &self.c0 - &rhs.c0,
            c1: &self.c1 - &rhs.c1,
        }
    }
}

impl Neg for &CentralPair {
    type Output = CentralPair;
    fn neg(self) -> CentralPair {
        CentralPair {
            c0: -&self.c0,
            c1: -&self.c1,
        }
    }
}

impl fmt::Display for CentralPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c0 = {}, c1 = {}", self.c0, self.c1)
    }
}

/// The universal derivation `d : R -> Omega_R`.
pub fn differential(g: &RingElem) -> OneForm {
    let mut w = OneForm::zero();
    for (b, c) in g.terms() {
        let k = b.t;
        let kc = c * &Rational::from_int(k);
        if b.u {
            // d(t^k u) = t^k du + k t^(k-1) u dt
            w.du_part.add_term(RingBasis::t(k), c);
            w.dt_part.add_term(RingBasis::tu(k - 1), &kc);
        } else {
            w.dt_part.add_term(RingBasis::t(k - 1), &kc);
        }
    }
    w
}

/// The `w1`-coordinate of `t^k u dt`.
///
/// Driven by `(k+3) t^(k+1) u dt + (4k+6) t^k u dt = 0 mod dR`: the chain is
/// anchored at `t^-1 u dt = w1` and `t^-3 u dt = 0`.
pub fn tu_dt_class(k: i64) -> Rational {
    match k {
        k if k <= -3 => Rational::zero(),
        -2 => Rational::new(1, 2),
        -1 => Rational::one(),
        _ => {
            let mut rho = Rational::one();
            for j in -1..k {
                rho = &rho * &Rational::new(-(4 * j + 6), j + 3);
            }
            rho
        }
    }
}

/// Coordinates of the class of `w` in `Omega_R / dR`.
pub fn reduce(w: &OneForm) -> CentralPair {
    let mut dt = w.dt_part.clone();
    for (b, c) in w.du_part.terms() {
        let k = b.t;
        if b.u {
            // t^k u du = (t^(k+1) + 2 t^k) dt
            dt.add_term(RingBasis::t(k + 1), c);
            dt.add_term(RingBasis::t(k), &(c * &Rational::from_int(2)));
        } else {
            // t^k du = -k t^(k-1) u dt  mod dR
            dt.add_term(RingBasis::tu(k - 1), &(c * &Rational::from_int(-k)));
        }
    }
    let mut out = CentralPair::zero();
    for (b, c) in dt.terms() {
        if b.u {
            out.c1 += &(c * &tu_dt_class(b.t));
        } else if b.t == -1 {
            out.c0 += c;
        }
    }
    out
}

/// `reduce(f dg)`, the cocycle ingredient of the central extension.
pub fn pairing(f: &RingElem, g: &RingElem) -> CentralPair {
    reduce(&differential(g).left_mul(f))
}

/// Which pair of basis monomials a closed-form pairing refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BasisPairKind {
    /// `t^k d(t^l)`
    TT,
    /// `t^k u d(t^l u)`
    UU,
    /// `t^k d(t^l u)`
    TU,
}

impl BasisPairKind {
    pub const ALL: [BasisPairKind; 3] = [BasisPairKind::TT, BasisPairKind::UU, BasisPairKind::TU];

    pub fn label(self) -> &'static str {
        match self {
            BasisPairKind::TT => "t^k d(t^l)",
            BasisPairKind::UU => "t^k u d(t^l u)",
            BasisPairKind::TU => "t^k d(t^l u)",
        }
    }

    pub fn operands(self, k: i64, l: i64) -> (RingElem, RingElem) {
        match self {
            BasisPairKind::TT => (RingElem::t_pow(k), RingElem::t_pow(l)),
            BasisPairKind::UU => (RingElem::t_pow_u(k), RingElem::t_pow_u(l)),
            BasisPairKind::TU => (RingElem::t_pow(k), RingElem::t_pow_u(l)),
        }
    }
}

fn delta(a: i64, b: i64) -> i64 {
    (a == b) as i64
}

/// The published closed forms for basis pairings, evaluated literally:
///
/// * `t^k d t^l = -k delta(l,-k) w0`
/// * `t^k u d(t^l u) = ((l+1) delta(k+l,-2) + (4l+2) delta(k+l,-1)) w0`
/// * `t^k d(t^l u) = -k delta(k,-l) w1`
///
/// The third formula only agrees with [`pairing`] when `k = 0`, `k + l = 0` or
/// `k + l <= -2`; elsewhere `t^(k+l-1) u dt` has a nonzero `w1` class (see
/// [`tu_dt_class`]) that the formula drops.
pub fn closed_form_pairing(kind: BasisPairKind, k: i64, l: i64) -> CentralPair {
    match kind {
        BasisPairKind::TT => {
            CentralPair::new(Rational::from_int(-k * delta(l, -k)), Rational::zero())
        }
        BasisPairKind::UU => CentralPair::new(
            Rational::from_int((l + 1) * delta(k + l, -2) + (4 * l + 2) * delta(k + l, -1)),
            Rational::zero(),
        ),
        BasisPairKind::TU => {
            CentralPair::new(Rational::zero(), Rational::from_int(-k * delta(k, -l)))
        }
    }
}

/// `t^k d(t^l u) = -k t^(k+l-1) u dt`, reduced with [`tu_dt_class`].
pub fn corrected_tu_pairing(k: i64, l: i64) -> CentralPair {
    CentralPair::new(
        Rational::zero(),
        &Rational::from_int(-k) * &tu_dt_class(k + l - 1),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn pair(c0: Rational, c1: Rational) -> CentralPair {
        CentralPair::new(c0, c1)
    }

    #[test]
    fn differentials() {
        let d = differential(&RingElem::t_pow(3));
        assert_eq!(d.dt_part, RingElem::t_pow(2).scale(&q(3, 1)));
        assert!(d.du_part.is_zero());

        let d = differential(&RingElem::t_pow_u(-1));
        assert_eq!(d.du_part, RingElem::t_pow(-1));
        assert_eq!(d.dt_part, RingElem::t_pow_u(-2).scale(&q(-1, 1)));

        assert!(differential(&RingElem::one()).is_zero());
    }

    #[test]
    fn reduce_examples() {
        let w = OneForm::dt().left_mul(&RingElem::t_pow(-1));
        assert_eq!(reduce(&w), pair(q(1, 1), q(0, 1)));
        let w = OneForm::dt().left_mul(&RingElem::t_pow_u(-3));
        assert_eq!(reduce(&w), CentralPair::zero());
        let w = OneForm::dt().left_mul(&RingElem::t_pow_u(-2));
        assert_eq!(reduce(&w), pair(q(0, 1), q(1, 2)));
        let w = OneForm::du().left_mul(&RingElem::u());
        assert_eq!(reduce(&w), CentralPair::zero());
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(
            pairing(&RingElem::t_pow(2), &RingElem::t_pow(-2)),
            pair(q(-2, 1), q(0, 1))
        );
        assert_eq!(
            pairing(&RingElem::t_pow_u(1), &RingElem::t_pow_u(-2)),
            pair(q(-6, 1), q(0, 1))
        );
        assert_eq!(
            pairing(&RingElem::t_pow(3), &RingElem::t_pow_u(-3)),
            pair(q(0, 1), q(-3, 1))
        );
        let g: RingElem = "3*t^4 - t^-2*u + 5/7".parse().unwrap();
        assert_eq!(pairing(&RingElem::one(), &g), CentralPair::zero());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(
            closed_form_pairing(BasisPairKind::TT, 2, -2),
            pair(q(-2, 1), q(0, 1))
        );
        assert_eq!(
            closed_form_pairing(BasisPairKind::UU, 0, -1),
            pair(q(-2, 1), q(0, 1))
        );
        for l in -6..=6 {
            assert_eq!(
                closed_form_pairing(BasisPairKind::TU, 0, l),
                CentralPair::zero()
            );
        }
    }

    #[test]
    fn recursion_values() {
        assert_eq!(tu_dt_class(0), q(-1, 1));
        assert_eq!(tu_dt_class(1), q(2, 1));
        // (k+3) rho(k+1) + (4k+6) rho(k) = 0 for every k
        for k in -8..8 {
            let lhs = &(&Rational::from_int(k + 3) * &tu_dt_class(k + 1))
                + &(&Rational::from_int(4 * k + 6) * &tu_dt_class(k));
            assert!(lhs.is_zero(), "k = {k}");
        }
    }

    #[test]
    fn closed_forms_agree_where_valid() {
        for k in -6..=6 {
            for l in -6..=6 {
                for kind in [BasisPairKind::TT, BasisPairKind::UU] {
                    let (f, g) = kind.operands(k, l);
                    assert_eq!(pairing(&f, &g), closed_form_pairing(kind, k, l));
                }
                let (f, g) = BasisPairKind::TU.operands(k, l);
                assert_eq!(pairing(&f, &g), corrected_tu_pairing(k, l));
                if k == 0 || k + l == 0 || k + l <= -2 {
                    assert_eq!(
                        pairing(&f, &g),
                        closed_form_pairing(BasisPairKind::TU, k, l)
                    );
                }
            }
        }
    }

    #[test]
    fn literal_tu_formula_drops_classes() {
        // t d(u) = t du = -u dt = t^-1 u dt
        assert_eq!(
            pairing(&RingElem::t_pow(1), &RingElem::u()),
            pair(q(0, 1), q(1, 1))
        );
        assert_eq!(
            closed_form_pairing(BasisPairKind::TU, 1, 0),
            CentralPair::zero()
        );
    }

    #[test]
    fn exact_forms_vanish() {
        for k in -6..=6 {
            for g in [RingElem::t_pow(k), RingElem::t_pow_u(k)] {
                assert_eq!(reduce(&differential(&g)), CentralPair::zero(), "d({g})");
            }
        }
    }

    fn arb_elem() -> impl Strategy<Value = RingElem> {
        prop::collection::vec((-6i64..=6, any::<bool>(), -9i64..=9), 0..=5).prop_map(|terms| {
            let mut e = RingElem::zero();
            for (k, u, n) in terms {
                e.add_term(RingBasis { t: k, u }, &Rational::from_int(n));
            }
            e
        })
    }

    proptest! {
        #[test]
        fn skew_symmetric(f in arb_elem(), g in arb_elem()) {
            prop_assert_eq!(pairing(&f, &g), -&pairing(&g, &f));
        }

        #[test]
        fn left_linear(f in arb_elem(), g in arb_elem(), n in -20i64..20, d in 1i64..9) {
            let r = Rational::new(n, d);
            prop_assert_eq!(pairing(&f.scale(&r), &g), pairing(&f, &g).scale(&r));
        }

        #[test]
        fn exact_on_products(f in arb_elem(), g in arb_elem()) {
            prop_assert!(reduce(&differential(&(&f * &g))).is_zero());
        }
    }
}
