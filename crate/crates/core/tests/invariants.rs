//! Structural invariants of the current algebra, the Fock modules and the
//! realization.

use proptest::prelude::*;
use threept_core::current::{bracket, quasi_degree, CurrentElem};
use threept_core::fock::{apply_osc, basis_states, x_vars, y_vars, FockVector, OscConfig, OscKind};
use threept_core::realization::{apply_field_mode, AtomicField, FieldTerm, RealizationConfig};
use threept_core::{Rational, RingBasis, Sl2Basis};

fn arb_basis() -> impl Strategy<Value = (Sl2Basis, RingBasis)> {
    (0usize..3, -5i64..=5, any::<bool>())
        .prop_map(|(x, t, u)| (Sl2Basis::ALL[x], RingBasis { t, u }))
}

fn arb_current() -> impl Strategy<Value = CurrentElem> {
    prop::collection::vec((arb_basis(), -6i64..=6, 1i64..=4), 0..5).prop_map(|terms| {
        let mut e = CurrentElem::zero();
        for ((x, b), n, d) in terms {
            e.add_term(x, b, &Rational::new(n, d));
        }
        e
    })
}

proptest! {
    #[test]
    fn bracket_is_antisymmetric(x in arb_current(), y in arb_current()) {
        prop_assert_eq!(bracket(&x, &y), -&bracket(&y, &x));
    }

    #[test]
    fn bracket_is_quasi_graded((a, ba) in arb_basis(), (b, bb) in arb_basis()) {
        let (x, y) = (CurrentElem::basis(a, ba), CurrentElem::basis(b, bb));
        let target = &quasi_degree(&x).unwrap() + &quasi_degree(&y).unwrap();
        for (c, rb, coeff) in bracket(&x, &y).terms() {
            let d = quasi_degree(&CurrentElem::basis(c, rb)).unwrap();
            prop_assert!((&d - &target).abs() <= Rational::one(), "{} at degree {} vs {}", coeff, d, target);
        }
    }
}

#[test]
fn vacuum_axioms() {
    let v = FockVector::vacuum(0);
    let r0 = OscConfig::new(0).unwrap();
    let r1 = OscConfig::new(1).unwrap();
    for m in -6..=6 {
        if m >= 0 {
            assert!(apply_osc(OscKind::A, m, &v, r0).is_zero());
            assert!(apply_osc(OscKind::A1, m, &v, r0).is_zero());
        }
        if m > 0 {
            assert!(apply_osc(OscKind::AStar, m, &v, r0).is_zero());
            assert!(apply_osc(OscKind::A1Star, m, &v, r0).is_zero());
        }
        assert!(apply_osc(OscKind::AStar, m, &v, r1).is_zero());
        assert!(apply_osc(OscKind::A1Star, m, &v, r1).is_zero());
    }
}

/// All orderings of `factors` (small inputs only).
fn permutations(factors: &[AtomicField]) -> Vec<Vec<AtomicField>> {
    if factors.len() <= 1 {
        return vec![factors.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..factors.len() {
        let mut rest = factors.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}

#[test]
fn normal_ordering_ignores_factor_order() {
    use AtomicField::*;
    let products: [&[AtomicField]; 4] = [
        &[Alpha, AlphaStar, AlphaStar],
        &[Alpha1, Alpha1Star, DAlphaStar],
        &[Beta1, AlphaStar, Alpha1Star],
        &[Beta, AlphaStar, Alpha1Star],
    ];
    let mut vars = x_vars(-5, 5);
    vars.extend(y_vars(-5, 5));
    let states = basis_states(&vars, 1);
    for r in [0, 1] {
        let cfg = RealizationConfig::standard(r, Rational::new(7, 3)).unwrap();
        for factors in products {
            for m in -2..=2 {
                for s in &states {
                    let v = FockVector::basis(s.clone());
                    let reference = apply_field_mode(&[FieldTerm::plain(1, factors)], m, &v, &cfg);
                    for p in permutations(factors) {
                        let got = apply_field_mode(&[FieldTerm::plain(1, &p)], m, &v, &cfg);
                        assert_eq!(got, reference, "r={r} {p:?} m={m} v={s}");
                    }
                }
            }
        }
    }
}
