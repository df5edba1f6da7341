//! Brute-force verification harness.
//!
//! Every suite compares two independently computed sides exactly and groups
//! its checks into families; a family records how many checks ran, how many
//! failed, the failing `(m, n)` mode pairs and a few concrete residuals.

use serde::{Deserialize, Serialize};

use crate::current::{bracket, relation_table_rhs, CurrentElem, Generator};
use crate::error::{Error, Result};
use crate::fock::{
    basis_states, heis_bracket_rhs, heis_mode, osc_bracket_rhs, osc_mode, x_vars, y_vars,
    FockState, FockVector, HeisKind, HeisParams, HeisVariant, ModeOp, OscConfig, OscKind, Var,
};
use crate::kahler::{closed_form_pairing, differential, pairing, reduce, BasisPairKind};
use crate::rational::{binomial, Rational};
use crate::realization::{AtomicField, FieldId, FieldTerm, ModeCache, RealizationConfig};
use crate::ring::{from_s, to_s, RingBasis, RingElem};

/// Failure details kept per family.
pub const MAX_EXAMPLES: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Ring,
    Kahler,
    Current,
    Oscillator,
    Heisenberg,
    Pairs,
    Realization,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Ring,
        Suite::Kahler,
        Suite::Current,
        Suite::Oscillator,
        Suite::Heisenberg,
        Suite::Pairs,
        Suite::Realization,
    ];
}

/// Harness configuration, read from JSON. Every field is optional.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifyConfig {
    pub r: Vec<u8>,
    pub kappa0: Vec<Rational>,
    pub lambda: Rational,
    pub mu: Rational,
    pub nu: Rational,
    pub varkappa: Rational,
    /// Used by the standalone Heisenberg suite only; the realization forces 0.
    pub chi1: Rational,
    pub c: Rational,
    pub heis_variant: HeisVariant,
    pub m_min: i64,
    pub m_max: i64,
    pub degree_max: usize,
    pub suites: Vec<Suite>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            r: vec![0, 1],
            kappa0: vec![Rational::zero(), Rational::one(), Rational::from_int(-2)],
            lambda: Rational::one(),
            mu: Rational::zero(),
            nu: Rational::one(),
            varkappa: Rational::one(),
            chi1: Rational::zero(),
            c: Rational::zero(),
            heis_variant: HeisVariant::Derived,
            m_min: -2,
            m_max: 2,
            degree_max: 2,
            suites: Suite::ALL.to_vec(),
        }
    }
}

impl VerifyConfig {
    pub fn from_json(s: &str) -> Result<Self> {
        let cfg: VerifyConfig =
            serde_json::from_str(s).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m_min > self.m_max {
            return Err(Error::Config(format!(
                "m_min {} exceeds m_max {}",
                self.m_min, self.m_max
            )));
        }
        if self.r.is_empty() || self.r.iter().any(|&r| r > 1) {
            return Err(Error::Config(format!(
                "r must be a non-empty subset of {{0, 1}}, got {:?}",
                self.r
            )));
        }
        if self.kappa0.is_empty() {
            return Err(Error::Config("kappa0 must list at least one value".into()));
        }
        if self.suites.is_empty() {
            return Err(Error::Config("no suites selected".into()));
        }
        Ok(())
    }

    /// Variable indices used for basis states.
    pub fn index_range(&self) -> (i64, i64) {
        (self.m_min - 4, self.m_max + 4)
    }

    pub fn heis_params(&self, kappa0: &Rational, chi1: &Rational) -> HeisParams {
        HeisParams {
            lambda: self.lambda.clone(),
            mu: self.mu.clone(),
            nu: self.nu.clone(),
            varkappa: self.varkappa.clone(),
            chi1: chi1.clone(),
            kappa0: kappa0.clone(),
            c: self.c.clone(),
            variant: self.heis_variant,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureDetail {
    pub case: String,
    pub residual: String,
}

/// Aggregated results of one family of checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRecord {
    pub family: String,
    pub params: String,
    pub checks: u64,
    pub failures: u64,
    /// `(m, n)` mode pairs with at least one failure, with their counts.
    pub failing_modes: Vec<(i64, i64, u64)>,
    pub examples: Vec<FailureDetail>,
}

impl FamilyRecord {
    pub fn new(family: impl Into<String>, params: impl Into<String>) -> Self {
        FamilyRecord {
            family: family.into(),
            params: params.into(),
            checks: 0,
            failures: 0,
            failing_modes: Vec::new(),
            examples: Vec::new(),
        }
    }

    /// Counts one check; `residual` is `None` on success.
    pub fn record(
        &mut self,
        modes: Option<(i64, i64)>,
        case: impl FnOnce() -> String,
        residual: Option<String>,
    ) {
        self.checks += 1;
        let Some(residual) = residual else { return };
        self.failures += 1;
        if let Some((m, n)) = modes {
            match self
                .failing_modes
                .iter_mut()
                .find(|(a, b, _)| (*a, *b) == (m, n))
            {
                Some(e) => e.2 += 1,
                None => self.failing_modes.push((m, n, 1)),
            }
        }
        if self.examples.len() < MAX_EXAMPLES {
            self.examples.push(FailureDetail {
                case: case(),
                residual,
            });
        }
    }

    fn finish(mut self) -> Self {
        self.failing_modes.sort_unstable();
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    /// Whether failures in this suite make the run fail.
    pub asserted: bool,
    pub checks: u64,
    pub failures: u64,
    pub families: Vec<FamilyRecord>,
}

impl SuiteReport {
    fn new(suite: Suite, asserted: bool, families: Vec<FamilyRecord>) -> Self {
        let families: Vec<FamilyRecord> = families.into_iter().map(FamilyRecord::finish).collect();
        SuiteReport {
            suite,
            asserted,
            checks: families.iter().map(|f| f.checks).sum(),
            failures: families.iter().map(|f| f.failures).sum(),
            families,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// The families containing failures.
    pub fn failing_families(&self) -> impl Iterator<Item = &FamilyRecord> + '_ {
        self.families.iter().filter(|f| f.failures > 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub checks: u64,
    pub failures: u64,
    pub asserted_failures: u64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub config: VerifyConfig,
    pub index_range: (i64, i64),
    pub suites: Vec<SuiteReport>,
    pub summary: Summary,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn suite(&self, s: Suite) -> Option<&SuiteReport> {
        self.suites.iter().find(|r| r.suite == s)
    }
}

fn show_residual<T: ToString>(ok: bool, residual: impl FnOnce() -> T) -> Option<String> {
    if ok {
        None
    } else {
        Some(residual().to_string())
    }
}

/// Isomorphism with the `S` model on the basis `t^k`, `t^k u`, `|k| <= range`.
pub fn ring_suite(range: i64) -> SuiteReport {
    let basis: Vec<RingBasis> = (-range..=range)
        .flat_map(|k| [RingBasis::t(k), RingBasis::tu(k)])
        .collect();
    let mut roundtrip = FamilyRecord::new("from_s(to_s(b)) = b", format!("|k| <= {range}"));
    let mut mult = FamilyRecord::new("to_s(a b) = to_s(a) to_s(b)", format!("|k| <= {range}"));
    for &b in &basis {
        let x = RingElem::monomial(b, Rational::one());
        let back = from_s(&to_s(&x));
        let ok = back.as_ref().is_ok_and(|y| *y == x);
        roundtrip.record(
            None,
            || b.to_string(),
            show_residual(ok, || format!("{back:?}")),
        );
    }
    for &a in &basis {
        for &b in &basis {
            let (x, y) = (
                RingElem::monomial(a, Rational::one()),
                RingElem::monomial(b, Rational::one()),
            );
            let lhs = to_s(&(&x * &y));
            let rhs = &to_s(&x) * &to_s(&y);
            mult.record(
                None,
                || format!("{a} * {b}"),
                show_residual(lhs == rhs, || format!("{lhs} vs {rhs}")),
            );
        }
    }
    SuiteReport::new(Suite::Ring, true, vec![roundtrip, mult])
}

/// Generic reduction against the closed-form pairings, and exactness of `d`.
pub fn kahler_suite(range: i64) -> SuiteReport {
    let mut families = Vec::new();
    for kind in BasisPairKind::ALL {
        let mut fam = FamilyRecord::new(
            format!("pairing vs closed form: {}", kind.label()),
            format!("|k|, |l| <= {range}"),
        );
        for k in -range..=range {
            for l in -range..=range {
                let (f, g) = kind.operands(k, l);
                let got = pairing(&f, &g);
                let want = closed_form_pairing(kind, k, l);
                fam.record(
                    Some((k, l)),
                    || format!("k={k} l={l}"),
                    show_residual(got == want, || {
                        format!("generic ({got}) vs closed form ({want})")
                    }),
                );
            }
        }
        families.push(fam);
    }
    let mut exact = FamilyRecord::new("reduce(d b) = 0", format!("|k| <= {range}"));
    for k in -range..=range {
        for b in [RingBasis::t(k), RingBasis::tu(k)] {
            let c = reduce(&differential(&RingElem::monomial(b, Rational::one())));
            exact.record(None, || b.to_string(), show_residual(c.is_zero(), || c));
        }
    }
    families.push(exact);
    SuiteReport::new(Suite::Kahler, true, families)
}

fn gen(g: Generator, m: i64) -> CurrentElem {
    CurrentElem::generator(g, m)
}

/// Kassel bracket against the presentation table, centrality, and Jacobi.
pub fn current_suite(table_range: i64, jacobi_range: i64) -> SuiteReport {
    let mut families = Vec::new();
    for x in Generator::CURRENTS {
        for y in Generator::CURRENTS {
            let mut fam = FamilyRecord::new(
                format!("[{x}_m, {y}_n] = table"),
                format!("|m|, |n| <= {table_range}"),
            );
            for m in -table_range..=table_range {
                for n in -table_range..=table_range {
                    let got = bracket(&gen(x, m), &gen(y, n));
                    let want = relation_table_rhs(x, m, y, n);
                    fam.record(
                        Some((m, n)),
                        || format!("m={m} n={n}"),
                        show_residual(got == want, || format!("bracket {got} vs table {want}")),
                    );
                }
            }
            families.push(fam);
        }
    }
    let mut central = FamilyRecord::new("[w_i, x_m] = 0", format!("|m| <= {table_range}"));
    for w in [Generator::W0, Generator::W1] {
        for x in Generator::CURRENTS {
            for m in -table_range..=table_range {
                let b = bracket(&gen(w, 0), &gen(x, m));
                central.record(
                    Some((0, m)),
                    || format!("{w} {x}_{m}"),
                    show_residual(b.is_zero(), || b),
                );
            }
        }
    }
    families.push(central);
    for x in Generator::CURRENTS {
        for y in Generator::CURRENTS {
            for z in Generator::CURRENTS {
                let mut fam = FamilyRecord::new(
                    format!("Jacobi {x} {y} {z}"),
                    format!("|m|, |n|, |p| <= {jacobi_range}"),
                );
                for m in -jacobi_range..=jacobi_range {
                    for n in -jacobi_range..=jacobi_range {
                        for p in -jacobi_range..=jacobi_range {
                            let (a, b, c) = (gen(x, m), gen(y, n), gen(z, p));
                            let sum = &(&bracket(&bracket(&a, &b), &c)
                                + &bracket(&bracket(&b, &c), &a))
                                + &bracket(&bracket(&c, &a), &b);
                            fam.record(
                                Some((m, n)),
                                || format!("m={m} n={n} p={p}"),
                                show_residual(sum.is_zero(), || sum),
                            );
                        }
                    }
                }
                families.push(fam);
            }
        }
    }
    SuiteReport::new(Suite::Current, true, families)
}

/// `[a, b] s - rhs s` for elementary operators on a basis state.
pub fn commutator_residual(a: &ModeOp, b: &ModeOp, s: &FockState, rhs: &Rational) -> FockVector {
    let one = Rational::one();
    let mut buf = Vec::new();
    let mut tmp = Vec::new();
    b.apply_state_into(s, &one, &mut tmp);
    for (t, c) in &tmp {
        a.apply_state_into(t, c, &mut buf);
    }
    tmp.clear();
    a.apply_state_into(s, &-&one, &mut tmp);
    for (t, c) in &tmp {
        b.apply_state_into(t, c, &mut buf);
    }
    buf.push((s.clone(), -rhs));
    buf.into_iter().collect()
}

/// Oscillator commutation relations on the given states.
pub fn oscillator_suite(rs: &[u8], window: (i64, i64), states: &[FockState]) -> SuiteReport {
    let mut families = Vec::new();
    for &r in rs {
        let cfg = OscConfig { r };
        for a in OscKind::ALL {
            for b in OscKind::ALL {
                let mut fam = FamilyRecord::new(
                    format!("[{}_m, {}_n]", a.name(), b.name()),
                    format!(
                        "r={r} m,n in [{}, {}] states={}",
                        window.0,
                        window.1,
                        states.len()
                    ),
                );
                for m in window.0..=window.1 {
                    for n in window.0..=window.1 {
                        let (x, y) = (osc_mode(a, m, cfg), osc_mode(b, n, cfg));
                        let rhs = osc_bracket_rhs(a, m, b, n);
                        for s in states {
                            let res = commutator_residual(&x, &y, s, &rhs);
                            fam.record(
                                Some((m, n)),
                                || format!("m={m} n={n} v={s}"),
                                show_residual(res.is_zero(), || res),
                            );
                        }
                    }
                }
                families.push(fam);
            }
        }
    }
    SuiteReport::new(Suite::Oscillator, true, families)
}

/// Heisenberg relations for each parameter set; asserted only for the
/// derived operators.
pub fn heisenberg_suite(
    params: &[HeisParams],
    window: (i64, i64),
    states: &[FockState],
) -> SuiteReport {
    let mut families = Vec::new();
    let asserted = params.iter().all(|p| p.variant == HeisVariant::Derived);
    for p in params {
        for a in HeisKind::ALL {
            for b in HeisKind::ALL {
                let mut fam = FamilyRecord::new(
                    format!("[{}_m, {}_n]", a.name(), b.name()),
                    format!(
                        "variant={:?} kappa0={} chi1={} c={} m,n in [{}, {}] states={}",
                        p.variant,
                        p.kappa0,
                        p.chi1,
                        p.c,
                        window.0,
                        window.1,
                        states.len()
                    ),
                );
                for m in window.0..=window.1 {
                    for n in window.0..=window.1 {
                        let (x, y) = (heis_mode(a, m, p), heis_mode(b, n, p));
                        let rhs = heis_bracket_rhs(a, m, b, n, p);
                        for s in states {
                            let res = commutator_residual(&x, &y, s, &rhs);
                            fam.record(
                                Some((m, n)),
                                || format!("m={m} n={n} v={s}"),
                                show_residual(res.is_zero(), || res),
                            );
                        }
                    }
                }
                families.push(fam);
            }
        }
    }
    SuiteReport::new(Suite::Heisenberg, asserted, families)
}

/// A lambda-bracket identity `[A_lambda B] = sum_j lambda^j / j! F_j`,
/// checked through `[A_m, B_n] = sum_j binom(m, j) (F_j)_(m+n-j)`.
pub struct PairIdentity {
    pub name: String,
    pub a: Vec<FieldTerm>,
    pub b: Vec<FieldTerm>,
    pub rhs: Vec<Vec<FieldTerm>>,
}

/// The three displayed lambda brackets and their `alpha1` analogues.
pub fn pair_identities(r: u8, kappa0: &Rational) -> Vec<PairIdentity> {
    use AtomicField::*;
    let d = if r == 0 {
        Rational::one()
    } else {
        Rational::zero()
    };
    let k = kappa0.clone();
    let minus = |c: &Rational, z: &[(u32, i64)], f: &[AtomicField]| FieldTerm::new(-c, z, f);
    let four_d = &Rational::from_int(4) * &d;
    let mut out = vec![PairIdentity {
        name: "[beta1_lambda beta1] = -(2P lambda + P') kappa0".into(),
        a: vec![FieldTerm::plain(1, &[Beta1])],
        b: vec![FieldTerm::plain(1, &[Beta1])],
        rhs: vec![
            vec![minus(&k, &[(1, 2), (0, 4)], &[])],
            vec![minus(&k, &[(2, 2), (1, 8)], &[])],
        ],
    }];
    for (name, al, st, dst) in [
        ("alpha", Alpha, AlphaStar, DAlphaStar),
        ("alpha1", Alpha1, Alpha1Star, DAlpha1Star),
    ] {
        out.push(PairIdentity {
            name: format!("[:{name} {name}*:_lambda :{name} {name}*:] = -delta_r0 lambda"),
            a: vec![FieldTerm::plain(1, &[al, st])],
            b: vec![FieldTerm::plain(1, &[al, st])],
            rhs: vec![vec![], vec![minus(&d, &[(0, 1)], &[])]],
        });
        out.push(PairIdentity {
            name: format!(
                "[:{name} ({name}*)^2:_lambda :{name} ({name}*)^2:] = -4 delta_r0 (:{name}* d{name}*: + :({name}*)^2: lambda)"
            ),
            a: vec![FieldTerm::plain(1, &[al, st, st])],
            b: vec![FieldTerm::plain(1, &[al, st, st])],
            rhs: vec![vec![minus(&four_d, &[(0, 1)], &[st, dst])], vec![minus(&four_d, &[(0, 1)], &[st, st])]],
        });
    }
    out
}

struct RegisteredPair {
    name: String,
    a: FieldId,
    b: FieldId,
    rhs: Vec<FieldId>,
}

/// Mode-level form of the lambda-bracket identities.
pub fn pairs_suite(
    rs: &[u8],
    kappa0s: &[Rational],
    base: &HeisParams,
    window: (i64, i64),
    states: &[FockState],
) -> SuiteReport {
    let mut families = Vec::new();
    for &r in rs {
        for k0 in kappa0s {
            let heis = HeisParams {
                kappa0: k0.clone(),
                chi1: Rational::zero(),
                ..base.clone()
            };
            let cfg = RealizationConfig::new(OscConfig { r }, heis).expect("chi1 is zero");
            let mut cache = ModeCache::new(cfg);
            let pairs: Vec<RegisteredPair> = pair_identities(r, k0)
                .into_iter()
                .map(|p| RegisteredPair {
                    name: p.name,
                    a: cache.register(p.a),
                    b: cache.register(p.b),
                    rhs: p.rhs.into_iter().map(|f| cache.register(f)).collect(),
                })
                .collect();
            for p in &pairs {
                let mut fam = FamilyRecord::new(
                    p.name.clone(),
                    format!(
                        "r={r} kappa0={k0} variant={:?} m,n in [{}, {}] states={}",
                        base.variant,
                        window.0,
                        window.1,
                        states.len()
                    ),
                );
                for m in window.0..=window.1 {
                    for n in window.0..=window.1 {
                        for s in states {
                            let v = FockVector::basis(s.clone());
                            let mut acc = FockVector::zero();
                            let bv = cache.apply_field(p.b, n, &v);
                            cache.apply_field_into(p.a, m, &bv, &Rational::one(), &mut acc);
                            let av = cache.apply_field(p.a, m, &v);
                            cache.apply_field_into(p.b, n, &av, &-Rational::one(), &mut acc);
                            for (j, &f) in p.rhs.iter().enumerate() {
                                let c = -&binomial(m, j as u32);
                                cache.apply_field_into(f, m + n - j as i64, &v, &c, &mut acc);
                            }
                            fam.record(
                                Some((m, n)),
                                || format!("m={m} n={n} v={s}"),
                                show_residual(acc.is_zero(), || acc),
                            );
                        }
                    }
                }
                families.push(fam);
            }
        }
    }
    SuiteReport::new(Suite::Pairs, base.variant == HeisVariant::Derived, families)
}

/// The realization checked against the Kassel bracket: for every pair of
/// currents, `[tau(X)_m, tau(Y)_n] v = tau([X_m, Y_n]) v`.
pub fn realization_suite(
    rs: &[u8],
    kappa0s: &[Rational],
    base: &HeisParams,
    window: (i64, i64),
    states: &[FockState],
) -> SuiteReport {
    let mut families = Vec::new();
    for &r in rs {
        for k0 in kappa0s {
            let heis = HeisParams {
                kappa0: k0.clone(),
                chi1: Rational::zero(),
                ..base.clone()
            };
            let cfg = RealizationConfig::new(OscConfig { r }, heis).expect("chi1 is zero");
            let chi0 = cfg.chi0().clone();
            let mut cache = ModeCache::new(cfg);
            for x in Generator::CURRENTS {
                for y in Generator::CURRENTS {
                    let mut fam = FamilyRecord::new(
                        format!("[tau({x})_m, tau({y})_n] = tau([{x}_m, {y}_n])"),
                        format!(
                            "r={r} kappa0={k0} chi0={chi0} variant={:?} m,n in [{}, {}] states={}",
                            base.variant,
                            window.0,
                            window.1,
                            states.len()
                        ),
                    );
                    for m in window.0..=window.1 {
                        for n in window.0..=window.1 {
                            for s in states {
                                let res = cache.relation_residual(
                                    x,
                                    m,
                                    y,
                                    n,
                                    &FockVector::basis(s.clone()),
                                );
                                fam.record(
                                    Some((m, n)),
                                    || format!("m={m} n={n} v={s}"),
                                    show_residual(res.is_zero(), || res),
                                );
                            }
                        }
                    }
                    families.push(fam);
                }
            }
        }
    }
    SuiteReport::new(
        Suite::Realization,
        base.variant == HeisVariant::Derived,
        families,
    )
}

/// States of degree `<= degree` in `x_n, x1_n, y_n, y1_n` over `range`
/// (`y` variables at negative indices only).
pub fn full_states(range: (i64, i64), degree: usize) -> Vec<FockState> {
    let mut vars: Vec<Var> = x_vars(range.0, range.1);
    vars.extend(y_vars(range.0, range.1));
    basis_states(&vars, degree)
}

/// Runs the selected suites. Fails only on an invalid configuration.
pub fn run(cfg: &VerifyConfig) -> Result<Report> {
    cfg.validate()?;
    let range = cfg.index_range();
    let window = (cfg.m_min, cfg.m_max);
    let states = full_states(range, cfg.degree_max);
    let mut suites: Vec<Suite> = cfg.suites.clone();
    suites.sort_unstable();
    suites.dedup();
    let width = cfg.m_min.abs().max(cfg.m_max.abs());
    let base = cfg.heis_params(&cfg.kappa0[0], &Rational::zero());
    let mut reports = Vec::new();
    for suite in suites {
        let rep = match suite {
            Suite::Ring => ring_suite(width),
            Suite::Kahler => kahler_suite(width),
            Suite::Current => current_suite(width, width.min(2)),
            Suite::Oscillator => {
                let osc_states = basis_states(&x_vars(range.0, range.1), cfg.degree_max);
                oscillator_suite(&cfg.r, window, &osc_states)
            }
            Suite::Heisenberg => {
                let params: Vec<HeisParams> = cfg
                    .kappa0
                    .iter()
                    .map(|k| cfg.heis_params(k, &cfg.chi1))
                    .collect();
                let heis_states = basis_states(&y_vars(range.0, range.1), cfg.degree_max);
                heisenberg_suite(&params, window, &heis_states)
            }
            Suite::Pairs => pairs_suite(&cfg.r, &cfg.kappa0, &base, window, &states),
            Suite::Realization => realization_suite(&cfg.r, &cfg.kappa0, &base, window, &states),
        };
        reports.push(rep);
    }
    let checks = reports.iter().map(|s| s.checks).sum();
    let failures = reports.iter().map(|s| s.failures).sum();
    let asserted_failures = reports
        .iter()
        .filter(|s| s.asserted)
        .map(|s| s.failures)
        .sum();
    Ok(Report {
        config: cfg.clone(),
        index_range: range,
        suites: reports,
        summary: Summary {
            checks,
            failures,
            asserted_failures,
            passed: asserted_failures == 0,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_defaults_and_validation() {
        let cfg = VerifyConfig::from_json("{}").unwrap();
        assert_eq!(cfg, VerifyConfig::default());
        assert_eq!(cfg.index_range(), (-6, 6));
        let cfg =
            VerifyConfig::from_json(r#"{"kappa0": ["7/3", 2], "r": [1], "suites": ["ring"]}"#)
                .unwrap();
        assert_eq!(cfg.kappa0, vec![Rational::new(7, 3), Rational::from_int(2)]);
        for bad in [
            r#"{"m_min": 3, "m_max": 1}"#,
            r#"{"r": [2]}"#,
            r#"{"r": []}"#,
            r#"{"kappa0": []}"#,
            r#"{"suites": []}"#,
            r#"{"suites": ["nope"]}"#,
            r#"{"lambda": "1/0"}"#,
            r#"{"unknown": 1}"#,
            "not json",
        ] {
            assert!(VerifyConfig::from_json(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn family_record_bookkeeping() {
        let mut f = FamilyRecord::new("x", "p");
        for i in 0..10 {
            f.record(
                Some((i % 2, 0)),
                || format!("case {i}"),
                if i < 5 { Some("r".into()) } else { None },
            );
        }
        let f = f.finish();
        assert_eq!((f.checks, f.failures), (10, 5));
        assert_eq!(f.failing_modes, vec![(0, 0, 3), (1, 0, 2)]);
        assert_eq!(f.examples.len(), MAX_EXAMPLES);
    }

    #[test]
    fn small_run_is_deterministic() {
        let cfg = VerifyConfig {
            r: vec![1],
            kappa0: vec![Rational::one()],
            m_min: -1,
            m_max: 1,
            degree_max: 1,
            suites: vec![Suite::Realization, Suite::Ring, Suite::Oscillator],
            ..VerifyConfig::default()
        };
        let a = run(&cfg).unwrap();
        let b = run(&cfg).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert!(a.summary.passed, "{}", a.to_json());
        let order: Vec<Suite> = a.suites.iter().map(|s| s.suite).collect();
        assert_eq!(
            order,
            vec![Suite::Ring, Suite::Oscillator, Suite::Realization]
        );
    }
}
