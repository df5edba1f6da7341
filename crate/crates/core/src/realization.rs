//! The free-field realization `tau` of the centrally extended current algebra
//! on `C[x] (x) C[y] (x) V`.
//!
//! Each current is a list of [`FieldTerm`]s. Its `m`-th mode is the
//! coefficient of `z^(-m-1)`, extracted term by term: a term with multiplier
//! `z^p` and factors of weights `w_i` collects the index tuples with
//! `sum (n_i + w_i) = m + 1 + p`, and each tuple acts as a normal-ordered
//! product (annihilation-labelled modes first).

use std::borrow::Cow;
use std::collections::BTreeMap;
use std::fmt;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::current::{CurrentElem, Generator};
use crate::error::{Error, Result};
use crate::fock::{
    heis_mode, osc_mode, FockState, FockVector, HeisKind, HeisParams, HeisVariant, ModeOp, OpAtom,
    OscConfig, OscKind, Role, Var,
};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum AtomicField {
    Alpha,
    Alpha1,
    Beta,
    Beta1,
    AlphaStar,
    Alpha1Star,
    DAlphaStar,
    DAlpha1Star,
}

impl AtomicField {
    /// Conformal weight fixing the mode expansion `sum X_n z^(-n-weight)`.
    pub fn weight(self) -> i64 {
        match self {
            AtomicField::AlphaStar | AtomicField::Alpha1Star => 0,
            _ => 1,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            AtomicField::Alpha => "alpha",
            AtomicField::Alpha1 => "alpha1",
            AtomicField::Beta => "beta",
            AtomicField::Beta1 => "beta1",
            AtomicField::AlphaStar => "alpha*",
            AtomicField::Alpha1Star => "alpha1*",
            AtomicField::DAlphaStar => "d(alpha*)",
            AtomicField::DAlpha1Star => "d(alpha1*)",
        }
    }

    /// The `n`-th mode as an operator.
    pub fn mode(self, n: i64, osc: OscConfig, heis: &HeisParams) -> ModeOp {
        match self {
            AtomicField::Alpha => osc_mode(OscKind::A, n, osc),
            AtomicField::Alpha1 => osc_mode(OscKind::A1, n, osc),
            AtomicField::AlphaStar => osc_mode(OscKind::AStar, n, osc),
            AtomicField::Alpha1Star => osc_mode(OscKind::A1Star, n, osc),
            AtomicField::DAlphaStar | AtomicField::DAlpha1Star => {
                let kind = if self == AtomicField::DAlphaStar {
                    OscKind::AStar
                } else {
                    OscKind::A1Star
                };
                let mut op = osc_mode(kind, n, osc);
                let f = Rational::from_int(-n);
                op.terms.retain_mut(|(c, _)| {
                    *c = &*c * &f;
                    !c.is_zero()
                });
                op
            }
            AtomicField::Beta => heis_mode(HeisKind::B, n, heis),
            AtomicField::Beta1 => heis_mode(HeisKind::B1, n, heis),
        }
    }

    /// Index range `[lo, hi]` (unbounded ends are `None`) carrying `role`,
    /// or `None` if the role never occurs.
    pub fn role_range(self, role: Role, r: u8) -> Option<(Option<i64>, Option<i64>)> {
        use AtomicField::*;
        match (self, role, r) {
            (Alpha | Alpha1, Role::Annihilation, 0) => Some((Some(0), None)),
            (Alpha | Alpha1, Role::Creation, 0) => Some((None, Some(-1))),
            (Alpha | Alpha1, Role::Annihilation, _) => None,
            (Alpha | Alpha1, Role::Creation, _) => Some((None, None)),
            (AlphaStar | Alpha1Star | DAlphaStar | DAlpha1Star, Role::Annihilation, 0) => {
                Some((Some(1), None))
            }
            (AlphaStar | Alpha1Star | DAlphaStar | DAlpha1Star, Role::Creation, 0) => {
                Some((None, Some(0)))
            }
            (AlphaStar | Alpha1Star | DAlphaStar | DAlpha1Star, Role::Annihilation, _) => {
                Some((None, None))
            }
            (AlphaStar | Alpha1Star | DAlphaStar | DAlpha1Star, Role::Creation, _) => None,
            (Beta | Beta1, Role::Annihilation, _) => Some((Some(0), None)),
            (Beta | Beta1, Role::Creation, _) => Some((None, Some(-1))),
        }
    }
}

/// `coeff * zpoly(z) * :F_1 ... F_k:`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldTerm {
    pub coeff: Rational,
    pub zpoly: BTreeMap<u32, Rational>,
    pub factors: Vec<AtomicField>,
}

impl FieldTerm {
    pub fn new(coeff: Rational, zpoly: &[(u32, i64)], factors: &[AtomicField]) -> Self {
        let zpoly = zpoly
            .iter()
            .map(|&(p, c)| (p, Rational::from_int(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        FieldTerm {
            coeff,
            zpoly,
            factors: factors.to_vec(),
        }
    }

    /// A term without a `z` multiplier.
    pub fn plain(coeff: i64, factors: &[AtomicField]) -> Self {
        Self::new(Rational::from_int(coeff), &[(0, 1)], factors)
    }

    pub fn scaled(mut self, c: &Rational) -> Self {
        self.coeff = &self.coeff * c;
        self
    }
}

impl fmt::Display for FieldTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*(", self.coeff)?;
        for (i, (p, c)) in self.zpoly.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*z^{p}")?;
        }
        f.write_str(")*:")?;
        for (i, x) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(x.symbol())?;
        }
        f.write_str(":")
    }
}

/// Parameters of the realization. `chi1` is forced to zero and `chi0` is
/// derived from `kappa0` and `r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RealizationConfig {
    pub osc: OscConfig,
    pub heis: HeisParams,
    chi0: Rational,
}

impl RealizationConfig {
    pub fn new(osc: OscConfig, heis: HeisParams) -> Result<Self> {
        if !heis.chi1.is_zero() {
            return Err(Error::Config(format!(
                "the realization needs chi1 = 0, got {}",
                heis.chi1
            )));
        }
        let chi0 = if osc.r == 0 {
            &heis.kappa0 + &Rational::from_int(4)
        } else {
            heis.kappa0.clone()
        };
        Ok(RealizationConfig { osc, heis, chi0 })
    }

    /// `r`, `kappa0` and the default `V` data with the derived Heisenberg variant.
    pub fn standard(r: u8, kappa0: Rational) -> Result<Self> {
        let heis = HeisParams {
            kappa0,
            variant: HeisVariant::Derived,
            ..HeisParams::default()
        };
        Self::new(OscConfig::new(r)?, heis)
    }

    pub fn chi0(&self) -> &Rational {
        &self.chi0
    }
}

/// The field `tau(X(z))` as a list of terms.
pub fn tau_field(g: Generator, cfg: &RealizationConfig) -> Vec<FieldTerm> {
    use AtomicField::*;
    let chi0 = cfg.chi0();
    const P: [(u32, i64); 2] = [(2, 1), (1, 4)];
    match g {
        Generator::F => vec![FieldTerm::plain(-1, &[Alpha])],
        Generator::F1 => vec![FieldTerm::plain(-1, &[Alpha1])],
        Generator::H => vec![
            FieldTerm::plain(2, &[Alpha, AlphaStar]),
            FieldTerm::plain(2, &[Alpha1, Alpha1Star]),
            FieldTerm::plain(1, &[Beta]),
        ],
        Generator::H1 => vec![
            FieldTerm::plain(2, &[Alpha1, AlphaStar]),
            FieldTerm::new(Rational::from_int(2), &P, &[Alpha, Alpha1Star]),
            FieldTerm::plain(1, &[Beta1]),
        ],
        Generator::E => vec![
            FieldTerm::plain(1, &[Alpha, AlphaStar, AlphaStar]),
            FieldTerm::new(Rational::one(), &P, &[Alpha, Alpha1Star, Alpha1Star]),
            FieldTerm::plain(2, &[Alpha1, AlphaStar, Alpha1Star]),
            FieldTerm::plain(1, &[Beta, AlphaStar]),
            FieldTerm::plain(1, &[Beta1, Alpha1Star]),
            FieldTerm::plain(1, &[DAlphaStar]).scaled(chi0),
        ],
        Generator::E1 => vec![
            FieldTerm::plain(1, &[Alpha1, AlphaStar, AlphaStar]),
            FieldTerm::new(Rational::one(), &P, &[Alpha1, Alpha1Star, Alpha1Star]),
            FieldTerm::new(Rational::from_int(2), &P, &[Alpha, AlphaStar, Alpha1Star]),
            FieldTerm::plain(1, &[Beta1, AlphaStar]),
            FieldTerm::new(Rational::one(), &P, &[Beta, Alpha1Star]),
            FieldTerm::new(chi0.clone(), &P, &[DAlpha1Star]),
            FieldTerm::new(chi0.clone(), &[(1, 1), (0, 2)], &[Alpha1Star]),
        ],
        Generator::W0 | Generator::W1 => Vec::new(),
    }
}

type Buf = Vec<(FockState, Rational)>;

fn merge(buf: Buf) -> Buf {
    let v: FockVector = buf.into_iter().collect();
    v.terms().map(|(s, c)| (s.clone(), c.clone())).collect()
}

/// Calls `f` with every tuple of integers `n_i <= upper_i` summing to `total`.
fn compositions(upper: &[i64], total: i64, prefix: &mut Vec<i64>, f: &mut dyn FnMut(&[i64])) {
    match upper {
        [] => {
            if total == 0 {
                f(prefix);
            }
        }
        [last] => {
            if total <= *last {
                prefix.push(total);
                f(prefix);
                prefix.pop();
            }
        }
        [first, rest @ ..] => {
            let rest_max: i64 = rest.iter().sum();
            for n in (total - rest_max)..=*first {
                prefix.push(n);
                compositions(rest, total - n, prefix, f);
                prefix.pop();
            }
        }
    }
}

const TABLE_LIMIT: i64 = 48;
const FIELDS: [AtomicField; 8] = [
    AtomicField::Alpha,
    AtomicField::Alpha1,
    AtomicField::Beta,
    AtomicField::Beta1,
    AtomicField::AlphaStar,
    AtomicField::Alpha1Star,
    AtomicField::DAlphaStar,
    AtomicField::DAlpha1Star,
];

/// Mode operators of every atomic field for `|n| <= TABLE_LIMIT`, built once
/// per configuration.
struct ModeTable {
    ops: Vec<ModeOp>,
    /// `(field, var)` to the indices whose operator differentiates by `var`
    by_var: FxHashMap<(AtomicField, Var), Vec<i64>>,
    /// per field, the indices whose operator has a non-derivative part
    not_diff: Vec<Vec<i64>>,
}

impl ModeTable {
    fn new(cfg: &RealizationConfig) -> Self {
        let ops: Vec<ModeOp> = FIELDS
            .iter()
            .flat_map(|f| (-TABLE_LIMIT..=TABLE_LIMIT).map(move |n| f.mode(n, cfg.osc, &cfg.heis)))
            .collect();
        let mut by_var: FxHashMap<(AtomicField, Var), Vec<i64>> = FxHashMap::default();
        let mut not_diff = vec![Vec::new(); FIELDS.len()];
        let width = 2 * TABLE_LIMIT as usize + 1;
        for (row, &f) in FIELDS.iter().enumerate() {
            for (j, op) in ops[row * width..(row + 1) * width].iter().enumerate() {
                let n = j as i64 - TABLE_LIMIT;
                for (_, atom) in &op.terms {
                    match atom {
                        OpAtom::Diff(x) => by_var.entry((f, *x)).or_default().push(n),
                        _ => not_diff[row].push(n),
                    }
                }
            }
        }
        ModeTable {
            ops,
            by_var,
            not_diff,
        }
    }

    /// Annihilation-range indices in `[lo, hi]` whose operator can act on `s`.
    fn candidates<'a>(
        &'a self,
        f: AtomicField,
        s: &FockState,
        lo: i64,
        hi: i64,
        cfg: &RealizationConfig,
    ) -> Vec<(i64, Cow<'a, ModeOp>)> {
        let mut ns: Vec<i64> = if s.mono.index_bound() + 4 < TABLE_LIMIT {
            let row = FIELDS.iter().position(|&g| g == f).expect("known field");
            let mut ns = self.not_diff[row].clone();
            for x in s.mono.vars() {
                if let Some(l) = self.by_var.get(&(f, *x)) {
                    ns.extend_from_slice(l);
                }
            }
            ns.retain(|n| (lo..=hi).contains(n));
            ns.sort_unstable();
            ns.dedup();
            ns
        } else {
            (lo..=hi).collect()
        };
        ns.retain(|&n| n >= lo && n <= hi);
        ns.into_iter()
            .map(|n| (n, self.get(f, n, cfg)))
            .filter(|(_, op)| !op.is_zero() && op.may_act_on(s))
            .collect()
    }

    fn get<'a>(&'a self, f: AtomicField, n: i64, cfg: &RealizationConfig) -> Cow<'a, ModeOp> {
        if n.abs() > TABLE_LIMIT {
            return Cow::Owned(f.mode(n, cfg.osc, &cfg.heis));
        }
        let row = FIELDS.iter().position(|&g| g == f).expect("known field");
        Cow::Borrowed(&self.ops[row * (2 * TABLE_LIMIT as usize + 1) + (n + TABLE_LIMIT) as usize])
    }
}

fn apply_ops(ops: &[&ModeOp], start: Buf) -> Buf {
    let mut cur = start;
    for op in ops {
        let mut next = Vec::with_capacity(cur.len() * 2);
        for (st, x) in &cur {
            op.apply_state_into(st, x, &mut next);
        }
        cur = next;
        if cur.is_empty() {
            break;
        }
    }
    cur
}

/// Appends `c * (term)_m s` to `out`.
fn apply_term_into(
    term: &FieldTerm,
    m: i64,
    s: &FockState,
    c: &Rational,
    cfg: &RealizationConfig,
    table: &ModeTable,
    out: &mut Buf,
) {
    let r = cfg.osc.r;
    let k = term.factors.len();
    let weight: i64 = term.factors.iter().map(|f| f.weight()).sum();
    // annihilators only see variables of `s`; every index shift is at most 4
    let reach = s.mono.index_bound() + 4;
    for mask in 0u32..(1 << k) {
        let role = |i: usize| {
            if mask >> i & 1 == 1 {
                Role::Annihilation
            } else {
                Role::Creation
            }
        };
        let ranges: Option<Vec<_>> = (0..k)
            .map(|i| term.factors[i].role_range(role(i), r))
            .collect();
        let Some(ranges) = ranges else { continue };
        let ann: Vec<usize> = (0..k).filter(|&i| role(i) == Role::Annihilation).collect();
        let cre: Vec<usize> = (0..k).filter(|&i| role(i) == Role::Creation).collect();
        let unbounded = cre.iter().filter(|&&i| ranges[i].1.is_none()).count();
        assert!(
            unbounded == 0 || cre.len() == 1,
            "mode sum of {term} is not finite: an unbounded creation factor must stand alone"
        );
        let mut cand: Vec<Vec<(i64, Cow<'_, ModeOp>)>> = Vec::with_capacity(ann.len());
        for &i in &ann {
            let (lo, hi) = ranges[i];
            let lo = lo.unwrap_or(-reach).max(-reach);
            let hi = hi.unwrap_or(reach).min(reach);
            let list = table.candidates(term.factors[i], s, lo, hi, cfg);
            if list.is_empty() {
                break;
            }
            cand.push(list);
        }
        if cand.len() < ann.len() {
            continue;
        }
        let upper: Vec<i64> = cre
            .iter()
            .map(|&i| ranges[i].1.unwrap_or(i64::MAX / 4))
            .collect();
        let mut choice = vec![0usize; ann.len()];
        loop {
            let ann_sum: i64 = choice.iter().zip(&cand).map(|(&j, l)| l[j].0).sum();
            let ann_ops: Vec<&ModeOp> = choice
                .iter()
                .zip(&cand)
                .map(|(&j, l)| l[j].1.as_ref())
                .collect();
            let after = apply_ops(&ann_ops, vec![(s.clone(), c * &term.coeff)]);
            if !after.is_empty() {
                for (&p, zc) in &term.zpoly {
                    let target = m + 1 + p as i64 - weight;
                    compositions(&upper, target - ann_sum, &mut Vec::new(), &mut |ns| {
                        let ops: Vec<Cow<'_, ModeOp>> = cre
                            .iter()
                            .zip(ns)
                            .map(|(&i, &n)| table.get(term.factors[i], n, cfg))
                            .collect();
                        let refs: Vec<&ModeOp> = ops.iter().map(|o| o.as_ref()).collect();
                        let start = after.iter().map(|(st, x)| (st.clone(), x * zc)).collect();
                        out.extend(apply_ops(&refs, start));
                    });
                }
            }
            // next annihilation tuple
            let mut pos = 0;
            while pos < choice.len() {
                choice[pos] += 1;
                if choice[pos] < cand[pos].len() {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
            if pos == choice.len() {
                break;
            }
        }
    }
}

/// The `m`-th mode of an arbitrary field applied to `v`.
pub fn apply_field_mode(
    terms: &[FieldTerm],
    m: i64,
    v: &FockVector,
    cfg: &RealizationConfig,
) -> FockVector {
    let table = ModeTable::new(cfg);
    let mut buf = Vec::new();
    for (s, c) in v.terms() {
        for t in terms {
            apply_term_into(t, m, s, c, cfg, &table, &mut buf);
        }
    }
    buf.into_iter().collect()
}

/// `tau(X)_m v`.
pub fn apply_mode(g: Generator, m: i64, v: &FockVector, cfg: &RealizationConfig) -> FockVector {
    match g {
        Generator::W0 => v.scale(cfg.chi0()),
        Generator::W1 => FockVector::zero(),
        _ => apply_field_mode(&tau_field(g, cfg), m, v, cfg),
    }
}

/// `tau(x) v` for an arbitrary element of the extended algebra.
pub fn tau_extend(x: &CurrentElem, v: &FockVector, cfg: &RealizationConfig) -> FockVector {
    let mut out = v.scale(&(&x.central.c0 * cfg.chi0()));
    for (s, b, c) in x.terms() {
        let g = Generator::from_parts(s, b.u);
        out.add_scaled(&apply_mode(g, b.t, v, cfg), c);
    }
    out
}

/// Handle of a field registered with a [`ModeCache`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldId(usize);

/// Memoized mode actions on basis states for a fixed configuration. The six
/// currents are registered up front; further fields can be added.
pub struct ModeCache {
    cfg: RealizationConfig,
    fields: Vec<Vec<FieldTerm>>,
    table: ModeTable,
    memo: FxHashMap<(FieldId, i64, FockState), Vec<(FockState, Rational)>>,
    brackets: FxHashMap<(Generator, i64, Generator, i64), CurrentElem>,
}

impl ModeCache {
    pub fn new(cfg: RealizationConfig) -> Self {
        let fields = Generator::CURRENTS
            .iter()
            .map(|&g| tau_field(g, &cfg))
            .collect();
        let table = ModeTable::new(&cfg);
        ModeCache {
            cfg,
            fields,
            table,
            memo: FxHashMap::default(),
            brackets: FxHashMap::default(),
        }
    }

    pub fn config(&self) -> &RealizationConfig {
        &self.cfg
    }

    pub fn register(&mut self, terms: Vec<FieldTerm>) -> FieldId {
        self.fields.push(terms);
        FieldId(self.fields.len() - 1)
    }

    /// The handle of a current generator (`None` for `w0`, `w1`).
    pub fn current_id(g: Generator) -> Option<FieldId> {
        Generator::CURRENTS
            .iter()
            .position(|&h| h == g)
            .map(FieldId)
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }

    /// Total number of terms stored across memoized images.
    pub fn stored_terms(&self) -> usize {
        self.memo.values().map(Vec::len).sum()
    }

    fn state_image(&mut self, id: FieldId, m: i64, s: &FockState) -> &[(FockState, Rational)] {
        let key = (id, m, s.clone());
        if !self.memo.contains_key(&key) {
            let mut buf = Vec::new();
            for t in &self.fields[id.0] {
                apply_term_into(t, m, s, &Rational::one(), &self.cfg, &self.table, &mut buf);
            }
            self.memo.insert(key.clone(), merge(buf));
        }
        &self.memo[&key]
    }

    /// Adds `c * F_m v` into `acc` for a registered field `F`.
    pub fn apply_field_into(
        &mut self,
        id: FieldId,
        m: i64,
        v: &FockVector,
        c: &Rational,
        acc: &mut FockVector,
    ) {
        for (s, x) in v.terms() {
            let k = x * c;
            for (t, y) in self.state_image(id, m, s) {
                acc.add_term(t.clone(), &k * y);
            }
        }
    }

    pub fn apply_field(&mut self, id: FieldId, m: i64, v: &FockVector) -> FockVector {
        let mut acc = FockVector::zero();
        self.apply_field_into(id, m, v, &Rational::one(), &mut acc);
        acc
    }

    /// Adds `c * tau(g)_m v` into `acc`.
    pub fn apply_into(
        &mut self,
        g: Generator,
        m: i64,
        v: &FockVector,
        c: &Rational,
        acc: &mut FockVector,
    ) {
        match Self::current_id(g) {
            Some(id) => self.apply_field_into(id, m, v, c, acc),
            None if g == Generator::W0 => acc.add_scaled(v, &(c * self.cfg.chi0())),
            None => {}
        }
    }

    pub fn apply(&mut self, g: Generator, m: i64, v: &FockVector) -> FockVector {
        let mut acc = FockVector::zero();
        self.apply_into(g, m, v, &Rational::one(), &mut acc);
        acc
    }

    pub fn tau_extend(&mut self, x: &CurrentElem, v: &FockVector) -> FockVector {
        let mut acc = v.scale(&(&x.central.c0 * self.cfg.chi0()));
        for (s, b, c) in x.terms() {
            self.apply_into(Generator::from_parts(s, b.u), b.t, v, c, &mut acc);
        }
        acc
    }

    /// `[tau(X)_m, tau(Y)_n] v - tau([X_m, Y_n]) v`, with the right-hand side
    /// taken from the Kassel bracket.
    pub fn relation_residual(
        &mut self,
        x: Generator,
        m: i64,
        y: Generator,
        n: i64,
        v: &FockVector,
    ) -> FockVector {
        let one = Rational::one();
        let neg = -Rational::one();
        let mut acc = FockVector::zero();
        let yv = self.apply(y, n, v);
        self.apply_into(x, m, &yv, &one, &mut acc);
        let xv = self.apply(x, m, v);
        self.apply_into(y, n, &xv, &neg, &mut acc);
        let rhs = self
            .brackets
            .entry((x, m, y, n))
            .or_insert_with(|| {
                crate::current::bracket(
                    &CurrentElem::generator(x, m),
                    &CurrentElem::generator(y, n),
                )
            })
            .clone();
        let t = self.tau_extend(&rhs, v);
        acc.add_scaled(&t, &neg);
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(r: u8, k0: i64) -> RealizationConfig {
        RealizationConfig::standard(r, Rational::from_int(k0)).unwrap()
    }

    fn fv(s: &str) -> FockVector {
        s.parse().unwrap()
    }

    #[test]
    fn chi_values() {
        assert_eq!(cfg(0, 1).chi0(), &Rational::from_int(5));
        assert_eq!(cfg(1, 1).chi0(), &Rational::from_int(1));
        let heis = HeisParams {
            chi1: Rational::one(),
            ..HeisParams::default()
        };
        assert!(RealizationConfig::new(OscConfig { r: 0 }, heis).is_err());
    }

    #[test]
    fn field_table() {
        let c = cfg(0, 1);
        assert_eq!(
            tau_field(Generator::F, &c),
            vec![FieldTerm::plain(-1, &[AtomicField::Alpha])]
        );
        let e1 = tau_field(Generator::E1, &c);
        let want = FieldTerm::new(
            Rational::from_int(5),
            &[(1, 1), (0, 2)],
            &[AtomicField::Alpha1Star],
        );
        assert!(e1.contains(&want));
        assert_eq!(tau_field(Generator::H, &c).len(), 3);
    }

    #[test]
    fn role_ranges_match_operators() {
        let heis = HeisParams::default();
        for r in 0..2u8 {
            let osc = OscConfig { r };
            for f in [
                AtomicField::Alpha,
                AtomicField::Alpha1,
                AtomicField::AlphaStar,
                AtomicField::Alpha1Star,
                AtomicField::DAlphaStar,
                AtomicField::Beta,
                AtomicField::Beta1,
            ] {
                for n in -8..=8 {
                    let role = f.mode(n, osc, &heis).role;
                    let (lo, hi) = f.role_range(role, r).expect("role occurs");
                    assert!(
                        lo.is_none_or(|lo| n >= lo) && hi.is_none_or(|hi| n <= hi),
                        "{f:?} {n} r={r}"
                    );
                }
            }
        }
    }

    #[test]
    fn mode_examples() {
        let c = cfg(0, 1);
        assert!(apply_mode(Generator::F, 0, &fv("v0"), &c).is_zero());
        assert_eq!(
            apply_mode(Generator::F, -2, &fv("v0"), &c),
            fv("-1*x_-2*v0")
        );
        // r = 1: beta_0 alpha*_-2 gives -lambda, chi0 d(alpha*) gives 2 chi0 a*_-2
        let c1 = cfg(1, 3);
        assert_eq!(
            apply_mode(Generator::E, -2, &fv("x_2*v0"), &c1),
            fv("-7*v0")
        );
        let h0 = tau_extend(&CurrentElem::generator(Generator::H, 0), &fv("v0"), &c);
        assert_eq!(h0, fv("v0"));
        assert_eq!(
            tau_extend(&"w0".parse().unwrap(), &fv("v1"), &c),
            fv("5*v1")
        );
        assert!(tau_extend(&"w1".parse().unwrap(), &fv("v1"), &c).is_zero());
    }

    #[test]
    fn h_commutator_on_vacuum() {
        for r in 0..2u8 {
            let c = cfg(r, 2);
            let v = fv("v0");
            let hv = apply_mode(Generator::H, -1, &v, &c);
            let a = apply_mode(Generator::H, 1, &hv, &c);
            let b = apply_mode(Generator::H, -1, &apply_mode(Generator::H, 1, &v, &c), &c);
            assert_eq!(
                &a - &b,
                v.scale(&(&Rational::from_int(-2) * c.chi0())),
                "r = {r}"
            );
        }
    }

    #[test]
    fn cache_matches_direct() {
        let c = cfg(0, -2);
        let mut cache = ModeCache::new(c.clone());
        let v = fv("x_1*y1_-2*v0 + 2*x1_-1*v1");
        for g in Generator::CURRENTS {
            for m in -2..=2 {
                assert_eq!(cache.apply(g, m, &v), apply_mode(g, m, &v, &c));
            }
        }
        assert!(!cache.is_empty());
    }

    #[test]
    fn compositions_respect_bounds() {
        let mut seen = Vec::new();
        compositions(&[-1, 0, 0], -2, &mut Vec::new(), &mut |ns| {
            seen.push(ns.to_vec())
        });
        assert_eq!(seen, vec![vec![-2, 0, 0], vec![-1, -1, 0], vec![-1, 0, -1]]);
    }
}
