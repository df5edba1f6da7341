//! The shared state space `C[x] (x) C[y] (x) V` and the elementary operators
//! acting on it: the beta-gamma oscillators in either Fock representation and
//! the three-point Heisenberg algebra acting on `C[y] (x) V`.

use std::collections::hash_map::Entry;
use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarKind {
    X,
    X1,
    Y,
    Y1,
}

impl VarKind {
    fn prefix(self) -> &'static str {
        match self {
            VarKind::X => "x",
            VarKind::X1 => "x1",
            VarKind::Y => "y",
            VarKind::Y1 => "y1",
        }
    }
}

/// A polynomial variable `x_n`, `x1_n`, `y_n` or `y1_n`, packed as
/// `kind << 14 | (n + 8192)` so that the derived order is by kind, then index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u16);

const INDEX_OFFSET: i64 = 1 << 13;

impl Var {
    pub fn new(kind: VarKind, n: i64) -> Var {
        assert!(
            (-INDEX_OFFSET..INDEX_OFFSET).contains(&n),
            "variable index {n} out of range"
        );
        Var(((kind as u16) << 14) | (n + INDEX_OFFSET) as u16)
    }
    pub fn x(n: i64) -> Var {
        Var::new(VarKind::X, n)
    }
    pub fn x1(n: i64) -> Var {
        Var::new(VarKind::X1, n)
    }
    /// `y_n`; only negative indices occur in `C[y]`.
    pub fn y(n: i64) -> Var {
        Var::new(VarKind::Y, n)
    }
    pub fn y1(n: i64) -> Var {
        Var::new(VarKind::Y1, n)
    }
    pub fn kind(self) -> VarKind {
        match self.0 >> 14 {
            0 => VarKind::X,
            1 => VarKind::X1,
            2 => VarKind::Y,
            _ => VarKind::Y1,
        }
    }
    pub fn index(self) -> i64 {
        (self.0 & 0x3fff) as i64 - INDEX_OFFSET
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.kind().prefix(), self.index())
    }
}

/// Sorted multiset of variables.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(SmallVec<[Var; 8]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn from_vars(vars: impl IntoIterator<Item = Var>) -> Self {
        let mut v: SmallVec<[Var; 8]> = vars.into_iter().collect();
        v.sort_unstable();
        Monomial(v)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn vars(&self) -> &[Var] {
        &self.0
    }

    pub fn exponent(&self, x: Var) -> u32 {
        self.0.iter().filter(|&&y| y == x).count() as u32
    }

    pub fn times(&self, x: Var) -> Monomial {
        let mut v = self.0.clone();
        let pos = v.partition_point(|y| *y <= x);
        v.insert(pos, x);
        Monomial(v)
    }

    /// `d/dx` of the monomial as `(exponent, monomial)`, or `None` if `x` is absent.
    pub fn derivative(&self, x: Var) -> Option<(u32, Monomial)> {
        let first = self.0.iter().position(|&y| y == x)?;
        let k = self.exponent(x);
        let mut v = self.0.clone();
        v.remove(first);
        Some((k, Monomial(v)))
    }

    /// Largest `|index|` among the variables, 0 for the constant monomial.
    pub fn index_bound(&self) -> i64 {
        self.0.iter().map(|v| v.index().abs()).max().unwrap_or(0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let x = self.0[i];
            let mut k = 1;
            while i + k < self.0.len() && self.0[i + k] == x {
                k += 1;
            }
            if !first {
                f.write_str("*")?;
            }
            if k == 1 {
                write!(f, "{x}")?;
            } else {
                write!(f, "{x}^{k}")?;
            }
            first = false;
            i += k;
        }
        Ok(())
    }
}

/// Basis vector `monomial (x) v_i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FockState {
    pub mono: Monomial,
    pub v: u8,
}

impl FockState {
    pub fn vacuum(v: u8) -> Self {
        assert!(v < 2, "V is two dimensional");
        FockState {
            mono: Monomial::one(),
            v,
        }
    }

    pub fn new(vars: impl IntoIterator<Item = Var>, v: u8) -> Self {
        assert!(v < 2, "V is two dimensional");
        FockState {
            mono: Monomial::from_vars(vars),
            v,
        }
    }

    pub fn degree(&self) -> usize {
        self.mono.degree()
    }
}

impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mono.degree() > 0 {
            write!(f, "{}*", self.mono)?;
        }
        write!(f, "v{}", self.v)
    }
}

/// Finite linear combination of [`FockState`]s.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct FockVector {
    terms: FxHashMap<FockState, Rational>,
}

impl FockVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(s: FockState) -> Self {
        let mut out = Self::zero();
        out.add_term(s, Rational::one());
        out
    }

    pub fn vacuum(v: u8) -> Self {
        Self::basis(FockState::vacuum(v))
    }

    pub fn add_term(&mut self, s: FockState, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(s) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &FockVector, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (s, x) in other.terms() {
            self.add_term(s.clone(), x * c);
        }
    }

    /// Terms in unspecified order.
    pub fn terms(&self) -> impl Iterator<Item = (&FockState, &Rational)> + '_ {
        self.terms.iter()
    }

    /// Terms sorted by state.
    pub fn sorted_terms(&self) -> Vec<(&FockState, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_unstable_by(|a, b| a.0.cmp(b.0));
        v
    }

    pub fn coeff(&self, s: &FockState) -> Rational {
        self.terms.get(s).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }
}

impl<'a> Add<&'a FockVector> for &'a FockVector {
    type Output = FockVector;
    fn add(self, rhs: &FockVector) -> FockVector {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl<'a> Sub<&'a FockVector> for &'a FockVector {
    type Output = FockVector;
    fn sub(self, rhs: &FockVector) -> FockVector {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl FromIterator<(FockState, Rational)> for FockVector {
    fn from_iter<I: IntoIterator<Item = (FockState, Rational)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (s, c) in iter {
            out.add_term(s, c);
        }
        out
    }
}

impl fmt::Display for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (s, c)) in self.sorted_terms().into_iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, false) => {}
                (0, true) => f.write_str("-")?,
                (_, false) => f.write_str(" + ")?,
                (_, true) => f.write_str(" - ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FockVector({self})")
    }
}

fn parse_var(word: &str) -> Result<Var> {
    let bad = || Error::Parse(format!("invalid variable {word:?}"));
    let (prefix, idx) = word.split_once('_').ok_or_else(bad)?;
    let kind = match prefix {
        "x" => VarKind::X,
        "x1" => VarKind::X1,
        "y" => VarKind::Y,
        "y1" => VarKind::Y1,
        _ => return Err(bad()),
    };
    let index: i64 = idx.parse().map_err(|_| bad())?;
    if matches!(kind, VarKind::Y | VarKind::Y1) && index >= 0 {
        return Err(Error::Parse(format!(
            "{word}: y variables carry negative indices"
        )));
    }
    Ok(Var::new(kind, index))
}

fn parse_state_term(s: &str) -> Result<(FockState, Rational)> {
    let mut coef = Rational::one();
    let mut vars = Vec::new();
    let mut v = None;
    for (i, piece) in s.split('*').map(str::trim).enumerate() {
        if piece.is_empty() {
            return Err(Error::Parse(format!("empty factor in {s:?}")));
        }
        if i == 0 && piece.starts_with(|c: char| c.is_ascii_digit()) {
            coef = piece.parse()?;
        } else if piece == "v0" || piece == "v1" {
            if v.is_some() {
                return Err(Error::Parse(format!("two V factors in {s:?}")));
            }
            v = Some(if piece == "v0" { 0 } else { 1 });
        } else {
            let (word, exp) = match piece.split_once('^') {
                Some((w, e)) => (
                    w,
                    e.parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad exponent in {piece:?}")))?,
                ),
                None => (piece, 1),
            };
            let x = parse_var(word)?;
            vars.extend(std::iter::repeat_n(x, exp as usize));
        }
    }
    let v = v.ok_or_else(|| Error::Parse(format!("missing v0/v1 factor in {s:?}")))?;
    Ok((FockState::new(vars, v), coef))
}

impl FromStr for FockVector {
    type Err = Error;

    /// Sums of terms like `3/2*x_-1^2*y1_-2*v0`; the `v0`/`v1` factor is
    /// mandatory and `v0` alone is the vacuum.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty vector".into()));
        }
        if s == "0" {
            return Ok(FockVector::zero());
        }
        let mut out = FockVector::zero();
        let mut sign = Rational::one();
        let mut start = 0;
        let bytes = s.as_bytes();
        let mut pieces = Vec::new();
        for i in 0..bytes.len() {
            let c = bytes[i];
            // a sign is a separator unless it follows '_' or '^' (negative index)
            if (c == b'+' || c == b'-') && i > 0 && !matches!(bytes[i - 1], b'_' | b'^') {
                pieces.push((sign.clone(), &s[start..i]));
                sign = if c == b'-' {
                    -Rational::one()
                } else {
                    Rational::one()
                };
                start = i + 1;
            }
        }
        pieces.push((sign, &s[start..]));
        for (k, (sign, body)) in pieces.into_iter().enumerate() {
            let body = body.trim();
            let (sign, body) = match (k, body.strip_prefix('-')) {
                (0, Some(rest)) => (-sign, rest.trim()),
                _ => (sign, body),
            };
            let (state, c) = parse_state_term(body)?;
            out.add_term(state, &c * &sign);
        }
        Ok(out)
    }
}

/// Normal-ordering label of a mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    Annihilation,
    Creation,
}

/// Single elementary operator on basis states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OpAtom {
    Mul(Var),
    Diff(Var),
    Identity,
    /// `v_j -> sum_i m[i][j] v_i`
    OnV(Box<[[Rational; 2]; 2]>),
}

impl OpAtom {
    fn apply_into(&self, s: &FockState, c: &Rational, out: &mut Vec<(FockState, Rational)>) {
        match self {
            OpAtom::Mul(x) => out.push((
                FockState {
                    mono: s.mono.times(*x),
                    v: s.v,
                },
                c.clone(),
            )),
            OpAtom::Diff(x) => {
                if let Some((k, mono)) = s.mono.derivative(*x) {
                    out.push((
                        FockState { mono, v: s.v },
                        c * &Rational::from_int(k as i64),
                    ));
                }
            }
            OpAtom::Identity => out.push((s.clone(), c.clone())),
            OpAtom::OnV(m) => {
                for i in 0..2u8 {
                    let a = &m[i as usize][s.v as usize];
                    if !a.is_zero() {
                        out.push((
                            FockState {
                                mono: s.mono.clone(),
                                v: i,
                            },
                            c * a,
                        ));
                    }
                }
            }
        }
    }

    fn may_act_on(&self, s: &FockState) -> bool {
        match self {
            OpAtom::Diff(x) => s.mono.vars().binary_search(x).is_ok(),
            _ => true,
        }
    }
}

/// A mode operator: a linear combination of [`OpAtom`]s with its ordering label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModeOp {
    pub role: Role,
    pub terms: Vec<(Rational, OpAtom)>,
}

impl ModeOp {
    fn single(role: Role, c: Rational, a: OpAtom) -> Self {
        ModeOp {
            role,
            terms: vec![(c, a)],
        }
    }

    fn push(&mut self, c: Rational, a: OpAtom) {
        if !c.is_zero() {
            self.terms.push((c, a));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether the operator can be nonzero on `s`.
    pub fn may_act_on(&self, s: &FockState) -> bool {
        self.terms.iter().any(|(_, a)| a.may_act_on(s))
    }

    /// Appends `c * self(s)` to `out` (unmerged).
    pub fn apply_state_into(
        &self,
        s: &FockState,
        c: &Rational,
        out: &mut Vec<(FockState, Rational)>,
    ) {
        for (k, a) in &self.terms {
            a.apply_into(s, &(c * k), out);
        }
    }

    pub fn apply(&self, v: &FockVector) -> FockVector {
        let mut buf = Vec::new();
        for (s, c) in v.terms() {
            self.apply_state_into(s, c, &mut buf);
        }
        buf.into_iter().collect()
    }
}

/// Choice of Fock representation of the oscillators, which also fixes the
/// normal ordering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OscConfig {
    pub r: u8,
}

impl OscConfig {
    pub fn new(r: u8) -> Result<Self> {
        if r > 1 {
            return Err(Error::InvalidArgument(format!("r must be 0 or 1, got {r}")));
        }
        Ok(OscConfig { r })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum OscKind {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "a*")]
    AStar,
    #[serde(rename = "a1")]
    A1,
    #[serde(rename = "a1*")]
    A1Star,
}

impl OscKind {
    pub const ALL: [OscKind; 4] = [OscKind::A, OscKind::AStar, OscKind::A1, OscKind::A1Star];

    pub fn name(self) -> &'static str {
        match self {
            OscKind::A => "a",
            OscKind::AStar => "a*",
            OscKind::A1 => "a1",
            OscKind::A1Star => "a1*",
        }
    }

    fn var(self, n: i64) -> Var {
        match self {
            OscKind::A | OscKind::AStar => Var::x(n),
            OscKind::A1 | OscKind::A1Star => Var::x1(n),
        }
    }

    fn is_star(self) -> bool {
        matches!(self, OscKind::AStar | OscKind::A1Star)
    }
}

/// Role of the oscillator mode `which_m` under representation `r`.
pub fn osc_role(which: OscKind, m: i64, cfg: OscConfig) -> Role {
    let derivative = if which.is_star() {
        !(cfg.r == 0 && m <= 0)
    } else {
        cfg.r == 0 && m >= 0
    };
    if derivative {
        Role::Annihilation
    } else {
        Role::Creation
    }
}

/// The operator `rho_r(which_m)`.
pub fn osc_mode(which: OscKind, m: i64, cfg: OscConfig) -> ModeOp {
    let role = osc_role(which, m, cfg);
    let one = Rational::one();
    match (which.is_star(), role) {
        (false, Role::Annihilation) => ModeOp::single(role, one, OpAtom::Diff(which.var(m))),
        (false, Role::Creation) => ModeOp::single(role, one, OpAtom::Mul(which.var(m))),
        (true, Role::Creation) => ModeOp::single(role, one, OpAtom::Mul(which.var(-m))),
        (true, Role::Annihilation) => ModeOp::single(role, -one, OpAtom::Diff(which.var(-m))),
    }
}

pub fn apply_osc(which: OscKind, m: i64, v: &FockVector, cfg: OscConfig) -> FockVector {
    osc_mode(which, m, cfg).apply(v)
}

/// Right-hand side of `[which_m, other_n]` in the oscillator algebra.
pub fn osc_bracket_rhs(which: OscKind, m: i64, other: OscKind, n: i64) -> Rational {
    use OscKind::*;
    let paired = matches!((which, other), (A, AStar) | (A1, A1Star));
    let reversed = matches!((which, other), (AStar, A) | (A1Star, A1));
    if m + n != 0 {
        Rational::zero()
    } else if paired {
        Rational::one()
    } else if reversed {
        -Rational::one()
    } else {
        Rational::zero()
    }
}

#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum HeisVariant {
    /// The published operators, with the unexplained constant `c`.
    Paper,
    /// Operators whose coefficients are forced by the defining relations.
    #[default]
    Derived,
}

/// Parameters of the representation of the Heisenberg algebra on `C[y] (x) V`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HeisParams {
    pub lambda: Rational,
    pub mu: Rational,
    pub nu: Rational,
    pub varkappa: Rational,
    pub chi1: Rational,
    pub kappa0: Rational,
    pub c: Rational,
    pub variant: HeisVariant,
}

impl Default for HeisParams {
    fn default() -> Self {
        HeisParams {
            lambda: Rational::one(),
            mu: Rational::zero(),
            nu: Rational::one(),
            varkappa: Rational::one(),
            chi1: Rational::zero(),
            kappa0: Rational::one(),
            c: Rational::zero(),
            variant: HeisVariant::Derived,
        }
    }
}

impl HeisParams {
    /// The action of `b1_0` on `V`.
    pub fn b10_matrix(&self) -> [[Rational; 2]; 2] {
        [
            [self.mu.clone(), self.varkappa.clone()],
            [self.nu.clone(), self.mu.clone()],
        ]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum HeisKind {
    #[serde(rename = "b")]
    B,
    #[serde(rename = "b1")]
    B1,
}

impl HeisKind {
    pub const ALL: [HeisKind; 2] = [HeisKind::B, HeisKind::B1];

    pub fn name(self) -> &'static str {
        match self {
            HeisKind::B => "b",
            HeisKind::B1 => "b1",
        }
    }
}

fn ri(k: i64) -> Rational {
    Rational::from_int(k)
}

/// The operator `rho(which_n)`.
pub fn heis_mode(which: HeisKind, n: i64, p: &HeisParams) -> ModeOp {
    let k0 = &p.kappa0;
    let role = if n < 0 {
        Role::Creation
    } else {
        Role::Annihilation
    };
    let mut op = ModeOp {
        role,
        terms: Vec::new(),
    };
    match which {
        HeisKind::B if n < 0 => op.push(Rational::one(), OpAtom::Mul(Var::y(n))),
        HeisKind::B if n == 0 => op.push(p.lambda.clone(), OpAtom::Identity),
        HeisKind::B => {
            op.push(&ri(-2 * n) * k0, OpAtom::Diff(Var::y(-n)));
            op.push(&ri(-2 * n) * &p.chi1, OpAtom::Diff(Var::y1(-n)));
        }
        HeisKind::B1 if n < 0 => {
            op.push(Rational::one(), OpAtom::Mul(Var::y1(n)));
            if p.variant == HeisVariant::Paper {
                if n == -1 {
                    op.push(k0.clone(), OpAtom::Diff(Var::y1(-3)));
                }
                if n == -3 {
                    op.push(-k0, OpAtom::Diff(Var::y1(-1)));
                }
            }
        }
        HeisKind::B1 => {
            if n == 0 {
                op.push(Rational::one(), OpAtom::OnV(Box::new(p.b10_matrix())));
            }
            match p.variant {
                HeisVariant::Derived => {
                    if n > 0 {
                        op.push(&ri(-2 * n) * &p.chi1, OpAtom::Diff(Var::y(-n)));
                    }
                    op.push(&ri(-2 * (n + 1)) * k0, OpAtom::Diff(Var::y1(-n - 2)));
                    op.push(&ri(-4 * (2 * n + 1)) * k0, OpAtom::Diff(Var::y1(-n - 1)));
                }
                HeisVariant::Paper if n == 0 => {
                    op.push(&ri(4) * k0, OpAtom::Diff(Var::y1(-4)));
                    op.push(&(&ri(-2) * &p.c) * k0, OpAtom::Diff(Var::y1(-2)));
                }
                HeisVariant::Paper => {
                    op.push(&ri(-2 * n) * &p.chi1, OpAtom::Diff(Var::y(-n)));
                    op.push(&ri(2 * (n + 2)) * k0, OpAtom::Diff(Var::y1(-n - 4)));
                    op.push(
                        &(&ri(-4 * (n + 1)) * &p.c) * k0,
                        OpAtom::Diff(Var::y1(-n - 2)),
                    );
                    op.push(&ri(2 * n) * k0, OpAtom::Diff(Var::y1(-n)));
                }
            }
        }
    }
    op
}

pub fn apply_heis(which: HeisKind, n: i64, v: &FockVector, p: &HeisParams) -> FockVector {
    heis_mode(which, n, p).apply(v)
}

/// The central value of `[which_m, other_n]` prescribed by the defining
/// relations, with `1_0 -> kappa0` and `1_1 -> chi1`.
pub fn heis_bracket_rhs(
    which: HeisKind,
    m: i64,
    other: HeisKind,
    n: i64,
    p: &HeisParams,
) -> Rational {
    let d = |a: i64, b: i64| ri((a == b) as i64);
    match (which, other) {
        (HeisKind::B, HeisKind::B) => &(&ri(-2 * m) * &d(m + n, 0)) * &p.kappa0,
        (HeisKind::B1, HeisKind::B1) => {
            let s = &(&ri(n + 1) * &d(m + n, -2)) + &(&ri(4 * n + 2) * &d(m + n, -1));
            &(&ri(2) * &s) * &p.kappa0
        }
        (HeisKind::B1, HeisKind::B) | (HeisKind::B, HeisKind::B1) => {
            &(&ri(-2 * m) * &d(m + n, 0)) * &p.chi1
        }
    }
}

/// `[which_m, other_n] v - rhs * v`; zero exactly when the relation holds on `v`.
pub fn heis_bracket_check(
    which: HeisKind,
    m: i64,
    other: HeisKind,
    n: i64,
    v: &FockVector,
    p: &HeisParams,
) -> FockVector {
    let a = heis_mode(which, m, p);
    let b = heis_mode(other, n, p);
    let mut out = a.apply(&b.apply(v));
    out.add_scaled(&b.apply(&a.apply(v)), &-Rational::one());
    out.add_scaled(v, &-heis_bracket_rhs(which, m, other, n, p));
    out
}

/// Residual of the oscillator commutation relation on `v`.
pub fn osc_bracket_check(
    which: OscKind,
    m: i64,
    other: OscKind,
    n: i64,
    v: &FockVector,
    cfg: OscConfig,
) -> FockVector {
    let a = osc_mode(which, m, cfg);
    let b = osc_mode(other, n, cfg);
    let mut out = a.apply(&b.apply(v));
    out.add_scaled(&b.apply(&a.apply(v)), &-Rational::one());
    out.add_scaled(v, &-osc_bracket_rhs(which, m, other, n));
    out
}

/// All basis states of degree at most `max_degree` in `vars`, each tensored
/// with `v0` and `v1`, in sorted order.
pub fn basis_states(vars: &[Var], max_degree: usize) -> Vec<FockState> {
    let mut vars = vars.to_vec();
    vars.sort_unstable();
    vars.dedup();
    let mut monos = vec![Monomial::one()];
    let mut frontier: Vec<(Monomial, usize)> = vec![(Monomial::one(), 0)];
    for _ in 0..max_degree {
        let mut next = Vec::new();
        for (m, start) in &frontier {
            for (i, x) in vars.iter().enumerate().skip(*start) {
                let nm = m.times(*x);
                monos.push(nm.clone());
                next.push((nm, i));
            }
        }
        frontier = next;
    }
    let mut out: Vec<FockState> = monos
        .into_iter()
        .flat_map(|m| {
            [
                FockState {
                    mono: m.clone(),
                    v: 0,
                },
                FockState { mono: m, v: 1 },
            ]
        })
        .collect();
    out.sort();
    out
}

/// `x_n, x1_n` for `n` in `[lo, hi]`.
pub fn x_vars(lo: i64, hi: i64) -> Vec<Var> {
    (lo..=hi).flat_map(|n| [Var::x(n), Var::x1(n)]).collect()
}

/// `y_n, y1_n` for the negative `n` in `[lo, hi]`.
pub fn y_vars(lo: i64, hi: i64) -> Vec<Var> {
    (lo..=hi.min(-1))
        .flat_map(|n| [Var::y(n), Var::y1(n)])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fv(s: &str) -> FockVector {
        s.parse().unwrap()
    }

    const R0: OscConfig = OscConfig { r: 0 };
    const R1: OscConfig = OscConfig { r: 1 };

    #[test]
    fn oscillator_examples() {
        assert_eq!(
            apply_osc(OscKind::A, 1, &fv("x_1*x_0*v0"), R0),
            fv("x_0*v0")
        );
        assert_eq!(
            apply_osc(OscKind::AStar, 2, &fv("x_-2*v0"), R0),
            fv("-1*v0")
        );
        for m in -5..=5 {
            assert!(apply_osc(OscKind::AStar, m, &fv("v0"), R1).is_zero());
            assert!(apply_osc(OscKind::A1Star, m, &fv("v1"), R1).is_zero());
        }
        assert_eq!(apply_osc(OscKind::A, -3, &fv("v0"), R0), fv("x_-3*v0"));
    }

    #[test]
    fn heisenberg_examples() {
        let p = HeisParams {
            kappa0: Rational::new(7, 3),
            ..HeisParams::default()
        };
        assert_eq!(apply_heis(HeisKind::B, -2, &fv("v0"), &p), fv("y_-2*v0"));
        assert_eq!(
            apply_heis(HeisKind::B, 2, &fv("y_-2*v0"), &p),
            fv("-28/3*v0")
        );
        let q = HeisParams {
            mu: Rational::new(-2, 7),
            varkappa: Rational::new(11, 4),
            ..HeisParams::default()
        };
        assert_eq!(
            apply_heis(HeisKind::B1, 0, &fv("v1"), &q),
            fv("11/4*v0 - 2/7*v1")
        );
        let r = heis_bracket_check(HeisKind::B1, 0, HeisKind::B1, -2, &fv("y_-1*v0"), &p);
        assert!(r.is_zero(), "{r}");
        assert_eq!(
            heis_bracket_rhs(HeisKind::B1, 0, HeisKind::B1, -2, &p),
            Rational::new(-14, 3)
        );
        assert_eq!(
            heis_bracket_rhs(HeisKind::B, 1, HeisKind::B, -1, &p),
            Rational::new(-14, 3)
        );
        assert!(heis_bracket_rhs(HeisKind::B1, 0, HeisKind::B, 0, &p).is_zero());
    }

    #[test]
    fn state_syntax() {
        let v = fv("3/2*x_-1^2*y1_-2*v0 - v1 + x1_3*v1");
        assert_eq!(v.to_string(), "-v1 + 3/2*x_-1^2*y1_-2*v0 + x1_3*v1");
        assert_eq!(fv(&v.to_string()), v);
        assert_eq!(
            fv("-2*x_1*v0").coeff(&FockState::new([Var::x(1)], 0)),
            Rational::from_int(-2)
        );
        for bad in ["", "x_1", "x_1*v2", "z_1*v0", "y_1*v0", "x_*v0", "v0*v1"] {
            assert!(bad.parse::<FockVector>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn basis_enumeration() {
        let vars = [Var::x(0), Var::x(1), Var::y(-1)];
        let states = basis_states(&vars, 2);
        // (1 + 3 + 6) monomials, two V vectors each
        assert_eq!(states.len(), 20);
        let mut sorted = states.clone();
        sorted.dedup();
        assert_eq!(sorted.len(), 20);
    }

    #[test]
    fn derivative_counts_multiplicity() {
        let m = Monomial::from_vars([Var::x(2), Var::x(2), Var::x(-1)]);
        let (k, rest) = m.derivative(Var::x(2)).unwrap();
        assert_eq!(k, 2);
        assert_eq!(rest, Monomial::from_vars([Var::x(2), Var::x(-1)]));
        assert!(m.derivative(Var::x1(2)).is_none());
    }
}
