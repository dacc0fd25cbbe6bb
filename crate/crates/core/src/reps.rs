//! Irreducible representations of G(m,e,2), their characters and tensor products.
//!
//! Every irreducible is either a one-dimensional character spanned by a
//! semi-invariant polynomial or a two-dimensional `rho(x^p y^q)` induced from the
//! diagonal subgroup H. Characters of H are written `(s, t) = (p - q mod m, q mod d)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::{class_index, conjugacy_classes, ConjClass, GroupElement, GroupParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Name of an irreducible representation.
///
/// `Chi` is spanned by `A^a N^+/- (xy)^c` where `A = x^m - y^m` and
/// `N^+/- = x^n +/- y^n` (n = m/2, even e only); `Rho` is spanned by `x^p y^q, x^q y^p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IrrepLabel {
    Chi { a_twist: bool, n_sign: Option<Sign>, c: u32 },
    Rho { p: u32, q: u32 },
}

impl IrrepLabel {
    pub fn chi(c: u32) -> Self {
        IrrepLabel::Chi { a_twist: false, n_sign: None, c }
    }
    pub fn chi_a(c: u32) -> Self {
        IrrepLabel::Chi { a_twist: true, n_sign: None, c }
    }
    pub fn chi_n(sign: Sign, c: u32) -> Self {
        IrrepLabel::Chi { a_twist: false, n_sign: Some(sign), c }
    }
    pub fn rho(p: u32, q: u32) -> Self {
        IrrepLabel::Rho { p, q }
    }

    pub fn dim(&self) -> u64 {
        match self {
            IrrepLabel::Chi { .. } => 1,
            IrrepLabel::Rho { .. } => 2,
        }
    }

    pub fn is_chi(&self) -> bool {
        matches!(self, IrrepLabel::Chi { .. })
    }

    fn sort_key(&self) -> (u8, u32, u32) {
        match *self {
            IrrepLabel::Chi { a_twist, n_sign, c } => {
                let kind = match (n_sign, a_twist) {
                    (None, false) => 0,
                    (None, true) => 1,
                    (Some(Sign::Plus), false) => 2,
                    (Some(Sign::Minus), false) => 3,
                    (Some(Sign::Plus), true) => 4,
                    (Some(Sign::Minus), true) => 5,
                };
                (kind, c, 0)
            }
            IrrepLabel::Rho { p, q } => (6, q, p),
        }
    }

    /// The spanning polynomial in compact form, e.g. `A(xy)^2`, `N^+xy`, `x^3y`.
    pub fn polynomial_name(&self) -> String {
        match *self {
            IrrepLabel::Chi { a_twist, n_sign, c } => {
                let mut s = String::new();
                if a_twist {
                    s.push('A');
                }
                match n_sign {
                    Some(Sign::Plus) => s.push_str("N^+"),
                    Some(Sign::Minus) => s.push_str("N^-"),
                    None => {}
                }
                match c {
                    0 => {}
                    1 => s.push_str("xy"),
                    _ => s.push_str(&format!("(xy)^{c}")),
                }
                if s.is_empty() {
                    s.push('1');
                }
                s
            }
            IrrepLabel::Rho { p, q } => monomial_string(p, q, ""),
        }
    }
}

fn monomial_string(p: u32, q: u32, sep: &str) -> String {
    let var = |v: char, k: u32| match k {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{k}"),
    };
    let (x, y) = (var('x', p), var('y', q));
    match (x.is_empty(), y.is_empty()) {
        (true, true) => "1".into(),
        (false, true) => x,
        (true, false) => y,
        (false, false) => format!("{x}{sep}{y}"),
    }
}

impl PartialOrd for IrrepLabel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for IrrepLabel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            IrrepLabel::Chi { a_twist, n_sign, c } => {
                let mut prefix = String::new();
                if a_twist {
                    prefix.push('A');
                }
                match n_sign {
                    Some(Sign::Plus) => prefix.push_str("N+"),
                    Some(Sign::Minus) => prefix.push_str("N-"),
                    None => {}
                }
                let tail = match c {
                    0 => String::new(),
                    1 => "xy".into(),
                    _ => format!("(xy)^{c}"),
                };
                let inner = format!("{prefix}{tail}");
                write!(f, "chi({})", if inner.is_empty() { "1" } else { &inner })
            }
            IrrepLabel::Rho { p, q } => write!(f, "rho({})", monomial_string(p, q, " ")),
        }
    }
}

impl FromStr for IrrepLabel {
    type Err = Error;

    /// Accepts `chi(1)`, `chi(xy)`, `chi((xy)^c)`, `chi(A(xy)^c)`, `chi(N+(xy)^c)`,
    /// `chi(N-(xy)^c)`, `rho(x^p y^q)`; `^1` may be omitted and whitespace is ignored.
    /// Exponents are taken as written; see [`Reps::canonicalize`].
    fn from_str(input: &str) -> Result<Self> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |reason: &str| Error::LabelParse { input: input.to_string(), reason: reason.into() };
        let inner = |s: &str, heads: &[&str]| -> Option<String> {
            heads.iter().find_map(|h| {
                s.strip_prefix(h)
                    .and_then(|r| r.strip_prefix('('))
                    .and_then(|r| r.strip_suffix(')'))
                    .map(str::to_string)
            })
        };
        if let Some(body) = inner(&s, &["chi", "χ"]) {
            let mut rest = body.as_str();
            if rest == "1" {
                return Ok(IrrepLabel::chi(0));
            }
            let mut a_twist = false;
            let mut n_sign = None;
            if let Some(r) = rest.strip_prefix('A') {
                a_twist = true;
                rest = r;
            }
            for (tok, sign) in [("N+", Sign::Plus), ("N^+", Sign::Plus), ("N-", Sign::Minus), ("N^-", Sign::Minus)] {
                if let Some(r) = rest.strip_prefix(tok) {
                    n_sign = Some(sign);
                    rest = r;
                    break;
                }
            }
            let c = if rest.is_empty() {
                0
            } else if rest == "xy" || rest == "(xy)" {
                1
            } else if let Some(k) = rest.strip_prefix("(xy)^") {
                k.parse::<u32>().map_err(|_| err("bad exponent of xy"))?
            } else {
                return Err(err("expected 1, xy or (xy)^c"));
            };
            if !a_twist && n_sign.is_none() && rest.is_empty() {
                return Err(err("empty character"));
            }
            let (a_twist, n_sign) = match (a_twist, n_sign) {
                (true, Some(sg)) => (false, Some(sg.flip())),
                other => other,
            };
            return Ok(IrrepLabel::Chi { a_twist, n_sign, c });
        }
        if let Some(body) = inner(&s, &["rho", "ρ"]) {
            let (p, q) = parse_monomial(&body).ok_or_else(|| err("expected monomial x^p y^q"))?;
            return Ok(IrrepLabel::Rho { p, q });
        }
        Err(err("expected chi(...) or rho(...)"))
    }
}

fn parse_monomial(s: &str) -> Option<(u32, u32)> {
    if s == "1" {
        return Some((0, 0));
    }
    let mut rest = s;
    let mut read = |var: char| -> Option<u32> {
        match rest.strip_prefix(var) {
            None => Some(0),
            Some(r) => {
                if let Some(r2) = r.strip_prefix('^') {
                    let end = r2.find(|c: char| !c.is_ascii_digit()).unwrap_or(r2.len());
                    let k = r2[..end].parse().ok()?;
                    rest = &r2[end..];
                    Some(k)
                } else {
                    rest = r;
                    Some(1)
                }
            }
        }
    };
    let p = read('x')?;
    let q = read('y')?;
    if !rest.is_empty() || s.is_empty() {
        return None;
    }
    Some((p, q))
}

impl Serialize for IrrepLabel {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}
impl<'de> Deserialize<'de> for IrrepLabel {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A character of the diagonal subgroup H, as `(s mod m, t mod d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HChar {
    pub s: u32,
    pub t: u32,
}

impl HChar {
    /// The H-character of the monomial `x^p y^q`.
    pub fn of_monomial(params: &GroupParams, p: i64, q: i64) -> HChar {
        HChar {
            s: (p - q).rem_euclid(params.m() as i64) as u32,
            t: q.rem_euclid(params.d() as i64) as u32,
        }
    }

    pub fn add(self, other: HChar, params: &GroupParams) -> HChar {
        HChar { s: (self.s + other.s) % params.m(), t: (self.t + other.t) % params.d() }
    }

    /// Conjugate by the swap: `(s, t) -> (-s, t + s)`.
    pub fn swapped(self, params: &GroupParams) -> HChar {
        HChar { s: (params.m() - self.s) % params.m(), t: (self.t + self.s) % params.d() }
    }

    /// Exponent k with value `z^k` on `D(a,b)`.
    pub fn exponent(self, g: GroupElement, params: &GroupParams) -> u32 {
        let m = params.m() as u64;
        ((self.s as u64 * g.a() as u64 + self.t as u64 * (g.a() + g.b()) as u64) % m) as u32
    }
}

/// Result of inducing an H-character, or of normalising `rho(x^p y^q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Induced {
    Irreducible(IrrepLabel),
    Splits(IrrepLabel, IrrepLabel),
}

impl Induced {
    pub fn constituents(&self) -> Vec<IrrepLabel> {
        match *self {
            Induced::Irreducible(l) => vec![l],
            Induced::Splits(a, b) => vec![a, b],
        }
    }
    pub fn irreducible(&self) -> Option<IrrepLabel> {
        match *self {
            Induced::Irreducible(l) => Some(l),
            Induced::Splits(..) => None,
        }
    }
}

/// Multiset of irreducibles with multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepMultiset(BTreeMap<IrrepLabel, u64>);

impl RepMultiset {
    pub fn new() -> Self {
        Self::default()
    }
    pub fn singleton(l: IrrepLabel) -> Self {
        let mut r = Self::new();
        r.add(l, 1);
        r
    }
    pub fn add(&mut self, l: IrrepLabel, k: u64) {
        if k > 0 {
            *self.0.entry(l).or_insert(0) += k;
        }
    }
    pub fn extend(&mut self, other: &RepMultiset) {
        for (&l, &k) in &other.0 {
            self.add(l, k);
        }
    }
    pub fn multiplicity(&self, l: &IrrepLabel) -> u64 {
        self.0.get(l).copied().unwrap_or(0)
    }
    pub fn dim(&self) -> u64 {
        self.0.iter().map(|(l, k)| l.dim() * k).sum()
    }
    pub fn iter(&self) -> impl Iterator<Item = (&IrrepLabel, &u64)> {
        self.0.iter()
    }
    pub fn labels(&self) -> impl Iterator<Item = &IrrepLabel> {
        self.0.keys()
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    /// Total count of constituents with multiplicity.
    pub fn count(&self) -> u64 {
        self.0.values().sum()
    }
}

impl FromIterator<IrrepLabel> for RepMultiset {
    fn from_iter<I: IntoIterator<Item = IrrepLabel>>(iter: I) -> Self {
        let mut r = RepMultiset::new();
        for l in iter {
            r.add(l, 1);
        }
        r
    }
}

impl fmt::Display for RepMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(l, &k)| if k == 1 { l.to_string() } else { format!("{k}*{l}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

// A one-dimensional character as (H-part uses n, sign on the swap coset, xy-power).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct OneDim {
    n_part: bool,
    negative: bool,
    c: u32,
}

impl OneDim {
    fn of(label: IrrepLabel) -> Option<OneDim> {
        match label {
            IrrepLabel::Chi { a_twist, n_sign, c } => {
                let n_neg = n_sign == Some(Sign::Minus);
                Some(OneDim { n_part: n_sign.is_some(), negative: a_twist ^ n_neg, c })
            }
            IrrepLabel::Rho { .. } => None,
        }
    }
    fn label(self) -> IrrepLabel {
        if self.n_part {
            IrrepLabel::chi_n(if self.negative { Sign::Minus } else { Sign::Plus }, self.c)
        } else {
            IrrepLabel::Chi { a_twist: self.negative, n_sign: None, c: self.c }
        }
    }
    fn hchar(self, params: &GroupParams) -> HChar {
        HChar { s: if self.n_part { params.half_m() } else { 0 }, t: self.c }
    }
}

/// The canonical irreducibles in label order.
pub fn irreducibles(params: &GroupParams) -> Vec<IrrepLabel> {
    let d = params.d();
    let mut out = Vec::new();
    for c in 0..d {
        out.push(IrrepLabel::chi(c));
        out.push(IrrepLabel::chi_a(c));
        if params.e_even() {
            out.push(IrrepLabel::chi_n(Sign::Plus, c));
            out.push(IrrepLabel::chi_n(Sign::Minus, c));
        }
    }
    if params.e_even() {
        let n = params.half_m();
        for q in 0..d {
            for a in 1..n {
                out.push(IrrepLabel::rho(a + q, q));
            }
        }
    } else {
        for q in 0..d {
            for p in q + 1..params.n_plus() {
                out.push(IrrepLabel::rho(p, q));
            }
        }
    }
    out.sort();
    out
}

/// Whether a label is in canonical form for these parameters.
pub fn is_canonical(params: &GroupParams, label: &IrrepLabel) -> bool {
    let d = params.d();
    match *label {
        IrrepLabel::Chi { a_twist, n_sign, c } => {
            c < d && (n_sign.is_none() || (params.e_even() && !a_twist))
        }
        IrrepLabel::Rho { p, q } => {
            if q >= d || p <= q {
                return false;
            }
            if params.e_even() {
                p - q < params.half_m()
            } else {
                p < params.n_plus()
            }
        }
    }
}

/// The H-character restricted from an irreducible (one of the two for `rho`).
pub fn hchar_of(params: &GroupParams, label: &IrrepLabel) -> HChar {
    match *label {
        IrrepLabel::Rho { p, q } => HChar::of_monomial(params, p as i64, q as i64),
        chi => OneDim::of(chi).unwrap().hchar(params),
    }
}

/// `Ind_H^G` of an H-character, named canonically.
pub fn induce(params: &GroupParams, h: HChar) -> Induced {
    let m = params.m();
    let partner = h.swapped(params);
    if partner == h {
        // Fixed by the swap: s = 0, or s = m/2 with e even.
        return if h.s == 0 {
            Induced::Splits(IrrepLabel::chi(h.t), IrrepLabel::chi_a(h.t))
        } else {
            debug_assert!(params.e_even() && 2 * h.s == m);
            Induced::Splits(IrrepLabel::chi_n(Sign::Plus, h.t), IrrepLabel::chi_n(Sign::Minus, h.t))
        };
    }
    for cand in [h, partner] {
        let l = IrrepLabel::rho(cand.t + cand.s, cand.t);
        if is_canonical(params, &l) {
            return Induced::Irreducible(l);
        }
    }
    unreachable!("no canonical representative for H-character {h:?} in {params}")
}

/// `rho(x^p y^q)` as a canonical irreducible, or the pair it splits into.
pub fn normalize_rho(params: &GroupParams, p: i64, q: i64) -> Induced {
    induce(params, HChar::of_monomial(params, p, q))
}

/// Tensor product of two irreducibles.
pub fn tensor_decompose(params: &GroupParams, u: &IrrepLabel, w: &IrrepLabel) -> RepMultiset {
    match (OneDim::of(*u), OneDim::of(*w)) {
        (Some(a), Some(b)) => {
            let n_part = a.n_part ^ b.n_part;
            let c = (a.c + b.c) % params.d();
            // N^+ N^+ = x^m + 2(xy)^n + y^m has trivial H-character.
            RepMultiset::singleton(OneDim { n_part, negative: a.negative ^ b.negative, c }.label())
        }
        (Some(chi), None) | (None, Some(chi)) => {
            let rho = if u.is_chi() { w } else { u };
            let h = hchar_of(params, rho).add(chi.hchar(params), params);
            induce(params, h).constituents().into_iter().collect()
        }
        (None, None) => {
            let h1 = hchar_of(params, u);
            let h2 = hchar_of(params, w);
            let mut out = RepMultiset::new();
            for h in [h1.add(h2, params), h1.add(h2.swapped(params), params)] {
                for l in induce(params, h).constituents() {
                    out.add(l, 1);
                }
            }
            out
        }
    }
}

/// Tensor product of a multiset with an irreducible.
pub fn tensor_multiset(params: &GroupParams, ms: &RepMultiset, w: &IrrepLabel) -> RepMultiset {
    let mut out = RepMultiset::new();
    for (u, &k) in ms.iter() {
        for (l, &j) in tensor_decompose(params, u, w).iter() {
            out.add(*l, k * j);
        }
    }
    out
}

/// Tensor product of two multisets.
pub fn tensor_multisets(params: &GroupParams, a: &RepMultiset, b: &RepMultiset) -> RepMultiset {
    let mut out = RepMultiset::new();
    for (w, &k) in b.iter() {
        for (l, &j) in tensor_multiset(params, a, w).iter() {
            out.add(*l, k * j);
        }
    }
    out
}

/// The span of `x, y`.
pub fn linear_forms(params: &GroupParams) -> RepMultiset {
    normalize_rho(params, 1, 0).constituents().into_iter().collect()
}

/// `chi(Axy)`, spanned by `x ^ y`.
pub fn det_linear_forms(params: &GroupParams) -> IrrepLabel {
    IrrepLabel::chi_a(1 % params.d())
}

/// Character value of an irreducible at a group element.
pub fn character_value(params: &GroupParams, label: &IrrepLabel, g: GroupElement) -> Cyclotomic {
    let m = params.m();
    match *label {
        IrrepLabel::Rho { p, q } => {
            if g.swap() {
                Cyclotomic::zero(m)
            } else {
                let (a, b) = (g.a() as i64, g.b() as i64);
                let (p, q) = (p as i64, q as i64);
                &Cyclotomic::root_power(m, p * a + q * b) + &Cyclotomic::root_power(m, p * b + q * a)
            }
        }
        chi => {
            let od = OneDim::of(chi).unwrap();
            let z = Cyclotomic::root_power(m, od.hchar(params).exponent(g, params) as i64);
            if g.swap() && od.negative {
                -z
            } else {
                z
            }
        }
    }
}

/// Representation data for one group, with a lazily built character table.
pub struct Reps {
    params: GroupParams,
    classes: Vec<ConjClass>,
    class_of: HashMap<GroupElement, usize>,
    irreps: Vec<IrrepLabel>,
    index: HashMap<IrrepLabel, usize>,
    table: OnceLock<Vec<Vec<Cyclotomic>>>,
    conj_table: OnceLock<Vec<Vec<Cyclotomic>>>,
}

impl Reps {
    pub fn new(params: GroupParams) -> Self {
        let classes = conjugacy_classes(&params);
        let class_of = class_index(&classes);
        let irreps = irreducibles(&params);
        let index = irreps.iter().enumerate().map(|(i, l)| (*l, i)).collect();
        Reps { params, classes, class_of, irreps, index, table: OnceLock::new(), conj_table: OnceLock::new() }
    }

    pub fn params(&self) -> &GroupParams {
        &self.params
    }
    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }
    pub fn irreps(&self) -> &[IrrepLabel] {
        &self.irreps
    }
    pub fn index_of(&self, l: &IrrepLabel) -> Option<usize> {
        self.index.get(l).copied()
    }
    pub fn class_of(&self, g: &GroupElement) -> usize {
        self.class_of[g]
    }

    /// Brings a parsed label to canonical form; fails if it is not irreducible here.
    pub fn canonicalize(&self, label: &IrrepLabel) -> Result<IrrepLabel> {
        let p = &self.params;
        match *label {
            IrrepLabel::Chi { n_sign: Some(_), .. } if !p.e_even() => {
                Err(Error::NotIrreducible(format!("{label} (N exists only for even e)")))
            }
            IrrepLabel::Chi { a_twist, n_sign, c } => {
                let l = match n_sign {
                    Some(sg) if a_twist => IrrepLabel::chi_n(sg.flip(), c % p.d()),
                    _ => IrrepLabel::Chi { a_twist, n_sign, c: c % p.d() },
                };
                Ok(l)
            }
            IrrepLabel::Rho { p: a, q: b } => normalize_rho(p, a as i64, b as i64)
                .irreducible()
                .ok_or_else(|| Error::NotIrreducible(label.to_string())),
        }
    }

    /// Rows are irreducibles in label order, columns are classes.
    pub fn char_table(&self) -> &Vec<Vec<Cyclotomic>> {
        self.table.get_or_init(|| {
            self.irreps
                .iter()
                .map(|l| {
                    self.classes
                        .iter()
                        .map(|c| character_value(&self.params, l, c.representative))
                        .collect()
                })
                .collect()
        })
    }

    pub fn character_row(&self, l: &IrrepLabel) -> Result<&Vec<Cyclotomic>> {
        let i = self.index_of(l).ok_or_else(|| Error::NotIrreducible(l.to_string()))?;
        Ok(&self.char_table()[i])
    }

    /// `(1/|G|) sum_g f(g) conj(h(g))` for class functions given per class.
    pub fn inner_product_class_fns(&self, f: &[Cyclotomic], h: &[Cyclotomic]) -> Result<BigRational> {
        let hbar: Vec<Cyclotomic> = h.iter().map(Cyclotomic::conj).collect();
        self.pair_with_conjugated(f, &hbar)
    }

    fn pair_with_conjugated(&self, f: &[Cyclotomic], hbar: &[Cyclotomic]) -> Result<BigRational> {
        let sizes: Vec<u64> = self.classes.iter().map(|c| c.size() as u64).collect();
        let total = Cyclotomic::weighted_dot(f, hbar, &sizes)?.rational_part()?;
        Ok(total / BigRational::from_integer(BigInt::from(self.params.order())))
    }

    fn conj_table(&self) -> &Vec<Vec<Cyclotomic>> {
        self.conj_table.get_or_init(|| {
            self.char_table().iter().map(|row| row.iter().map(Cyclotomic::conj).collect()).collect()
        })
    }

    pub fn inner_product(&self, u: &IrrepLabel, w: &IrrepLabel) -> Result<BigRational> {
        let j = self.index_of(w).ok_or_else(|| Error::NotIrreducible(w.to_string()))?;
        self.pair_with_conjugated(self.character_row(u)?, &self.conj_table()[j])
    }

    /// Decomposes a class function into irreducibles by inner products.
    pub fn decompose_class_fn(&self, f: &[Cyclotomic]) -> Result<RepMultiset> {
        let mut out = RepMultiset::new();
        for (l, row) in self.irreps.iter().zip(self.conj_table()) {
            let k = self.pair_with_conjugated(f, row)?;
            if !k.is_integer() || k.is_negative() {
                return Err(Error::NonIntegral(format!("<f, {l}> = {k}")));
            }
            out.add(*l, k.to_integer().to_u64().unwrap());
        }
        Ok(out)
    }

    /// `dim W^<g>`, averaging the character over the cyclic group generated by g.
    pub fn invariant_dim(&self, w: &IrrepLabel, g: GroupElement) -> Result<u64> {
        let p = &self.params;
        let ord = p.element_order(g);
        let mut acc = Cyclotomic::zero(p.m());
        let mut x = p.identity();
        for _ in 0..ord {
            acc = &acc + &character_value(p, w, x);
            x = p.mul(x, g);
        }
        let avg = acc.rational_part()? / BigRational::from_integer(BigInt::from(ord));
        if !avg.is_integer() || avg.is_negative() {
            return Err(Error::NonIntegral(format!("dim {w}^<{g}> = {avg}")));
        }
        Ok(avg.to_integer().to_u64().unwrap())
    }

    /// Every irreducible with multiplicity equal to its dimension.
    pub fn regular_rep(&self) -> RepMultiset {
        let mut out = RepMultiset::new();
        for l in &self.irreps {
            out.add(*l, l.dim());
        }
        out
    }

    pub fn tensor(&self, u: &IrrepLabel, w: &IrrepLabel) -> RepMultiset {
        tensor_decompose(&self.params, u, w)
    }

    pub fn normalize_rho(&self, p: i64, q: i64) -> Induced {
        normalize_rho(&self.params, p, q)
    }

    pub fn linear_forms(&self) -> RepMultiset {
        linear_forms(&self.params)
    }
}

/// Pointwise product of two class functions.
pub fn product_class_fn(f: &[Cyclotomic], h: &[Cyclotomic]) -> Vec<Cyclotomic> {
    f.iter().zip(h).map(|(a, b)| a * b).collect()
}
