//! Finite-dimensional G-equivariant modules at the origin with monomial bases:
//! decomposition into irreducibles, equivariant filtrations, socles and generators.
//!
//! A basis element is an atom `T x^p y^q` where the twist T is 1, `A`, or `N^+/-`.
//! The swap sends `x^p y^q` to `x^q y^p` (up to sign), so the span of an atom and
//! its swap is a G-submodule of the underlying vector space.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::GroupParams;
use crate::reps::{normalize_rho, tensor_decompose, IrrepLabel, RepMultiset, Sign};

/// Semi-invariant factor carried by an atom.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AtomTwist {
    None,
    A,
    NPlus,
    NMinus,
}

impl AtomTwist {
    fn character(self) -> Option<IrrepLabel> {
        match self {
            AtomTwist::None => None,
            AtomTwist::A => Some(IrrepLabel::chi_a(0)),
            AtomTwist::NPlus => Some(IrrepLabel::chi_n(Sign::Plus, 0)),
            AtomTwist::NMinus => Some(IrrepLabel::chi_n(Sign::Minus, 0)),
        }
    }

    fn degree(self, params: &GroupParams) -> u32 {
        match self {
            AtomTwist::None => 0,
            AtomTwist::A => params.m(),
            AtomTwist::NPlus | AtomTwist::NMinus => params.half_m(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "AtomRepr", try_from = "AtomRepr")]
pub struct Atom {
    pub p: u32,
    pub q: u32,
    pub twist: AtomTwist,
}

impl Atom {
    pub fn plain(p: u32, q: u32) -> Self {
        Atom { p, q, twist: AtomTwist::None }
    }
    pub fn twisted(p: u32, q: u32, twist: AtomTwist) -> Self {
        Atom { p, q, twist }
    }
    pub fn swapped(self) -> Self {
        Atom { p: self.q, q: self.p, twist: self.twist }
    }
    pub fn degree(&self, params: &GroupParams) -> u32 {
        self.p + self.q + self.twist.degree(params)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = match self.twist {
            AtomTwist::None => "",
            AtomTwist::A => "A*",
            AtomTwist::NPlus => "N^+*",
            AtomTwist::NMinus => "N^-*",
        };
        write!(f, "{t}x^{}y^{}", self.p, self.q)
    }
}

// JSON form `[p, q, flag]`: flag is false, true (A) or "N+"/"N-".
#[derive(Serialize, Deserialize)]
struct AtomRepr(u32, u32, FlagRepr);

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum FlagRepr {
    A(bool),
    N(String),
}

impl From<Atom> for AtomRepr {
    fn from(a: Atom) -> Self {
        let flag = match a.twist {
            AtomTwist::None => FlagRepr::A(false),
            AtomTwist::A => FlagRepr::A(true),
            AtomTwist::NPlus => FlagRepr::N("N+".into()),
            AtomTwist::NMinus => FlagRepr::N("N-".into()),
        };
        AtomRepr(a.p, a.q, flag)
    }
}

impl TryFrom<AtomRepr> for Atom {
    type Error = String;
    fn try_from(r: AtomRepr) -> std::result::Result<Self, String> {
        let twist = match r.2 {
            FlagRepr::A(false) => AtomTwist::None,
            FlagRepr::A(true) => AtomTwist::A,
            FlagRepr::N(s) if s == "N+" => AtomTwist::NPlus,
            FlagRepr::N(s) if s == "N-" => AtomTwist::NMinus,
            FlagRepr::N(s) => return Err(format!("unknown atom twist {s:?}")),
        };
        Ok(Atom { p: r.0, q: r.1, twist })
    }
}

/// How a module's basis was produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    /// `numerator / denominator` for monomial ideals given by generator exponents.
    IdealQuotient { numerator: Vec<(u32, u32)>, denominator: Vec<(u32, u32)> },
    Custom,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialModule {
    pub name: String,
    pub params: GroupParams,
    pub basis: BTreeSet<Atom>,
    pub provenance: Provenance,
}

fn divides(g: (u32, u32), p: u32, q: u32) -> bool {
    g.0 <= p && g.1 <= q
}

fn in_ideal(gens: &[(u32, u32)], p: u32, q: u32) -> bool {
    gens.iter().any(|&g| divides(g, p, q))
}

impl MonomialModule {
    /// Monomials in the numerator ideal but not the denominator ideal.
    ///
    /// The denominator must lie inside the numerator and contain pure powers of
    /// both variables; both ideals must be swap-stable.
    pub fn ideal_quotient(
        params: GroupParams,
        name: &str,
        numerator: &[(u32, u32)],
        denominator: &[(u32, u32)],
    ) -> Result<Self> {
        for &(p, q) in denominator {
            if !in_ideal(numerator, p, q) {
                return Err(Error::Module(format!(
                    "{name}: denominator generator x^{p}y^{q} is not in the numerator ideal"
                )));
            }
        }
        let xbound = denominator.iter().filter(|g| g.1 == 0).map(|g| g.0).min();
        let ybound = denominator.iter().filter(|g| g.0 == 0).map(|g| g.1).min();
        let (Some(xb), Some(yb)) = (xbound, ybound) else {
            return Err(Error::Module(format!("{name}: quotient is not finite-dimensional")));
        };
        let mut basis = BTreeSet::new();
        for p in 0..xb {
            for q in 0..yb {
                if in_ideal(numerator, p, q) && !in_ideal(denominator, p, q) {
                    basis.insert(Atom::plain(p, q));
                }
            }
        }
        let module = MonomialModule {
            name: name.to_string(),
            params,
            basis,
            provenance: Provenance::IdealQuotient {
                numerator: numerator.to_vec(),
                denominator: denominator.to_vec(),
            },
        };
        module.check_swap_closed()?;
        Ok(module)
    }

    /// A module given by an explicit swap-closed set of atoms.
    pub fn custom(params: GroupParams, name: &str, atoms: impl IntoIterator<Item = Atom>) -> Result<Self> {
        let basis: BTreeSet<Atom> = atoms.into_iter().collect();
        if !params.e_even() && basis.iter().any(|a| matches!(a.twist, AtomTwist::NPlus | AtomTwist::NMinus)) {
            return Err(Error::Module(format!("{name}: N-twisted atoms need even e")));
        }
        let module = MonomialModule { name: name.to_string(), params, basis, provenance: Provenance::Custom };
        module.check_swap_closed()?;
        Ok(module)
    }

    /// `(x^a, y^a) / (x^(a+1), y^(a+1))`: basis `x^a y^b, x^b y^a` for `b <= a`.
    pub fn f_module(params: GroupParams, a: u32) -> Result<Self> {
        Self::ideal_quotient(params, &format!("F(x^{a})"), &[(a, 0), (0, a)], &[(a + 1, 0), (0, a + 1)])
    }

    /// `K[x,y] / ((xy)^d, x^(n+), y^(n+))` for odd e, with `n+ = (m+d)/2`.
    pub fn xi_module(params: GroupParams) -> Result<Self> {
        if params.e_even() {
            return Err(Error::Unsupported("the module xi is defined for odd e only".into()));
        }
        let (d, np) = (params.d(), params.n_plus());
        Self::ideal_quotient(params, "xi", &[(0, 0)], &[(d, d), (np, 0), (0, np)])
    }

    /// Global sections of the scheme-theoretic fibre of the quotient map over the
    /// image of the origin: `x^a y^b` with `min(a,b) < d`, `max(a,b) < m`, and
    /// `A x^a y^b` with `a, b < d`.
    pub fn fiber0(params: GroupParams) -> Self {
        let (m, d) = (params.m(), params.d());
        let mut atoms = Vec::new();
        for p in 0..m {
            for q in 0..m {
                if p.min(q) < d {
                    atoms.push(Atom::plain(p, q));
                }
                if p < d && q < d {
                    atoms.push(Atom::twisted(p, q, AtomTwist::A));
                }
            }
        }
        Self::custom(params, "fiber0", atoms).expect("fibre basis is swap-closed")
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn check_swap_closed(&self) -> Result<()> {
        for a in &self.basis {
            if !self.basis.contains(&a.swapped()) {
                return Err(Error::Module(format!("{}: basis not closed under the swap ({a})", self.name)));
            }
        }
        Ok(())
    }

    /// Irreducible constituents of the span of each swap-orbit of atoms, with its degree.
    pub fn graded_pieces(&self) -> Vec<(IrrepLabel, u32)> {
        self.pieces_of(self.basis.iter())
    }

    fn pieces_of<'a>(&self, atoms: impl Iterator<Item = &'a Atom>) -> Vec<(IrrepLabel, u32)> {
        let params = &self.params;
        let mut out = Vec::new();
        for atom in atoms {
            if atom.p < atom.q {
                continue;
            }
            let base: Vec<IrrepLabel> = if atom.p == atom.q {
                vec![IrrepLabel::chi(atom.p % params.d())]
            } else {
                normalize_rho(params, atom.p as i64, atom.q as i64).constituents()
            };
            let deg = atom.degree(params);
            for b in base {
                match atom.twist.character() {
                    None => out.push((b, deg)),
                    Some(t) => {
                        for (l, &k) in tensor_decompose(params, &b, &t).iter() {
                            for _ in 0..k {
                                out.push((*l, deg));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Decomposition of the whole module as a G-representation.
    pub fn decompose(&self) -> RepMultiset {
        self.graded_pieces().into_iter().map(|(l, _)| l).collect()
    }

    /// Graded pieces of the degree filtration, innermost submodule first: pieces are
    /// listed by descending total degree, ties in label order. Every tail of the
    /// list spans a quotient module; the last entry is the top.
    pub fn filtration(&self) -> Vec<IrrepLabel> {
        let mut pieces = self.graded_pieces();
        pieces.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        pieces.into_iter().map(|(l, _)| l).collect()
    }

    /// Multiplication by x and y must send atoms to atoms or to zero. This holds for
    /// untwisted bases that are convex for divisibility, which is exactly the
    /// difference of two monomial ideals.
    pub fn check_action_closed(&self) -> Result<()> {
        if self.basis.iter().any(|a| a.twist != AtomTwist::None) {
            return Err(Error::Module(format!(
                "{}: x,y action on twisted atoms is not monomial; socle and generators are unavailable",
                self.name
            )));
        }
        let gens: Vec<(u32, u32)> = self.basis.iter().map(|a| (a.p, a.q)).collect();
        for a in &self.basis {
            let preds = [(a.p.checked_sub(1), Some(a.q)), (Some(a.p), a.q.checked_sub(1))];
            for (p, q) in preds {
                if let (Some(p), Some(q)) = (p, q) {
                    if in_ideal(&gens, p, q) && !self.basis.contains(&Atom::plain(p, q)) {
                        return Err(Error::Module(format!(
                            "{}: basis is not a difference of monomial ideals near x^{p}y^{q}",
                            self.name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The socle: atoms killed by both x and y.
    pub fn socle(&self) -> Result<RepMultiset> {
        self.check_action_closed()?;
        let has = |p: u32, q: u32| self.basis.contains(&Atom::plain(p, q));
        let atoms: Vec<&Atom> = self.basis.iter().filter(|a| !has(a.p + 1, a.q) && !has(a.p, a.q + 1)).collect();
        Ok(self.pieces_of(atoms.into_iter()).into_iter().map(|(l, _)| l).collect())
    }

    /// The top `M / (x,y)M`: atoms not reached by multiplication from another atom.
    pub fn generators(&self) -> Result<RepMultiset> {
        self.check_action_closed()?;
        let has = |p: Option<u32>, q: Option<u32>| match (p, q) {
            (Some(p), Some(q)) => self.basis.contains(&Atom::plain(p, q)),
            _ => false,
        };
        let atoms: Vec<&Atom> = self
            .basis
            .iter()
            .filter(|a| !has(a.p.checked_sub(1), Some(a.q)) && !has(Some(a.p), a.q.checked_sub(1)))
            .collect();
        Ok(self.pieces_of(atoms.into_iter()).into_iter().map(|(l, _)| l).collect())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("module serialises")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let m: MonomialModule = serde_json::from_str(s).map_err(|e| Error::Module(e.to_string()))?;
        m.check_swap_closed()?;
        Ok(m)
    }
}
