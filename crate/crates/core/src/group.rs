//! The group G(m,e,2): monomial 2x2 matrices `D(a,b)` and `D(a,b)t`, with `D(a,b)`
//! the diagonal matrix `diag(z^a, z^b)`, `t` the coordinate swap and `a + b = 0 mod e`.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};

/// Validated parameters `(m, e)` with `d = m / e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupParams {
    m: u32,
    e: u32,
    d: u32,
}

impl GroupParams {
    /// Requires `m >= 2` and `e | m`.
    pub fn new(m: u32, e: u32) -> Result<Self> {
        let bad = |reason: &str| Error::InvalidParams { m, e, reason: reason.to_string() };
        if m < 2 {
            return Err(bad("m must be at least 2"));
        }
        if e == 0 || m % e != 0 {
            return Err(bad("e must be a positive divisor of m"));
        }
        Ok(GroupParams { m, e, d: m / e })
    }

    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn e(&self) -> u32 {
        self.e
    }
    pub fn d(&self) -> u32 {
        self.d
    }
    pub fn order(&self) -> u64 {
        2 * self.m as u64 * self.d as u64
    }
    pub fn e_even(&self) -> bool {
        self.e % 2 == 0
    }

    /// `m / 2`; only meaningful for even e.
    pub fn half_m(&self) -> u32 {
        self.m / 2
    }
    /// `(m + d) / 2` for odd e.
    pub fn n_plus(&self) -> u32 {
        (self.m + self.d) / 2
    }
    /// `(m - d) / 2` for odd e.
    pub fn n_minus(&self) -> u32 {
        (self.m - self.d) / 2
    }

    fn md(&self, x: i64) -> u32 {
        x.rem_euclid(self.m as i64) as u32
    }

    pub fn contains(&self, a: u32, b: u32) -> bool {
        (a + b) % self.e == 0
    }

    pub fn element(&self, a: i64, b: i64, swap: bool) -> Result<GroupElement> {
        let (a, b) = (self.md(a), self.md(b));
        if !self.contains(a, b) {
            return Err(Error::NotInGroup { a, b, swap, m: self.m, e: self.e });
        }
        Ok(GroupElement { swap, a, b })
    }

    /// All `2md` elements in ascending `(swap, a, b)` order.
    pub fn elements(&self) -> Vec<GroupElement> {
        let mut out = Vec::with_capacity(self.order() as usize);
        for swap in [false, true] {
            for a in 0..self.m {
                for b in 0..self.m {
                    if self.contains(a, b) {
                        out.push(GroupElement { swap, a, b });
                    }
                }
            }
        }
        out
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { swap: false, a: 0, b: 0 }
    }
    /// `D(1,-1)`.
    pub fn zeta_tilde(&self) -> GroupElement {
        GroupElement { swap: false, a: 1 % self.m, b: self.m - 1 }
    }
    /// `D(0,e)`.
    pub fn gamma_y(&self) -> GroupElement {
        GroupElement { swap: false, a: 0, b: self.e % self.m }
    }
    /// `D(e,0)`.
    pub fn gamma_x(&self) -> GroupElement {
        GroupElement { swap: false, a: self.e % self.m, b: 0 }
    }
    pub fn tau(&self) -> GroupElement {
        GroupElement { swap: true, a: 0, b: 0 }
    }

    /// Product `g h`, using `t D(a,b) = D(b,a) t`.
    pub fn mul(&self, g: GroupElement, h: GroupElement) -> GroupElement {
        let (ha, hb) = if g.swap { (h.b, h.a) } else { (h.a, h.b) };
        GroupElement {
            swap: g.swap ^ h.swap,
            a: (g.a + ha) % self.m,
            b: (g.b + hb) % self.m,
        }
    }

    pub fn inv(&self, g: GroupElement) -> GroupElement {
        let neg = |x: u32| (self.m - x) % self.m;
        if g.swap {
            GroupElement { swap: true, a: neg(g.b), b: neg(g.a) }
        } else {
            GroupElement { swap: false, a: neg(g.a), b: neg(g.b) }
        }
    }

    /// `h g h^-1`.
    pub fn conjugate(&self, g: GroupElement, h: GroupElement) -> GroupElement {
        self.mul(self.mul(h, g), self.inv(h))
    }

    pub fn power(&self, g: GroupElement, k: u64) -> GroupElement {
        let mut acc = self.identity();
        for _ in 0..k {
            acc = self.mul(acc, g);
        }
        acc
    }

    pub fn element_order(&self, g: GroupElement) -> u64 {
        let id = self.identity();
        let mut acc = g;
        let mut k = 1;
        while acc != id {
            acc = self.mul(acc, g);
            k += 1;
        }
        k
    }

    /// The matrix of `g` acting on `V = K^2`.
    pub fn matrix(&self, g: GroupElement) -> [[Cyclotomic; 2]; 2] {
        let m = self.m;
        let za = Cyclotomic::root_power(m, g.a as i64);
        let zb = Cyclotomic::root_power(m, g.b as i64);
        let o = Cyclotomic::zero(m);
        if g.swap {
            [[o.clone(), za], [zb, o]]
        } else {
            [[za, o.clone()], [o, zb]]
        }
    }

    /// Where `g` fixes `V` pointwise.
    pub fn fixed_locus(&self, g: GroupElement) -> FixedLocus {
        if g.swap {
            if (g.a + g.b) % self.m == 0 {
                FixedLocus::Diagonal { i: g.a }
            } else {
                FixedLocus::Origin
            }
        } else {
            match (g.a == 0, g.b == 0) {
                (true, true) => FixedLocus::Plane,
                (true, false) => FixedLocus::VanY,
                (false, true) => FixedLocus::VanX,
                (false, false) => FixedLocus::Origin,
            }
        }
    }

    /// Number of conjugacy classes from the closed formula.
    pub fn class_count_formula(&self) -> usize {
        let (m, d) = (self.m as usize, self.d as usize);
        if self.e_even() {
            (m - 2) * d / 2 + 4 * d
        } else {
            (m - 1) * d / 2 + 2 * d
        }
    }

    /// `d` for odd e, `2d` for even e. G(2,2,2) is the exception: it is abelian of order 4.
    pub fn centre_order_formula(&self) -> usize {
        if self.e_even() {
            2 * self.d as usize
        } else {
            self.d as usize
        }
    }

    pub fn reflection_count_formula(&self) -> usize {
        2 * (self.d as usize - 1) + self.m as usize
    }

    /// One reflection per conjugacy class of reflections: the powers
    /// `D(0,ce)` for `0 < c < d`, then `t`, then `D(1,-1)t` when e is even.
    pub fn reflection_class_representatives(&self) -> Vec<GroupElement> {
        let mut out: Vec<GroupElement> =
            (1..self.d).map(|c| self.power(self.gamma_y(), c as u64)).collect();
        out.push(self.tau());
        if self.e_even() {
            out.push(self.mul(self.zeta_tilde(), self.tau()));
        }
        out
    }
}

impl fmt::Display for GroupParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G({},{},2)", self.m, self.e)
    }
}

/// `D(a,b)` or `D(a,b)t`; exponents reduced mod m. Ordered by `(swap, a, b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(u32, u32, bool)", into = "(u32, u32, bool)")]
pub struct GroupElement {
    swap: bool,
    a: u32,
    b: u32,
}

impl GroupElement {
    pub fn a(&self) -> u32 {
        self.a
    }
    pub fn b(&self) -> u32 {
        self.b
    }
    pub fn swap(&self) -> bool {
        self.swap
    }
}

impl From<(u32, u32, bool)> for GroupElement {
    fn from((a, b, swap): (u32, u32, bool)) -> Self {
        GroupElement { swap, a, b }
    }
}
impl From<GroupElement> for (u32, u32, bool) {
    fn from(g: GroupElement) -> Self {
        (g.a, g.b, g.swap)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D({},{})", self.a, self.b)?;
        if self.swap {
            write!(f, "t")?;
        }
        Ok(())
    }
}

/// Pointwise fixed subspace of an element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FixedLocus {
    Plane,
    /// `{y = 0}`.
    VanY,
    /// `{x = 0}`.
    VanX,
    /// `{x = z^i y}`.
    Diagonal { i: u32 },
    Origin,
}

impl FixedLocus {
    pub fn is_line(&self) -> bool {
        matches!(self, FixedLocus::VanY | FixedLocus::VanX | FixedLocus::Diagonal { .. })
    }
}

impl fmt::Display for FixedLocus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixedLocus::Plane => write!(f, "plane"),
            FixedLocus::VanY => write!(f, "Van(y)"),
            FixedLocus::VanX => write!(f, "Van(x)"),
            FixedLocus::Diagonal { i } => write!(f, "Van(x - z^{i} y)"),
            FixedLocus::Origin => write!(f, "origin"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClass {
    /// Lexicographically least member; for `t`-type classes this is `D(0,ce)t` or `D(1,ce-1)t`.
    pub representative: GroupElement,
    /// First member met while enumerating the group.
    pub raw_representative: GroupElement,
    pub members: Vec<GroupElement>,
    pub centraliser_order: u64,
    pub fixed_locus: FixedLocus,
}

impl ConjClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Conjugacy classes by orbit enumeration, sorted by representative.
pub fn conjugacy_classes(params: &GroupParams) -> Vec<ConjClass> {
    let elements = params.elements();
    let mut seen: HashMap<GroupElement, usize> = HashMap::new();
    let mut classes = Vec::new();
    for &g in &elements {
        if seen.contains_key(&g) {
            continue;
        }
        let mut members: Vec<GroupElement> =
            elements.iter().map(|&h| params.conjugate(g, h)).collect();
        members.sort();
        members.dedup();
        for &x in &members {
            seen.insert(x, classes.len());
        }
        let representative = members[0];
        classes.push(ConjClass {
            representative,
            raw_representative: g,
            centraliser_order: params.order() / members.len() as u64,
            fixed_locus: params.fixed_locus(representative),
            members,
        });
    }
    classes.sort_by_key(|c| c.representative);
    classes
}

/// Index of the class containing each element.
pub fn class_index(classes: &[ConjClass]) -> HashMap<GroupElement, usize> {
    let mut out = HashMap::new();
    for (i, c) in classes.iter().enumerate() {
        for &g in &c.members {
            out.insert(g, i);
        }
    }
    out
}

/// One row of the exported class table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub representative: GroupElement,
    pub size: usize,
    pub centraliser_order: u64,
    pub fixed_locus: FixedLocus,
}

pub fn class_records(classes: &[ConjClass]) -> Vec<ClassRecord> {
    classes
        .iter()
        .map(|c| ClassRecord {
            representative: c.representative,
            size: c.size(),
            centraliser_order: c.centraliser_order,
            fixed_locus: c.fixed_locus,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_params(max_m: u32) -> Vec<GroupParams> {
        let mut v = Vec::new();
        for m in 2..=max_m {
            for e in 1..=m {
                if m % e == 0 {
                    v.push(GroupParams::new(m, e).unwrap());
                }
            }
        }
        v
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(GroupParams::new(1, 1).is_err());
        assert!(GroupParams::new(6, 4).is_err());
        assert!(GroupParams::new(6, 0).is_err());
        let p = GroupParams::new(6, 3).unwrap();
        assert!(p.element(1, 1, false).is_err());
        assert!(p.element(1, 2, true).is_ok());
    }

    #[test]
    fn group_axioms_small() {
        for p in all_params(6) {
            let els = p.elements();
            assert_eq!(els.len() as u64, p.order());
            for &g in &els {
                assert_eq!(p.mul(g, p.inv(g)), p.identity());
                for &h in &els {
                    let gh = p.mul(g, h);
                    assert!(p.contains(gh.a(), gh.b()));
                }
            }
        }
    }

    #[test]
    fn multiplication_matches_matrices() {
        let p = GroupParams::new(6, 2).unwrap();
        let mm = |x: &[[Cyclotomic; 2]; 2], y: &[[Cyclotomic; 2]; 2]| {
            let mut out = p.matrix(p.identity());
            for i in 0..2 {
                for j in 0..2 {
                    out[i][j] = &(&x[i][0] * &y[0][j]) + &(&x[i][1] * &y[1][j]);
                }
            }
            out
        };
        for &g in &p.elements() {
            for &h in &p.elements() {
                assert_eq!(mm(&p.matrix(g), &p.matrix(h)), p.matrix(p.mul(g, h)));
            }
        }
    }

    #[test]
    fn swap_commutation_and_zeta_conjugation() {
        let p = GroupParams::new(8, 2).unwrap();
        let g = p.element(2, 4, false).unwrap();
        assert_eq!(p.mul(g, p.tau()), p.mul(p.tau(), p.element(4, 2, false).unwrap()));
        // Conjugating D(a,b)t by D(1,-1) gives D(a-2, b+2)t.
        let g = p.element(3, 5, true).unwrap();
        let zt = p.zeta_tilde();
        assert_eq!(p.mul(p.mul(p.inv(zt), g), zt), p.element(1, 7, true).unwrap());
    }

    #[test]
    fn class_counts_match_formula() {
        for p in all_params(16) {
            let cls = conjugacy_classes(&p);
            assert_eq!(cls.len(), p.class_count_formula(), "{p}");
            let total: usize = cls.iter().map(|c| c.size()).sum();
            assert_eq!(total as u64, p.order());
        }
    }

    #[test]
    fn spec_class_examples() {
        let p = GroupParams::new(4, 2).unwrap();
        assert_eq!(conjugacy_classes(&p).len(), 10);
        let p = GroupParams::new(3, 3).unwrap();
        assert_eq!(conjugacy_classes(&p).len(), 3);
        let p = GroupParams::new(6, 3).unwrap();
        assert_eq!(conjugacy_classes(&p).len(), 9);
        let p = GroupParams::new(4, 2).unwrap();
        assert_eq!(p.element_order(p.zeta_tilde()), 4);
    }

    #[test]
    fn centre_and_reflections() {
        for p in all_params(14) {
            let cls = conjugacy_classes(&p);
            let centre = cls.iter().filter(|c| c.size() == 1).count();
            if (p.m(), p.e()) == (2, 2) {
                assert_eq!(centre, 4);
            } else {
                assert_eq!(centre, p.centre_order_formula(), "{p}");
            }
            let reflections = p
                .elements()
                .into_iter()
                .filter(|&g| p.fixed_locus(g).is_line())
                .count();
            assert_eq!(reflections, p.reflection_count_formula(), "{p}");
            let refl_classes: Vec<_> = cls.iter().filter(|c| c.fixed_locus.is_line()).collect();
            let reps = p.reflection_class_representatives();
            assert_eq!(refl_classes.len(), reps.len(), "{p}");
            let idx = class_index(&cls);
            let mut hit: Vec<usize> = reps.iter().map(|g| idx[g]).collect();
            hit.sort();
            hit.dedup();
            assert_eq!(hit.len(), reps.len());
        }
    }

    #[test]
    fn swap_class_representatives_have_normal_form() {
        for p in all_params(16) {
            for c in conjugacy_classes(&p) {
                let r = c.representative;
                if !r.swap() {
                    continue;
                }
                if p.e_even() && r.a() == 1 {
                    assert_eq!((r.b() + 1) % p.e(), 0, "{p} {r}");
                } else {
                    assert_eq!(r.a(), 0, "{p} {r}");
                    assert_eq!(r.b() % p.e(), 0, "{p} {r}");
                }
            }
        }
    }

    #[test]
    fn fixed_loci() {
        let p = GroupParams::new(6, 2).unwrap();
        assert_eq!(p.fixed_locus(p.identity()), FixedLocus::Plane);
        assert_eq!(p.fixed_locus(p.gamma_y()), FixedLocus::VanY);
        assert_eq!(p.fixed_locus(p.gamma_x()), FixedLocus::VanX);
        assert_eq!(p.fixed_locus(p.tau()), FixedLocus::Diagonal { i: 0 });
        let zt_tau = p.mul(p.zeta_tilde(), p.tau());
        assert_eq!(p.fixed_locus(zt_tau), FixedLocus::Diagonal { i: 1 });
        assert_eq!(p.fixed_locus(p.element(1, 1, true).unwrap()), FixedLocus::Origin);
        assert_eq!(p.fixed_locus(p.zeta_tilde()), FixedLocus::Origin);
    }

    #[test]
    fn fixed_locus_matches_matrix_eigenvector() {
        // The vector (z^i, 1) is fixed by D(i,-i)t.
        let p = GroupParams::new(8, 4).unwrap();
        for g in p.elements() {
            if let FixedLocus::Diagonal { i } = p.fixed_locus(g) {
                let mat = p.matrix(g);
                let v = [Cyclotomic::root_power(8, i as i64), Cyclotomic::one(8)];
                for r in 0..2 {
                    let w = &(&mat[r][0] * &v[0]) + &(&mat[r][1] * &v[1]);
                    assert_eq!(w, v[r]);
                }
            }
        }
    }

    #[test]
    fn class_record_json_round_trip() {
        let p = GroupParams::new(6, 2).unwrap();
        let recs = class_records(&conjugacy_classes(&p));
        let s = serde_json::to_string(&recs).unwrap();
        let back: Vec<ClassRecord> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, recs);
    }
}
