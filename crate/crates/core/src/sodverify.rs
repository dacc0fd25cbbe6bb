//! The semi-orthogonal decomposition of `D_G(C^2)` for G(m,e,2), assembled per
//! parity, together with a checker for its combinatorial content.
//!
//! The decomposition has curve pieces (one copy of `D(A^1)` per non-trivial
//! reflection class plus a pullback of `D(V/G)`) and an exceptional sequence of
//! twisted skyscrapers and `F(x^a)` sheaves at the origin.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extcalc::{
    ext_curvegen_sky, ext_f_f, ext_f_sky, ext_module_sky, ext_sky_sky, euler_pairing, CurveGenerator,
    ExtProfile,
};
use crate::group::{conjugacy_classes, FixedLocus, GroupParams};
use crate::modfilt::{Atom, AtomTwist, MonomialModule};
use crate::reps::{det_linear_forms, irreducibles, normalize_rho, tensor_decompose, IrrepLabel, RepMultiset, Reps, Sign};

/// A member of the exceptional sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SeqObject {
    /// `O_0 (x) W`.
    Sky { label: IrrepLabel },
    /// `F(x^a)`.
    F { a: u32 },
}

impl fmt::Display for SeqObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqObject::Sky { label } => write!(f, "O_0 (x) {label}"),
            SeqObject::F { a } => write!(f, "F(x^{a})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CurveKind {
    AGammaTwist { c: u32 },
    BTau,
    BZetaTau,
    Pullback,
}

/// What generates a curve piece: a twisted curve structure sheaf, or for odd e the
/// module `xi` twisted by a character.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PieceSource {
    Curve { generator: CurveGenerator },
    Xi { twist: IrrepLabel },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "piece", rename_all = "snake_case")]
pub enum SodPiece {
    Curve { kind: CurveKind, source: PieceSource },
    Exceptional { object: SeqObject },
}

impl fmt::Display for SodPiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SodPiece::Exceptional { object } => write!(f, "{object}"),
            SodPiece::Curve { kind, source } => {
                let k = match kind {
                    CurveKind::AGammaTwist { c } => format!("A_gamma[{c}]"),
                    CurveKind::BTau => "B_tau".into(),
                    CurveKind::BZetaTau => "B_zetatau".into(),
                    CurveKind::Pullback => "pullback".into(),
                };
                match source {
                    PieceSource::Curve { generator } => write!(f, "{k} <- {generator}"),
                    PieceSource::Xi { twist } => write!(f, "{k} <- O_xi({})", twist.polynomial_name()),
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strength {
    /// Backed by brute force or the character oracle.
    Independent,
    /// Backed by closed-form Ext rules.
    Conformance,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub strength: Strength,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SodCounts {
    pub classes: usize,
    pub pieces: usize,
    pub exceptional_length: usize,
    pub spanning_set_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SodReport {
    pub m: u32,
    pub e: u32,
    pub pieces: Vec<SodPiece>,
    pub checks: Vec<CheckResult>,
    pub counts: SodCounts,
    pub passed: bool,
}

impl SodReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::LabelParse { input: "report json".into(), reason: e.to_string() })
    }
}

impl fmt::Display for SodReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "G({},{},2)", self.m, self.e)?;
        for c in &self.checks {
            let s = if c.passed { "PASS" } else { "FAIL" };
            let k = match c.strength {
                Strength::Independent => "independent",
                Strength::Conformance => "conformance",
            };
            writeln!(f, "  [{s}] {} ({k}): {}", c.name, c.detail)?;
        }
        let n = &self.counts;
        writeln!(
            f,
            "  classes {}, pieces {}, exceptional {}, spanning set {}",
            n.classes, n.pieces, n.exceptional_length, n.spanning_set_size
        )?;
        write!(f, "  overall: {}", if self.passed { "PASS" } else { "FAIL" })
    }
}

fn refuse_trivial_e(params: &GroupParams) -> Result<()> {
    if params.e() == 1 {
        return Err(Error::Unsupported(format!(
            "{params}: unsupported edge case e = 1 (the excluded rho(x^(n-)) is reducible)"
        )));
    }
    Ok(())
}

fn canonical_rho(params: &GroupParams, p: u32, q: u32) -> IrrepLabel {
    normalize_rho(params, p as i64, q as i64).irreducible().expect("off-diagonal monomial gives an irreducible rho")
}

/// Irreducibles W whose skyscrapers `O_0 (x) W` span the complement of the curve pieces.
pub fn spanning_set(params: &GroupParams) -> Result<BTreeSet<IrrepLabel>> {
    refuse_trivial_e(params)?;
    let mut out: BTreeSet<IrrepLabel> = irreducibles(params).into_iter().collect();
    for c in 0..params.d() {
        out.remove(&IrrepLabel::chi_a(c));
    }
    if params.e_even() {
        out.remove(&IrrepLabel::chi_n(Sign::Plus, 0));
        out.remove(&IrrepLabel::chi_n(Sign::Minus, 0));
    } else {
        out.remove(&canonical_rho(params, params.n_minus(), 0));
    }
    Ok(out)
}

/// The full exceptional sequence of the complement: skyscrapers along the
/// diagonals of the McKay quiver, then the `F(x^a)`.
pub fn build_sequence(params: &GroupParams) -> Vec<SeqObject> {
    let d = params.d();
    let sky = |label| SeqObject::Sky { label };
    let mut out = Vec::new();
    if params.e_even() {
        let n = params.half_m();
        for p in 1..n + d {
            for q in p.saturating_sub(n).max(1)..=p.min(d - 1) {
                if p == q {
                    out.push(sky(IrrepLabel::chi(q)));
                } else if p - q == n {
                    out.push(sky(IrrepLabel::chi_n(Sign::Plus, q)));
                    out.push(sky(IrrepLabel::chi_n(Sign::Minus, q)));
                } else {
                    out.push(sky(canonical_rho(params, p, q)));
                }
            }
        }
        out.extend((0..n).map(|a| SeqObject::F { a }));
    } else {
        let np = params.n_plus();
        for p in 1..np {
            for q in 1..=p.min(d - 1) {
                out.push(sky(if p == q { IrrepLabel::chi(q) } else { canonical_rho(params, p, q) }));
            }
        }
        out.extend((0..np).filter(|&a| a != params.n_minus()).map(|a| SeqObject::F { a }));
    }
    out
}

/// `Ext^*(X, Y)` between members of the sequence. For two F-sheaves this is the
/// piecewise upper bound, which is exact whenever it vanishes.
pub fn ext_objects(params: &GroupParams, x: &SeqObject, y: &SeqObject) -> Result<ExtProfile> {
    match (x, y) {
        (SeqObject::Sky { label: u }, SeqObject::Sky { label: w }) => Ok(ext_sky_sky(params, u, w)),
        (SeqObject::F { a }, SeqObject::Sky { label: w }) => ext_f_sky(params, *a, w),
        (SeqObject::F { a }, SeqObject::F { a: b }) => ext_f_f(params, *a, *b),
        (SeqObject::Sky { label: u }, SeqObject::F { a }) => {
            // Serre duality: Ext^i(E, F) = Ext^(2-i)(F, E (x) det)^dual.
            let mut acc = ExtProfile::ZERO;
            for (w, &k) in tensor_decompose(params, u, &det_linear_forms(params)).iter() {
                let e = ext_f_sky(params, *a, w)?;
                for _ in 0..k {
                    acc = acc + ExtProfile::new(e.d2, e.d1, e.d0);
                }
            }
            Ok(acc)
        }
    }
}

/// Curve pieces in decomposition order, ending with the pullback.
pub fn curve_pieces(params: &GroupParams) -> Vec<SodPiece> {
    let d = params.d();
    let curve = |kind, generator| SodPiece::Curve { kind, source: PieceSource::Curve { generator } };
    let a_gamma = (1..d).map(|c| curve(CurveKind::AGammaTwist { c }, CurveGenerator::Zgamma { c, a_twist: true }));
    let pullback = curve(CurveKind::Pullback, CurveGenerator::StructureSheaf { twist: IrrepLabel::chi_a(0) });
    let mut out = Vec::new();
    if params.e_even() {
        out.push(curve(CurveKind::BTau, CurveGenerator::Ztau { twist: IrrepLabel::chi_n(Sign::Plus, 0) }));
        out.push(curve(CurveKind::BZetaTau, CurveGenerator::Zzetatau { twist: IrrepLabel::chi_n(Sign::Minus, 0) }));
        out.extend(a_gamma);
        out.push(pullback);
    } else {
        out.extend(a_gamma);
        out.push(pullback);
        out.push(SodPiece::Curve { kind: CurveKind::BTau, source: PieceSource::Xi { twist: IrrepLabel::chi_a(0) } });
    }
    out
}

fn tau_type_count(params: &GroupParams) -> usize {
    if params.e_even() {
        2
    } else {
        1
    }
}

struct Ctx {
    params: GroupParams,
    reps: Reps,
    seq: Vec<SeqObject>,
    span: BTreeSet<IrrepLabel>,
}

fn check(name: &str, strength: Strength, outcome: Result<(bool, String)>) -> CheckResult {
    let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    CheckResult { name: name.to_string(), passed, strength, detail }
}

fn list<T: fmt::Display>(xs: impl IntoIterator<Item = T>) -> String {
    let v: Vec<String> = xs.into_iter().map(|x| x.to_string()).collect();
    format!("[{}]", v.join(", "))
}

fn check_exceptional(ctx: &Ctx) -> Result<(bool, String)> {
    let p = &ctx.params;
    let mut bad = Vec::new();
    for x in &ctx.seq {
        let e = ext_objects(p, x, x)?;
        if e != ExtProfile::POINT {
            bad.push(format!("{x}: {e}"));
        }
    }
    // Skyscrapers that fail to be exceptional must stay out of the sequence.
    let non_exc: Vec<IrrepLabel> =
        irreducibles(p).into_iter().filter(|w| ext_sky_sky(p, w, w) != ExtProfile::POINT).collect();
    let used: Vec<&IrrepLabel> = non_exc
        .iter()
        .filter(|w| ctx.seq.contains(&SeqObject::Sky { label: **w }))
        .collect();
    let ok = bad.is_empty() && used.is_empty();
    let detail = if ok {
        format!("{} members exceptional; non-exceptional skyscrapers (unused) {}", ctx.seq.len(), list(&non_exc))
    } else {
        format!("failures {} ; non-exceptional members used {}", list(&bad), list(used))
    };
    Ok((ok, detail))
}

fn check_semi_orthogonal(ctx: &Ctx) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    let mut pairs = 0usize;
    for (i, x) in ctx.seq.iter().enumerate() {
        for y in &ctx.seq[..i] {
            pairs += 1;
            let e = ext_objects(&ctx.params, x, y)?;
            if !e.is_zero() {
                bad.push(format!("Ext({x}, {y}) = {e}"));
            }
        }
    }
    Ok(if bad.is_empty() {
        (true, format!("{pairs} backward pairs vanish"))
    } else {
        (false, list(bad))
    })
}

fn check_spanning_orthogonal(ctx: &Ctx) -> Result<(bool, String)> {
    let p = &ctx.params;
    let mut bad = Vec::new();
    let mut tested = 0usize;
    for piece in curve_pieces(p) {
        let SodPiece::Curve { source, .. } = piece else { continue };
        for w in &ctx.span {
            tested += 1;
            let e = match source {
                PieceSource::Curve { generator } => ext_curvegen_sky(p, &generator, w)?,
                PieceSource::Xi { twist } => ext_module_sky(&MonomialModule::xi_module(*p)?, &twist, w)?,
            };
            if !e.is_zero() {
                bad.push(format!("{piece} vs {w}: {e}"));
            }
        }
    }
    if !p.e_even() {
        let xi = MonomialModule::xi_module(*p)?.decompose();
        for w in &ctx.span {
            if euler_pairing(p, &xi, w) != 0 {
                bad.push(format!("euler(xi, {w}) != 0"));
            }
        }
    }
    Ok(if bad.is_empty() {
        (true, format!("{tested} generator/label pairs vanish"))
    } else {
        (false, list(bad))
    })
}

fn check_piece_count(ctx: &Ctx) -> Result<(bool, String)> {
    let p = &ctx.params;
    let classes = ctx.reps.classes().len();
    let pieces = ctx.seq.len() + (p.d() as usize - 1) + tau_type_count(p) + 1;
    Ok((
        pieces == classes,
        format!(
            "{} exceptional + {} A_gamma + {} B + 1 pullback = {pieces}; classes {classes}",
            ctx.seq.len(),
            p.d() - 1,
            tau_type_count(p)
        ),
    ))
}

fn check_fixed_loci(ctx: &Ctx) -> Result<(bool, String)> {
    let p = &ctx.params;
    let (mut plane, mut axis, mut diag, mut origin) = (0usize, 0usize, 0usize, 0usize);
    for c in ctx.reps.classes() {
        match c.fixed_locus {
            FixedLocus::Plane => plane += 1,
            FixedLocus::VanX | FixedLocus::VanY => axis += 1,
            FixedLocus::Diagonal { .. } => diag += 1,
            FixedLocus::Origin => origin += 1,
        }
    }
    let ok = plane == 1 && axis == p.d() as usize - 1 && diag == tau_type_count(p) && origin == ctx.seq.len();
    Ok((
        ok,
        format!(
            "identity {plane}/1, axis-line classes {axis}/{}, diagonal-line classes {diag}/{}, origin classes {origin}/{}",
            p.d() - 1,
            tau_type_count(p),
            ctx.seq.len()
        ),
    ))
}

fn axis_diagonal_module(p: &GroupParams, sign: Sign) -> Result<MonomialModule> {
    let n = p.half_m();
    let mut atoms = vec![Atom::plain(0, 0)];
    for i in 1..n {
        atoms.push(Atom::plain(i, 0));
        atoms.push(Atom::plain(0, i));
    }
    let twist = match sign {
        Sign::Plus => AtomTwist::NPlus,
        Sign::Minus => AtomTwist::NMinus,
    };
    atoms.push(Atom::twisted(0, 0, twist));
    MonomialModule::custom(*p, &format!("axis-diagonal{sign:?}"), atoms)
}

fn check_small_modules(ctx: &Ctx) -> Result<(bool, String)> {
    let p = &ctx.params;
    let mut bad = Vec::new();
    let mut done = Vec::new();
    if p.e_even() {
        let n = p.half_m();
        for sign in [Sign::Plus, Sign::Minus] {
            let got = axis_diagonal_module(p, sign)?.decompose();
            let mut want = RepMultiset::singleton(IrrepLabel::chi(0));
            for i in 1..n {
                want.add(canonical_rho(p, i, 0), 1);
            }
            want.add(IrrepLabel::chi_n(sign, 0), 1);
            if got != want || got.multiplicity(&IrrepLabel::chi_n(sign.flip(), 0)) != 0 {
                bad.push(format!("axis-diagonal{sign:?}: got {got}, want {want}"));
            }
        }
        let box_n = MonomialModule::ideal_quotient(*p, "box", &[(0, 0)], &[(n, 0), (0, n)])?.decompose();
        if box_n.labels().any(|l| matches!(l, IrrepLabel::Chi { n_sign: Some(_), .. })) {
            bad.push(format!("K[x,y]/(x^n,y^n) contains an N-character: {box_n}"));
        }
        done.push("axis-diagonal intersections, K[x,y]/(x^n,y^n)");
    } else {
        let got = MonomialModule::xi_module(*p)?.decompose();
        let want: RepMultiset = irreducibles(p)
            .into_iter()
            .filter(|l| !matches!(l, IrrepLabel::Chi { a_twist: true, .. }))
            .collect();
        if got != want {
            bad.push(format!("xi: got {got}, want {want}"));
        }
        done.push("xi decomposition");
    }
    let fib = MonomialModule::fiber0(*p).decompose();
    if fib != ctx.reps.regular_rep() {
        bad.push(format!("fibre over 0: got {fib}"));
    }
    done.push("fibre = regular");
    Ok(if bad.is_empty() { (true, done.join(", ")) } else { (false, list(bad)) })
}

fn invariant_multiset(reps: &Reps, g: crate::group::GroupElement) -> Result<RepMultiset> {
    let mut out = RepMultiset::new();
    for w in reps.irreps() {
        let k = reps.invariant_dim(w, g)?;
        if k > 0 {
            out.add(*w, k);
        }
    }
    Ok(out)
}

fn check_invariant_lists(ctx: &Ctx) -> Result<(bool, String)> {
    let p = &ctx.params;
    let m = p.m();
    let mut bad = Vec::new();

    let gam = invariant_multiset(&ctx.reps, p.gamma_y())?;
    let mut atoms = vec![Atom::plain(0, 0), Atom::twisted(0, 0, AtomTwist::A)];
    for i in 1..m {
        atoms.push(Atom::plain(i, 0));
        atoms.push(Atom::plain(0, i));
    }
    let j = MonomialModule::custom(*p, "K[x,y]/(xy, x^m+y^m)", atoms)?.decompose();
    if gam != j {
        bad.push(format!("gamma_y: invariants {gam}, module {j}"));
    }
    let chars: BTreeSet<IrrepLabel> = gam.labels().filter(|l| l.is_chi()).copied().collect();
    let mut want: BTreeSet<IrrepLabel> = [IrrepLabel::chi(0), IrrepLabel::chi_a(0)].into();
    if p.e_even() {
        want.insert(IrrepLabel::chi_n(Sign::Plus, 0));
        want.insert(IrrepLabel::chi_n(Sign::Minus, 0));
    }
    if chars != want {
        bad.push(format!("gamma_y-invariant characters {}", list(&chars)));
    }

    let tau = invariant_multiset(&ctx.reps, p.tau())?;
    let all_but = |skip: &dyn Fn(&IrrepLabel) -> bool| -> RepMultiset {
        irreducibles(p).into_iter().filter(|l| !skip(l)).collect()
    };
    let a_char = |l: &IrrepLabel| matches!(l, IrrepLabel::Chi { a_twist: true, .. });
    let n_char = |s: Sign| move |l: &IrrepLabel| matches!(l, IrrepLabel::Chi { n_sign: Some(t), .. } if *t == s);
    if p.e_even() {
        let want_tau = all_but(&|l| a_char(l) || n_char(Sign::Minus)(l));
        if tau != want_tau {
            bad.push(format!("tau: {tau}"));
        }
        let zt = invariant_multiset(&ctx.reps, p.mul(p.zeta_tilde(), p.tau()))?;
        let want_zt = all_but(&|l| a_char(l) || n_char(Sign::Plus)(l));
        if zt != want_zt {
            bad.push(format!("zeta~tau: {zt}"));
        }
    } else {
        let xi = MonomialModule::xi_module(*p)?.decompose();
        if tau != xi || tau != all_but(&a_char) {
            bad.push(format!("tau: {tau}, xi: {xi}"));
        }
    }
    Ok(if bad.is_empty() {
        (true, "gamma_y, tau and zeta~tau invariant lists match".into())
    } else {
        (false, list(bad))
    })
}

/// Run every check for G(m,e,2). Refuses e = 1.
pub fn verify(params: &GroupParams) -> Result<SodReport> {
    let span = spanning_set(params)?;
    let reps = Reps::new(*params);
    let ctx = Ctx { params: *params, seq: build_sequence(params), span, reps };
    use Strength::*;
    let checks = vec![
        check("exceptionality", Conformance, check_exceptional(&ctx)),
        check("semi-orthogonality", Conformance, check_semi_orthogonal(&ctx)),
        check("spanning set orthogonal to curve pieces", Conformance, check_spanning_orthogonal(&ctx)),
        check("piece count", Independent, check_piece_count(&ctx)),
        check("fixed-locus match", Independent, check_fixed_loci(&ctx)),
        check("small module decompositions", Conformance, check_small_modules(&ctx)),
        check("invariant lists", Independent, check_invariant_lists(&ctx)),
    ];
    let mut pieces: Vec<SodPiece> = ctx.seq.iter().map(|&object| SodPiece::Exceptional { object }).collect();
    pieces.extend(curve_pieces(params));
    let counts = SodCounts {
        classes: conjugacy_classes(params).len(),
        pieces: pieces.len(),
        exceptional_length: ctx.seq.len(),
        spanning_set_size: ctx.span.len(),
    };
    let passed = checks.iter().all(|c| c.passed);
    Ok(SodReport { m: params.m(), e: params.e(), pieces, checks, counts, passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extcalc::f_range;

    fn params(m: u32, e: u32) -> GroupParams {
        GroupParams::new(m, e).unwrap()
    }
    fn l(s: &str) -> IrrepLabel {
        s.parse().unwrap()
    }
    fn sky(s: &str) -> SeqObject {
        SeqObject::Sky { label: l(s) }
    }

    #[test]
    fn small_sequences() {
        assert_eq!(build_sequence(&params(3, 3)), vec![SeqObject::F { a: 0 }]);
        assert_eq!(build_sequence(&params(2, 2)), vec![SeqObject::F { a: 0 }]);
        let s = build_sequence(&params(4, 2));
        assert_eq!(
            s,
            vec![
                sky("chi(xy)"),
                sky("rho(x^2 y)"),
                sky("chi(N+(xy))"),
                sky("chi(N-(xy))"),
                SeqObject::F { a: 0 },
                SeqObject::F { a: 1 }
            ]
        );
    }

    #[test]
    fn spanning_sets() {
        assert_eq!(spanning_set(&params(4, 2)).unwrap().len(), 6);
        assert_eq!(spanning_set(&params(3, 3)).unwrap(), [l("chi(1)")].into());
        assert!(matches!(spanning_set(&params(4, 1)), Err(Error::Unsupported(_))));
    }

    #[test]
    fn sequence_and_span_sizes() {
        for (m, e) in [(2, 2), (3, 3), (4, 2), (4, 4), (6, 2), (6, 3), (8, 2), (9, 3), (10, 5), (12, 4), (12, 6)] {
            let p = params(m, e);
            let classes = conjugacy_classes(&p).len();
            let offset = (p.d() + if p.e_even() { 2 } else { 1 }) as usize;
            let span = spanning_set(&p).unwrap();
            assert_eq!(build_sequence(&p).len(), classes - offset, "{p}");
            assert_eq!(span.len(), classes - offset, "{p}");
            for x in build_sequence(&p) {
                if let SeqObject::Sky { label } = x {
                    assert!(span.contains(&label), "{p}: {label}");
                }
            }
        }
    }

    #[test]
    fn f_pieces_lie_in_span() {
        for (m, e) in [(4, 2), (6, 2), (8, 4), (12, 2)] {
            let p = params(m, e);
            let span = spanning_set(&p).unwrap();
            let sky: BTreeSet<IrrepLabel> = build_sequence(&p)
                .into_iter()
                .filter_map(|x| if let SeqObject::Sky { label } = x { Some(label) } else { None })
                .collect();
            for a in f_range(&p) {
                let pieces = MonomialModule::f_module(p, a).unwrap().decompose();
                let outside: Vec<_> = pieces.labels().filter(|w| !sky.contains(w)).copied().collect();
                assert!(pieces.labels().all(|w| span.contains(w)), "{p} F(x^{a})");
                let top = if a == 0 { l("chi(1)") } else { canonical_rho(&p, a, 0) };
                assert!(outside.contains(&top), "{p} F(x^{a})");
                let bottom_row = |w: &IrrepLabel| {
                    *w == l("chi(1)") || (1..p.m()).any(|i| normalize_rho(&p, i as i64, 0).irreducible() == Some(*w))
                };
                assert!(outside.iter().all(bottom_row), "{p} F(x^{a}): {outside:?}");
            }
        }
    }

    #[test]
    fn serre_case_is_consistent_with_euler() {
        for (m, e) in [(6, 2), (6, 3), (8, 4)] {
            let p = params(m, e);
            for u in irreducibles(&p) {
                for a in f_range(&p) {
                    let e = ext_objects(&p, &SeqObject::Sky { label: u }, &SeqObject::F { a }).unwrap();
                    let pieces = MonomialModule::f_module(p, a).unwrap().decompose();
                    let euler: i64 = pieces.iter().map(|(w, &k)| k as i64 * ext_sky_sky(&p, &u, w).euler()).sum();
                    assert_eq!(e.euler(), euler, "{p} {u} F(x^{a})");
                }
            }
        }
        let e = ext_objects(&params(6, 2), &sky("chi(1)"), &SeqObject::F { a: 0 }).unwrap();
        assert_eq!(e, ExtProfile::POINT);
    }

    #[test]
    fn xi_generator_and_socle_tests() {
        for (m, e) in [(3, 3), (6, 3), (9, 3), (10, 5), (15, 3)] {
            let p = params(m, e);
            let xi = MonomialModule::xi_module(p).unwrap();
            let a = l("chi(A)");
            let mut top = Vec::new();
            let mut socle = Vec::new();
            for w in irreducibles(&p) {
                let e = ext_module_sky(&xi, &a, &w).unwrap();
                if e.d0 > 0 {
                    top.push(w);
                }
                if e.d2 > 0 {
                    socle.push(w);
                }
            }
            assert_eq!(top, vec![a], "{p}");
            assert_eq!(socle, vec![canonical_rho(&p, p.n_minus(), 0)], "{p}");
        }
    }

    #[test]
    fn verify_examples() {
        let r = verify(&params(4, 2)).unwrap();
        assert!(r.passed, "{r}");
        assert_eq!(r.counts.pieces, 10);
        assert_eq!(r.counts.classes, 10);
        let r = verify(&params(6, 3)).unwrap();
        assert!(r.passed, "{r}");
        assert_eq!((r.counts.pieces, r.counts.exceptional_length), (9, 6));
        let r = verify(&params(2, 2)).unwrap();
        assert!(r.passed, "{r}");
        assert_eq!(r.counts.pieces, 4);
        assert_eq!(r.checks.len(), 7);
    }

    #[test]
    fn report_round_trips() {
        let r = verify(&params(6, 2)).unwrap();
        assert_eq!(SodReport::from_json(&r.to_json()).unwrap(), r);
    }

    #[test]
    fn refuses_trivial_e() {
        assert!(verify(&params(5, 1)).is_err());
    }
}
