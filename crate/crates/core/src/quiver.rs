//! The McKay quiver of G(m,e,2) with respect to the span of `x, y`.
//!
//! Solid arrows `U -> W` count `Ext^1(O_0 (x) U, O_0 (x) W)`, dotted arrows
//! `Ext^2`. Three independent constructions are provided: the Ext engine, the
//! character oracle, and the closed-form list of arrows.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::extcalc::ext_sky_sky;
use crate::group::GroupParams;
use crate::reps::{
    det_linear_forms, irreducibles, linear_forms, normalize_rho, product_class_fn, IrrepLabel, Reps, Sign,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub from: IrrepLabel,
    pub to: IrrepLabel,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct McKayQuiver {
    pub m: u32,
    pub e: u32,
    pub nodes: Vec<IrrepLabel>,
    pub solid: Vec<Edge>,
    pub dotted: Vec<Edge>,
}

fn edges(map: BTreeMap<(IrrepLabel, IrrepLabel), u64>) -> Vec<Edge> {
    let mut out: Vec<Edge> = map
        .into_iter()
        .filter(|(_, k)| *k > 0)
        .map(|((from, to), multiplicity)| Edge { from, to, multiplicity })
        .collect();
    out.sort();
    out
}

impl McKayQuiver {
    fn assemble(
        params: &GroupParams,
        solid: BTreeMap<(IrrepLabel, IrrepLabel), u64>,
        dotted: BTreeMap<(IrrepLabel, IrrepLabel), u64>,
    ) -> Self {
        McKayQuiver {
            m: params.m(),
            e: params.e(),
            nodes: irreducibles(params),
            solid: edges(solid),
            dotted: edges(dotted),
        }
    }

    /// From the Ext engine.
    pub fn from_engine(params: &GroupParams) -> Self {
        let irr = irreducibles(params);
        let mut solid = BTreeMap::new();
        let mut dotted = BTreeMap::new();
        for u in &irr {
            for w in &irr {
                let p = ext_sky_sky(params, u, w);
                solid.insert((*u, *w), p.d1);
                dotted.insert((*u, *w), p.d2);
            }
        }
        Self::assemble(params, solid, dotted)
    }

    /// From character inner products `<chi_U chi_X, chi_W>`.
    pub fn from_oracle(reps: &Reps) -> Result<Self> {
        let params = reps.params();
        let n = reps.classes().len();
        let mut x_row = vec![Cyclotomic::zero(params.m()); n];
        for (c, &k) in linear_forms(params).iter() {
            for _ in 0..k {
                for (a, v) in x_row.iter_mut().zip(reps.character_row(c)?) {
                    *a = &*a + v;
                }
            }
        }
        let det_row = reps.character_row(&det_linear_forms(params))?.clone();
        let mut solid = BTreeMap::new();
        let mut dotted = BTreeMap::new();
        for u in reps.irreps() {
            let row = reps.character_row(u)?;
            let sx = reps.decompose_class_fn(&product_class_fn(row, &x_row))?;
            let sd = reps.decompose_class_fn(&product_class_fn(row, &det_row))?;
            for w in reps.irreps() {
                solid.insert((*u, *w), sx.multiplicity(w));
                dotted.insert((*u, *w), sd.multiplicity(w));
            }
        }
        Ok(Self::assemble(params, solid, dotted))
    }

    /// From the closed-form list of arrows. Where a listed `rho` is reducible for
    /// small parameters, the arrow is distributed over its two constituents.
    pub fn expected(params: &GroupParams) -> Self {
        let (m, d) = (params.m(), params.d());
        let mut solid: BTreeMap<(IrrepLabel, IrrepLabel), u64> = BTreeMap::new();
        let mut dotted: BTreeMap<(IrrepLabel, IrrepLabel), u64> = BTreeMap::new();
        let rho = |p: u32, q: u32| normalize_rho(params, p as i64, q as i64);
        let arrow = |set: &mut BTreeMap<_, _>, us: &[IrrepLabel], ws: &[IrrepLabel]| {
            for u in us {
                for w in ws {
                    set.insert((*u, *w), 1);
                }
            }
        };
        for c in 0..d {
            let next = (c + 1) % d;
            let r = rho(c + 1, c).constituents();
            let low = [IrrepLabel::chi(c), IrrepLabel::chi_a(c)];
            let high = [IrrepLabel::chi(next), IrrepLabel::chi_a(next)];
            arrow(&mut solid, &low, &r);
            arrow(&mut solid, &r, &high);
            arrow(&mut dotted, &[IrrepLabel::chi(c)], &[IrrepLabel::chi_a(next)]);
            arrow(&mut dotted, &[IrrepLabel::chi_a(c)], &[IrrepLabel::chi(next)]);
            if params.e_even() {
                let n = params.half_m();
                let r = rho(n + c, c + 1).constituents();
                let low = [IrrepLabel::chi_n(Sign::Plus, c), IrrepLabel::chi_n(Sign::Minus, c)];
                let high = [IrrepLabel::chi_n(Sign::Plus, next), IrrepLabel::chi_n(Sign::Minus, next)];
                arrow(&mut solid, &low, &r);
                arrow(&mut solid, &r, &high);
                arrow(&mut dotted, &[low[0]], &[high[1]]);
                arrow(&mut dotted, &[low[1]], &[high[0]]);
            }
        }
        for a in 0..m {
            for b in 0..d {
                let Some(u) = rho(a, b).irreducible() else { continue };
                for (p, q) in [(a, b + 1), (a + 1, b)] {
                    if let Some(w) = rho(p, q).irreducible() {
                        arrow(&mut solid, &[u], &[w]);
                    }
                }
                let w = rho(a + 1, b + 1).irreducible().expect("twist of an irreducible is irreducible");
                arrow(&mut dotted, &[u], &[w]);
            }
        }
        Self::assemble(params, solid, dotted)
    }

    pub fn params(&self) -> Result<GroupParams> {
        GroupParams::new(self.m, self.e)
    }

    /// Every node has exactly one dotted arrow out and one in.
    pub fn dotted_is_permutation(&self) -> bool {
        let mut outs: BTreeMap<IrrepLabel, u64> = BTreeMap::new();
        let mut ins: BTreeMap<IrrepLabel, u64> = BTreeMap::new();
        for e in &self.dotted {
            *outs.entry(e.from).or_default() += e.multiplicity;
            *ins.entry(e.to).or_default() += e.multiplicity;
        }
        self.nodes.iter().all(|n| outs.get(n) == Some(&1) && ins.get(n) == Some(&1))
    }

    /// Nodes whose solid out-arrows, weighted by target dimension, do not total `2 dim U`.
    pub fn out_degree_violations(&self) -> Vec<IrrepLabel> {
        let mut weight: BTreeMap<IrrepLabel, u64> = BTreeMap::new();
        for e in &self.solid {
            *weight.entry(e.from).or_default() += e.multiplicity * e.to.dim();
        }
        self.nodes
            .iter()
            .filter(|n| weight.get(n).copied().unwrap_or(0) != 2 * n.dim())
            .copied()
            .collect()
    }

    /// Whether every node reaches every other along solid arrows.
    pub fn solid_strongly_connected(&self) -> bool {
        let Some(&start) = self.nodes.first() else { return true };
        let reach = |forward: bool| {
            let mut seen = BTreeSet::from([start]);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for e in &self.solid {
                    let (a, b) = if forward { (e.from, e.to) } else { (e.to, e.from) };
                    if a == v && seen.insert(b) {
                        stack.push(b);
                    }
                }
            }
            seen.len()
        };
        reach(true) == self.nodes.len() && reach(false) == self.nodes.len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("quiver serialises")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::LabelParse { input: "quiver json".into(), reason: e.to_string() })
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        writeln!(s, "digraph mckay_G_{}_{}_2 {{", self.m, self.e).unwrap();
        writeln!(s, "  rankdir=LR;").unwrap();
        for n in &self.nodes {
            writeln!(s, "  \"{n}\" [label=\"{}\"];", n.polynomial_name()).unwrap();
        }
        for e in &self.solid {
            let extra = if e.multiplicity > 1 { format!(" [label=\"{}\"]", e.multiplicity) } else { String::new() };
            writeln!(s, "  \"{}\" -> \"{}\"{extra};", e.from, e.to).unwrap();
        }
        for e in &self.dotted {
            writeln!(s, "  \"{}\" -> \"{}\" [style=dotted];", e.from, e.to).unwrap();
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(m: u32, e: u32) -> GroupParams {
        GroupParams::new(m, e).unwrap()
    }

    #[test]
    fn four_two_example() {
        let p = params(4, 2);
        let q = McKayQuiver::from_engine(&p);
        assert_eq!(q.nodes.len(), 10);
        assert_eq!(q.solid.len(), 16);
        let from_one: Vec<_> = q.solid.iter().filter(|e| e.from == IrrepLabel::chi(0)).collect();
        assert_eq!(from_one.len(), 1);
        assert_eq!(from_one[0].to, IrrepLabel::rho(1, 0));
    }

    #[test]
    fn three_constructions_agree() {
        for (m, e) in [(2, 2), (3, 3), (4, 2), (6, 2), (6, 3), (8, 4), (9, 3), (10, 5), (12, 4)] {
            let p = params(m, e);
            let engine = McKayQuiver::from_engine(&p);
            let oracle = McKayQuiver::from_oracle(&Reps::new(p)).unwrap();
            assert_eq!(engine, oracle, "{p}");
            assert_eq!(engine, McKayQuiver::expected(&p), "{p}");
            assert!(engine.dotted_is_permutation(), "{p}");
            assert!(engine.out_degree_violations().is_empty(), "{p}");
            assert!(engine.solid_strongly_connected(), "{p}");
        }
    }

    #[test]
    fn json_and_dot_are_stable() {
        let p = params(6, 2);
        let q = McKayQuiver::from_engine(&p);
        assert_eq!(McKayQuiver::from_json(&q.to_json()).unwrap(), q);
        assert_eq!(q.to_dot(), McKayQuiver::from_engine(&p).to_dot());
        assert!(q.to_dot().contains("\"chi(1)\" -> \"rho(x)\";"));
    }
}
