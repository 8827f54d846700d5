//! Tails: classification, the bounds they satisfy, and the fractional-part
//! identity on interior edges.

use super::order::partial_order;
use super::{check_placement, GraphError, Result, StableGraph, Violation};
use crate::rational::{fmt_q, frac, in_lattice, pow_u, qu, Q};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TailFlavor {
    PrimitiveEtale,
    NewEtale,
    NewInseparable,
    InseparableWithBranch,
}

impl TailFlavor {
    pub fn is_etale(self) -> bool {
        matches!(self, TailFlavor::PrimitiveEtale | TailFlavor::NewEtale)
    }

    pub fn is_new(self) -> bool {
        matches!(self, TailFlavor::NewEtale | TailFlavor::NewInseparable)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TailRecord {
    pub vertex: String,
    #[serde(skip)]
    pub index: usize,
    /// Edge from the adjoining component into the tail.
    pub edge: String,
    pub r_prime: u32,
    pub r: u32,
    pub flavor: TailFlavor,
    #[serde(with = "crate::rational::serde_q")]
    pub sigma: Q,
    /// `σ^α_b` for `r' ≤ α < r`.
    #[serde(with = "crate::rational::serde_q::vec")]
    pub truncated: Vec<Q>,
}

/// Every branch point must sit on a component of the inertia its index
/// predicts.
fn check_all_placements(g: &StableGraph) -> Result<()> {
    for v in g.branch_vertices() {
        check_placement(g, v)?;
    }
    for v in g.component_vertices() {
        let r = g.inertia(v).expect("component");
        for &b in g.tame_branches(v) {
            let a = crate::rational::vp(g.p, b);
            if a != 0 || r != 0 {
                return Err(GraphError::MisplacedBranchPoint { vertex: g.vertices[v].id.clone(), index: b, expected: a, found: r });
            }
        }
    }
    Ok(())
}

pub fn classify_tails(g: &StableGraph) -> Result<Vec<TailRecord>> {
    check_all_placements(g)?;
    let mut out = Vec::new();
    for v in g.component_vertices() {
        if v == g.root || g.component_degree(v) != 1 {
            continue;
        }
        let back = g.out_edges(v).find(|&e| g.is_component(g.edges[e].dst)).expect("leaf");
        let e = g.edges[back].opp;
        let parent = g.edges[e].src;
        let r_prime = g.inertia(v).expect("component");
        let r = g.inertia(parent).expect("component");
        let sigma = g
            .sigma(e, r_prime as usize)
            .cloned()
            .ok_or_else(|| GraphError::AlphaNotDefined { vertex: g.vertices[v].id.clone(), alpha: r_prime as usize })?;
        let truncated = (r_prime..r).filter_map(|a| g.sigma(e, a as usize).cloned()).collect();
        let has_branch = !g.tame_branches(v).is_empty() || g.out_edges(v).any(|x| !g.is_component(g.edges[x].dst));
        let flavor = match (r_prime == 0, has_branch) {
            (true, true) => TailFlavor::PrimitiveEtale,
            (true, false) => TailFlavor::NewEtale,
            (false, true) => TailFlavor::InseparableWithBranch,
            (false, false) => TailFlavor::NewInseparable,
        };
        out.push(TailRecord { vertex: g.vertices[v].id.clone(), index: v, edge: g.edges[e].id.clone(), r_prime, r, flavor, sigma, truncated });
    }
    Ok(out)
}

fn p_pow(p: u64, k: i64) -> Q {
    let base = BigRational::from_integer(pow_u(p, k.unsigned_abs() as u32));
    if k >= 0 {
        base
    } else {
        base.recip()
    }
}

/// The bounds on tails of a three-point cover of the line with bad
/// reduction.
pub fn check_tail_constraints(g: &StableGraph) -> Vec<Violation> {
    let mut out = Vec::new();
    if !g.three_point_genus_zero() {
        out.push(Violation::new("three-point-genus-zero", "graph", "the tail bounds need a three-point cover of the line"));
        return out;
    }
    let tails = match classify_tails(g) {
        Ok(t) => t,
        Err(e) => {
            out.push(Violation::new("misplaced-branch-point", "graph", e.to_string()));
            return out;
        }
    };
    let m = qu(g.m);
    for t in &tails {
        let s = &t.sigma;
        if !t.flavor.is_etale() {
            for (k, x) in t.truncated.iter().enumerate() {
                if !x.is_integer() {
                    out.push(Violation::new(
                        "insep-tail-integrality",
                        &t.vertex,
                        format!("sigma^{} = {} is not an integer", t.r_prime as usize + k, fmt_q(x)),
                    ));
                }
            }
        }
        if t.flavor.is_new() {
            let bound = Q::one() + m.recip();
            if *s < bound {
                out.push(Violation::new("new-tail-lower-bound", &t.vertex, format!("new tail with sigma = {} < {}", fmt_q(s), fmt_q(&bound))));
            }
        }
        if t.r_prime > 0 {
            let bound = p_pow(g.p, t.r as i64 - t.r_prime as i64 - 1);
            if *s < bound {
                out.push(Violation::new(
                    "insep-tail-lower-bound",
                    &t.vertex,
                    format!("p^{}-tail next to p^{} has sigma = {} < {}", t.r_prime, t.r, fmt_q(s), fmt_q(&bound)),
                ));
            }
        }
        if t.flavor == TailFlavor::PrimitiveEtale {
            let bound = p_pow(g.p, t.r as i64 - 1) / &m;
            if *s < bound {
                out.push(Violation::new(
                    "primitive-tail-lower-bound",
                    &t.vertex,
                    format!("primitive tail next to p^{} has sigma = {} < {}", t.r, fmt_q(s), fmt_q(&bound)),
                ));
            }
        }
        for (k, x) in t.truncated.iter().enumerate() {
            if !in_lattice(x, g.m) {
                out.push(Violation::new(
                    "sigma-denominator",
                    &t.vertex,
                    format!("sigma^{} = {} is not in (1/{})Z", t.r_prime as usize + k, fmt_q(x), g.m),
                ));
            }
        }
    }
    let mut by_level: BTreeMap<u32, Vec<&TailRecord>> = BTreeMap::new();
    for t in &tails {
        by_level.entry(t.r_prime).or_default().push(t);
    }
    for (&d, ts) in &by_level {
        let cap: u64 = if d == 0 { g.p } else { g.p.pow(d) };
        if ts.len() as u64 >= cap {
            let rule = if d == 0 { "etale-tail-count" } else { "insep-tail-count" };
            out.push(Violation::new(rule, "graph", format!("{} p^{d}-tails, fewer than {cap} allowed", ts.len())));
        }
        if d == 0 {
            continue;
        }
        // |{σ - 1 ≥ p^μ}| < p^{d-μ}; the extreme μ are the tails' own values
        let pd = p_pow(g.p, d as i64);
        for t in ts {
            let x = &t.sigma - Q::one();
            if x <= Q::zero() {
                continue;
            }
            let s = ts.iter().filter(|u| &u.sigma - Q::one() >= x).count();
            if qu(s as u64) * &x >= pd {
                out.push(Violation::new(
                    "large-sigma-tail-count",
                    &t.vertex,
                    format!("{s} p^{d}-tails have sigma - 1 >= {}, too many", fmt_q(&x)),
                ));
            }
        }
    }
    let new_etale = tails.iter().any(|t| t.flavor == TailFlavor::NewEtale);
    if !new_etale {
        for t in tails.iter().filter(|t| t.flavor == TailFlavor::NewInseparable) {
            out.push(Violation::new(
                "no-new-insep-without-new-etale",
                &t.vertex,
                "new inseparable tail without any new étale tail",
            ));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FractionCheck {
    pub edge: String,
    #[serde(with = "crate::rational::serde_q")]
    pub sigma: Q,
    #[serde(with = "crate::rational::serde_q")]
    pub outward_sum: Q,
    pub holds: bool,
}

/// `⟨σ^eff_e⟩ = ⟨Σ σ_b⟩` over étale tails outward of `e`, with `e` taken in
/// its outward direction.
pub fn outward_fraction_check(g: &StableGraph, e: usize) -> Result<FractionCheck> {
    if g.is_branch_edge(e) {
        return Err(GraphError::NotInterior(g.edges[e].id.clone()));
    }
    let ord = partial_order(g);
    let e = if ord.outward(g, e) { e } else { g.edges[e].opp };
    let sigma = g.sigma(e, 0).cloned().ok_or_else(|| GraphError::AlphaNotDefined { vertex: g.edges[e].id.clone(), alpha: 0 })?;
    let head = g.edges[e].dst;
    let tails = classify_tails(g)?;
    let outward_sum: Q = tails
        .iter()
        .filter(|t| t.flavor.is_etale() && ord.preceq(head, t.index))
        .map(|t| t.sigma.clone())
        .sum();
    let holds = frac(&sigma) == frac(&outward_sum);
    Ok(FractionCheck { edge: g.edges[e].id.clone(), sigma, outward_sum, holds })
}
