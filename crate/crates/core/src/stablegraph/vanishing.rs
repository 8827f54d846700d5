//! Vanishing cycles identities: local at a vertex, global over étale tails,
//! and the truncated version at a level `α`.

use super::order::{is_monotonic, partial_order, subgraph_level};
use super::tails::classify_tails;
use super::{GraphError, Result, StableGraph};
use crate::rational::{qi, Q};
use num_traits::One;
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalCheck {
    pub vertex: String,
    pub alpha: usize,
    #[serde(with = "crate::rational::serde_q")]
    pub lhs: Q,
    pub rhs: i64,
    pub holds: bool,
}

/// `Σ_{s(e)=v} (σ^{eff,α}_e - 1) = 2g_v - 2`.
pub fn check_effective_local(g: &StableGraph, v: usize, alpha: usize) -> Result<LocalCheck> {
    let id = g.vertices[v].id.clone();
    let r = g.inertia(v).ok_or_else(|| GraphError::AlphaNotDefined { vertex: id.clone(), alpha })?;
    if alpha >= r as usize {
        return Err(GraphError::AlphaNotDefined { vertex: id, alpha });
    }
    let mut lhs = qi(0);
    for e in g.out_edges(v) {
        let s = g.sigma(e, alpha).ok_or_else(|| GraphError::AlphaNotDefined { vertex: g.edges[e].id.clone(), alpha })?;
        lhs += s - Q::one();
    }
    let rhs = 2 * g.genus(v) as i64 - 2;
    let holds = lhs == qi(rhs);
    Ok(LocalCheck { vertex: id, alpha, lhs, rhs, holds })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GlobalCheck {
    /// `2g_X - 2 + |Π|`.
    pub lhs: i64,
    /// `Σ (σ_b - 1)` over étale tails.
    #[serde(with = "crate::rational::serde_q")]
    pub rhs: Q,
    pub holds: bool,
    pub etale_tails: usize,
}

pub fn check_global(g: &StableGraph) -> Result<GlobalCheck> {
    let tails = classify_tails(g)?;
    let lhs = 2 * g.g_x as i64 - 2 + g.pi_count(1) as i64;
    let etale: Vec<_> = tails.iter().filter(|t| t.flavor.is_etale()).collect();
    let rhs: Q = etale.iter().map(|t| &t.sigma - Q::one()).sum();
    Ok(GlobalCheck { lhs, holds: qi(lhs) == rhs, rhs, etale_tails: etale.len() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneralizedVerdict {
    HoldsWithEquality,
    HoldsStrict,
    Fails,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneralizedReport {
    pub alpha: usize,
    pub verdict: GeneralizedVerdict,
    /// `2g_X - 2 + |Π_{α+1}|`.
    pub lhs: i64,
    /// `Σ (σ^α_b - 1)` over outward boundary nodes of `G_α`.
    #[serde(with = "crate::rational::serde_q")]
    pub rhs: Q,
    /// Connected pieces of `G_α`.
    pub pieces: usize,
    pub root_in_level: bool,
    pub boundary: Vec<String>,
    /// Boundary edges leaving `G_α` towards the root, with `σ^α`.
    pub inward: Vec<(String, String)>,
    pub monotonic: bool,
    /// Set when a monotonic graph misses equality: the input is inconsistent.
    pub monotonic_without_equality: bool,
}

pub fn check_generalized(g: &StableGraph, alpha: usize) -> Result<GeneralizedReport> {
    let a = alpha as u32;
    let applicable = (0..g.edges.len()).any(|e| {
        !g.is_branch_edge(e) && {
            let rs = g.inertia(g.edges[e].src).expect("component");
            let rt = g.inertia(g.edges[e].dst).expect("component");
            rs > a && rt <= a
        }
    });
    if !applicable {
        return Err(GraphError::NoApplicableNodes { alpha });
    }
    let level = subgraph_level(g, a).vertices;
    let ord = partial_order(g);
    // pieces of G_α
    let mut seen = BTreeSet::new();
    let mut pieces = 0;
    for &v in &level {
        if !seen.insert(v) {
            continue;
        }
        pieces += 1;
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            for e in g.out_edges(x) {
                let t = g.edges[e].dst;
                if level.contains(&t) && seen.insert(t) {
                    stack.push(t);
                }
            }
        }
    }
    let mut rhs = qi(0);
    let mut boundary = Vec::new();
    let mut inward = Vec::new();
    for e in 0..g.edges.len() {
        let (s, t) = (g.edges[e].src, g.edges[e].dst);
        if !level.contains(&s) || level.contains(&t) || !g.is_component(t) {
            continue;
        }
        let sig = g.sigma(e, alpha).ok_or_else(|| GraphError::AlphaNotDefined { vertex: g.edges[e].id.clone(), alpha })?;
        if ord.outward(g, e) {
            rhs += sig - Q::one();
            boundary.push(g.edges[e].id.clone());
        } else {
            inward.push((g.edges[e].id.clone(), crate::rational::fmt_q(sig)));
        }
    }
    let lhs = 2 * g.g_x as i64 - 2 + g.pi_count(a + 1) as i64;
    let l = qi(lhs);
    let verdict = if l == rhs {
        GeneralizedVerdict::HoldsWithEquality
    } else if l > rhs {
        GeneralizedVerdict::HoldsStrict
    } else {
        GeneralizedVerdict::Fails
    };
    let monotonic = is_monotonic(g, g.root).monotonic;
    Ok(GeneralizedReport {
        alpha,
        verdict,
        lhs,
        rhs,
        pieces,
        root_in_level: level.contains(&g.root),
        boundary,
        inward,
        monotonic,
        monotonic_without_equality: monotonic && verdict != GeneralizedVerdict::HoldsWithEquality,
    })
}
