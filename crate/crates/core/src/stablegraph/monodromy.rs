//! What the graph data says about wild monodromy.

use super::tails::{classify_tails, TailFlavor};
use super::{Result, StableGraph};
use crate::rational::{fmt_q, pow_u, qu, vp, Q};
use num_bigint::BigInt;
use serde::Serialize;

/// The facts the monodromy criteria read off a cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverFacts {
    /// `None` when the reduction type is not known.
    pub bad_reduction: Option<bool>,
    pub indices_prime_to_p: bool,
    pub new_etale_tails: usize,
}

impl CoverFacts {
    /// A stable graph with an inseparable root records bad reduction.
    pub fn from_graph(g: &StableGraph) -> Result<Self> {
        let tails = classify_tails(g)?;
        Ok(CoverFacts {
            bad_reduction: Some(g.inertia(g.root).unwrap_or(0) > 0),
            indices_prime_to_p: g.branch_indices.iter().all(|&b| vp(g.p, b) == 0),
            new_etale_tails: tails.iter().filter(|t| t.flavor == TailFlavor::NewEtale).count(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MonodromyVerdict {
    PotentiallyGood,
    TrivialWildMonodromy,
    NontrivialWildMonodromy,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonodromyReport {
    pub p: u64,
    pub n: u32,
    pub m_g: u64,
    pub e_abs: String,
    /// `p^{n-1}`, when the center has order prime to `p`.
    pub exponent_bound: Option<String>,
    pub gamma_w_trivial: bool,
    pub gamma_w_nontrivial: bool,
    pub verdict: MonodromyVerdict,
    /// Trivial and nontrivial at once: the supplied data cannot occur.
    pub inconsistent: bool,
    pub notes: Vec<String>,
}

pub fn monodromy_report(facts: &CoverFacts, e_abs: &Q, p: u64, n: u32, m_g: u64, center_prime_to_p: bool) -> MonodromyReport {
    let small_e = *e_abs < qu(p - 1) / qu(m_g);
    let trivial = facts.indices_prime_to_p && facts.new_etale_tails == 0;
    let nontrivial = small_e && facts.bad_reduction == Some(true);
    let good = small_e && facts.new_etale_tails == 0;
    let inconsistent = trivial && nontrivial;
    let mut notes = Vec::new();
    if !small_e {
        notes.push(format!("e = {} is not below (p-1)/m_G = {}", fmt_q(e_abs), fmt_q(&(qu(p - 1) / qu(m_g)))));
    }
    if inconsistent {
        notes.push("bad reduction is claimed, but the data force trivial and nontrivial wild monodromy".into());
    }
    let verdict = if good {
        MonodromyVerdict::PotentiallyGood
    } else if nontrivial {
        MonodromyVerdict::NontrivialWildMonodromy
    } else if trivial {
        MonodromyVerdict::TrivialWildMonodromy
    } else {
        MonodromyVerdict::Inconclusive
    };
    let exponent_bound = (center_prime_to_p && n >= 1).then(|| pow_u(p, n - 1).to_string());
    MonodromyReport {
        p,
        n,
        m_g,
        e_abs: fmt_q(e_abs),
        exponent_bound,
        gamma_w_trivial: trivial,
        gamma_w_nontrivial: nontrivial,
        verdict,
        inconsistent,
        notes,
    }
}

/// Whether an element of order `order` fits under the exponent bound.
pub fn within_bound(report: &MonodromyReport, order: u64) -> Option<bool> {
    let b: BigInt = report.exponent_bound.as_ref()?.parse().ok()?;
    Some((&b % BigInt::from(order)) == BigInt::from(0))
}
