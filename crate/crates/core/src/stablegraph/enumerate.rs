//! Admissible étale tail configurations of a three-point cover of the line.
//!
//! In units of `1/m`, a primitive tail contributes its numerator `a ≥ 1`
//! and a new tail `σ = b/m` contributes `b - m ≥ 1`; the contributions sum
//! to `m`. So each configuration is a partition of `m` with parts labelled
//! primitive or new.

use super::{GraphBuilder, StableGraph};
use crate::rational::{fmt_q, is_prime, q, qu, vp, Q};
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct EnumError(pub String);

/// How the number of primitive tails relates to the tame branch points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimitiveCount {
    /// Each tame branch point lies on its own primitive tail.
    Exact,
    /// Only an upper bound; admits configurations no cover realizes.
    AtMost,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TailConfig {
    #[serde(with = "crate::rational::serde_q::vec")]
    pub primitive: Vec<Q>,
    #[serde(with = "crate::rational::serde_q::vec")]
    pub new: Vec<Q>,
}

impl TailConfig {
    pub fn from_numerators(m: u64, primitive: &[u64], new: &[u64]) -> Self {
        let mut pr: Vec<Q> = primitive.iter().map(|&a| q(a as i64, m as i64)).collect();
        let mut nw: Vec<Q> = new.iter().map(|&b| q(b as i64, m as i64)).collect();
        pr.sort();
        nw.sort();
        TailConfig { primitive: pr, new: nw }
    }

    /// `Σ_new (σ - 1) + Σ_prim σ`, which must be 1.
    pub fn identity_sum(&self) -> Q {
        let one = qu(1);
        self.primitive.iter().cloned().sum::<Q>() + self.new.iter().map(|s| s - &one).sum::<Q>()
    }
}

impl fmt::Display for TailConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .primitive
            .iter()
            .map(|s| format!("prim {}", fmt_q(s)))
            .chain(self.new.iter().map(|s| format!("new {}", fmt_q(s))))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

fn partitions(n: u64, max: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if n == 0 {
        out.push(cur.clone());
        return;
    }
    for part in (1..=n.min(max)).rev() {
        cur.push(part);
        partitions(n - part, part, cur, out);
        cur.pop();
    }
}

pub fn enumerate_tail_configs(p: u64, n: u32, m: u64, wild: u32) -> Result<Vec<TailConfig>, EnumError> {
    enumerate_tail_configs_with(p, n, m, wild, PrimitiveCount::Exact)
}

/// `n` enters only through the realizations; the bounds that depend on the
/// adjoining inertia are checked there.
pub fn enumerate_tail_configs_with(p: u64, n: u32, m: u64, wild: u32, count: PrimitiveCount) -> Result<Vec<TailConfig>, EnumError> {
    if !is_prime(p) || m == 0 || (p - 1) % m != 0 {
        return Err(EnumError(format!("need a prime p with m | p - 1 (p = {p}, m = {m})")));
    }
    if wild > 3 || n == 0 {
        return Err(EnumError(format!("need 0 <= wild <= 3 and n >= 1 (wild = {wild}, n = {n})")));
    }
    let max_prim = (3 - wild) as usize;
    let mut parts = Vec::new();
    partitions(m, m, &mut Vec::new(), &mut parts);
    let mut out = BTreeSet::new();
    for part in parts {
        // choose which parts are primitive; parts are non-increasing, so
        // subsets by mask cover every labelling
        for mask in 0u32..(1 << part.len()) {
            let k = mask.count_ones() as usize;
            let ok = match count {
                PrimitiveCount::Exact => k == max_prim,
                PrimitiveCount::AtMost => k <= max_prim,
            };
            if !ok || part.len() as u64 >= p {
                continue;
            }
            let prim: Vec<u64> = part.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &a)| a).collect();
            let new: Vec<u64> = part.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 0).map(|(_, &c)| c + m).collect();
            out.insert(TailConfig::from_numerators(m, &prim, &new));
        }
    }
    Ok(out.into_iter().collect())
}

/// A `p`-component root with the configuration's étale tails and `wild`
/// branch points of index `p·s`. Tame branch points go one per primitive
/// tail; any left over are dropped.
pub fn realize_star(cfg: &TailConfig, p: u64, m: u64, wild: u32) -> StableGraph {
    let mut b = GraphBuilder::new(p, 1, m, 0);
    let root = b.component("v0", 0, 1, &[]);
    let mut cofactors = (1u64..).filter(|s| vp(p, *s) == 0);
    for i in 0..wild {
        b.branch_point(&format!("b{i}"), p * cofactors.next().expect("infinite"), root);
    }
    for (i, s) in cfg.primitive.iter().enumerate() {
        let tame = cofactors.next().expect("infinite");
        let t = b.component(&format!("prim{i}"), 0, 0, &[tame]);
        b.link(root, t, &[s.clone()]);
    }
    for (i, s) in cfg.new.iter().enumerate() {
        let t = b.component(&format!("new{i}"), 0, 0, &[]);
        b.link(root, t, &[s.clone()]);
    }
    b.build(root)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stablegraph::{check_global, check_tail_constraints, validate};

    #[test]
    fn five_two_two() {
        let got = enumerate_tail_configs(5, 1, 2, 2).unwrap();
        let want = vec![TailConfig::from_numerators(2, &[1], &[3]), TailConfig::from_numerators(2, &[2], &[])];
        assert_eq!(got, want);
        let loose = enumerate_tail_configs_with(5, 1, 2, 2, PrimitiveCount::AtMost).unwrap();
        assert_eq!(loose.len(), 4);
        assert!(loose.contains(&TailConfig::from_numerators(2, &[], &[4])));
        assert!(loose.contains(&TailConfig::from_numerators(2, &[], &[3, 3])));
    }

    #[test]
    fn thirds() {
        let got = enumerate_tail_configs(7, 1, 3, 0).unwrap();
        assert_eq!(got, vec![TailConfig::from_numerators(3, &[1, 1, 1], &[])]);
        assert_eq!(got[0].to_string(), "{prim 1/3, prim 1/3, prim 1/3}");
    }

    #[test]
    fn three_wild() {
        assert_eq!(enumerate_tail_configs(3, 1, 1, 3).unwrap(), vec![TailConfig::from_numerators(1, &[], &[2])]);
    }

    #[test]
    fn realizations_are_consistent() {
        for (p, m, w) in [(5u64, 2u64, 2u32), (7, 3, 0), (7, 6, 1), (13, 4, 2), (3, 1, 3)] {
            for cfg in enumerate_tail_configs(p, 1, m, w).unwrap() {
                assert_eq!(cfg.identity_sum(), qu(1));
                let g = realize_star(&cfg, p, m, w);
                assert_eq!(validate(&g), vec![], "{cfg}");
                assert!(check_global(&g).unwrap().holds, "{cfg}");
                assert_eq!(check_tail_constraints(&g), vec![], "{cfg}");
            }
        }
    }

    #[test]
    fn bad_input() {
        assert!(enumerate_tail_configs(5, 1, 3, 0).is_err());
        assert!(enumerate_tail_configs(6, 1, 1, 0).is_err());
        assert!(enumerate_tail_configs(5, 1, 1, 4).is_err());
    }
}
