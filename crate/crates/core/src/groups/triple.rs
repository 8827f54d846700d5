//! Generating pairs of `SL2(q)` with prescribed orders, and the `PGL3(q)`
//! Sylow numerics.

use super::field::Gf;
use super::{analysis, ConcreteGroup, Group, GroupError, GroupSpec, Result};
use crate::rational::{is_prime, prime_power, vp};
use serde::Serialize;

/// Largest `|SL2(q)|` for which generation is checked by closure.
pub const CLOSURE_LIMIT: u128 = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Generation {
    /// The closure of `alpha, beta` was enumerated and has order `|SL2(q)|`.
    Closure,
    /// Prime `q >= 5`, `beta` not upper triangular, and `-I` is a power of
    /// `beta` or `alpha*beta`.
    Structural,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixTriple {
    pub q: u64,
    pub alpha: [u32; 4],
    pub beta: [u32; 4],
    /// `(ord alpha, ord beta, ord alpha*beta)`, recomputed by powering.
    pub orders: (u64, u64, u64),
    pub tau: u32,
    pub rho: u32,
    pub generation: Generation,
}

fn sl2_group(q: u64) -> Result<ConcreteGroup> {
    ConcreteGroup::new(&GroupSpec::sl2(q))
}

fn sl2_order(q: u64) -> u64 {
    q * (q - 1) * (q + 1)
}

/// Order of the elements of `SL2(q)` with trace `t` that are not `+-I`.
fn trace_order(g: &ConcreteGroup, f: &Gf, t: u32) -> u64 {
    let x = vec![0, f.neg(1), 1, t];
    g.order_dividing(&x, sl2_order(f.q() as u64))
}

pub fn find_sl2_triple(q: u64, orders: (u64, u64, u64)) -> Result<MatrixTriple> {
    let (l, _) = prime_power(q).ok_or_else(|| GroupError::Invalid(format!("{q} is not a prime power")))?;
    if l == 2 {
        return Err(GroupError::Invalid(format!("q = {q} must be odd")));
    }
    let g = sl2_group(q)?;
    let f = g.field().expect("matrix group").clone();
    let (o1, o2, o3) = orders;
    let none = || GroupError::NoSuchTraces { q, orders };
    if o1 != l {
        return Err(none());
    }
    let by_order: Vec<u64> = f.elements().map(|t| trace_order(&g, &f, t)).collect();
    let taus: Vec<u32> = f.elements().filter(|&t| by_order[t as usize] == o2).collect();
    let rhos: Vec<u32> = f.elements().filter(|&t| by_order[t as usize] == o3).collect();
    let mut cands: Vec<([u32; 4], u32, u32)> = Vec::new();
    for &tau in &taus {
        for &rho in &rhos {
            let c = f.sub(rho, tau);
            if c == 0 {
                continue;
            }
            for a in f.elements() {
                let d = f.sub(tau, a);
                let b = f.div(f.sub(f.mul(a, d), 1), c).expect("c != 0");
                cands.push(([a, b, c, d], tau, rho));
            }
        }
    }
    if cands.is_empty() {
        return Err(none());
    }
    cands.sort();
    let alpha = vec![1, 1, 0, 1];
    let order = sl2_order(q);
    let small = (order as u128) <= CLOSURE_LIMIT;
    let mut attempts = 0;
    for (beta, tau, rho) in cands {
        let bv = beta.to_vec();
        let ab = g.mul(&alpha, &bv);
        let got = (
            g.order_dividing(&alpha, order),
            g.order_dividing(&bv, order),
            g.order_dividing(&ab, order),
        );
        debug_assert_eq!(got, orders);
        let generation = if is_prime(q) && q >= 5 && minus_identity_in(&g, &f, &bv, o2, &ab, o3) {
            Some(Generation::Structural)
        } else if small {
            attempts += 1;
            let sub = SubgroupOf { g: &g, gens: vec![alpha.clone(), bv.clone()] };
            let size = analysis::closure(&sub, order + 1).map(|v| v.len() as u64).unwrap_or(0);
            (size == order).then_some(Generation::Closure)
        } else {
            None
        };
        if let Some(generation) = generation {
            return Ok(MatrixTriple {
                q,
                alpha: [1, 1, 0, 1],
                beta,
                orders: got,
                tau,
                rho,
                generation,
            });
        }
        if !small || attempts >= 32 {
            break;
        }
    }
    Err(GroupError::GenerationUnverified { q })
}

fn minus_identity_in(g: &ConcreteGroup, f: &Gf, b: &Vec<u32>, ob: u64, ab: &Vec<u32>, oab: u64) -> bool {
    let minus = vec![f.neg(1), 0, 0, f.neg(1)];
    (ob % 2 == 0 && g.pow(b, ob / 2) == minus) || (oab % 2 == 0 && g.pow(ab, oab / 2) == minus)
}

/// A subgroup of a concrete group given by generators.
struct SubgroupOf<'a> {
    g: &'a ConcreteGroup,
    gens: Vec<Vec<u32>>,
}

impl Group for SubgroupOf<'_> {
    type Elem = Vec<u32>;
    fn identity(&self) -> Vec<u32> {
        self.g.identity()
    }
    fn mul(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        self.g.mul(a, b)
    }
    fn inv(&self, a: &Vec<u32>) -> Vec<u32> {
        self.g.inv(a)
    }
    fn generators(&self) -> Vec<Vec<u32>> {
        self.gens.clone()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pgl3SylowData {
    pub n: u32,
    /// 3 when the p-Sylow lies in the torus of order `q^2+q+1`; `None` when
    /// `p` does not divide `q^2+q+1`.
    pub m_predicted: Option<u64>,
}

pub fn pgl3_p_data(q: u64, p: u64) -> Result<Pgl3SylowData> {
    let (l, _) = prime_power(q).ok_or_else(|| GroupError::Invalid(format!("{q} is not a prime power")))?;
    if !is_prime(p) || p < 5 || l == p {
        return Err(GroupError::Invalid(format!("need a prime p >= 5 not dividing q (p = {p}, q = {q})")));
    }
    let n = vp(p, q * q + q + 1);
    Ok(Pgl3SylowData { n, m_predicted: (n >= 1).then_some(3) })
}
