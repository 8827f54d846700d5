//! Sylow data and the prime-to-p quotient, by brute force or by the
//! closed formulas for `SL2(q)` and `PGL3(q)`.

use super::{ConcreteGroup, Group, GroupError, GroupKind, GroupSpec, Result};
use crate::rational::{prime_power, vp};
use serde::Serialize;
use std::collections::{HashMap, HashSet, VecDeque};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    BruteForce,
    Structural,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SylowAnalysis {
    pub p: u64,
    pub order: u128,
    pub n: u32,
    pub is_cyclic: bool,
    /// `|N(P)/Z(P)|`; only meaningful (and only reported) for cyclic `P`.
    pub m_g: Option<u64>,
    pub center_has_p: bool,
    pub method: Method,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum QuotientShape {
    /// `Z/p^n`.
    Cyclic { n: u32 },
    /// `Z/p^n ⋊ Z/m`, where the action has order `action_order`.
    Semidirect { n: u32, m: u64, action_order: u64 },
    Other { order: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientReport {
    pub group_order: u64,
    /// Order of the largest normal prime-to-p subgroup.
    pub n_order: u64,
    pub quotient_order: u64,
    pub shape: QuotientShape,
    /// Whether the chosen normal order-p subgroup is central.
    pub order_p_central: bool,
}

/// All elements, by closure of the generators under right multiplication.
pub fn enumerate_elements(spec: &GroupSpec) -> Result<Vec<Vec<u32>>> {
    let g = ConcreteGroup::new(spec)?;
    if let Some(o) = g.theoretical_order() {
        if o > spec.order_cap as u128 {
            return Err(GroupError::OrderCapExceeded { cap: spec.order_cap });
        }
    }
    closure(&g, spec.order_cap)
}

pub fn closure<G: Group>(g: &G, cap: u64) -> Result<Vec<G::Elem>> {
    let gens = g.generators();
    let id = g.identity();
    let mut seen: HashSet<G::Elem> = HashSet::new();
    let mut out = vec![id.clone()];
    seen.insert(id);
    let mut i = 0;
    while i < out.len() {
        let x = out[i].clone();
        for s in &gens {
            let y = g.mul(&x, s);
            if seen.insert(y.clone()) {
                if out.len() as u64 >= cap {
                    return Err(GroupError::OrderCapExceeded { cap });
                }
                out.push(y);
            }
        }
        i += 1;
    }
    Ok(out)
}

/// Closure of an arbitrary set of elements of `g`.
fn subgroup_closure<G: Group>(g: &G, gens: &[G::Elem]) -> HashSet<G::Elem> {
    let id = g.identity();
    let mut seen: HashSet<G::Elem> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for s in gens {
            let y = g.mul(&x, s);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

pub fn sylow_analyze(spec: &GroupSpec, p: u64) -> Result<SylowAnalysis> {
    check_prime(p)?;
    let g = ConcreteGroup::new(spec)?;
    let within_cap = g.theoretical_order().map_or(true, |o| o <= spec.order_cap as u128);
    let structural_kind = matches!(spec.kind, GroupKind::Sl2 { .. } | GroupKind::Pgl3 { .. })
        && spec.generators.is_empty();
    if !within_cap {
        return if structural_kind {
            sylow_structural(&spec.kind, p)
        } else {
            Err(GroupError::OrderCapExceeded { cap: spec.order_cap })
        };
    }
    match closure(&g, spec.order_cap) {
        Ok(elems) => Ok(sylow_brute(&g, &elems, p)),
        Err(e) if structural_kind => sylow_structural(&spec.kind, p).map_err(|_| e),
        Err(e) => Err(e),
    }
}

fn check_prime(p: u64) -> Result<()> {
    if crate::rational::is_prime(p) {
        Ok(())
    } else {
        Err(GroupError::Invalid(format!("{p} is not prime")))
    }
}

/// An element of order `p^n` where `p^n || |G|`, if one exists.
fn sylow_generator<G: Group>(g: &G, elems: &[G::Elem], p: u64) -> (u32, Option<G::Elem>) {
    let order = elems.len() as u64;
    let n = vp(p, order);
    if n == 0 {
        return (0, Some(g.identity()));
    }
    let pn = p.pow(n);
    let cofactor = order / pn;
    let id = g.identity();
    let gen = elems.iter().find_map(|x| {
        let y = g.pow(x, cofactor);
        (g.pow(&y, pn / p) != id).then_some(y)
    });
    (n, gen)
}

pub fn sylow_brute<G: Group>(g: &G, elems: &[G::Elem], p: u64) -> SylowAnalysis {
    let order = elems.len() as u64;
    let (n, gen) = sylow_generator(g, elems, p);
    let gens = g.generators();
    let center = elems
        .iter()
        .filter(|x| gens.iter().all(|s| g.mul(x, s) == g.mul(s, x)))
        .count() as u64;
    let center_has_p = center % p == 0;
    let m_g = gen.as_ref().map(|y| {
        let cyc: HashSet<G::Elem> = {
            let mut s = HashSet::new();
            let mut z = g.identity();
            loop {
                if !s.insert(z.clone()) {
                    break;
                }
                z = g.mul(&z, y);
            }
            s
        };
        let (mut norm, mut cent) = (0u64, 0u64);
        for x in elems {
            let c = g.conj(x, y);
            if c == *y {
                cent += 1;
            }
            if cyc.contains(&c) {
                norm += 1;
            }
        }
        norm / cent
    });
    SylowAnalysis {
        p,
        order: order as u128,
        n,
        is_cyclic: gen.is_some(),
        m_g,
        center_has_p,
        method: Method::BruteForce,
    }
}

/// Closed formulas for `SL2(q)` (odd `q`) and `PGL3(q)` (`p >= 5`,
/// `p` not dividing `q`).
pub fn sylow_structural(kind: &GroupKind, p: u64) -> Result<SylowAnalysis> {
    check_prime(p)?;
    let none = |s: String| Err(GroupError::NoStructuralFormula(s));
    match *kind {
        GroupKind::Sl2 { q } => {
            let (l, k) = prime_power(q).ok_or_else(|| GroupError::Invalid(format!("{q}")))?;
            if l == 2 {
                return none(format!("SL2({q}) in characteristic 2"));
            }
            let order = q as u128 * (q as u128 - 1) * (q as u128 + 1);
            let res = |n: u32, is_cyclic: bool, m_g: Option<u64>, center_has_p: bool| {
                Ok(SylowAnalysis { p, order, n, is_cyclic, m_g, center_has_p, method: Method::Structural })
            };
            if p == l {
                // Sylow = upper unitriangular; N = Borel, Z = +-U
                let m = (k == 1).then_some((q - 1) / 2);
                return res(k, k == 1, m, false);
            }
            let n = vp(p, q - 1) + vp(p, q + 1);
            if p == 2 {
                // generalized quaternion of order >= 8
                return res(n, false, None, true);
            }
            if n == 0 {
                return res(0, true, Some(1), false);
            }
            // inside a torus of order q-1 or q+1; the normalizer of the torus
            // has index 2 over it
            res(n, true, Some(2), false)
        }
        GroupKind::Pgl3 { q } => {
            let (l, _) = prime_power(q).ok_or_else(|| GroupError::Invalid(format!("{q}")))?;
            if p < 5 || p == l {
                return none(format!("PGL3({q}) at p = {p}"));
            }
            let q3 = q as u128;
            let order = q3.pow(3) * (q3.pow(3) - 1) * (q3 * q3 - 1);
            let res = |n: u32, is_cyclic: bool, m_g: Option<u64>| {
                Ok(SylowAnalysis {
                    p,
                    order,
                    n,
                    is_cyclic,
                    m_g,
                    center_has_p: false,
                    method: Method::Structural,
                })
            };
            let q2 = (q as u128 * q as u128 + q as u128 + 1) as u64;
            if q2 % p == 0 {
                res(vp(p, q2), true, Some(3))
            } else if (q + 1) % p == 0 {
                res(vp(p, q + 1), true, Some(2))
            } else if (q - 1) % p == 0 {
                res(2 * vp(p, q - 1), false, None)
            } else {
                res(0, true, Some(1))
            }
        }
        _ => none("this kind of group".into()),
    }
}

/// `G/N` by coset representatives.
pub struct Quotient<'a, G: Group> {
    g: &'a G,
    reps: Vec<G::Elem>,
    coset_of: HashMap<G::Elem, u32>,
}

impl<'a, G: Group> Quotient<'a, G> {
    pub fn new(g: &'a G, elems: &[G::Elem], normal: &HashSet<G::Elem>) -> Self {
        let normal: Vec<G::Elem> = normal.iter().cloned().collect();
        let mut reps = Vec::new();
        let mut coset_of = HashMap::new();
        for x in elems {
            if coset_of.contains_key(x) {
                continue;
            }
            let idx = reps.len() as u32;
            for k in &normal {
                coset_of.insert(g.mul(x, k), idx);
            }
            reps.push(x.clone());
        }
        Quotient { g, reps, coset_of }
    }

    pub fn order(&self) -> usize {
        self.reps.len()
    }

    pub fn elements(&self) -> Vec<u32> {
        (0..self.reps.len() as u32).collect()
    }
}

impl<G: Group> Group for Quotient<'_, G> {
    type Elem = u32;

    fn identity(&self) -> u32 {
        self.coset_of[&self.g.identity()]
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.coset_of[&self.g.mul(&self.reps[*a as usize], &self.reps[*b as usize])]
    }

    fn inv(&self, a: &u32) -> u32 {
        self.coset_of[&self.g.inv(&self.reps[*a as usize])]
    }

    fn generators(&self) -> Vec<u32> {
        self.g.generators().iter().map(|s| self.coset_of[s]).collect()
    }
}

pub fn quotient_structure(spec: &GroupSpec, p: u64) -> Result<QuotientReport> {
    check_prime(p)?;
    let g = ConcreteGroup::new(spec)?;
    let elems = enumerate_elements(spec)?;
    quotient_of(&g, &elems, p)
}

/// Conjugacy classes, as lists of elements.
fn conjugacy_classes<G: Group>(g: &G, elems: &[G::Elem]) -> Vec<Vec<G::Elem>> {
    let gens = g.generators();
    let mut seen: HashSet<G::Elem> = HashSet::new();
    let mut out = Vec::new();
    for x in elems {
        if seen.contains(x) {
            continue;
        }
        let mut class = vec![x.clone()];
        seen.insert(x.clone());
        let mut i = 0;
        while i < class.len() {
            let y = class[i].clone();
            for s in &gens {
                let z = g.conj(s, &y);
                if seen.insert(z.clone()) {
                    class.push(z);
                }
            }
            i += 1;
        }
        out.push(class);
    }
    out
}

/// The largest normal subgroup of order prime to `p`.
pub fn largest_normal_p_prime<G: Group>(g: &G, elems: &[G::Elem], p: u64) -> HashSet<G::Elem> {
    let group_order = elems.len() as u64;
    let mut keep: Vec<G::Elem> = Vec::new();
    for class in conjugacy_classes(g, elems) {
        let ord = g.order_dividing(&class[0], group_order);
        if ord % p == 0 || ord == 1 {
            continue;
        }
        let sub = subgroup_closure(g, &class);
        if sub.len() as u64 % p != 0 {
            keep.extend(class);
        }
    }
    subgroup_closure(g, &keep)
}

pub fn quotient_of<G: Group>(g: &G, elems: &[G::Elem], p: u64) -> Result<QuotientReport> {
    let order = elems.len() as u64;
    let gens = g.generators();
    let id = g.identity();
    // a normal subgroup of order p
    let normal_p = elems.iter().find(|x| {
        **x != id && g.pow(x, p) == id && {
            let sub = subgroup_closure(g, std::slice::from_ref(*x));
            gens.iter().all(|s| sub.contains(&g.conj(s, x)))
        }
    });
    let Some(z) = normal_p else {
        return Err(GroupError::NoNormalPSubgroup { p });
    };
    let order_p_central = gens.iter().all(|s| g.mul(s, z) == g.mul(z, s));
    let n_sub = largest_normal_p_prime(g, elems, p);
    let quot = Quotient::new(g, elems, &n_sub);
    let qelems = quot.elements();
    let qorder = quot.order() as u64;
    let shape = classify_quotient(&quot, &qelems, p);
    Ok(QuotientReport {
        group_order: order,
        n_order: n_sub.len() as u64,
        quotient_order: qorder,
        shape,
        order_p_central,
    })
}

fn classify_quotient<G: Group>(g: &G, elems: &[G::Elem], p: u64) -> QuotientShape {
    let order = elems.len() as u64;
    let other = QuotientShape::Other { order };
    let (n, gen) = sylow_generator(g, elems, p);
    let Some(y) = gen else { return other };
    let pn = p.pow(n);
    let m = order / pn;
    if m == 1 {
        return QuotientShape::Cyclic { n };
    }
    let cyc: Vec<G::Elem> = (0..pn).map(|k| g.pow(&y, k)).collect();
    let cyc_set: HashSet<G::Elem> = cyc.iter().cloned().collect();
    if !g.generators().iter().all(|s| cyc_set.contains(&g.conj(s, &y))) {
        return other;
    }
    // an element of order exactly m acting on <y>
    let t = elems.iter().find_map(|x| {
        let t = g.pow(x, pn);
        let mut z = t.clone();
        for _ in 1..m {
            if cyc_set.contains(&z) {
                return None;
            }
            z = g.mul(&z, &t);
        }
        (z == g.identity()).then_some(t)
    });
    let Some(t) = t else { return other };
    let c = g.conj(&t, &y);
    let Some(a) = cyc.iter().position(|x| *x == c) else { return other };
    let mut action_order = 1u64;
    let mut acc = a as u64 % pn;
    while acc != 1 {
        acc = acc * a as u64 % pn;
        action_order += 1;
        if action_order > pn {
            return other;
        }
    }
    QuotientShape::Semidirect { n, m, action_order }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> GroupSpec {
        s.parse().unwrap()
    }

    #[test]
    fn element_counts() {
        assert_eq!(enumerate_elements(&spec("cyclic 6")).unwrap().len(), 6);
        assert_eq!(enumerate_elements(&spec("sl2 q=3")).unwrap().len(), 24);
        assert_eq!(enumerate_elements(&spec("sl2 q=11")).unwrap().len(), 1320);
        assert_eq!(enumerate_elements(&spec("pgl3 q=2")).unwrap().len(), 168);
        assert_eq!(enumerate_elements(&spec("sl2 q=9")).unwrap().len(), 720);
        assert!(matches!(
            enumerate_elements(&spec("sl2 q=11 cap=100")),
            Err(GroupError::OrderCapExceeded { cap: 100 })
        ));
    }

    #[test]
    fn sylow_examples() {
        let s3 = sylow_analyze(&spec("perm (1 2 3); (1 2)"), 3).unwrap();
        assert_eq!((s3.n, s3.is_cyclic, s3.m_g), (1, true, Some(2)));
        let a = sylow_analyze(&spec("sl2 q=11"), 5).unwrap();
        assert_eq!((a.n, a.is_cyclic, a.m_g, a.method), (1, true, Some(2), Method::BruteForce));
        let a = sylow_analyze(&spec("pgl3 q=2"), 7).unwrap();
        assert_eq!((a.n, a.is_cyclic, a.m_g), (1, true, Some(3)));
        let a = sylow_analyze(&spec("sl2 q=251"), 5).unwrap();
        assert_eq!((a.n, a.is_cyclic, a.m_g, a.method), (3, true, Some(2), Method::Structural));
    }

    #[test]
    fn center_with_p_forces_trivial_action() {
        let a = sylow_analyze(&spec("cyclic 3 x semidirect 5 4 action=2"), 3).unwrap();
        assert!(a.center_has_p);
        assert_eq!(a.m_g, Some(1));
        let a = sylow_analyze(&spec("sl2 q=5"), 2).unwrap();
        assert!(!a.is_cyclic && a.center_has_p && a.m_g.is_none());
    }

    #[test]
    fn quotients() {
        let r = quotient_structure(&spec("cyclic 15"), 5).unwrap();
        assert_eq!((r.n_order, &r.shape), (3, &QuotientShape::Cyclic { n: 1 }));
        let r = quotient_structure(&spec("semidirect 5 4 action=2"), 5).unwrap();
        assert_eq!(r.n_order, 1);
        assert_eq!(r.shape, QuotientShape::Semidirect { n: 1, m: 4, action_order: 4 });
        let r = quotient_structure(&spec("cyclic 3 x semidirect 5 4 action=2"), 5).unwrap();
        assert_eq!(r.n_order, 3);
        assert_eq!(r.shape, QuotientShape::Semidirect { n: 1, m: 4, action_order: 4 });
        assert!(matches!(
            quotient_structure(&spec("sl2 q=11"), 5),
            Err(GroupError::NoNormalPSubgroup { p: 5 })
        ));
    }

    #[test]
    fn central_order_p_gives_cyclic_quotient() {
        // Z/5 x S3: the order-5 subgroup is central
        let r = quotient_structure(&spec("cyclic 5 x semidirect 3 2 action=2"), 5).unwrap();
        assert!(r.order_p_central);
        assert_eq!(r.shape, QuotientShape::Cyclic { n: 1 });
        assert_eq!(r.n_order, 6);
    }
}
