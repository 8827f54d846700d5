//! Finite groups with cyclic p-Sylow subgroups.
//!
//! Groups are given by a [`GroupSpec`]; elements are flat `Vec<u32>`
//! encodings so that permutation, matrix and product groups share one
//! closure routine. The analysis in [`analysis`] is generic over [`Group`],
//! which also lets it run on quotients.

pub mod analysis;
pub mod field;
pub mod spec;
pub mod triple;

use field::Gf;
use std::fmt::Debug;
use std::hash::Hash;

pub use analysis::{
    enumerate_elements, quotient_structure, sylow_analyze, sylow_structural, Method,
    QuotientReport, QuotientShape, SylowAnalysis,
};
pub use spec::{Factor, GroupKind, GroupSpec};
pub use triple::{find_sl2_triple, pgl3_p_data, Generation, MatrixTriple, Pgl3SylowData};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("group order exceeds the enumeration cap {cap}")]
    OrderCapExceeded { cap: u64 },
    #[error("invalid group: {0}")]
    Invalid(String),
    #[error("no structural formula for {0}")]
    NoStructuralFormula(String),
    #[error("no normal subgroup of order p = {p}")]
    NoNormalPSubgroup { p: u64 },
    #[error("no trace in F_{q} realizes the requested orders {orders:?}")]
    NoSuchTraces { q: u64, orders: (u64, u64, u64) },
    #[error("cannot certify that the triple generates SL2({q})")]
    GenerationUnverified { q: u64 },
    #[error("cannot parse group spec {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

pub type Result<T> = std::result::Result<T, GroupError>;

pub trait Group {
    type Elem: Clone + Eq + Hash + Debug;
    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn generators(&self) -> Vec<Self::Elem>;

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn conj(&self, x: &Self::Elem, g: &Self::Elem) -> Self::Elem {
        self.mul(&self.mul(x, g), &self.inv(x))
    }

    /// Order of `a`, given any multiple `e` of it.
    fn order_dividing(&self, a: &Self::Elem, e: u64) -> u64 {
        let id = self.identity();
        debug_assert!(self.pow(a, e) == id);
        let mut ord = e;
        for l in crate::rational::prime_factors(e) {
            while ord % l == 0 && self.pow(a, ord / l) == id {
                ord /= l;
            }
        }
        ord
    }
}

/// A group built from a [`GroupSpec`].
#[derive(Debug, Clone)]
pub struct ConcreteGroup {
    kind: GroupKind,
    field: Option<Gf>,
    gens: Vec<Vec<u32>>,
}

impl ConcreteGroup {
    pub fn new(spec: &GroupSpec) -> Result<Self> {
        let field = match &spec.kind {
            GroupKind::Sl2 { q } | GroupKind::Pgl3 { q } => Some(
                Gf::new(*q).ok_or_else(|| GroupError::Invalid(format!("q = {q} is not a supported prime power")))?,
            ),
            _ => None,
        };
        if let GroupKind::Product(fs) = &spec.kind {
            for f in fs {
                f.check()?;
            }
        }
        let mut g = ConcreteGroup { kind: spec.kind.clone(), field, gens: Vec::new() };
        g.gens = if spec.generators.is_empty() {
            g.default_generators()?
        } else {
            spec.generators.iter().map(|x| g.canonical(x)).collect::<Result<_>>()?
        };
        Ok(g)
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn field(&self) -> Option<&Gf> {
        self.field.as_ref()
    }

    /// `|G|` from the closed formula, when the kind has one.
    pub fn theoretical_order(&self) -> Option<u128> {
        match &self.kind {
            GroupKind::Sl2 { q } => {
                let q = *q as u128;
                Some(q * (q - 1) * (q + 1))
            }
            GroupKind::Pgl3 { q } => {
                let q = *q as u128;
                Some(q.pow(3) * (q.pow(3) - 1) * (q * q - 1))
            }
            GroupKind::Product(fs) => Some(fs.iter().map(|f| f.order() as u128).product()),
            GroupKind::Perm { .. } => None,
        }
    }

    fn gf(&self) -> &Gf {
        self.field.as_ref().expect("matrix kind has a field")
    }

    fn default_generators(&self) -> Result<Vec<Vec<u32>>> {
        match &self.kind {
            GroupKind::Perm { .. } => {
                Err(GroupError::Invalid("permutation groups need explicit generators".into()))
            }
            GroupKind::Sl2 { .. } => {
                let f = self.gf();
                let mut out = Vec::new();
                for i in 0..f.degree() {
                    let t = f.pow_primitive(i as u64);
                    out.push(vec![1, t, 0, 1]);
                    out.push(vec![1, 0, t, 1]);
                }
                Ok(out)
            }
            GroupKind::Pgl3 { .. } => {
                let f = self.gf();
                let mut out = Vec::new();
                for i in 0..3 {
                    for j in 0..3 {
                        if i == j {
                            continue;
                        }
                        for l in 0..f.degree() {
                            let mut m = vec![1, 0, 0, 0, 1, 0, 0, 0, 1];
                            m[3 * i + j] = f.pow_primitive(l as u64);
                            out.push(m);
                        }
                    }
                }
                if f.primitive() != 1 {
                    out.push(pgl3_canon(f, vec![f.primitive(), 0, 0, 0, 1, 0, 0, 0, 1]));
                }
                Ok(out)
            }
            GroupKind::Product(fs) => {
                let width = 2 * fs.len();
                let mut out = Vec::new();
                for (i, f) in fs.iter().enumerate() {
                    let (n, m) = f.shape();
                    if n > 1 {
                        let mut e = vec![0; width];
                        e[2 * i] = 1;
                        out.push(e);
                    }
                    if m > 1 {
                        let mut e = vec![0; width];
                        e[2 * i + 1] = 1;
                        out.push(e);
                    }
                }
                Ok(out)
            }
        }
    }

    /// Validates an element and brings it to canonical form.
    pub fn canonical(&self, x: &[u32]) -> Result<Vec<u32>> {
        let bad = |s: String| Err(GroupError::Invalid(s));
        match &self.kind {
            GroupKind::Perm { degree } => {
                let mut seen = vec![false; *degree];
                if x.len() != *degree {
                    return bad(format!("permutation {x:?} is not on {degree} points"));
                }
                for &i in x {
                    if i as usize >= *degree || seen[i as usize] {
                        return bad(format!("{x:?} is not a bijection"));
                    }
                    seen[i as usize] = true;
                }
                Ok(x.to_vec())
            }
            GroupKind::Sl2 { .. } => {
                let f = self.gf();
                if x.len() != 4 || x.iter().any(|&a| a >= f.q()) {
                    return bad(format!("{x:?} is not a 2x2 matrix over F_{}", f.q()));
                }
                if f.sub(f.mul(x[0], x[3]), f.mul(x[1], x[2])) != 1 {
                    return bad(format!("{x:?} does not have determinant 1"));
                }
                Ok(x.to_vec())
            }
            GroupKind::Pgl3 { .. } => {
                let f = self.gf();
                if x.len() != 9 || x.iter().any(|&a| a >= f.q()) {
                    return bad(format!("{x:?} is not a 3x3 matrix over F_{}", f.q()));
                }
                if det3(f, x) == 0 {
                    return bad(format!("{x:?} is singular"));
                }
                Ok(pgl3_canon(f, x.to_vec()))
            }
            GroupKind::Product(fs) => {
                if x.len() != 2 * fs.len() {
                    return bad(format!("{x:?} has the wrong number of coordinates"));
                }
                Ok(fs
                    .iter()
                    .enumerate()
                    .flat_map(|(i, f)| {
                        let (n, m) = f.shape();
                        [x[2 * i] % n as u32, x[2 * i + 1] % m as u32]
                    })
                    .collect())
            }
        }
    }
}

impl Group for ConcreteGroup {
    type Elem = Vec<u32>;

    fn identity(&self) -> Vec<u32> {
        match &self.kind {
            GroupKind::Perm { degree } => (0..*degree as u32).collect(),
            GroupKind::Sl2 { .. } => vec![1, 0, 0, 1],
            GroupKind::Pgl3 { .. } => vec![1, 0, 0, 0, 1, 0, 0, 0, 1],
            GroupKind::Product(fs) => vec![0; 2 * fs.len()],
        }
    }

    fn mul(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        match &self.kind {
            GroupKind::Perm { .. } => b.iter().map(|&i| a[i as usize]).collect(),
            GroupKind::Sl2 { .. } => mat_mul(self.gf(), a, b, 2),
            GroupKind::Pgl3 { .. } => pgl3_canon(self.gf(), mat_mul(self.gf(), a, b, 3)),
            GroupKind::Product(fs) => {
                let mut out = Vec::with_capacity(a.len());
                for (i, f) in fs.iter().enumerate() {
                    let (n, m) = f.shape();
                    let (n, m) = (n as u64, m as u64);
                    let t = f.action() as u64;
                    let (a1, b1) = (a[2 * i] as u64, a[2 * i + 1] as u64);
                    let (a2, b2) = (b[2 * i] as u64, b[2 * i + 1] as u64);
                    let tw = mod_pow(t, b1, n);
                    out.push(((a1 + tw * a2) % n) as u32);
                    out.push(((b1 + b2) % m) as u32);
                }
                out
            }
        }
    }

    fn inv(&self, a: &Vec<u32>) -> Vec<u32> {
        match &self.kind {
            GroupKind::Perm { .. } => {
                let mut out = vec![0; a.len()];
                for (i, &j) in a.iter().enumerate() {
                    out[j as usize] = i as u32;
                }
                out
            }
            GroupKind::Sl2 { .. } => {
                let f = self.gf();
                vec![a[3], f.neg(a[1]), f.neg(a[2]), a[0]]
            }
            GroupKind::Pgl3 { .. } => pgl3_canon(self.gf(), adjugate3(self.gf(), a)),
            GroupKind::Product(fs) => {
                let mut out = Vec::with_capacity(a.len());
                for (i, f) in fs.iter().enumerate() {
                    let (n, m) = f.shape();
                    let (n, m) = (n as u64, m as u64);
                    let t = f.action() as u64;
                    let (a1, b1) = (a[2 * i] as u64, a[2 * i + 1] as u64);
                    let binv = (m - b1) % m;
                    let tw = mod_pow(t, binv, n);
                    out.push(((n - (tw * a1) % n) % n) as u32);
                    out.push(binv as u32);
                }
                out
            }
        }
    }

    fn generators(&self) -> Vec<Vec<u32>> {
        self.gens.clone()
    }
}

pub(crate) fn mod_pow(mut b: u64, mut e: u64, n: u64) -> u64 {
    let mut acc = 1 % n;
    b %= n;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % n;
        }
        b = b * b % n;
        e >>= 1;
    }
    acc
}

fn mat_mul(f: &Gf, a: &[u32], b: &[u32], k: usize) -> Vec<u32> {
    let mut out = vec![0u32; k * k];
    for i in 0..k {
        for j in 0..k {
            let mut s = 0;
            for l in 0..k {
                s = f.add(s, f.mul(a[i * k + l], b[l * k + j]));
            }
            out[i * k + j] = s;
        }
    }
    out
}

fn det3(f: &Gf, m: &[u32]) -> u32 {
    let t = |a: u32, b: u32, c: u32| f.mul(a, f.mul(b, c));
    let plus = f.add(f.add(t(m[0], m[4], m[8]), t(m[1], m[5], m[6])), t(m[2], m[3], m[7]));
    let minus = f.add(f.add(t(m[2], m[4], m[6]), t(m[0], m[5], m[7])), t(m[1], m[3], m[8]));
    f.sub(plus, minus)
}

fn adjugate3(f: &Gf, m: &[u32]) -> Vec<u32> {
    let cof = |r0: usize, r1: usize, c0: usize, c1: usize| {
        f.sub(f.mul(m[3 * r0 + c0], m[3 * r1 + c1]), f.mul(m[3 * r0 + c1], m[3 * r1 + c0]))
    };
    // adj[i][j] = (-1)^{i+j} minor(j, i)
    let mut out = vec![0u32; 9];
    let others = [(1, 2), (0, 2), (0, 1)];
    for i in 0..3 {
        for j in 0..3 {
            let (r0, r1) = others[j];
            let (c0, c1) = others[i];
            let c = cof(r0, r1, c0, c1);
            out[3 * i + j] = if (i + j) % 2 == 0 { c } else { f.neg(c) };
        }
    }
    out
}

/// Scales a nonsingular matrix so that its first nonzero entry is 1.
pub(crate) fn pgl3_canon(f: &Gf, mut m: Vec<u32>) -> Vec<u32> {
    let lead = *m.iter().find(|&&a| a != 0).expect("nonzero matrix");
    if lead != 1 {
        let s = f.inv(lead).expect("nonzero");
        for a in m.iter_mut() {
            *a = f.mul(*a, s);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pgl3_inverse_is_inverse() {
        let g = ConcreteGroup::new(&"pgl3 q=4".parse().unwrap()).unwrap();
        let id = g.identity();
        let gens = g.generators();
        let mut x = id.clone();
        for s in gens.iter().cycle().take(17) {
            x = g.mul(&x, s);
            assert_eq!(g.mul(&x, &g.inv(&x)), id);
        }
    }

    #[test]
    fn semidirect_inverse() {
        let g = ConcreteGroup::new(&"semidirect 5 4 action=2".parse().unwrap()).unwrap();
        let id = g.identity();
        for a in 0..5 {
            for b in 0..4 {
                let x = vec![a, b];
                assert_eq!(g.mul(&x, &g.inv(&x)), id);
                assert_eq!(g.mul(&g.inv(&x), &x), id);
            }
        }
    }

    #[test]
    fn invalid_generators_rejected() {
        let mut s: GroupSpec = "sl2 q=5".parse().unwrap();
        s.generators = vec![vec![1, 1, 1, 1]];
        assert!(ConcreteGroup::new(&s).is_err());
        let mut s: GroupSpec = "pgl3 q=3".parse().unwrap();
        s.generators = vec![vec![1, 1, 0, 1, 1, 0, 0, 0, 1]];
        assert!(ConcreteGroup::new(&s).is_err());
        assert!("perm (1 2)(2 3)".parse::<GroupSpec>().is_err());
    }
}
