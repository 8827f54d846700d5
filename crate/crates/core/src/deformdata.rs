//! Deformation data at the level of signatures: critical points with their
//! `(h, m)` and wild jumps, the local identity relating them to the base
//! genus, compatibility across a node, and the reduction type of a
//! `μ_p`-torsor.

use crate::ramification::{different_degree_lower, RamFiltration};
use crate::rational::{fmt_q, in_lattice, is_prime, pow_u, q, qi, qu, serde_q, Q};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DatumError {
    #[error("critical point {name}: {reason}")]
    InvalidPoint { name: String, reason: String },
    #[error("invalid deformation datum: {0}")]
    Invalid(String),
    #[error("delta = {delta} is not 1 - n(p-1)/e for an admissible n (e = {e}, p = {p})")]
    InvalidDelta { delta: String, e: u64, p: u64 },
    #[error("2g_V - 2 = {value} is not an integer ({which})")]
    NonIntegralGenus { which: &'static str, value: String },
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
}

pub type Result<T> = std::result::Result<T, DatumError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointKind {
    Tame,
    Wild,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub name: String,
    pub kind: PointKind,
    /// `ord(ω) + 1`; may be negative.
    pub h: i64,
    pub m: u64,
    #[serde(default)]
    pub n_w: u32,
    #[serde(default, with = "serde_q::vec", skip_serializing_if = "Vec::is_empty")]
    pub wild_sigmas: Vec<Q>,
    /// Specialization of a branch point with ramification divisible by `p`;
    /// these and only these have `h = 0`.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub branch_specialization: bool,
}

impl CriticalPoint {
    pub fn tame(name: &str, h: i64, m: u64) -> Self {
        CriticalPoint {
            name: name.into(),
            kind: PointKind::Tame,
            h,
            m,
            n_w: 0,
            wild_sigmas: Vec::new(),
            branch_specialization: false,
        }
    }

    pub fn wild(name: &str, h: i64, m: u64, wild_sigmas: Vec<Q>) -> Self {
        CriticalPoint {
            name: name.into(),
            kind: PointKind::Wild,
            h,
            m,
            n_w: wild_sigmas.len() as u32,
            wild_sigmas,
            branch_specialization: false,
        }
    }

    pub fn sigma(&self) -> Q {
        q(self.h, self.m as i64)
    }

    /// The lower filtration `h_{i,w} = m_w σ_{i,w}` of a wild point.
    pub fn filtration(&self, p: u64) -> Result<RamFiltration> {
        let bad = |reason: String| DatumError::InvalidPoint { name: self.name.clone(), reason };
        let mut lower = Vec::new();
        for s in &self.wild_sigmas {
            let h = s * qu(self.m);
            if !h.is_integer() || h <= Q::zero() {
                return Err(bad(format!("m·σ = {} is not a positive integer", fmt_q(&h))));
            }
            lower.push(h.to_integer().try_into().map_err(|_| bad("jump too large".into()))?);
        }
        RamFiltration::new(p, self.m, lower).map_err(|e| bad(e.to_string()))
    }

    fn validate(&self, d: &DeformationDatum) -> Result<()> {
        let bad = |reason: &str| Err(DatumError::InvalidPoint { name: self.name.clone(), reason: reason.into() });
        if self.m == 0 || self.m % d.p == 0 {
            return bad("m must be positive and prime to p");
        }
        if (self.h, self.m) == (1, 1) {
            return bad("signature (1, 1) is not critical");
        }
        match self.kind {
            PointKind::Tame if self.n_w != 0 || !self.wild_sigmas.is_empty() => {
                return bad("tame points carry no wild jumps");
            }
            PointKind::Wild if self.n_w == 0 || self.wild_sigmas.len() != self.n_w as usize => {
                return bad("wild points need n_w >= 1 jumps");
            }
            PointKind::Wild => {
                self.filtration(d.p)?;
            }
            PointKind::Tame => {}
        }
        if self.h == 0 && !self.branch_specialization {
            return bad("h = 0 only at specializations of wild branch points");
        }
        if self.branch_specialization {
            if self.h != 0 {
                return bad("branch specializations have sigma = 0");
            }
            if d.reduction_type != ReductionType::Multiplicative {
                return bad("sigma = 0 forces a multiplicative datum");
            }
        }
        let local = pow_u(d.p, self.n_w) * BigInt::from(self.m);
        if (BigInt::from(d.cover_degree) % local) != BigInt::zero() {
            return bad("cover degree is not divisible by p^{n_w} m_w");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionType {
    Multiplicative,
    Additive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeformationDatum {
    pub p: u64,
    pub reduction_type: ReductionType,
    pub base_genus: u64,
    pub cover_degree: u64,
    pub mu: u64,
    pub points: Vec<CriticalPoint>,
}

impl DeformationDatum {
    pub fn validate(&self) -> Result<()> {
        if !is_prime(self.p) {
            return Err(DatumError::Invalid(format!("p = {} is not prime", self.p)));
        }
        if self.cover_degree == 0 || self.mu == 0 {
            return Err(DatumError::Invalid("cover degree and mu must be positive".into()));
        }
        let mut names = std::collections::BTreeSet::new();
        for pt in &self.points {
            if !names.insert(pt.name.as_str()) {
                return Err(DatumError::Invalid(format!("duplicate point name {}", pt.name)));
            }
            pt.validate(self)?;
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> std::result::Result<Self, String> {
        let d: DeformationDatum = serde_json::from_str(s).map_err(|e| e.to_string())?;
        d.validate().map_err(|e| e.to_string())?;
        Ok(d)
    }

    fn tame(&self) -> impl Iterator<Item = &CriticalPoint> {
        self.points.iter().filter(|p| p.kind == PointKind::Tame)
    }

    fn wild(&self) -> impl Iterator<Item = &CriticalPoint> {
        self.points.iter().filter(|p| p.kind == PointKind::Wild)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TorsorClass {
    Multiplicative,
    Additive,
    Etale,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorsorReduction {
    #[serde(with = "serde_q")]
    pub delta: Q,
    pub e: u64,
    pub p: u64,
    pub classification: TorsorClass,
    pub n_param: Option<u64>,
}

/// Reduction type of a `μ_p`-torsor from `δ`: multiplicative at 1, étale at
/// 0, additive in between, with `δ = 1 - n(p-1)/e`.
pub fn classify_torsor(delta: &Q, e: u64, p: u64) -> Result<TorsorReduction> {
    let invalid = || DatumError::InvalidDelta { delta: fmt_q(delta), e, p };
    if !is_prime(p) || e == 0 || *delta < Q::zero() || *delta > Q::one() {
        return Err(invalid());
    }
    let mk = |classification, n_param| TorsorReduction { delta: delta.clone(), e, p, classification, n_param };
    if delta.is_one() {
        return Ok(mk(TorsorClass::Multiplicative, None));
    }
    let n = qu(e) * (Q::one() - delta) / qu(p - 1);
    if !n.is_integer() || n > qu(e) / qu(p - 1) {
        return Err(invalid());
    }
    let n: u64 = n.to_integer().try_into().map_err(|_| invalid())?;
    let class = if delta.is_zero() { TorsorClass::Etale } else { TorsorClass::Additive };
    Ok(mk(class, Some(n)))
}

/// Tame `σ_w` all lie in `(1/μ)Z`.
pub fn check_denominators(d: &DeformationDatum) -> bool {
    d.tame().all(|pt| in_lattice(&pt.sigma(), d.mu))
}

/// Left side of the local identity; it should equal `2 g_W - 2`.
pub fn local_lhs(d: &DeformationDatum) -> Q {
    let p = d.p;
    let mut s = Q::zero();
    for w in d.wild() {
        s += w.sigma() / Q::from_integer(pow_u(p, w.n_w)) - Q::one();
        for (i, si) in w.wild_sigmas.iter().enumerate() {
            s -= Q::new(BigInt::from(p - 1), pow_u(p, i as u32 + 1)) * si;
        }
    }
    for b in d.tame() {
        s += b.sigma() - Q::one();
    }
    s
}

pub fn check_local_raw(d: &DeformationDatum) -> bool {
    local_lhs(d) == qi(2 * d.base_genus as i64 - 2)
}

/// `2g_V - 2` by Hurwitz (differents from the wild filtrations) and by the
/// degree of the differential. Their difference is
/// `d · (local_lhs - (2g_W - 2))`.
pub fn genus_consistency(d: &DeformationDatum) -> Result<(BigInt, BigInt)> {
    let deg = qu(d.cover_degree);
    let mut hurwitz = &deg * qi(2 * d.base_genus as i64 - 2);
    let mut differential = Q::zero();
    for b in d.tame() {
        hurwitz += &deg * (Q::one() - Q::new(BigInt::one(), BigInt::from(b.m)));
        differential += &deg / qu(b.m) * qi(b.h - 1);
    }
    for w in d.wild() {
        let local = Q::from_integer(pow_u(d.p, w.n_w) * BigInt::from(w.m));
        let diff = different_degree_lower(&w.filtration(d.p)?);
        hurwitz += &deg / &local * Q::from_integer(diff);
        differential += &deg / &local * qi(w.h - 1);
    }
    let int = |x: Q, which| {
        if x.is_integer() {
            Ok(x.to_integer())
        } else {
            Err(DatumError::NonIntegralGenus { which, value: fmt_q(&x) })
        }
    };
    Ok((int(hurwitz, "hurwitz")?, int(differential, "differential")?))
}

/// Signatures across a node between a `p^r`-component (above) and a
/// `p^{r'}`-component (below): the last `r'` upper values are the negatives
/// of the lower ones, and the first `r - r'` are the lower jumps of the
/// node's filtration.
pub fn node_compatibility(
    upper_h: &[i64],
    lower_h: &[i64],
    r: usize,
    r_prime: usize,
    node_filtration: Option<&RamFiltration>,
) -> Result<bool> {
    if upper_h.len() != r || lower_h.len() != r_prime || r < r_prime {
        return Err(DatumError::LengthMismatch(format!(
            "need |upper| = r = {r} >= |lower| = r' = {r_prime}, got {} and {}",
            upper_h.len(),
            lower_h.len()
        )));
    }
    let gap = r - r_prime;
    let jumps: &[u64] = node_filtration.map(|f| f.lower()).unwrap_or(&[]);
    if jumps.len() < gap {
        return Err(DatumError::LengthMismatch(format!("node filtration needs at least {gap} jumps")));
    }
    let crossing = (0..r_prime).all(|i| upper_h[i + gap] == -lower_h[i]);
    let stacked = (0..gap).all(|i| upper_h[i] == jumps[i] as i64);
    Ok(crossing && stacked)
}
