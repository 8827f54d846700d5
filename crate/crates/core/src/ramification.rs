//! Jump calculus for local extensions with Galois group `Z/p^n ⋊ Z/m`.
//!
//! Lower jumps are the canonical representation since they are integers;
//! upper jumps are always derived. Everything is exact.

use crate::rational::{pow_u, q, qu, Q};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RamificationError {
    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),
    #[error("upper jumps do not come from integral lower jumps (j_{index} = {value})")]
    NotIntegralLowerJumps { index: usize, value: String },
    #[error("different degree {0} is not an integer")]
    NonIntegralDifferent(String),
    #[error("ramification index {e} is divisible by p = {p}")]
    NotTame { e: u64, p: u64 },
    #[error("tau = {tau} exceeds sigma = {sigma}")]
    TauExceedsSigma { sigma: String, tau: String },
    #[error("alpha = {alpha} is outside 0..{r}")]
    AlphaOutOfRange { alpha: usize, r: usize },
}

type Result<T> = std::result::Result<T, RamificationError>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamFiltration {
    p: u64,
    m: u64,
    lower: Vec<u64>,
}

impl RamFiltration {
    pub fn new(p: u64, m: u64, lower: Vec<u64>) -> Result<Self> {
        let bad = |s: String| Err(RamificationError::InvalidFiltration(s));
        if !crate::rational::is_prime(p) {
            return bad(format!("p = {p} is not prime"));
        }
        if m == 0 || m % p == 0 {
            return bad(format!("m = {m} must be positive and prime to p"));
        }
        if lower.is_empty() {
            return bad("need at least one jump".into());
        }
        if lower[0] == 0 || lower.windows(2).any(|w| w[0] >= w[1]) {
            return bad(format!("lower jumps {lower:?} must be positive and strictly increasing"));
        }
        Ok(RamFiltration { p, m, lower })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[u64] {
        &self.lower
    }

    /// The filtration of the quotient by the order-`p^{n-k}` subgroup.
    pub fn truncate(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.n() {
            return Err(RamificationError::InvalidFiltration(format!(
                "cannot keep {k} of {} jumps",
                self.n()
            )));
        }
        Ok(RamFiltration { p: self.p, m: self.m, lower: self.lower[..k].to_vec() })
    }
}

/// Upper jumps `u_1 < ... < u_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpperJumps(pub Vec<Q>);

pub fn lower_to_upper(f: &RamFiltration) -> UpperJumps {
    let mut out = Vec::with_capacity(f.n());
    let mut u = Q::zero();
    let mut prev = 0u64;
    for (k, &j) in f.lower.iter().enumerate() {
        u += Q::new(BigInt::from(j - prev), pow_u(f.p, k as u32) * BigInt::from(f.m));
        out.push(u.clone());
        prev = j;
    }
    UpperJumps(out)
}

pub fn upper_to_lower(p: u64, n: usize, m: u64, upper: &UpperJumps) -> Result<RamFiltration> {
    if upper.0.len() != n {
        return Err(RamificationError::InvalidFiltration(format!(
            "expected {n} upper jumps, got {}",
            upper.0.len()
        )));
    }
    let mut lower = Vec::with_capacity(n);
    let mut j = Q::zero();
    let mut prev = Q::zero();
    for (k, u) in upper.0.iter().enumerate() {
        j += (u - &prev) * Q::from_integer(pow_u(p, k as u32) * BigInt::from(m));
        if !j.is_integer() || !j.is_positive() {
            return Err(RamificationError::NotIntegralLowerJumps {
                index: k + 1,
                value: crate::rational::fmt_q(&j),
            });
        }
        let v: u64 = j.numer().try_into().map_err(|_| {
            RamificationError::InvalidFiltration(format!("jump {j} does not fit in u64"))
        })?;
        lower.push(v);
        prev = u.clone();
    }
    RamFiltration::new(p, m, lower)
}

/// Degree of the different in terms of lower jumps. Both closed forms are
/// evaluated and must agree.
pub fn different_degree_lower(f: &RamFiltration) -> BigInt {
    let (p, n) = (f.p, f.n() as u32);
    let mut a = pow_u(p, n) * BigInt::from(f.m) - 1;
    for (i, &j) in f.lower.iter().enumerate() {
        a += BigInt::from(j) * pow_u(p, n - 1 - i as u32) * BigInt::from(p - 1);
    }
    let b = different_second_form(f);
    assert_eq!(a, b, "closed forms of the different disagree");
    a
}

fn different_second_form(f: &RamFiltration) -> BigInt {
    let (p, n) = (f.p, f.n() as u32);
    let mut prev = 0u64;
    let mut sum = BigInt::zero();
    for (i, &j) in f.lower.iter().enumerate() {
        // coefficient of (j_i - j_{i-1}) is sum_{k >= i} p^{n-k}(p-1) = p^{n-i+1} - 1
        sum += (pow_u(p, n - i as u32) - 1) * BigInt::from(j - prev);
        prev = j;
    }
    pow_u(p, n) * BigInt::from(f.m) - 1 + sum
}

pub fn different_degree_upper(p: u64, n: usize, m: u64, upper: &UpperJumps) -> Result<BigInt> {
    let n32 = n as u32;
    let mut total = Q::from_integer(pow_u(p, n32) * BigInt::from(m) - 1);
    let mut prev = Q::zero();
    for (k, u) in upper.0.iter().enumerate() {
        let i = k as u32 + 1;
        let w = BigInt::from(m) * pow_u(p, i - 1) * (pow_u(p, n32 - i + 1) - 1);
        total += Q::from_integer(w) * (u - &prev);
        prev = u.clone();
    }
    if total.is_integer() {
        Ok(total.to_integer())
    } else {
        Err(RamificationError::NonIntegralDifferent(crate::rational::fmt_q(&total)))
    }
}

pub fn tame_different(e: u64, p: u64) -> Result<u64> {
    if e == 0 || e % p == 0 {
        return Err(RamificationError::NotTame { e, p });
    }
    Ok(e - 1)
}

/// The largest upper jump.
pub fn conductor(f: &RamFiltration) -> Q {
    lower_to_upper(f).0.pop().expect("filtration has at least one jump")
}

/// The conductor as the single weighted sum of lower jumps; must equal
/// [`conductor`].
pub fn conductor_weighted(f: &RamFiltration) -> Q {
    let (p, n, m) = (f.p, f.n(), f.m);
    let mut s = Q::zero();
    for (k, &j) in f.lower.iter().enumerate() {
        let i = k as u32 + 1;
        let w = if k + 1 < n {
            Q::new(BigInt::from(p - 1), pow_u(p, i) * BigInt::from(m))
        } else {
            Q::new(BigInt::one(), pow_u(p, i - 1) * BigInt::from(m))
        };
        s += w * qu(j);
    }
    s
}

/// Conductor of the compositum of extensions with conductors `sigma >= tau`.
pub fn compositum_conductor(sigma: &Q, tau: &Q, p: u64) -> Result<Q> {
    if tau > sigma {
        return Err(RamificationError::TauExceedsSigma {
            sigma: crate::rational::fmt_q(sigma),
            tau: crate::rational::fmt_q(tau),
        });
    }
    Ok(tau + qu(p) * (sigma - tau))
}

/// Weighted average of `sigmas[0..r-alpha]`; the top `alpha` levels are
/// ignored.
pub fn effective_invariant(p: u64, sigmas: &[Q], alpha: usize) -> Result<Q> {
    let r = sigmas.len();
    if alpha >= r {
        return Err(RamificationError::AlphaOutOfRange { alpha, r });
    }
    let k = r - alpha;
    let (w, _) = effective_weights(p, k);
    Ok(w.iter().zip(sigmas).map(|(w, s)| w * s).sum())
}

/// Weights of the effective average over `k` levels and their sum.
pub fn effective_weights(p: u64, k: usize) -> (Vec<Q>, Q) {
    let mut w = Vec::with_capacity(k);
    for i in 1..k {
        w.push(Q::new(BigInt::from(p - 1), pow_u(p, i as u32)));
    }
    w.push(Q::new(BigInt::one(), pow_u(p, k as u32 - 1)));
    let total = w.iter().sum();
    (w, total)
}

pub fn validate_hasse_arf(upper: &UpperJumps, m: u64) -> bool {
    upper.0.iter().all(|u| crate::rational::in_lattice(u, m))
}

/// Lower jumps as rationals `j_i / m`, i.e. the `sigma_i` of a level stack.
pub fn sigmas_of(f: &RamFiltration) -> Vec<Q> {
    f.lower.iter().map(|&j| q(j as i64, f.m as i64)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    fn filt(p: u64, m: u64, j: &[u64]) -> RamFiltration {
        RamFiltration::new(p, m, j.to_vec()).unwrap()
    }

    #[test]
    fn lower_to_upper_examples() {
        assert_eq!(lower_to_upper(&filt(7, 1, &[4])).0, vec![qi(4)]);
        assert_eq!(lower_to_upper(&filt(5, 1, &[1, 21])).0, vec![qi(1), qi(5)]);
        assert_eq!(lower_to_upper(&filt(3, 2, &[2, 8])).0, vec![qi(1), qi(2)]);
    }

    #[test]
    fn upper_to_lower_examples() {
        let f = upper_to_lower(5, 2, 1, &UpperJumps(vec![qi(1), qi(5)])).unwrap();
        assert_eq!(f.lower(), &[1, 21]);
        let f = upper_to_lower(2, 1, 3, &UpperJumps(vec![q(1, 3)])).unwrap();
        assert_eq!(f.lower(), &[1]);
        let e = upper_to_lower(3, 2, 1, &UpperJumps(vec![qi(1), q(3, 2)])).unwrap_err();
        assert!(matches!(e, RamificationError::NotIntegralLowerJumps { index: 2, .. }));
    }

    #[test]
    fn differents() {
        assert_eq!(different_degree_lower(&filt(2, 1, &[1])), BigInt::from(2));
        assert_eq!(different_degree_lower(&filt(5, 2, &[1])), BigInt::from(13));
        assert_eq!(different_degree_lower(&filt(5, 1, &[1, 21])), BigInt::from(128));
        let up = |v: Vec<Q>| UpperJumps(v);
        assert_eq!(different_degree_upper(2, 1, 1, &up(vec![qi(1)])).unwrap(), BigInt::from(2));
        assert_eq!(
            different_degree_upper(5, 2, 1, &up(vec![qi(1), qi(5)])).unwrap(),
            BigInt::from(128)
        );
        assert_eq!(different_degree_upper(5, 1, 2, &up(vec![q(1, 2)])).unwrap(), BigInt::from(13));
        assert!(matches!(
            different_degree_upper(5, 1, 2, &up(vec![q(1, 3)])),
            Err(RamificationError::NonIntegralDifferent(_))
        ));
    }

    #[test]
    fn tame() {
        assert_eq!(tame_different(1, 5), Ok(0));
        assert_eq!(tame_different(7, 5), Ok(6));
        assert!(tame_different(10, 5).is_err());
    }

    #[test]
    fn conductors() {
        assert_eq!(conductor(&filt(5, 1, &[2])), qi(2));
        assert_eq!(conductor(&filt(5, 1, &[1, 21])), qi(5));
        // 1/2 + (4-1)/(2*3) + (13-4)/(2*9)
        assert_eq!(conductor(&filt(3, 2, &[1, 4, 13])), q(3, 2));
        for f in [filt(5, 1, &[1, 21]), filt(3, 2, &[1, 4, 13]), filt(7, 3, &[2, 9, 40])] {
            assert_eq!(conductor(&f), conductor_weighted(&f));
        }
    }

    #[test]
    fn compositum() {
        assert_eq!(compositum_conductor(&qi(1), &qi(1), 5), Ok(qi(1)));
        assert_eq!(compositum_conductor(&qi(2), &qi(1), 5), Ok(qi(6)));
        assert_eq!(compositum_conductor(&q(3, 2), &qi(1), 3), Ok(q(5, 2)));
        assert!(compositum_conductor(&qi(1), &qi(2), 3).is_err());
    }

    #[test]
    fn effective() {
        assert_eq!(effective_invariant(5, &[q(7, 3)], 0), Ok(q(7, 3)));
        let c = q(4, 9);
        assert_eq!(effective_invariant(5, &[c.clone(), c.clone(), c.clone()], 0), Ok(c));
        assert_eq!(effective_invariant(5, &[qi(1), qi(5)], 0), Ok(q(9, 5)));
        assert_eq!(effective_invariant(5, &[qi(1), qi(5)], 1), Ok(qi(1)));
        assert!(effective_invariant(5, &[qi(1)], 1).is_err());
    }

    #[test]
    fn hasse_arf() {
        assert!(validate_hasse_arf(&UpperJumps(vec![qi(1), qi(5)]), 1));
        assert!(validate_hasse_arf(&UpperJumps(vec![q(1, 2), q(3, 2)]), 2));
        assert!(!validate_hasse_arf(&UpperJumps(vec![q(1, 3)]), 2));
    }

    #[test]
    fn invalid_filtrations() {
        assert!(RamFiltration::new(4, 1, vec![1]).is_err());
        assert!(RamFiltration::new(5, 5, vec![1]).is_err());
        assert!(RamFiltration::new(5, 1, vec![3, 3]).is_err());
        assert!(RamFiltration::new(5, 1, vec![0, 3]).is_err());
        assert!(RamFiltration::new(5, 1, vec![]).is_err());
    }
}
