//! k-th roots and k-th power tests by digit search.
//!
//! A unit `u` is a k-th power as soon as some `ε` satisfies
//! `ε^k ≡ u (mod π^T)` with `T > e·(v_p(k) + 1/(p-1))` (for `p ∤ k`, `T = 1`
//! suffices); the binomial series then converges. The search fixes π-adic
//! digits of `ε` one at a time and checks the congruence on each basis
//! coefficient `A_j` of `ε^k` separately, which is where the transcript
//! comes from.

use super::{ceil_div, Eis, PadicError, Result};
use crate::rational::{pow_u, vp, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

const NAMES: [&str; 5] = ["α", "β", "γ", "η", "θ"];

/// Name of the coefficient that digit `i` contributes to.
pub fn digit_name(e: u32, i: usize) -> String {
    let j = i % e as usize;
    if e as usize <= NAMES.len() {
        NAMES[j].to_string()
    } else {
        format!("c{j}")
    }
}

/// One basis coefficient's congruence, with the candidate digits that
/// satisfy it on its own.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Constraint {
    pub coeff: usize,
    pub modulus: String,
    pub survivors: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub digit: u64,
    pub coeff: usize,
    pub got: String,
    pub expected: String,
    pub modulus: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    /// Digits fixed before this step.
    pub prefix: Vec<u64>,
    pub digit_index: usize,
    pub name: String,
    /// Congruences are checked modulo `π^bound`.
    pub bound: i64,
    /// Constraints that cut the candidate set, most restrictive first.
    pub forcing: Vec<Constraint>,
    pub survivors: Vec<u64>,
    /// Filled when nothing survives.
    pub failures: Vec<Failure>,
    /// Value the forcing constraint pins the named coefficient to.
    pub forced_value: Option<String>,
    pub forced_modulus: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Transcript {
    pub k: u64,
    pub valuation: i64,
    pub threshold: i64,
    pub steps: Vec<Step>,
}

impl Transcript {
    /// Human-readable lines: forced coefficients, then failed congruences.
    pub fn lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        for s in &self.steps {
            if let Some(v) = &s.forced_value {
                out.push(format!("{} ≡ {} (mod {})", s.name, v, s.forced_modulus));
            } else if let Some(c) = s.forcing.first() {
                let vals: Vec<String> = c.survivors.iter().map(|d| d.to_string()).collect();
                out.push(format!("{} digit in {{{}}}", s.name, vals.join(", ")));
            }
            for f in &s.failures {
                out.push(format!("{} ≢ {} (mod {})", f.got, f.expected, f.modulus));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PowerVerdict {
    pub is_power: bool,
    #[serde(skip)]
    pub witness: Option<Eis>,
    pub witness_text: Option<String>,
    pub transcript: Transcript,
}

/// Smallest π-depth at which a k-th power residue lifts.
pub fn threshold(p: u64, e: u32, k: u64) -> i64 {
    let a = vp(p, k) as i64;
    if a == 0 {
        return 1;
    }
    let e = e as i64;
    let p = p as i64;
    (e * a * (p - 1) + e).div_euclid(p - 1) + 1
}

/// With `ε` fixed through digit `i`, `ε^k` is fixed modulo `π^{L(i)}`.
fn known_depth(p: u64, e: u32, k: u64, i: usize) -> i64 {
    let mut best = i64::MAX;
    let mut binom = BigInt::one();
    for j in 1..=k {
        binom = binom * BigInt::from(k - j + 1) / BigInt::from(j);
        let v = crate::rational::vp_big(p, &binom).unwrap_or(0) as i64;
        let cand = e as i64 * v + j as i64 * (i as i64 + 1);
        best = best.min(cand);
        if j as i64 * (i as i64 + 1) >= best {
            break;
        }
    }
    best
}

fn eps_from_digits(p: u64, e: u32, digits: &[u64], prec: i64) -> Eis {
    let terms: Vec<(i64, i64)> = digits.iter().enumerate().map(|(i, &d)| (d as i64, i as i64)).collect();
    Eis::from_terms(p, e, &terms, prec)
}

struct Search<'a> {
    p: u64,
    e: u32,
    k: u64,
    u: &'a Eis,
    r: i64,
    t: i64,
    steps: Vec<Step>,
    want_all: bool,
    found: Vec<Vec<u64>>,
    undecided: bool,
    record: bool,
}

impl Search<'_> {
    fn run(&mut self, prefix: &mut Vec<u64>) {
        if !self.want_all && !self.found.is_empty() {
            return;
        }
        let i = prefix.len();
        let l = known_depth(self.p, self.e, self.k, i);
        let bound = l.min(self.t).min(self.r);
        let e = self.e as usize;
        let target = self.u.with_prec(bound).basis();
        let moduli: Vec<BigInt> = (0..e).map(|j| pow_u(self.p, ceil_div(bound - j as i64, e as i64).max(0) as u32)).collect();
        let cands: Vec<u64> = if i == 0 { (1..self.p).collect() } else { (0..self.p).collect() };
        let mut table: Vec<(u64, Vec<BigInt>)> = Vec::new();
        for &d in &cands {
            prefix.push(d);
            let pw = eps_from_digits(self.p, self.e, prefix, bound).pow(self.k).with_prec(bound);
            prefix.pop();
            let coeffs: Vec<BigInt> = pw.basis().into_iter().map(|(c, _)| c).collect();
            table.push((d, coeffs));
        }
        let holds = |coeffs: &Vec<BigInt>, j: usize| coeffs[j].mod_floor(&moduli[j]) == target[j].0.mod_floor(&moduli[j]);
        let mut forcing: Vec<Constraint> = (0..e)
            .map(|j| Constraint {
                coeff: j,
                modulus: moduli[j].to_string(),
                survivors: table.iter().filter(|(_, c)| holds(c, j)).map(|(d, _)| *d).collect(),
            })
            .filter(|c| c.survivors.len() < cands.len())
            .collect();
        forcing.sort_by(|a, b| a.survivors.len().cmp(&b.survivors.len()).then(b.coeff.cmp(&a.coeff)));
        let order: Vec<usize> = forcing.iter().map(|c| c.coeff).chain((0..e).filter(|j| !forcing.iter().any(|c| c.coeff == *j))).collect();
        let survivors: Vec<u64> = table.iter().filter(|(_, c)| (0..e).all(|j| holds(c, j))).map(|(d, _)| *d).collect();
        let mut failures = Vec::new();
        if survivors.is_empty() {
            let shown: Vec<u64> = forcing.first().map(|c| c.survivors.clone()).unwrap_or_else(|| cands.clone());
            for d in shown {
                let coeffs = &table.iter().find(|(x, _)| *x == d).expect("candidate").1;
                if let Some(&j) = order.iter().find(|&&j| !holds(coeffs, j)) {
                    failures.push(Failure {
                        digit: d,
                        coeff: j,
                        got: coeffs[j].mod_floor(&moduli[j]).to_string(),
                        expected: target[j].0.mod_floor(&moduli[j]).to_string(),
                        modulus: moduli[j].to_string(),
                    });
                }
            }
        }
        let level = (i / e) as u32;
        let forced_modulus = pow_u(self.p, level + 1);
        let forced_value = match forcing.first() {
            Some(c) if c.survivors.len() == 1 => {
                let d = c.survivors[0];
                let j = i % e;
                let mut acc = BigInt::from(d) * pow_u(self.p, level);
                for l in 0..level {
                    acc += BigInt::from(prefix[j + e * l as usize]) * pow_u(self.p, l);
                }
                Some(acc.to_string())
            }
            _ => None,
        };
        if self.record {
            self.steps.push(Step {
                prefix: prefix.clone(),
                digit_index: i,
                name: digit_name(self.e, i),
                bound,
                forcing,
                survivors: survivors.clone(),
                failures,
                forced_value,
                forced_modulus: forced_modulus.to_string(),
            });
        }
        for d in survivors {
            prefix.push(d);
            if bound >= self.t {
                self.found.push(prefix.clone());
            } else if bound >= self.r {
                self.undecided = true;
            } else {
                self.run(prefix);
            }
            prefix.pop();
            if !self.want_all && !self.found.is_empty() {
                return;
            }
        }
    }
}

fn search(u: &Eis, k: u64, want_all: bool) -> (Vec<Vec<u64>>, bool, Vec<Step>, i64) {
    let t = threshold(u.p(), u.e(), k);
    let mut s = Search {
        p: u.p(),
        e: u.e(),
        k,
        u,
        r: u.prec(),
        t,
        steps: Vec::new(),
        want_all,
        found: Vec::new(),
        undecided: false,
        record: !want_all,
    };
    s.run(&mut Vec::new());
    (s.found, s.undecided, s.steps, t)
}

/// Decide whether `x` is a k-th power in `Q_p(π)` at its stored precision.
pub fn is_nth_power(x: &Eis, k: u64) -> Result<PowerVerdict> {
    if k == 0 {
        return Err(PadicError::Invalid("k must be positive".into()));
    }
    let (v, u) = x.split_unit().map_err(|_| PadicError::PrecisionInsufficient {
        prec: x.prec(),
        needed: x.prec() + 1,
        e: x.e(),
    })?;
    let empty = |t| Transcript { k, valuation: v, threshold: t, steps: Vec::new() };
    if v % k as i64 != 0 {
        return Ok(PowerVerdict {
            is_power: false,
            witness: None,
            witness_text: None,
            transcript: empty(threshold(x.p(), x.e(), k)),
        });
    }
    let (found, undecided, steps, t) = search(&u, k, false);
    let transcript = Transcript { k, valuation: v, threshold: t, steps };
    if let Some(digits) = found.first() {
        let eps = &eps_from_digits(x.p(), x.e(), digits, digits.len() as i64)
            * &Eis::pi_pow(x.p(), x.e(), v / k as i64, super::EXACT);
        return Ok(PowerVerdict {
            is_power: true,
            witness_text: Some(eps.to_string()),
            witness: Some(eps),
            transcript,
        });
    }
    if undecided {
        return Err(PadicError::PrecisionInsufficient { prec: u.prec(), needed: t, e: x.e() });
    }
    Ok(PowerVerdict { is_power: false, witness: None, witness_text: None, transcript })
}

/// A k-th root of `x`. Among the roots the one closest to `hint` is
/// returned; without a hint, the one with lexicographically smallest
/// π-adic digits.
pub fn nth_root(x: &Eis, k: u64, hint: Option<&Eis>) -> Result<Eis> {
    let (p, e) = (x.p(), x.e());
    let none = || PadicError::NoRootAtPrecision { k };
    let (v, u) = x.split_unit().map_err(|_| none())?;
    if k == 0 || v % k as i64 != 0 {
        return Err(none());
    }
    let (found, _, _, t) = search(&u, k, hint.is_some());
    if found.is_empty() {
        return Err(none());
    }
    let r = u.prec();
    let a = vp(p, k) as i64;
    let target = r - e as i64 * a;
    let shift = Eis::pi_pow(p, e, v / k as i64, super::EXACT);
    let mut best: Option<(i64, Eis)> = None;
    for digits in &found {
        let eps = eps_from_digits(p, e, digits, r);
        let root = &refine(&u, &eps, k, t, target)? * &shift;
        let score = match hint {
            Some(h) => (&root - h).valuation().unwrap_or(i64::MAX),
            None => 0,
        };
        if best.as_ref().map_or(true, |(s, _)| score > *s) {
            best = Some((score, root));
        }
        if hint.is_none() {
            break;
        }
    }
    Ok(best.expect("nonempty").1)
}

/// `ε · (u/ε^k)^{1/k}` by the binomial series.
fn refine(u: &Eis, eps: &Eis, k: u64, t: i64, target: i64) -> Result<Eis> {
    let (p, e) = (u.p(), u.e());
    let z = &u.div(&eps.pow(k))? - &Eis::one(p, e, u.prec());
    let vz = match z.valuation() {
        None => return Ok(eps.with_prec(target)),
        Some(vz) => vz,
    };
    if vz < t {
        return Err(PadicError::NoRootAtPrecision { k });
    }
    // each term gains at least vz - e(a + 1/(p-1)) > 0
    let a = vp(p, k) as i64;
    let gain = Q::from_integer(vz.into()) - Q::new((e as i64 * a * (p as i64 - 1) + e as i64).into(), (p as i64 - 1).into());
    let terms = if a == 0 { ceil_div(target, vz) + 1 } else {
        let n = Q::from_integer(target.into()) / gain;
        (n.ceil().to_integer()).try_into().unwrap_or(i64::MAX) + 1
    };
    let mut sum = Eis::one(p, e, target);
    let mut coef = Q::one();
    let kinv = Q::new(BigInt::one(), BigInt::from(k));
    let mut zj = Eis::one(p, e, super::EXACT);
    for j in 1..=terms {
        coef = coef * (&kinv - Q::from_integer(BigInt::from(j - 1))) / Q::from_integer(BigInt::from(j));
        zj = &zj * &z;
        if coef.is_zero() {
            continue;
        }
        let vc = crate::rational::vp_q(p, &coef).expect("nonzero") * e as i64;
        let prec_c = (target - j * vz).max(vc + 1) + e as i64;
        let term = &Eis::from_rational(p, e, &coef, prec_c) * &zj;
        sum = &sum + &term;
    }
    let root = (eps * &sum).with_prec(target);
    debug_assert!(root.prec() <= u.prec());
    Ok(root)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    const P: u64 = 5;
    const E: u32 = 5;

    #[test]
    fn thresholds() {
        assert_eq!(threshold(5, 5, 5), 7);
        assert_eq!(threshold(5, 5, 25), 12);
        assert_eq!(threshold(5, 5, 2), 1);
        assert_eq!(threshold(5, 1, 5), 2);
    }

    #[test]
    fn known_depths() {
        assert_eq!(known_depth(5, 5, 5, 0), 5);
        assert_eq!(known_depth(5, 5, 5, 1), 7);
        assert_eq!(known_depth(5, 5, 25, 0), 10);
        assert_eq!(known_depth(5, 5, 25, 1), 12);
        assert_eq!(known_depth(5, 5, 2, 0), 1);
    }

    #[test]
    fn one_plus_pi_to_the_fifth() {
        let y = Eis::from_terms(P, E, &[(1, 0), (1, 1)], 40);
        let v = is_nth_power(&y.pow(5), 5).unwrap();
        assert!(v.is_power);
        let w = v.witness.unwrap();
        assert!(w.eq_mod(&y, 2));
    }

    #[test]
    fn fifth_root_of_pi_does_not_exist() {
        let x = Eis::pi_pow(P, E, 1, 30);
        assert_eq!(nth_root(&x, 5, None), Err(PadicError::NoRootAtPrecision { k: 5 }));
        assert!(!is_nth_power(&x, 5).unwrap().is_power);
    }

    #[test]
    fn square_root_branch_follows_hint() {
        for r in [2i64, 3, 7, -4] {
            let x = Eis::from_rational(P, E, &q(25, r * r), 30);
            let want = Eis::from_rational(P, E, &q(5, r), 30);
            let got = nth_root(&x, 2, Some(&want)).unwrap();
            assert!(got.eq_mod(&want, got.prec()), "r = {r}");
            assert!(got.prec() >= 25);
        }
    }

    #[test]
    fn roots_power_back() {
        let y = Eis::from_terms(P, E, &[(2, 0), (3, 2), (1, 7)], 40);
        for k in [2u64, 3, 5, 25] {
            let x = y.pow(k);
            let root = nth_root(&x, k, None).unwrap();
            assert!(root.pow(k).eq_mod(&x, root.pow(k).prec().min(x.prec())));
            assert!(root.prec() >= 40 - 5 * vp(P, k) as i64 - 1);
        }
    }

    #[test]
    fn too_little_precision_is_undecided() {
        let x = Eis::from_terms(P, E, &[(1, 0)], 6);
        assert!(matches!(is_nth_power(&x, 5), Err(PadicError::PrecisionInsufficient { .. })));
    }

    #[test]
    fn non_power_has_contradiction() {
        // (1 + xπ)^5 ≡ 1 + x^5 π^5 + x π^6 (mod π^7), never 1 + π^6
        let x = Eis::from_terms(P, E, &[(1, 0), (1, 6)], 20);
        let v = is_nth_power(&x, 5).unwrap();
        assert!(!v.is_power);
        assert!(v.transcript.steps.last().unwrap().failures.len() > 0);
    }
}
