//! Truncated arithmetic in `Q_p(π)`, `π^e = p`.
//!
//! An element is `π^shift · Σ_{i<e} c_i π^i` with integer `c_i`, known
//! modulo `π^prec`. Precision is counted in π-units throughout; the
//! absolute precision in the usual normalization `v(p) = 1` is `prec / e`.
//! Products and quotients propagate precision the ultrametric way and never
//! claim more than they know.

pub mod gd;
pub mod hensel;
pub mod power;

use crate::rational::{pow_u, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PadicError {
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("no {k}-th root at the available precision")]
    NoRootAtPrecision { k: u64 },
    #[error("k-th powerness is not decided at precision {prec}/{e} (needs {needed}/{e})")]
    PrecisionInsufficient { prec: i64, needed: i64, e: u32 },
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, PadicError>;

/// Precision standing for "exact"; coefficients are never reduced at or
/// above it.
pub const EXACT: i64 = i64::MAX / 4;

#[derive(Debug, Clone)]
pub struct Eis {
    p: u64,
    e: u32,
    shift: i64,
    c: Vec<BigInt>,
    prec: i64,
}

impl Eis {
    fn raw(p: u64, e: u32, shift: i64, c: Vec<BigInt>, prec: i64) -> Eis {
        let mut x = Eis { p, e, shift, c, prec };
        x.reduce();
        x
    }

    pub fn zero(p: u64, e: u32, prec: i64) -> Eis {
        Eis::raw(p, e, 0, vec![BigInt::zero(); e as usize], prec)
    }

    pub fn from_int(p: u64, e: u32, n: impl Into<BigInt>, prec: i64) -> Eis {
        let mut c = vec![BigInt::zero(); e as usize];
        c[0] = n.into();
        Eis::raw(p, e, 0, c, prec)
    }

    pub fn one(p: u64, e: u32, prec: i64) -> Eis {
        Eis::from_int(p, e, 1, prec)
    }

    /// `π^k`, which may be negative.
    pub fn pi_pow(p: u64, e: u32, k: i64, prec: i64) -> Eis {
        let mut c = vec![BigInt::zero(); e as usize];
        c[0] = BigInt::one();
        Eis::raw(p, e, k, c, prec)
    }

    /// `Σ coef · π^exp`.
    pub fn from_terms(p: u64, e: u32, terms: &[(i64, i64)], prec: i64) -> Eis {
        let mut acc = Eis::zero(p, e, prec);
        for &(coef, exp) in terms {
            acc = &acc + &(&Eis::pi_pow(p, e, exp, prec) * &Eis::from_int(p, e, coef, prec));
        }
        acc.with_prec(prec)
    }

    pub fn from_rational(p: u64, e: u32, x: &Q, prec: i64) -> Eis {
        if x.is_zero() {
            return Eis::zero(p, e, prec);
        }
        let s = crate::rational::vp_q(p, x).expect("nonzero");
        let pk = BigInt::from(p);
        let mut num = x.numer().clone();
        let mut den = x.denom().clone();
        while num.is_multiple_of(&pk) {
            num /= &pk;
        }
        while den.is_multiple_of(&pk) {
            den /= &pk;
        }
        let shift = e as i64 * s;
        let rel = (prec - shift).max(0);
        let t = ceil_div(rel, e as i64).max(0) as u32;
        let modulus = pow_u(p, t);
        let c0 = if t == 0 { BigInt::zero() } else { (num * mod_inv(&den, &modulus)).mod_floor(&modulus) };
        let mut c = vec![BigInt::zero(); e as usize];
        c[0] = c0;
        Eis::raw(p, e, shift, c, prec)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    /// Precision in π-units.
    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// Precision with `v(p) = 1`.
    pub fn abs_prec(&self) -> Q {
        Q::new(self.prec.into(), (self.e as i64).into())
    }

    pub fn with_prec(&self, prec: i64) -> Eis {
        let mut x = self.clone();
        x.prec = x.prec.min(prec);
        x.reduce();
        x
    }

    fn check_compat(&self, o: &Eis) {
        assert!(self.p == o.p && self.e == o.e, "incompatible Eisenstein extensions");
    }

    /// Reduce coefficients to the residues that are actually known.
    fn reduce(&mut self) {
        if self.prec >= EXACT / 2 {
            self.prec = EXACT;
            return;
        }
        let rel = self.prec - self.shift;
        for (i, c) in self.c.iter_mut().enumerate() {
            let t = ceil_div(rel - i as i64, self.e as i64);
            if t <= 0 {
                *c = BigInt::zero();
            } else {
                *c = c.mod_floor(&pow_u(self.p, t as u32));
            }
        }
    }

    /// Valuation in π-units, or `None` if the element is zero at its
    /// precision.
    pub fn valuation(&self) -> Option<i64> {
        let mut best: Option<i64> = None;
        for (i, c) in self.c.iter().enumerate() {
            if let Some(v) = crate::rational::vp_big(self.p, c) {
                let val = self.shift + i as i64 + self.e as i64 * v as i64;
                best = Some(best.map_or(val, |b: i64| b.min(val)));
            }
        }
        best.filter(|&v| v < self.prec)
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    /// `self ≡ other (mod π^k)`.
    pub fn eq_mod(&self, other: &Eis, k: i64) -> bool {
        let d = (self - other).with_prec(k);
        d.is_zero() && self.prec >= k && other.prec >= k
    }

    /// Coefficients of the same value written relative to `π^new_shift`.
    /// Moving the shift up divides exactly; callers only do that when the
    /// valuation allows it.
    fn rebase(&self, new_shift: i64) -> Vec<BigInt> {
        let k = self.shift - new_shift;
        let e = self.e as i64;
        let mut out = vec![BigInt::zero(); self.e as usize];
        for (i, c) in self.c.iter().enumerate() {
            let pos = i as i64 + k;
            let (q, r) = (pos.div_euclid(e), pos.rem_euclid(e));
            if q >= 0 {
                out[r as usize] += c * pow_u(self.p, q as u32);
            } else {
                let d = pow_u(self.p, (-q) as u32);
                debug_assert!(c.is_multiple_of(&d));
                out[r as usize] += c / d;
            }
        }
        out
    }

    /// `self = π^v · u` with `u` a unit; returns `(v, u)`.
    pub fn split_unit(&self) -> Result<(i64, Eis)> {
        let v = self.valuation().ok_or_else(|| {
            PadicError::PrecisionExhausted("element is zero at its precision".into())
        })?;
        let e = self.e as i64;
        let rel = v - self.shift;
        let (a, b) = (rel.div_euclid(e), rel.rem_euclid(e));
        let mut out = vec![BigInt::zero(); self.e as usize];
        for (i, c) in self.c.iter().enumerate() {
            let i = i as i64;
            let (j, div) = if i >= b { (i - b, a) } else { (i - b + e, a + 1) };
            let d = pow_u(self.p, div as u32);
            debug_assert!(c.is_multiple_of(&d));
            out[j as usize] = c / d;
        }
        Ok((v, Eis::raw(self.p, self.e, 0, out, self.prec - v)))
    }

    pub fn inv(&self) -> Result<Eis> {
        let (v, u) = self.split_unit()?;
        let rel = u.prec;
        let p = self.p;
        let e = self.e;
        // Newton: w <- w (2 - u w)
        let modulus = BigInt::from(p);
        let c0inv = mod_inv(&u.c[0].mod_floor(&modulus), &modulus);
        let mut w = Eis::from_int(p, e, c0inv, 1);
        let two = Eis::from_int(p, e, 2, rel);
        let mut k = 1;
        while k < rel {
            k = (2 * k).min(rel);
            let uw = &u.with_prec(k) * &w.with_prec(k).widen(k);
            w = (&w.widen(k) * &(&two - &uw)).with_prec(k);
        }
        let w = w.with_prec(rel);
        let mut res = w;
        res.shift = -v;
        res.prec = rel - v;
        res.reduce();
        Ok(res)
    }

    /// Same value, claiming precision `k` (used only inside Newton steps
    /// where the missing digits are being solved for).
    fn widen(&self, k: i64) -> Eis {
        let mut x = self.clone();
        x.prec = k;
        x
    }

    pub fn div(&self, o: &Eis) -> Result<Eis> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, mut k: u64) -> Eis {
        let mut base = self.clone();
        let mut acc = Eis::one(self.p, self.e, EXACT);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn neg(&self) -> Eis {
        Eis::raw(self.p, self.e, self.shift, self.c.iter().map(|c| -c).collect(), self.prec)
    }

    /// Coefficients `c_0..c_{e-1}` in shift-0 form, each known modulo
    /// `p^{t_i}`; only defined when `v >= 0`.
    pub fn basis(&self) -> Vec<(BigInt, u32)> {
        assert!(self.valuation().map_or(true, |v| v >= 0), "negative valuation");
        let c = if self.is_zero() { vec![BigInt::zero(); self.e as usize] } else { self.rebase(0) };
        let e = self.e as i64;
        c.into_iter()
            .enumerate()
            .map(|(i, c)| {
                if self.prec >= EXACT {
                    return (c, u32::MAX);
                }
                let t = ceil_div(self.prec - i as i64, e).max(0) as u32;
                (c.mod_floor(&pow_u(self.p, t)), t)
            })
            .collect()
    }

    /// π-adic digits in `0..p`, from exponent `start` up to `prec - 1`.
    pub fn digits(&self) -> (i64, Vec<u64>) {
        let start = self.shift.min(self.valuation().unwrap_or(self.prec));
        let mut cur = self.rebase(start.min(self.shift));
        let mut out = Vec::new();
        let p = BigInt::from(self.p);
        let end = if self.prec >= EXACT { start + 20 * self.e as i64 } else { self.prec };
        for _ in start..end {
            if cur.iter().all(|c| c.is_zero()) {
                break;
            }
            let d = cur[0].mod_floor(&p);
            out.push(d.to_u64().expect("digit"));
            cur[0] = (&cur[0] - &d) / &p;
            cur.rotate_left(1);
        }
        (start, out)
    }

    /// Balanced π-adic expansion `Σ d_k p^{k/e}` with `|d_k| <= p/2`, as
    /// `(d_k, k)` pairs with nonzero `d_k`.
    pub fn balanced_terms(&self) -> Vec<(i64, i64)> {
        let (start, digits) = self.digits();
        let p = self.p as i64;
        let mut out = Vec::new();
        let mut carry = vec![0i64; digits.len() + self.e as usize + 1];
        let mut ds: Vec<i64> = digits.iter().map(|&d| d as i64).collect();
        ds.resize(digits.len(), 0);
        for k in 0..ds.len() {
            let mut d = ds[k] + carry[k];
            // carry into the next multiple of p, which is π^{k+e}
            if d > p / 2 {
                d -= p;
                if k + (self.e as usize) < carry.len() {
                    carry[k + self.e as usize] += 1;
                }
            } else if d < -(p / 2) {
                d += p;
                if k + (self.e as usize) < carry.len() {
                    carry[k + self.e as usize] -= 1;
                }
            }
            if d != 0 {
                out.push((d, start + k as i64));
            }
        }
        out
    }
}

impl PartialEq for Eis {
    fn eq(&self, o: &Eis) -> bool {
        self.p == o.p && self.e == o.e && self.prec == o.prec && (self - o).is_zero()
    }
}

impl<'a> std::ops::Add<&'a Eis> for &'a Eis {
    type Output = Eis;
    fn add(self, o: &Eis) -> Eis {
        self.check_compat(o);
        let s = self.shift.min(o.shift);
        let a = self.rebase(s);
        let b = o.rebase(s);
        let c = a.into_iter().zip(b).map(|(x, y)| x + y).collect();
        Eis::raw(self.p, self.e, s, c, self.prec.min(o.prec))
    }
}

impl<'a> std::ops::Sub<&'a Eis> for &'a Eis {
    type Output = Eis;
    fn sub(self, o: &Eis) -> Eis {
        self + &o.neg()
    }
}

impl<'a> std::ops::Mul<&'a Eis> for &'a Eis {
    type Output = Eis;
    fn mul(self, o: &Eis) -> Eis {
        self.check_compat(o);
        let e = self.e as usize;
        let mut wide = vec![BigInt::zero(); 2 * e];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                wide[i + j] += a * b;
            }
        }
        let p = BigInt::from(self.p);
        let mut c: Vec<BigInt> = wide[..e].to_vec();
        for k in e..2 * e {
            c[k - e] += &wide[k] * &p;
        }
        let va = self.valuation().unwrap_or(self.prec);
        let vb = o.valuation().unwrap_or(o.prec);
        let prec = (self.prec.saturating_add(vb)).min(o.prec.saturating_add(va)).min(EXACT);
        Eis::raw(self.p, self.e, self.shift + o.shift, c, prec)
    }
}

impl std::ops::Neg for &Eis {
    type Output = Eis;
    fn neg(self) -> Eis {
        Eis::neg(self)
    }
}

impl fmt::Display for Eis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.balanced_terms();
        if terms.is_empty() {
            f.write_str("0")?;
        }
        for (i, (d, k)) in terms.iter().enumerate() {
            let sign = if *d < 0 { "-" } else if i > 0 { "+" } else { "" };
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(sign)?;
            if i > 0 && !sign.is_empty() {
                f.write_str(" ")?;
            }
            let a = d.abs();
            let g = num_integer::gcd(*k, self.e as i64);
            let (kn, kd) = (k / g, self.e as i64 / g);
            match (kn, kd) {
                (0, _) => write!(f, "{a}")?,
                (_, 1) if a == 1 => write!(f, "{}^{}", self.p, kn)?,
                (_, 1) => write!(f, "{a}*{}^{}", self.p, kn)?,
                _ if a == 1 => write!(f, "{}^({}/{})", self.p, kn, kd)?,
                _ => write!(f, "{a}*{}^({}/{})", self.p, kn, kd)?,
            }
        }
        if self.prec >= EXACT {
            return Ok(());
        }
        write!(f, " + O({}^({}/{}))", self.p, self.prec, self.e)
    }
}

pub(crate) fn ceil_div(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

pub(crate) fn mod_inv(a: &BigInt, m: &BigInt) -> BigInt {
    if m.is_one() {
        return BigInt::zero();
    }
    let g = a.extended_gcd(m);
    assert!(g.gcd.is_one(), "{a} is not invertible mod {m}");
    g.x.mod_floor(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    const P: u64 = 5;
    const E: u32 = 5;

    #[test]
    fn uniformizer_relation() {
        let pi = Eis::pi_pow(P, E, 1, 30);
        let pi4 = Eis::pi_pow(P, E, 4, 30);
        assert!((&pi * &pi4).eq_mod(&Eis::from_int(P, E, 5, 30), 30));
    }

    #[test]
    fn difference_of_squares() {
        let one = Eis::one(P, E, 20);
        let pi = Eis::pi_pow(P, E, 1, 20);
        let lhs = &(&one + &pi) * &(&one - &pi);
        let rhs = &one - &Eis::pi_pow(P, E, 2, 20);
        assert!(lhs.eq_mod(&rhs, 20));
    }

    #[test]
    fn inverse_of_two() {
        let two = Eis::from_int(P, E, 2, 10);
        let inv = two.inv().unwrap();
        let b = inv.basis();
        assert_eq!(b[0].0.mod_floor(&BigInt::from(25)), BigInt::from(13));
        assert!((&two * &inv).eq_mod(&Eis::one(P, E, 10), 10));
    }

    #[test]
    fn inverse_of_nonunits() {
        let x = Eis::from_terms(P, E, &[(3, 2), (1, 3), (7, 9)], 40);
        let y = x.inv().unwrap();
        assert_eq!(y.valuation(), Some(-2));
        let prod = &x * &y;
        assert!(prod.eq_mod(&Eis::one(P, E, 40), prod.prec()));
        assert!(prod.prec() >= 36);
    }

    #[test]
    fn rationals_round_trip() {
        let x = Eis::from_rational(P, E, &q(7, 50), 40);
        assert_eq!(x.valuation(), Some(-10));
        let back = &x * &Eis::from_int(P, E, 50, 60);
        assert!(back.eq_mod(&Eis::from_int(P, E, 7, 60), back.prec()));
        assert!(back.prec() >= 30);
    }

    #[test]
    fn precision_never_grows() {
        let a = Eis::from_terms(P, E, &[(1, 0), (2, 3)], 12);
        let b = Eis::from_terms(P, E, &[(3, 1)], 9);
        assert!((&a + &b).prec() <= 9);
        assert!((&a * &b).prec() <= 12 + 1);
    }

    #[test]
    fn display_balanced() {
        let x = Eis::from_terms(P, E, &[(1, 0), (-3, 11), (-4, 10)], 12);
        // -4 ≡ 1 and -3 ≡ 2 with the borrows falling below the precision
        assert_eq!(x.to_string(), "1 + 5^2 + 2*5^(11/5) + O(5^(12/5))");
    }
}
