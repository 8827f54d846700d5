//! Exact rationals and the small amount of integer number theory the rest of
//! the crate leans on.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

pub type Q = BigRational;

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qu(n: u64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn pow_u(p: u64, k: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), k as usize)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse {0:?} as a rational (expected \"a\" or \"a/b\")")]
pub struct ParseQError(pub String);

/// Parses `"a"` or `"a/b"`.
pub fn parse_q(s: &str) -> Result<Q, ParseQError> {
    let err = || ParseQError(s.to_string());
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| err())?;
    let d: BigInt = d.parse().map_err(|_| err())?;
    if d.is_zero() {
        return Err(err());
    }
    Ok(Q::new(n, d))
}

/// `"a/b"` in lowest terms, or `"a"` for integers.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Wrapper for `{}` formatting of a rational.
pub struct Show<'a>(pub &'a Q);

impl fmt::Display for Show<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_q(self.0))
    }
}

/// `<x>`, the fractional part in `[0, 1)`.
pub fn frac(x: &Q) -> Q {
    x - x.floor()
}

pub fn in_lattice(x: &Q, m: u64) -> bool {
    (x * qu(m)).is_integer()
}

pub fn to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

/// p-adic valuation of a nonzero integer.
pub fn vp(p: u64, n: u64) -> u32 {
    assert!(p >= 2 && n != 0);
    let mut n = n;
    let mut k = 0;
    while n % p == 0 {
        n /= p;
        k += 1;
    }
    k
}

pub fn vp_big(p: u64, n: &BigInt) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut k = 0;
    loop {
        let (quo, rem) = n.div_rem(&p);
        if !rem.is_zero() {
            return Some(k);
        }
        n = quo;
        k += 1;
    }
}

/// p-adic valuation of a nonzero rational.
pub fn vp_q(p: u64, x: &Q) -> Option<i64> {
    let a = vp_big(p, x.numer())? as i64;
    let b = vp_big(p, x.denom())? as i64;
    Some(a - b)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// `Some((l, f))` with `n = l^f`, `l` prime, `f >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let l = smallest_prime_factor(n);
    let mut m = n;
    let mut f = 0;
    while m % l == 0 {
        m /= l;
        f += 1;
    }
    (m == 1).then_some((l, f))
}

pub fn smallest_prime_factor(n: u64) -> u64 {
    debug_assert!(n >= 2);
    if n % 2 == 0 {
        return 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return d;
        }
        d += 2;
    }
    n
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while n > 1 {
        let l = smallest_prime_factor(n);
        out.push(l);
        while n % l == 0 {
            n /= l;
        }
    }
    out
}

pub fn is_one(x: &Q) -> bool {
    x.is_one()
}

pub fn is_positive(x: &Q) -> bool {
    x.is_positive()
}

/// Serde adapters writing rationals as `"a/b"` strings.
pub mod serde_q {
    use super::{fmt_q, parse_q, Q};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let raw = QOrInt::deserialize(d)?;
        raw.into_q().map_err(D::Error::custom)
    }

    /// Integers are accepted bare; anything else must be a string.
    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(crate) enum QOrInt {
        Int(i64),
        Str(String),
    }

    impl QOrInt {
        pub(crate) fn into_q(self) -> Result<Q, super::ParseQError> {
            match self {
                QOrInt::Int(n) => Ok(super::qi(n)),
                QOrInt::Str(s) => parse_q(&s),
            }
        }
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(xs: &[Q], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(xs.len()))?;
            for x in xs {
                seq.serialize_element(&fmt_q(x))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
            Vec::<QOrInt>::deserialize(d)?
                .into_iter()
                .map(|r| r.into_q().map_err(D::Error::custom))
                .collect()
        }
    }
}

/// A rational that goes through [`serde_q`], for use inside containers.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct QText(#[serde(with = "serde_q")] pub Q);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["1/3", "-7/2", "5", "0"] {
            assert_eq!(fmt_q(&parse_q(s).unwrap()), s);
        }
        assert_eq!(fmt_q(&parse_q("4/6").unwrap()), "2/3");
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn valuations() {
        assert_eq!(vp(5, 250), 3);
        assert_eq!(vp_q(5, &q(3, 25)), Some(-2));
        assert_eq!(vp_q(5, &qi(0)), None);
        assert_eq!(frac(&q(-1, 3)), q(2, 3));
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(67), Some((67, 1)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(18), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_factors(250), vec![2, 5]);
    }
}
