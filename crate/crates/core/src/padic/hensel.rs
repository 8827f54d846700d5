//! Solutions of `q^2 + q + 1 ≡ 0 (mod p^n)`.

use super::{mod_inv, PadicError, Result};
use crate::rational::{is_prime, pow_u, prime_power};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

fn f(x: &BigInt) -> BigInt {
    x * x + x + 1
}

/// Both residue classes mod `p^n`, ascending.
pub fn hensel_qsolve(p: u64, n: u32) -> Result<Vec<BigInt>> {
    if !is_prime(p) || n == 0 {
        return Err(PadicError::Invalid(format!("need a prime p and n >= 1 (p = {p}, n = {n})")));
    }
    if p % 3 != 1 {
        return Err(PadicError::NoSolution(format!("{p} is not 1 mod 3")));
    }
    let pb = BigInt::from(p);
    let mut out: Vec<BigInt> = (0..p)
        .map(BigInt::from)
        .filter(|x| f(x).is_multiple_of(&pb))
        .map(|mut x| {
            let mut modulus = pb.clone();
            for _ in 1..n {
                modulus *= &pb;
                // simple root: f'(x) = 2x + 1 is a unit
                let d: BigInt = (BigInt::from(2) * &x + 1u32).mod_floor(&modulus);
                x = (&x - f(&x) * mod_inv(&d, &modulus)).mod_floor(&modulus);
            }
            x
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Smallest prime power `q` in one of the lifted classes.
pub fn smallest_prime_power_solution(p: u64, n: u32) -> Result<u64> {
    let classes = hensel_qsolve(p, n)?;
    let m = pow_u(p, n).to_u64().ok_or_else(|| PadicError::Invalid("p^n too large".into()))?;
    let cs: Vec<u64> = classes.iter().map(|c| c.to_u64().expect("residue")).collect();
    let mut base = 0u64;
    loop {
        for &c in &cs {
            let qv = base + c;
            if qv > 1 && prime_power(qv).is_some() {
                return Ok(qv);
            }
        }
        base = base.checked_add(m).ok_or_else(|| PadicError::NoSolution("search overflowed".into()))?;
    }
}
