//! Finite fields GF(q) by log/antilog tables.
//!
//! Elements are encoded as integers `0..q`: for prime `q` this is the usual
//! residue, otherwise the base-`l` digits are the coefficients of a
//! polynomial in a primitive root `w`. The table size caps `q` at 2^20.

use crate::rational::prime_power;

const MAX_Q: u64 = 1 << 20;

#[derive(Debug, Clone)]
pub struct Gf {
    q: u32,
    l: u32,
    k: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl Gf {
    pub fn new(q: u64) -> Option<Gf> {
        let (l, k) = prime_power(q)?;
        if q > MAX_Q {
            return None;
        }
        let (q, l) = (q as u32, l as u32);
        let exp = if k == 1 {
            prime_powers_of_generator(q)
        } else {
            (1..q).find_map(|low| primitive_poly_table(q, l, k, low))?
        };
        let mut log = vec![u32::MAX; q as usize];
        for (i, &x) in exp.iter().enumerate() {
            log[x as usize] = i as u32;
        }
        Some(Gf { q, l, k, exp, log })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.l
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    /// The primitive element used for the tables.
    pub fn primitive(&self) -> u32 {
        self.exp[1 % self.exp.len()]
    }

    /// `w^i` for the primitive element `w`.
    pub fn pow_primitive(&self, i: u64) -> u32 {
        self.exp[(i % (self.q as u64 - 1)) as usize]
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return (a + b) % self.q;
        }
        digitwise(self.k, self.l, a, b, |x, y| (x + y) % self.l)
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.k == 1 {
            return (self.q - a) % self.q;
        }
        digitwise(self.k, self.l, a, 0, |x, _| (self.l - x) % self.l)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = self.log[a as usize] as u64 + self.log[b as usize] as u64;
        self.exp[(s % (self.q as u64 - 1)) as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let l = self.log[a as usize];
        Some(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Option<u32> {
        Some(self.mul(a, self.inv(b)?))
    }

    /// The image of an integer under `Z -> GF(q)`.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.l as i64) as u32
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: u32) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let n = self.q as u64 - 1;
        Some(n / num_integer::gcd(n, self.log[a as usize] as u64))
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }
}

fn digitwise(k: u32, l: u32, a: u32, b: u32, f: impl Fn(u32, u32) -> u32) -> u32 {
    let (mut a, mut b, mut out, mut place) = (a, b, 0u32, 1u32);
    for _ in 0..k {
        out += f(a % l, b % l) * place;
        a /= l;
        b /= l;
        place *= l;
    }
    out
}

fn prime_powers_of_generator(p: u32) -> Vec<u32> {
    if p == 2 {
        return vec![1];
    }
    let order = |g: u64| {
        let mut x = g;
        let mut k = 1u64;
        while x != 1 {
            x = x * g % p as u64;
            k += 1;
        }
        k
    };
    let g = (2..p as u64).find(|&g| order(g) == p as u64 - 1).expect("primitive root");
    let mut out = Vec::with_capacity(p as usize - 1);
    let mut x = 1u64;
    for _ in 0..p - 1 {
        out.push(x as u32);
        x = x * g % p as u64;
    }
    out
}

/// Tries the monic polynomial `x^k + (lower terms encoded by low)` and
/// returns the power table of `x` if `x` has order `q - 1`, which makes the
/// quotient ring a field with `x` primitive.
fn primitive_poly_table(q: u32, l: u32, k: u32, low: u32) -> Option<Vec<u32>> {
    let coeffs: Vec<u32> = (0..k).map(|i| low / l.pow(i) % l).collect();
    if coeffs[0] == 0 {
        return None;
    }
    let mut cur = vec![0u32; k as usize];
    cur[0] = 1;
    let encode = |v: &[u32]| v.iter().rev().fold(0u32, |acc, &c| acc * l + c);
    let mut table = Vec::with_capacity(q as usize - 1);
    for step in 0..q - 1 {
        let e = encode(&cur);
        if step > 0 && e == 1 {
            return None;
        }
        table.push(e);
        // multiply by x and reduce x^k = -sum c_i x^i
        let top = cur[k as usize - 1];
        for i in (1..k as usize).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        for i in 0..k as usize {
            cur[i] = (cur[i] + (l - coeffs[i]) * top) % l;
        }
    }
    (encode(&cur) == 1).then_some(table)
}
