//! Text format for groups.
//!
//! ```text
//! sl2 q=251
//! pgl3 q=2
//! perm (1 2 3)(4 5); (1 2)
//! cyclic 15
//! semidirect 5 4 action=2
//! cyclic 3 x semidirect 5 4 action=2
//! ```
//!
//! Any spec may carry a trailing `cap=N` to change the enumeration cap.

use super::{GroupError, Result};
use std::fmt;
use std::str::FromStr;

pub const DEFAULT_ORDER_CAP: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    Cyclic(u64),
    /// `Z/n ⋊ Z/m`, the generator of `Z/m` acting by multiplication by
    /// `action`.
    Semidirect { n: u64, m: u64, action: u64 },
}

impl Factor {
    pub fn shape(&self) -> (u64, u64) {
        match *self {
            Factor::Cyclic(n) => (n, 1),
            Factor::Semidirect { n, m, .. } => (n, m),
        }
    }

    pub fn action(&self) -> u64 {
        match *self {
            Factor::Cyclic(_) => 1,
            Factor::Semidirect { action, .. } => action,
        }
    }

    pub fn order(&self) -> u64 {
        let (n, m) = self.shape();
        n * m
    }

    pub(crate) fn check(&self) -> Result<()> {
        let (n, m) = self.shape();
        if n == 0 || m == 0 || n > u32::MAX as u64 || m > u32::MAX as u64 {
            return Err(GroupError::Invalid(format!("bad factor orders {n}, {m}")));
        }
        let t = self.action();
        if num_integer::gcd(t % n, n) != 1 && n > 1 {
            return Err(GroupError::Invalid(format!("action {t} is not a unit mod {n}")));
        }
        if super::mod_pow(t, m, n) != 1 % n {
            return Err(GroupError::Invalid(format!("action {t} does not have order dividing {m} mod {n}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupKind {
    Perm { degree: usize },
    Sl2 { q: u64 },
    Pgl3 { q: u64 },
    Product(Vec<Factor>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    pub kind: GroupKind,
    /// Explicit generators in the kind's encoding; empty means the standard
    /// generating set.
    pub generators: Vec<Vec<u32>>,
    pub order_cap: u64,
}

impl GroupSpec {
    pub fn new(kind: GroupKind) -> Self {
        GroupSpec { kind, generators: Vec::new(), order_cap: DEFAULT_ORDER_CAP }
    }

    pub fn sl2(q: u64) -> Self {
        Self::new(GroupKind::Sl2 { q })
    }

    pub fn pgl3(q: u64) -> Self {
        Self::new(GroupKind::Pgl3 { q })
    }

    pub fn cyclic(n: u64) -> Self {
        Self::new(GroupKind::Product(vec![Factor::Cyclic(n)]))
    }
}

fn perr(input: &str, reason: impl Into<String>) -> GroupError {
    GroupError::Parse { input: input.to_string(), reason: reason.into() }
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    fn from_str(input: &str) -> Result<Self> {
        let mut cap = DEFAULT_ORDER_CAP;
        let mut body = Vec::new();
        for tok in input.split_whitespace() {
            match tok.strip_prefix("cap=") {
                Some(v) => cap = v.parse().map_err(|_| perr(input, "bad cap"))?,
                None => body.push(tok),
            }
        }
        let body = body.join(" ");
        let (head, rest) = body.split_once(' ').unwrap_or((body.as_str(), ""));
        let mut spec = match head {
            "sl2" => GroupSpec::sl2(parse_q(input, rest)?),
            "pgl3" => GroupSpec::pgl3(parse_q(input, rest)?),
            "perm" => parse_perm(input, rest)?,
            "cyclic" | "semidirect" => {
                let factors = body
                    .split(" x ")
                    .map(|f| parse_factor(input, f.trim()))
                    .collect::<Result<Vec<_>>>()?;
                GroupSpec::new(GroupKind::Product(factors))
            }
            _ => return Err(perr(input, format!("unknown group kind {head:?}"))),
        };
        spec.order_cap = cap;
        Ok(spec)
    }
}

fn parse_q(input: &str, rest: &str) -> Result<u64> {
    let v = rest.trim().strip_prefix("q=").ok_or_else(|| perr(input, "expected q=<prime power>"))?;
    let q: u64 = v.parse().map_err(|_| perr(input, "q is not an integer"))?;
    if crate::rational::prime_power(q).is_none() {
        return Err(perr(input, format!("{q} is not a prime power")));
    }
    Ok(q)
}

fn parse_factor(input: &str, f: &str) -> Result<Factor> {
    let toks: Vec<&str> = f.split_whitespace().collect();
    let num = |s: &str| s.parse::<u64>().map_err(|_| perr(input, format!("{s:?} is not an integer")));
    let factor = match toks.as_slice() {
        ["cyclic", n] => Factor::Cyclic(num(n)?),
        ["semidirect", n, m, act] => {
            let a = act.strip_prefix("action=").ok_or_else(|| perr(input, "expected action=<t>"))?;
            Factor::Semidirect { n: num(n)?, m: num(m)?, action: num(a)? }
        }
        _ => return Err(perr(input, format!("cannot read factor {f:?}"))),
    };
    factor.check().map_err(|e| perr(input, e.to_string()))?;
    Ok(factor)
}

fn parse_perm(input: &str, rest: &str) -> Result<GroupSpec> {
    let mut cycles_per_gen: Vec<Vec<Vec<u32>>> = Vec::new();
    let mut degree = 0u32;
    for g in rest.split(';') {
        let mut cycles = Vec::new();
        let mut s = g.trim();
        while !s.is_empty() {
            let open = s.strip_prefix('(').ok_or_else(|| perr(input, "expected '('"))?;
            let close = open.find(')').ok_or_else(|| perr(input, "unclosed cycle"))?;
            let pts = open[..close]
                .split(|c: char| c == ' ' || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| match t.parse::<u32>() {
                    Ok(v) if v >= 1 => Ok(v),
                    _ => Err(perr(input, format!("bad point {t:?}"))),
                })
                .collect::<Result<Vec<u32>>>()?;
            degree = degree.max(pts.iter().copied().max().unwrap_or(0));
            cycles.push(pts);
            s = open[close + 1..].trim_start();
        }
        cycles_per_gen.push(cycles);
    }
    let mut gens = Vec::new();
    for cycles in cycles_per_gen {
        let mut img: Vec<u32> = (0..degree).collect();
        let mut used = vec![false; degree as usize];
        for c in cycles {
            for (i, &a) in c.iter().enumerate() {
                if std::mem::replace(&mut used[a as usize - 1], true) {
                    return Err(perr(input, format!("point {a} appears twice in one generator")));
                }
                img[a as usize - 1] = c[(i + 1) % c.len()] - 1;
            }
        }
        gens.push(img);
    }
    let mut spec = GroupSpec::new(GroupKind::Perm { degree: degree.max(1) as usize });
    if degree == 0 {
        gens = vec![vec![0]];
    }
    spec.generators = gens;
    Ok(spec)
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            GroupKind::Sl2 { q } => write!(f, "sl2 q={q}")?,
            GroupKind::Pgl3 { q } => write!(f, "pgl3 q={q}")?,
            GroupKind::Product(fs) => {
                for (i, x) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" x ")?;
                    }
                    match x {
                        Factor::Cyclic(n) => write!(f, "cyclic {n}")?,
                        Factor::Semidirect { n, m, action } => {
                            write!(f, "semidirect {n} {m} action={action}")?
                        }
                    }
                }
            }
            GroupKind::Perm { .. } => {
                f.write_str("perm ")?;
                for (i, g) in self.generators.iter().enumerate() {
                    if i > 0 {
                        f.write_str("; ")?;
                    }
                    write_cycles(f, g)?;
                }
            }
        }
        if self.order_cap != DEFAULT_ORDER_CAP {
            write!(f, " cap={}", self.order_cap)?;
        }
        Ok(())
    }
}

fn write_cycles(f: &mut fmt::Formatter<'_>, g: &[u32]) -> fmt::Result {
    let mut seen = vec![false; g.len()];
    let mut any = false;
    for start in 0..g.len() {
        if seen[start] || g[start] as usize == start {
            continue;
        }
        any = true;
        f.write_str("(")?;
        let mut i = start;
        let mut first = true;
        while !seen[i] {
            seen[i] = true;
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{}", i + 1)?;
            first = false;
            i = g[i] as usize;
        }
        f.write_str(")")?;
    }
    if !any {
        f.write_str("()")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_documented_form() {
        let s: GroupSpec = "sl2 q=251".parse().unwrap();
        assert_eq!(s.kind, GroupKind::Sl2 { q: 251 });
        let s: GroupSpec = "perm (1 2 3)(4 5); (1 2)".parse().unwrap();
        assert_eq!(s.kind, GroupKind::Perm { degree: 5 });
        assert_eq!(s.generators[0], vec![1, 2, 0, 4, 3]);
        let s: GroupSpec = "semidirect 5 4 action=2 cap=100".parse().unwrap();
        assert_eq!(s.order_cap, 100);
        let s: GroupSpec = "cyclic 3 x semidirect 5 4 action=2".parse().unwrap();
        assert!(matches!(s.kind, GroupKind::Product(ref v) if v.len() == 2));
    }

    #[test]
    fn display_round_trips() {
        for t in ["sl2 q=9", "pgl3 q=2", "perm (1 2 3)(4 5); (1 2)", "cyclic 15", "cyclic 3 x semidirect 5 4 action=2 cap=7"] {
            let s: GroupSpec = t.parse().unwrap();
            assert_eq!(s.to_string(), t);
        }
    }

    #[test]
    fn rejects_garbage() {
        for t in ["sl2 q=6", "sl2", "semidirect 5 3 action=2", "semidirect 5 4 action=5", "foo 3", "perm (1 2"] {
            assert!(t.parse::<GroupSpec>().is_err(), "{t}");
        }
    }
}
