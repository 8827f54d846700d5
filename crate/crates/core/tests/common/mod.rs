//! Shared generators for the integration tests.
#![allow(dead_code)]

use rand::Rng;
use wildmono::rational::{q, qi, Q};
use wildmono::stablegraph::{GraphBuilder, StableGraph};

/// A random monotonic tree whose invariants solve every local identity,
/// filled in from the root outward. The global identity is never imposed;
/// it has to come out of the telescoping.
pub fn telescoping_tree<R: Rng>(rng: &mut R) -> StableGraph {
    let p = [3u64, 5, 7][rng.gen_range(0..3)];
    let divisors: Vec<u64> = (1..p).filter(|d| (p - 1) % d == 0).collect();
    let m = divisors[rng.gen_range(0..divisors.len())];
    let n: u32 = rng.gen_range(1..=3);
    let k = rng.gen_range(1..=6);

    // shape: parent links and inertia, weakly decreasing outward
    let mut parent = vec![usize::MAX];
    let mut inertia = vec![n];
    for i in 1..k {
        let par = rng.gen_range(0..i);
        parent.push(par);
        inertia.push(rng.gen_range(1..=inertia[par]));
    }
    // components other than the original one are rational
    let genus: Vec<u64> = (0..k).map(|i| if i == 0 { rng.gen_range(0..=2) } else { 0 }).collect();
    let g_x: u64 = genus.iter().sum();

    let mut b = GraphBuilder::new(p, n, m, g_x);
    let ids: Vec<usize> = (0..k).map(|i| b.component(&format!("v{i}"), genus[i], inertia[i], &[])).collect();
    let mut cofactor = (2u64..).filter(|s| s % p != 0);
    let mut wild = vec![0usize; k];
    for i in 0..k {
        wild[i] = rng.gen_range(0..=2);
        for w in 0..wild[i] {
            let idx = p.pow(inertia[i]) * cofactor.next().unwrap();
            b.branch_point(&format!("b{i}_{w}"), idx, ids[i]);
        }
    }

    // invariants on parent -> child, per level
    let mut down: Vec<Vec<Q>> = vec![Vec::new(); k];
    let mut tail_no = 0;
    for v in 0..k {
        let r = inertia[v] as usize;
        let children: Vec<usize> = (0..k).filter(|&c| parent[c] == v).collect();
        let min_tails = usize::from(children.is_empty());
        let tails = rng.gen_range(min_tails..=2);
        let outs = children.len() + tails;
        let mut per_edge: Vec<Vec<Q>> = vec![Vec::with_capacity(r); outs];
        for alpha in 0..r {
            // Σ_out (σ - 1) = 2g - 2, with the parent edge and branch edges known
            let mut rest = qi(2 * genus[v] as i64 - 2) + qi(wild[v] as i64);
            if v != 0 {
                rest -= -&down[v][alpha] - qi(1);
            }
            for e in per_edge.iter_mut().take(outs - 1) {
                let s = q(rng.gen_range(-3 * m as i64..=4 * m as i64), m as i64);
                rest -= &s - qi(1);
                e.push(s);
            }
            per_edge[outs - 1].push(rest + qi(1));
        }
        for (j, &c) in children.iter().enumerate() {
            down[c] = per_edge[j].clone();
            b.link(ids[v], ids[c], &per_edge[j]);
        }
        for sig in &per_edge[children.len()..] {
            let tame: Vec<u64> = if rng.gen_bool(0.5) { vec![cofactor.next().unwrap()] } else { vec![] };
            let t = b.component(&format!("t{tail_no}"), 0, 0, &tame);
            tail_no += 1;
            b.link(ids[v], t, sig);
        }
    }
    b.build(ids[0])
}
