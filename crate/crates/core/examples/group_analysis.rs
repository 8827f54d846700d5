//! Sylow data for a few groups, by brute force and by formula.
//!
//! `cargo run --example group_analysis`

use wildmono::groups::{quotient_structure, sylow_analyze, GroupSpec};

fn main() {
    for (spec, p) in [("sl2 q=11", 5), ("pgl3 q=2", 7), ("sl2 q=251", 5)] {
        let g: GroupSpec = spec.parse().expect("group spec");
        let a = sylow_analyze(&g, p).expect("analysis");
        let m_g = a.m_g.map_or("-".to_string(), |m| m.to_string());
        println!("{spec:<10} p={p}  |G|={:<10} n={} m_G={m_g:<2} {:?}", a.order, a.n, a.method);
    }

    // only groups with a normal order-p subgroup have this quotient
    let g: GroupSpec = "cyclic 3 x semidirect 5 4 action=2".parse().unwrap();
    let quot = quotient_structure(&g, 5).expect("quotient");
    println!("Z/3 x (Z/5 : Z/4) modulo its prime-to-5 core: {:?}", quot.shape);
}
