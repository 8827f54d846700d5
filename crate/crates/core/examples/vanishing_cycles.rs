//! Validates a stable-reduction graph and runs the vanishing cycles checks.
//!
//! `cargo run --example vanishing_cycles -- examples/monotonic_p3.json`

use std::path::Path;
use wildmono::rational::fmt_q;
use wildmono::stablegraph::{
    check_effective_local, check_generalized, check_global, check_tail_constraints, classify_tails, validate, StableGraph,
};

fn main() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR"));
    let file = std::env::args().nth(1).unwrap_or_else(|| "examples/pgl3.json".into());
    let g = StableGraph::from_json(&std::fs::read_to_string(root.join(&file)).unwrap()).unwrap();

    let bad = validate(&g);
    if !bad.is_empty() {
        for v in bad {
            println!("{} at {}: {}", v.rule, v.element, v.message);
        }
        return;
    }
    for t in classify_tails(&g).unwrap() {
        println!("tail {} {:?} sigma {}", t.vertex, t.flavor, fmt_q(&t.sigma));
    }
    // the local identity lives on inseparable components
    for v in g.component_vertices().filter(|&v| g.inertia(v) > Some(0)) {
        let c = check_effective_local(&g, v, 0).unwrap();
        println!("{}: {} = {}", g.vertices[v].id, c.lhs, c.rhs);
    }
    let glob = check_global(&g).unwrap();
    println!("global: {} = {} ({})", glob.lhs, glob.rhs, glob.holds);
    println!("tail bound violations: {}", check_tail_constraints(&g).len());
    if g.n > 1 {
        let r = check_generalized(&g, 1).unwrap();
        println!("at level 1: {} vs {} {:?}", r.lhs, r.rhs, r.verdict);
    }
}
