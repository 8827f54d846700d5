//! What the reduction data implies about wild monodromy.

use std::path::Path;
use wildmono::rational::qi;
use wildmono::stablegraph::monodromy::{monodromy_report, within_bound, CoverFacts};
use wildmono::stablegraph::StableGraph;

fn main() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/pgl3.json");
    let g = StableGraph::from_json(&std::fs::read_to_string(path).unwrap()).unwrap();
    let facts = CoverFacts { bad_reduction: None, ..CoverFacts::from_graph(&g).unwrap() };
    let rep = monodromy_report(&facts, &qi(1), 7, 1, 3, true);
    println!("PGL3(2), p=7: {:?}", rep.verdict);

    let facts = CoverFacts { bad_reduction: Some(true), indices_prime_to_p: false, new_etale_tails: 1 };
    let rep = monodromy_report(&facts, &qi(1), 5, 3, 2, true);
    println!(
        "p=5, n=3: exponent divides {}, Z/5 fits: {:?}",
        rep.exponent_bound.as_deref().unwrap_or("?"),
        within_bound(&rep, 5)
    );
}
