//! Checks a deformation datum read from JSON.

use std::path::Path;
use wildmono::deformdata::{check_denominators, check_local_raw, classify_torsor, genus_consistency, local_lhs, DeformationDatum};
use wildmono::rational::{fmt_q, q};

fn main() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/datum_wild.json");
    let d = DeformationDatum::from_json(&std::fs::read_to_string(path).unwrap()).unwrap();
    d.validate().unwrap();
    for pt in &d.points {
        println!("{:<3} sigma = {}", pt.name, fmt_q(&pt.sigma()));
    }
    println!("denominators ok: {}", check_denominators(&d));
    println!("local sum {} (holds: {})", fmt_q(&local_lhs(&d)), check_local_raw(&d));
    let (hurwitz, differential) = genus_consistency(&d).unwrap();
    println!("2g-2: Hurwitz {hurwitz}, differential {differential}");

    for delta in [q(1, 1), q(1, 2), q(0, 1)] {
        let t = classify_torsor(&delta, 8, 5).unwrap();
        println!("delta = {}: {:?}", fmt_q(&delta), t.classification);
    }
}
