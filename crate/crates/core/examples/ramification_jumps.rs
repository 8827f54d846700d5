//! Lower and upper jumps, conductor and different of a `Z/25` extension.

use wildmono::ramification::{
    conductor, different_degree_lower, different_degree_upper, effective_invariant, lower_to_upper, sigmas_of,
    upper_to_lower, RamFiltration,
};
use wildmono::rational::fmt_q;

fn main() {
    let f = RamFiltration::new(5, 1, vec![1, 21]).unwrap();
    let up = lower_to_upper(&f);
    let shown: Vec<String> = up.0.iter().map(fmt_q).collect();
    println!("lower {:?} -> upper ({})", f.lower(), shown.join(", "));
    println!("conductor {}", fmt_q(&conductor(&f)));
    println!(
        "different {} (lower) = {} (upper)",
        different_degree_lower(&f),
        different_degree_upper(5, 2, 1, &up).unwrap()
    );
    assert_eq!(upper_to_lower(5, 2, 1, &up).unwrap(), f);

    let sig = sigmas_of(&f);
    for alpha in 0..sig.len() {
        println!("sigma_eff^{alpha} = {}", fmt_q(&effective_invariant(5, &sig, alpha).unwrap()));
    }
}
