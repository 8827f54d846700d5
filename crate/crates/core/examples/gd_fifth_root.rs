//! `g(d)` in `Q_5(5^{1/5})`, its fifth root `δ`, and why `δ` is not a
//! fifth power.

use wildmono::padic::gd::{quoted_delta_verdict, run, GdParams};
use wildmono::rational::q;

fn main() {
    let rep = run(&GdParams::new(2).unwrap(), &q(3, 1)).unwrap();
    println!("g(d)  = {}", rep.g);
    println!("delta = {}", rep.delta);
    println!("g(d) fifth power: {}, delta fifth power: {}", rep.g_fifth_power, rep.delta_verdict.is_power);
    for line in &rep.transcript {
        println!("  {line}");
    }

    let quoted = quoted_delta_verdict().unwrap();
    println!("quoted delta, fifth power: {}", quoted.is_power);
    for line in quoted.transcript.lines() {
        println!("  {line}");
    }
}
