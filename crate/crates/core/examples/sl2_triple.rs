//! A generating triple of `SL2(251)` with orders 251, 250, 50.

use wildmono::groups::find_sl2_triple;

fn main() {
    let t = find_sl2_triple(251, (251, 250, 50)).expect("triple");
    println!("alpha = {:?}", t.alpha);
    println!("beta  = {:?}", t.beta);
    println!("orders {:?}, generation {:?}", t.orders, t.generation);
}
