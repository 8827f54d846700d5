//! Prime powers `q` with `q^2 + q + 1 ≡ 0 (mod 49)`.

use wildmono::padic::hensel::{hensel_qsolve, smallest_prime_power_solution};

fn main() {
    let roots = hensel_qsolve(7, 1).unwrap();
    println!("mod 7: {roots:?}");
    println!("mod 49: {:?}", hensel_qsolve(7, 2).unwrap());
    println!("smallest prime power: {}", smallest_prime_power_solution(7, 2).unwrap());
}
