//! Tail configurations allowed for a given branching pattern, realized as
//! star-shaped graphs and re-checked.

use wildmono::stablegraph::enumerate::{enumerate_tail_configs_with, realize_star, PrimitiveCount};
use wildmono::stablegraph::{check_global, check_tail_constraints, validate};

fn main() {
    for (p, m, w) in [(5, 2, 2), (7, 3, 0), (3, 1, 3)] {
        for count in [PrimitiveCount::Exact, PrimitiveCount::AtMost] {
            let cfgs = enumerate_tail_configs_with(p, 1, m, w, count).unwrap();
            println!("p={p} m={m} wild={w} {count:?}: {} configurations", cfgs.len());
            for c in cfgs {
                let g = realize_star(&c, p, m, w);
                let ok = validate(&g).is_empty()
                    && check_global(&g).map(|r| r.holds).unwrap_or(false)
                    && check_tail_constraints(&g).is_empty();
                println!("  {c}  realizable: {ok}");
            }
        }
    }
}
