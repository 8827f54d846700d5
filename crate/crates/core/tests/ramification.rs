use num_bigint::BigInt;
use proptest::prelude::*;
use wildmono::ramification::*;
use wildmono::rational::{q, qi, Q};

fn filtration() -> impl Strategy<Value = RamFiltration> {
    (prop::sample::select(vec![2u64, 3, 5, 7]), 1usize..=4, 1u64..=6)
        .prop_filter("m prime to p", |(p, _, m)| m % p != 0)
        .prop_flat_map(|(p, n, m)| {
            prop::collection::btree_set(1u64..=200, n).prop_map(move |s| RamFiltration::new(p, m, s.into_iter().collect()).unwrap())
        })
}

fn sigma_stack() -> impl Strategy<Value = (u64, Vec<Q>)> {
    (prop::sample::select(vec![2u64, 3, 5, 7]), prop::collection::vec((1i64..200, 1i64..7), 1..5))
        .prop_map(|(p, v)| (p, v.into_iter().map(|(a, b)| q(a, b)).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn round_trip(f in filtration()) {
        let up = lower_to_upper(&f);
        prop_assert_eq!(upper_to_lower(f.p(), f.n(), f.m(), &up).unwrap(), f);
    }

    #[test]
    fn different_both_ways(f in filtration()) {
        let up = lower_to_upper(&f);
        prop_assert_eq!(different_degree_lower(&f), different_degree_upper(f.p(), f.n(), f.m(), &up).unwrap());
    }

    #[test]
    fn conductor_closed_form(f in filtration()) {
        prop_assert_eq!(conductor(&f), conductor_weighted(&f));
    }

    #[test]
    fn compositum_of_equal(a in 1i64..500, b in 1i64..12, p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let s = q(a, b);
        prop_assert_eq!(compositum_conductor(&s, &s, p).unwrap(), s);
    }

    #[test]
    fn constant_stack_averages_to_itself(p in prop::sample::select(vec![2u64, 3, 5, 7]), r in 1usize..6, a in -50i64..50, b in 1i64..9) {
        let c = q(a, b);
        let sig = vec![c.clone(); r];
        for alpha in 0..r {
            prop_assert_eq!(effective_invariant(p, &sig, alpha).unwrap(), c.clone());
        }
        prop_assert_eq!(effective_weights(p, r).1, qi(1));
    }

    #[test]
    fn effective_is_truncated_conductor(f in filtration()) {
        let sig = sigmas_of(&f);
        for alpha in 0..f.n() {
            let t = f.truncate(f.n() - alpha).unwrap();
            prop_assert_eq!(effective_invariant(f.p(), &sig, alpha).unwrap(), conductor(&t));
        }
    }

    // with sigma_{i+1} >= (1 + (p-1) p^i) sigma_i the top level dominates
    // enough for each truncation to shrink by a factor p
    #[test]
    fn steep_stacks_shrink_by_p((p, base) in sigma_stack(), slack in prop::collection::vec(0i64..20, 5)) {
        let mut sig: Vec<Q> = vec![base[0].clone()];
        for i in 1..base.len() {
            let factor = Q::from_integer(BigInt::from(1 + (p - 1) * p.pow(i as u32)));
            let next = &sig[i - 1] * factor + qi(slack[i]);
            sig.push(next);
        }
        for alpha in 0..sig.len() - 1 {
            let a = effective_invariant(p, &sig, alpha).unwrap();
            let b = effective_invariant(p, &sig, alpha + 1).unwrap();
            prop_assert!(a >= Q::from_integer(BigInt::from(p)) * b);
        }
    }
}

#[test]
fn smallest_second_jump() {
    let f = RamFiltration::new(5, 1, vec![1, 21]).unwrap();
    assert_eq!(lower_to_upper(&f).0, vec![qi(1), qi(5)]);
    assert_eq!(different_degree_lower(&f), BigInt::from(128));
    assert_eq!(conductor(&f), qi(5));
    // smallest admissible second jump: p^2 - p + 1
    let up = UpperJumps(vec![qi(1), qi(5)]);
    assert_eq!(upper_to_lower(5, 2, 1, &up).unwrap().lower(), &[1, 21]);
}

#[test]
fn upper_jumps_must_give_integers() {
    let up = UpperJumps(vec![q(1, 2), qi(1)]);
    assert!(matches!(upper_to_lower(3, 2, 1, &up), Err(RamificationError::NotIntegralLowerJumps { .. })));
}
