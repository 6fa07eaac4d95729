mod common;

use proptest::prelude::*;
use stabforge_core::catalog;
use stabforge_core::census::invariant_subsets_of_size;
use stabforge_core::speclang::{format_cycles, parse_cycle_notation, parse_group_spec};
use stabforge_core::{PermGroup, Permutation, PointSet};

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(&images).unwrap())
}

fn small_group() -> impl Strategy<Value = PermGroup> {
    (3usize..=8)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(perm(n), 1..=2)))
        .prop_map(|(n, gens)| PermGroup::new(n, gens).unwrap())
        .prop_filter("order within enumeration range", |g| {
            g.order_u64().is_some_and(|o| o <= 5040)
        })
}

fn group_and_set() -> impl Strategy<Value = (PermGroup, PointSet)> {
    small_group().prop_flat_map(|g| {
        let mask = PointSet::full(g.degree()).0;
        (Just(g), any::<u64>().prop_map(move |b| PointSet(b & mask)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_round_trip(g in perm(12)) {
        prop_assert!(g.then(&g.inverse()).is_identity());
        prop_assert_eq!(g.inverse().inverse(), g.clone());
        prop_assert!(g.pow(g.order() as i64).is_identity());
    }

    #[test]
    fn cycle_notation_round_trip(g in perm(10)) {
        let text = format_cycles(&g);
        prop_assert_eq!(parse_cycle_notation(&text, 10).unwrap(), g);
    }

    #[test]
    fn composition_is_associative(a in perm(7), b in perm(7), c in perm(7)) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        prop_assert_eq!(a.then(&b).image(3), b.image(a.image(3)));
    }

    #[test]
    fn prime_order_cycle_identity(g in perm(11)) {
        let o = g.order();
        if let Some(p) = (2..=o).find(|d| o % d == 0) {
            let y = g.pow((o / p) as i64);
            let fix = y.fixed_count();
            prop_assert_eq!(y.cycle_count(), fix + (11 - fix) / p as usize);
        }
    }

    #[test]
    fn invariant_subsets_count(g in perm(9)) {
        prop_assert_eq!(g.invariant_subsets().count(), 1usize << g.cycle_count());
        prop_assert!(g.invariant_subsets().all(|s| g.stabilizes(s)));
        let by_size: usize = (0..=9).map(|k| invariant_subsets_of_size(&g, k).len()).sum();
        prop_assert_eq!(by_size, 1usize << g.cycle_count());
    }

    #[test]
    fn set_stabilizer_matches_enumeration((g, set) in group_and_set()) {
        let fast = g.set_stabilizer(set);
        let slow = g.set_stabilizer_by_enumeration(set, 10_000).unwrap();
        prop_assert!(fast.same_group(&slow));
        prop_assert!(fast.generators().iter().all(|x| x.stabilizes(set)));
    }

    #[test]
    fn complement_has_the_same_stabilizer((g, set) in group_and_set()) {
        let a = g.set_stabilizer(set);
        let b = g.set_stabilizer(set.complement(g.degree()));
        prop_assert!(a.same_group(&b));
    }

    #[test]
    fn o2_routes_agree(g in small_group()) {
        let a = g.o2_residual();
        let b = g.o2_residual_by_enumeration(10_000).unwrap();
        prop_assert!(a.same_group(&b));
        // the quotient is a 2-group
        let index = g.order() / a.order();
        prop_assert_eq!(index.count_ones(), 1);
        prop_assert!(a.is_subgroup_of(&g));
    }

    #[test]
    fn orbits_partition_the_points(g in small_group()) {
        let orbits = g.orbits();
        let total: usize = orbits.iter().map(Vec::len).sum();
        prop_assert_eq!(total, g.degree());
        let union: PointSet = orbits.iter().flatten().copied().collect();
        prop_assert_eq!(union, PointSet::full(g.degree()));
    }

    #[test]
    fn stabilizer_order_is_orbit_quotient((g, set) in group_and_set()) {
        // orbit–stabilizer on the power set
        let s = g.set_stabilizer(set);
        let mut orbit = vec![set];
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            head += 1;
            for gen in g.generators() {
                let y = gen.image_set(x);
                if !orbit.contains(&y) {
                    orbit.push(y);
                }
            }
        }
        prop_assert_eq!(s.order() * orbit.len(), g.order().clone());
    }
}

#[test]
fn spec_display_round_trips() {
    for spec in [
        "AS(2,3)",
        "AGL(2,3)",
        "ASL(2,3)",
        "wr(Sym(4),Sym(4))",
        "prodwr(Sym(3),Sym(3))",
        "disjoint(Cyc(2),Alt(4))",
        "perm(5; (1 2 3), (4 5))",
    ] {
        let expr = parse_group_spec(spec).unwrap();
        let again = parse_group_spec(&expr.to_string()).unwrap();
        assert_eq!(expr, again, "{spec}");
        assert!(common::group(spec).same_group(&common::group(&expr.to_string())));
    }
}

#[test]
fn o2_of_s3_wr_s3_has_index_four() {
    let g = catalog::wreath(
        &catalog::symmetric(3).unwrap(),
        &catalog::symmetric(3).unwrap(),
        catalog::WreathAction::Product,
    )
    .unwrap();
    let poly = g.o2_residual();
    let enumerated = g.o2_residual_by_enumeration(10_000).unwrap();
    assert!(poly.same_group(&enumerated));
    assert_eq!(poly.order_u64(), Some(324));
}
