mod common;

use common::*;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use stabforge_core::catalog;
use stabforge_core::constructor::{
    nice_pair, small_stabilizer_set, ConstructorOptions, NicePair, StepCase,
};
use stabforge_core::{Limits, PermGroup, PointSet};

fn assert_pair(g: &PermGroup, pair: &NicePair, spec: &str) {
    assert!(pair.delta1.len() < pair.delta2.len(), "{spec}");
    assert!(2 * pair.delta2.len() <= g.degree(), "{spec}");
    for d in [pair.delta1, pair.delta2] {
        let r = g
            .set_stabilizer(d)
            .structure_report(&Limits::default())
            .unwrap();
        assert!(r.required_structure, "{spec}: {d:?}");
    }
}

#[test]
fn every_corpus_group_gets_a_pair() {
    let opts = ConstructorOptions::default();
    for spec in PRIMITIVES.iter().chain(PRODUCT_ACTIONS).chain(INTRANSITIVE) {
        let g = group(spec);
        let (pair, _) = nice_pair(&g, &opts).unwrap();
        assert_pair(&g, &pair, spec);
    }
}

#[test]
fn wreaths_take_the_block_branch() {
    let opts = ConstructorOptions::default();
    for &(spec, n) in WREATHS {
        let g = group(spec);
        let (pair, trace) = nice_pair(&g, &opts).unwrap();
        assert_pair(&g, &pair, spec);
        assert_eq!(trace[0].case, StepCase::Wreath(n), "{spec}");
        assert_eq!(trace[0].pattern1.len(), n);
        assert_eq!(trace[0].sizes, (pair.delta1.len(), pair.delta2.len()));
        assert_eq!(trace[1].depth, 1);
    }
}

#[test]
fn nine_block_renumbering_uses_a_free_triple() {
    let (_, trace) = nice_pair(
        &group("wr(Cyc(2),AGL(2,3))"),
        &ConstructorOptions::default(),
    )
    .unwrap();
    let triple = trace[0].triple.expect("triple recorded");
    assert_eq!(triple.len(), 3);
    // positions 0..3 of the seven-block tuple are D2, D2, COMP1 and go to the triple
    let on_triple: Vec<String> = triple
        .iter()
        .map(|b| trace[0].pattern1[b].to_string())
        .collect();
    assert_eq!(on_triple, ["D2", "D2", "COMP1"]);
}

#[test]
fn forced_recursion_on_small_imprimitive_groups() {
    let opts = ConstructorOptions {
        force_recursion: true,
        ..Default::default()
    };
    for spec in [
        "wr(Sym(3),Cyc(2))",
        "wr(Cyc(2),Sym(3))",
        "wr(Cyc(3),Sym(4))",
        "Cyc(8)",
        "wr(Sym(2),wr(Sym(2),Sym(2)))",
    ] {
        let g = group(spec);
        let (pair, trace) = nice_pair(&g, &opts).unwrap();
        assert_pair(&g, &pair, spec);
        assert!(
            matches!(trace[0].case, StepCase::Wreath(_)),
            "{spec}: {:?}",
            trace[0].case
        );
    }
}

#[test]
fn product_action_pair() {
    let g = group("prodwr(Sym(4),Cyc(2))");
    let (pair, _) = nice_pair(&g, &ConstructorOptions::default()).unwrap();
    let o = pair.report1.o2_order.clone();
    assert!([1u32, 3, 9].iter().any(|&x| o == x.into()), "O² order {o}");
    assert!(pair.report2.required_structure);
}

#[test]
fn s4_wr_s4_stabilizers_not_nilpotent() {
    let g = group("wr(Sym(4),Sym(4))");
    let cert = small_stabilizer_set(&g, &ConstructorOptions::default()).unwrap();
    assert!(cert.report.required_structure);
    assert!(!cert.report.is_nilpotent);
    let pair = cert.pair.unwrap();
    assert!(!pair.report1.is_nilpotent && !pair.report2.is_nilpotent);
}

#[test]
fn s3_wr_s3_product_certificate() {
    let g = group("prodwr(Sym(3),Sym(3))");
    let cert = small_stabilizer_set(&g, &ConstructorOptions::default()).unwrap();
    let s = g.set_stabilizer(cert.chosen_delta);
    assert_eq!(s.structure_report(&Limits::default()).unwrap(), cert.report);
}

#[test]
fn as8_certificate_is_never_a_two_group() {
    let g = group("AS(2,3)");
    let cert = small_stabilizer_set(&g, &ConstructorOptions::default()).unwrap();
    assert!(!cert.report.is_2_group);
    assert!(cert.report.required_structure);
    let order = cert.report.stab_order.clone();
    assert!([3u32, 6].iter().any(|&x| order == x.into()), "{order}");
}

#[test]
fn seeds_do_not_change_exhaustive_results() {
    let g = group("wr(Cyc(2),AGL(1,11))");
    let a = nice_pair(
        &g,
        &ConstructorOptions {
            seed: 1,
            ..Default::default()
        },
    )
    .unwrap();
    let b = nice_pair(
        &g,
        &ConstructorOptions {
            seed: 2,
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(a, b);
}

/// Stabilizers in a subgroup sit inside the stabilizers of the whole group,
/// and the target structure passes to them.
#[test]
fn subgroup_soundness() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for spec in ["wr(Sym(4),Sym(4))", "prodwr(Sym(4),Cyc(2))", "AGL(2,3)"] {
        let g = group(spec);
        let (pair, _) = nice_pair(&g, &ConstructorOptions::default()).unwrap();
        let elements: Vec<_> = g
            .elements(10_000_000)
            .unwrap()
            .step_by(997)
            .take(200)
            .collect();
        for _ in 0..10 {
            let gens = (0..2)
                .map(|_| elements[(rng.next_u64() % elements.len() as u64) as usize].clone())
                .collect();
            let h = PermGroup::new(g.degree(), gens).unwrap();
            for d in [pair.delta1, pair.delta2] {
                let sh = h.set_stabilizer(d);
                assert!(sh.is_subgroup_of(&g.set_stabilizer(d)), "{spec}");
                assert!(
                    sh.structure_report(&Limits::default())
                        .unwrap()
                        .required_structure,
                    "{spec}"
                );
            }
        }
    }
}

/// Subgroups of a disjoint product of two passing stabilizers pass too.
#[test]
fn closure_under_products_and_subgroups() {
    let l = Limits::default();
    let a = catalog::symmetric(3).unwrap();
    let b = group("AGL(1,7)").set_stabilizer(PointSet::from_points([0, 1]));
    assert!(b.structure_report(&l).unwrap().required_structure);
    let prod = catalog::disjoint_product(&a, &b).unwrap();
    assert!(prod.structure_report(&l).unwrap().required_structure);
    let elements: Vec<_> = prod.elements(1000).unwrap().collect();
    for x in &elements {
        for y in elements.iter().step_by(3) {
            let h = PermGroup::new(prod.degree(), vec![x.clone(), y.clone()]).unwrap();
            assert!(h.structure_report(&l).unwrap().required_structure);
        }
    }
}
