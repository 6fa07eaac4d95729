//! Built-in demonstration bundles, one pass/fail row per claim.

use clap::ValueEnum;
use num_bigint::BigUint;
use stabforge_core::bounds::{
    analytic_checks, cycle_bound_audit, stabilized_pair_count, three_subsets_fixed_by_order_three,
    AnalyticRanges,
};
use stabforge_core::catalog::encode_tuple;
use stabforge_core::census::CensusMode;
use stabforge_core::constructor::{regular_set_search, RegularSetQuery};
use stabforge_core::perm::k_subsets;
use stabforge_core::speclang::build_group_spec;
use stabforge_core::{Limits, PermGroup, PointSet, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Demo {
    /// AS(8): every subset is stabilized by an element of order 3.
    As8,
    /// S₄≀S₄: sampled stabilizers are never nilpotent.
    Ex34,
    /// Regular sets and product actions.
    Lemma23,
    /// 3-subsets of AGL(1,p) fixed by elements of order 3.
    Lemma24,
    /// Closed-form inequalities.
    Analytic,
}

#[derive(Clone, Debug)]
pub struct Claim {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn claim(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Claim {
    Claim {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

pub fn run(demo: Demo, limits: &Limits, threads: usize) -> Result<Vec<Claim>> {
    match demo {
        Demo::As8 => as8(limits, threads),
        Demo::Ex34 => ex34(limits, threads),
        Demo::Lemma23 => lemma23(limits),
        Demo::Lemma24 => lemma24(limits),
        Demo::Analytic => Ok(analytic_checks(&AnalyticRanges::default(), limits)?
            .into_iter()
            .map(|r| claim(r.name, r.passed, r.detail))
            .collect()),
    }
}

fn stab_orders(g: &PermGroup, k: usize) -> Vec<BigUint> {
    k_subsets(g.degree(), k)
        .map(|s| g.set_stabilizer(s).order().clone())
        .collect()
}

fn as8(limits: &Limits, threads: usize) -> Result<Vec<Claim>> {
    let g = build_group_spec("AS(2,3)", limits)?;
    let mut out = vec![claim(
        "AS(8) has order 168",
        g.order_u64() == Some(168),
        format!("order {}", g.order()),
    )];
    let hits = crate::scan::hit_bitmap(&g, limits, threads)?.count();
    out.push(claim(
        "every subset is stabilized by an element of odd prime order",
        hits == 256,
        format!("{hits}/256"),
    ));
    let two = stab_orders(&g, 2);
    out.push(claim(
        "every 2-subset stabilizer has order 6",
        two.iter().all(|o| *o == BigUint::from(6u32)),
        format!("{} subsets", two.len()),
    ));
    let min3 = stab_orders(&g, 3).into_iter().min().unwrap_or_default();
    out.push(claim(
        "minimum 3-subset stabilizer order is 3",
        min3 == BigUint::from(3u32),
        format!("minimum {min3}"),
    ));
    Ok(out)
}

fn ex34(limits: &Limits, threads: usize) -> Result<Vec<Claim>> {
    let g = build_group_spec("wr(Sym(4),Sym(4))", limits)?;
    let t = crate::scan::census(
        &g,
        CensusMode::Sample {
            count: 1000,
            seed: 34,
        },
        None,
        threads,
    )?;
    let examined: u64 = t.rows.iter().map(|r| r.examined).sum();
    let nilpotent: u64 = t.rows.iter().map(|r| r.nilpotent).sum();
    let required: u64 = t.rows.iter().map(|r| r.required).sum();
    let mut out = vec![claim(
        "1000 seeded subsets of S4 wr S4 have non-nilpotent stabilizers",
        examined == 1000 && nilpotent == 0,
        format!("{nilpotent} nilpotent of {examined}; {required} with the required structure"),
    )];
    for (name, set) in [
        (
            "a subset meeting a block in 1 point",
            PointSet::from_points([0]),
        ),
        (
            "a subset meeting every block in 2 points",
            PointSet::from_points([0, 1, 4, 5, 8, 9, 12, 13]),
        ),
    ] {
        let r = g.set_stabilizer(set).structure_report(limits)?;
        out.push(claim(
            format!("{name} has a non-nilpotent stabilizer"),
            !r.is_nilpotent,
            format!("order {}, O² order {}", r.stab_order, r.o2_order),
        ));
    }
    Ok(out)
}

fn lemma23(limits: &Limits) -> Result<Vec<Claim>> {
    let mut out = Vec::new();
    for (spec, sizes) in [("AS(2,4)", vec![6usize, 7]), ("AS(3,3)", vec![4, 11])] {
        let g = build_group_spec(spec, limits)?;
        let q = RegularSetQuery {
            want: 2,
            sizes: Some(sizes.clone()),
            budget: 200_000,
            seed: 1,
            ..Default::default()
        };
        let found = regular_set_search(&g, &q)?;
        let got: Vec<usize> = found.iter().map(|s| s.len()).collect();
        let regular = found.iter().all(|s| g.set_stabilizer(*s).is_trivial());
        out.push(claim(
            format!("{spec} has regular sets of sizes {sizes:?}"),
            got == sizes && regular,
            format!("found {got:?}"),
        ));
    }

    let g = build_group_spec("prodwr(Sym(4),Cyc(2))", limits)?;
    let one = PointSet::from_points([encode_tuple(&[0, 0], 4)]);
    let r = g.set_stabilizer(one).structure_report(limits)?;
    out.push(claim(
        "S4 wr C2 product action: Stab{(1,1)} has O² elementary abelian of order 9",
        r.o2_order == BigUint::from(9u32) && r.o2_is_elementary_abelian_3,
        format!("O² order {}", r.o2_order),
    ));
    let two = PointSet::from_points([encode_tuple(&[0, 0], 4), encode_tuple(&[1, 1], 4)]);
    let s = g.set_stabilizer(two);
    out.push(claim(
        "Stab{(1,1),(2,2)} is a 2-group",
        s.is_2_group(),
        format!("order {}", s.order()),
    ));

    let h = build_group_spec("prodwr(Sym(3),Sym(3))", limits)?;
    let o2 = h.o2_residual();
    out.push(claim(
        "S3 wr S3 product action: |O²(G)| = 648",
        *o2.order() == BigUint::from(648u32),
        format!("|O²(G)| = {}", o2.order()),
    ));
    let audit = cycle_bound_audit(&h, limits)?;
    let threes = audit.histogram.iter().filter(|((p, _), _)| *p == 3);
    let max3 = threes.clone().map(|((_, c), _)| *c).max().unwrap_or(0);
    let count3: u64 = threes.map(|(_, n)| n).sum();
    out.push(claim(
        "max c(g) over order-3 elements is at most 15",
        max3 <= 15,
        format!("max {max3} over {count3} elements"),
    ));
    let s_count = stabilized_pair_count(&h, limits)?.s_count;
    let bound = BigUint::from(648u32) << 15usize;
    out.push(claim(
        "s <= 648 * 2^15 < 2^26",
        s_count <= bound && bound < BigUint::from(1u32) << 26usize,
        format!("s = {s_count}"),
    ));
    Ok(out)
}

fn lemma24(limits: &Limits) -> Result<Vec<Claim>> {
    let mut out = Vec::new();
    for p in [7u64, 13, 19, 11] {
        let g = build_group_spec(&format!("AGL(1,{p})"), limits)?;
        let count = three_subsets_fixed_by_order_three(&g, limits)?;
        let total = p * (p - 1) * (p - 2) / 6;
        let (name, passed) = if (p - 1) % 3 == 0 {
            (
                format!(
                    "AGL(1,{p}): p(p-1)/3 = {} fixed 3-subsets, fewer than {total}",
                    p * (p - 1) / 3
                ),
                count == p * (p - 1) / 3 && count < total,
            )
        } else {
            (format!("AGL(1,{p}): no fixed 3-subsets"), count == 0)
        };
        out.push(claim(name, passed, format!("{count} of {total}")));
    }
    Ok(out)
}

/// The as8 bundle without the threaded bitmap, for cross-checking.
#[cfg(test)]
fn as8_serial_hits(limits: &Limits) -> Result<u64> {
    Ok(
        stabforge_core::census::g0_hit_bitmap(&build_group_spec("AS(2,3)", limits)?, limits)?
            .count(),
    )
}
