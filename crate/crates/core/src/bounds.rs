//! Counting certificates built from the odd-prime-order elements `G₀` of a
//! group, plus the closed-form inequalities they are compared against.
//!
//! An element with `c` cycles stabilizes exactly `2^c` subsets, so
//! `s = Σ_{g∈G₀} 2^{c(g)}` bounds the number of subsets whose stabilizer is
//! not a 2-group.

use alloc::collections::BTreeMap;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::blocks::is_primitive;
use crate::perm::{is_prime, k_subsets, PointSet};
use crate::{Limits, PermGroup, Result};

/// Relative width of the band in which floating-point comparisons are
/// re-done exactly.
pub const GUARD_BAND: f64 = 1e-6;

/// Outcome of an audit that only makes sense for some inputs.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    NotApplicable,
}

impl Verdict {
    fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }

    /// `true` unless the audit applied and failed.
    pub fn ok(self) -> bool {
        self != Verdict::Fails
    }
}

/// `lhs ≤ rhs` from floating-point values, deferring to `exact` when the two
/// are within the guard band of each other.
fn guarded_le(lhs: f64, rhs: f64, exact: impl FnOnce() -> bool) -> bool {
    if (lhs - rhs).abs() <= GUARD_BAND * rhs.abs().max(1.0) || !lhs.is_finite() || !rhs.is_finite()
    {
        exact()
    } else {
        lhs <= rhs
    }
}

fn big_pow(base: u64, exp: u64) -> BigUint {
    BigUint::from(base).pow(exp as u32)
}

fn is_prime_power(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let p = (2..=n).find(|&d| n.is_multiple_of(d)).unwrap();
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

/// `24^(−1/3)·n^(13/4)`.
pub fn wolf_bound(n: usize) -> f64 {
    libm::pow(24.0, -1.0 / 3.0) * libm::pow(n as f64, 13.0 / 4.0)
}

/// `|order| ≤ 24^(−1/3)·n^(13/4)`, exact form `|G|¹²·24⁴ ≤ n³⁹`.
pub fn within_wolf_bound(order: &BigUint, n: usize) -> bool {
    let lhs = order.to_f64().unwrap_or(f64::INFINITY);
    guarded_le(lhs, wolf_bound(n), || {
        order.pow(12) * big_pow(24, 4) <= big_pow(n as u64, 39)
    })
}

/// Cycle-count summary of `G₀`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleAudit {
    pub degree: usize,
    pub g0_count: u64,
    /// `(element order, cycle count) → number of elements`.
    pub histogram: BTreeMap<(u64, usize), u64>,
    pub max_cycle_count: usize,
    /// `c(g) ≤ 5n/9` for every `g ∈ G₀`; audited on primitive groups of
    /// prime-power degree.
    pub five_ninths: Verdict,
    /// `c(g) ≤ n/2`, audited additionally when `n` is a power of 2.
    pub half: Verdict,
}

pub fn cycle_bound_audit(g: &PermGroup, limits: &Limits) -> Result<CycleAudit> {
    let n = g.degree();
    let mut histogram = BTreeMap::new();
    let mut g0_count = 0u64;
    let mut max_cycle_count = 0;
    for x in g.odd_prime_order_elements(limits.elem_cap)? {
        let c = x.cycle_count();
        *histogram.entry((x.order(), c)).or_insert(0u64) += 1;
        g0_count += 1;
        max_cycle_count = max_cycle_count.max(c);
    }
    let applies = is_prime_power(n) && is_primitive(g)?;
    let five_ninths = if applies {
        Verdict::from_bool(9 * max_cycle_count <= 5 * n)
    } else {
        Verdict::NotApplicable
    };
    let half = if applies && n.is_power_of_two() {
        Verdict::from_bool(2 * max_cycle_count <= n)
    } else {
        Verdict::NotApplicable
    };
    Ok(CycleAudit {
        degree: n,
        g0_count,
        histogram,
        max_cycle_count,
        five_ninths,
        half,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct WolfAudit {
    pub bound: f64,
    pub holds: Verdict,
}

/// Compares `|G|` against [`wolf_bound`]; only primitive groups are audited.
pub fn wolf_bound_audit(g: &PermGroup) -> Result<WolfAudit> {
    let bound = wolf_bound(g.degree());
    let holds = if is_primitive(g)? {
        Verdict::from_bool(within_wolf_bound(g.order(), g.degree()))
    } else {
        Verdict::NotApplicable
    };
    Ok(WolfAudit { bound, holds })
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundsReport {
    pub degree: usize,
    pub group_order: BigUint,
    pub wolf: WolfAudit,
    pub g0_count: u64,
    pub max_cycle_count: usize,
    /// `(numerator, denominator)`: `5n/9`, or `n/2` at 2-power degrees.
    pub cycle_bound: (u64, u64),
    pub cycles: CycleAudit,
    /// `Σ_{g∈G₀} 2^{c(g)}`.
    pub s_count: BigUint,
    pub threshold_2n: BigUint,
    pub threshold_half: BigUint,
    /// `s ≤ 24^(−1/3)·2^{5n/9}·n^{13/4}`, audited on primitive groups.
    pub s_count_bound: Verdict,
    pub verdict_two_group_exists: bool,
    pub verdict_nice_by_counting: bool,
}

/// `s ≤ 24^(−1/3)·2^{5n/9}·n^{13/4}`, exact form `s³⁶·24¹² ≤ 2^{20n}·n¹¹⁷`.
pub fn within_s_count_bound(s: &BigUint, n: usize) -> bool {
    let log_lhs = log2_big(s);
    let log_rhs =
        -libm::log2(24.0) / 3.0 + 5.0 * n as f64 / 9.0 + 13.0 / 4.0 * libm::log2(n as f64);
    guarded_le(log_lhs, log_rhs, || {
        s.pow(36) * big_pow(24, 12) <= (BigUint::from(1u32) << (20 * n)) * big_pow(n as u64, 117)
    })
}

fn log2_big(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    let shift = bits.saturating_sub(64);
    let top = (x >> shift).to_f64().unwrap();
    libm::log2(top) + shift as f64
}

/// Exact `|𝒮|` together with every audit and verdict derived from it.
pub fn stabilized_pair_count(g: &PermGroup, limits: &Limits) -> Result<BoundsReport> {
    let n = g.degree();
    limits.check_degree(n)?;
    let mut s_count = BigUint::zero();
    for x in g.odd_prime_order_elements(limits.elem_cap)? {
        s_count += BigUint::from(1u32) << x.cycle_count();
    }
    let cycles = cycle_bound_audit(g, limits)?;
    let wolf = wolf_bound_audit(g)?;
    let primitive = is_primitive(g)?;
    let s_count_bound = if primitive {
        Verdict::from_bool(within_s_count_bound(&s_count, n))
    } else {
        Verdict::NotApplicable
    };
    let threshold_2n = BigUint::from(1u32) << n;
    let threshold_half = BigUint::from(1u32) << n.saturating_sub(1);
    let verdict_two_group_exists = s_count < threshold_2n;
    let verdict_nice_by_counting = s_count < threshold_half && n > 9;
    let cycle_bound = if n.is_power_of_two() {
        (n as u64, 2)
    } else {
        (5 * n as u64, 9)
    };
    Ok(BoundsReport {
        degree: n,
        group_order: g.order().clone(),
        wolf,
        g0_count: cycles.g0_count,
        max_cycle_count: cycles.max_cycle_count,
        cycle_bound,
        cycles,
        s_count,
        threshold_2n,
        threshold_half,
        s_count_bound,
        verdict_two_group_exists,
        verdict_nice_by_counting,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CountingNiceness {
    pub report: BoundsReport,
    /// A subset with 2-group stabilizer, when one was asked for and found.
    pub witness: Option<PointSet>,
}

/// Counting verdicts, plus a witness subset whose stabilizer is a 2-group
/// whenever the count guarantees one. Degrees up to 24 use the hit bitmap;
/// larger ones try `sample_budget` seeded random subsets.
pub fn counting_niceness(
    g: &PermGroup,
    limits: &Limits,
    sample_budget: u64,
    seed: u64,
) -> Result<CountingNiceness> {
    let report = stabilized_pair_count(g, limits)?;
    let mut witness = None;
    if report.verdict_two_group_exists {
        if g.degree() <= crate::census::BITMAP_MAX_DEGREE {
            let bitmap = crate::census::g0_hit_bitmap(g, limits)?;
            witness = bitmap.first_unmarked();
        } else {
            witness = crate::census::sampled_subsets(g.degree(), seed, 0..sample_budget)
                .find(|&set| g.set_stabilizer(set).is_2_group());
        }
    }
    Ok(CountingNiceness { report, witness })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalyticRow {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct AnalyticRanges {
    /// Inclusive range over which the threshold inequality must hold.
    pub threshold: (usize, usize),
    /// The inequality must fail somewhere in `2..threshold.0`.
    pub threshold_fails_below: bool,
    /// Inclusive range of `n` for the binomial lemma.
    pub pascal: (usize, usize),
    /// Primes `p` for the count of 3-subsets of `AGL(1,p)` fixed by an element of order 3.
    pub frobenius_primes: Vec<u32>,
}

impl Default for AnalyticRanges {
    fn default() -> Self {
        AnalyticRanges {
            threshold: (49, 10_000),
            threshold_fails_below: true,
            pascal: (9, 64),
            frobenius_primes: alloc::vec![7, 13, 19, 11],
        }
    }
}

/// `(13/4)·log₂n − (1/3)·log₂24 < (4/9)·n − 1`, exact form
/// `n¹¹⁷·2³⁶ < 24¹²·2^{16n}`.
pub fn threshold_holds(n: usize) -> bool {
    let lhs = 13.0 / 4.0 * libm::log2(n as f64) - libm::log2(24.0) / 3.0;
    let rhs = 4.0 * n as f64 / 9.0 - 1.0;
    if (lhs - rhs).abs() <= GUARD_BAND * rhs.abs().max(1.0) {
        big_pow(n as u64, 117) << 36usize < big_pow(24, 12) << (16 * n)
    } else {
        lhs < rhs
    }
}

fn binomial(n: u64, k: u64) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// First `(n, r, s)` with `C(n,r) + C(n,s) > 2^{n−1}`, if any.
pub fn pascal_counterexample(lo: usize, hi: usize) -> Option<(usize, usize, usize)> {
    for n in lo..=hi {
        let half = 1u128 << (n - 1);
        for r in 1..n {
            for s in r..n {
                if binomial(n as u64, r as u64) + binomial(n as u64, s as u64) > half {
                    return Some((n, r, s));
                }
            }
        }
    }
    None
}

/// Number of 3-subsets stabilized by some element of order 3 in `g`.
pub fn three_subsets_fixed_by_order_three(g: &PermGroup, limits: &Limits) -> Result<u64> {
    let mut hit = BTreeSet::new();
    for x in g.elements(limits.elem_cap)?.filter(|x| x.order() == 3) {
        for set in k_subsets(g.degree(), 3) {
            if x.stabilizes(set) {
                hit.insert(set.0);
            }
        }
    }
    Ok(hit.len() as u64)
}

/// Runs every closed-form check and returns one row per claim.
pub fn analytic_checks(ranges: &AnalyticRanges, limits: &Limits) -> Result<Vec<AnalyticRow>> {
    let mut rows = Vec::new();
    let (lo, hi) = ranges.threshold;
    let bad: Vec<usize> = (lo..=hi).filter(|&n| !threshold_holds(n)).collect();
    rows.push(AnalyticRow {
        name: format!("threshold inequality for {lo} <= n <= {hi}"),
        passed: bad.is_empty(),
        detail: match bad.first() {
            Some(n) => format!("fails at n = {n}"),
            None => format!("{} values checked", hi + 1 - lo),
        },
    });
    if ranges.threshold_fails_below {
        let below = (2..lo).rev().find(|&n| !threshold_holds(n));
        rows.push(AnalyticRow {
            name: format!("threshold inequality fails for some n < {lo}"),
            passed: below.is_some(),
            detail: match below {
                Some(n) => format!("largest failing n = {n}"),
                None => "holds everywhere below".into(),
            },
        });
    }
    let (plo, phi) = ranges.pascal;
    let counter = pascal_counterexample(plo, phi);
    rows.push(AnalyticRow {
        name: format!("C(n,r) + C(n,s) <= 2^(n-1) for {plo} <= n <= {phi}"),
        passed: counter.is_none(),
        detail: match counter {
            Some((n, r, s)) => format!("fails at n = {n}, r = {r}, s = {s}"),
            None => "all r <= s checked".into(),
        },
    });
    for &p in &ranges.frobenius_primes {
        if !is_prime(p as u64) {
            continue;
        }
        let g = crate::catalog::affine_linear(1, p, crate::catalog::AffineVariant::General)?;
        let count = three_subsets_fixed_by_order_three(&g, limits)?;
        let total = binomial(p as u64, 3) as u64;
        let (expected, passed) = if (p - 1) % 3 == 0 {
            let e = (p as u64) * (p as u64 - 1) / 3;
            (e, count == e && count < total)
        } else {
            (0, count == 0)
        };
        rows.push(AnalyticRow {
            name: format!("AGL(1,{p}): 3-subsets fixed by an element of order 3"),
            passed,
            detail: format!("{count} found, {expected} expected, C({p},3) = {total}"),
        });
    }
    Ok(rows)
}
