//! Construction of subsets whose setwise stabilizer `S` has `O²(S)` a
//! (possibly trivial) elementary abelian 3-group.
//!
//! [`nice_pair`] recurses through orbits and maximal block systems and
//! returns two such subsets `Δ₁, Δ₂` with `|Δ₁| < |Δ₂| ≤ n/2`. Every set it
//! hands back has been re-checked against the input group.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::One;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::blocks::{is_primitive, primitive_quotient, PrimitiveTower};
use crate::perm::{k_subsets, PointSet};
use crate::speclang::GroupExpr;
use crate::{Error, Limits, PermGroup, Result, StructureReport};

/// Degrees up to which [`regular_set_search`] enumerates exhaustively.
pub const EXHAUSTIVE_SEARCH_DEGREE: usize = 20;

/// Structure report of `s`; see [`PermGroup::structure_report`].
pub fn structure_report(s: &PermGroup, limits: &Limits) -> Result<StructureReport> {
    s.structure_report(limits)
}

/// Cheap test for the target structure, used while scanning. The order must
/// be of the form `2ᵃ3ᵇ` before `O²` is computed at all.
pub(crate) fn has_required_structure(s: &PermGroup) -> bool {
    if s.is_2_group() {
        return true;
    }
    let mut o = s.order().clone();
    for p in [2u32, 3] {
        let p = BigUint::from(p);
        while (&o % &p).bits() == 0 {
            o /= &p;
        }
    }
    if !o.is_one() {
        return false;
    }
    let o2 = s.o2_residual();
    o2.is_trivial() || o2.is_elementary_abelian(3)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NicePair {
    pub delta1: PointSet,
    pub delta2: PointSet,
    pub report1: StructureReport,
    pub report2: StructureReport,
}

/// Which piece of the block-level pair goes into a block.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Piece {
    D1,
    D2,
    /// The complement of `Δ₁` inside the block.
    Comp1,
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Piece::D1 => "D1",
            Piece::D2 => "D2",
            Piece::Comp1 => "COMP1",
        })
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum StepCase {
    IntransitiveCombine,
    /// Exhaustive scan on a small transitive group.
    PrimitiveBase,
    /// Exhaustive scan on a primitive group above the small-scan cap.
    PrimitiveSearch,
    /// Block recursion with this many blocks.
    Wreath(usize),
}

impl fmt::Display for StepCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepCase::IntransitiveCombine => f.write_str("intransitive-combine"),
            StepCase::PrimitiveBase => f.write_str("primitive-base"),
            StepCase::PrimitiveSearch => f.write_str("primitive-search"),
            StepCase::Wreath(n) => write!(f, "wreath-{n}"),
        }
    }
}

/// One node of the recursion, recorded in pre-order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub depth: usize,
    pub case: StepCase,
    pub degree: usize,
    pub group_order: BigUint,
    /// Orbit sizes for the intransitive case, `[block size; n]` for the block
    /// recursion, `[degree]` otherwise.
    pub part_sizes: Vec<usize>,
    /// Piece per block index; empty unless the case is `Wreath`.
    pub pattern1: Vec<Piece>,
    pub pattern2: Vec<Piece>,
    /// Block positions used for the `n = 9` renumbering.
    pub triple: Option<PointSet>,
    pub sizes: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub group_spec: String,
    pub degree: usize,
    pub chosen_delta: PointSet,
    pub report: StructureReport,
    pub pair: Option<NicePair>,
    pub trace: Vec<TraceStep>,
}

#[derive(Clone, Debug)]
pub struct ConstructorOptions {
    pub limits: Limits,
    /// Transitive groups up to this degree are scanned directly.
    pub scan_cap: usize,
    /// Use the block recursion for every imprimitive group, ignoring `scan_cap`.
    pub force_recursion: bool,
    pub seed: u64,
    /// Subsets examined by each randomized regular-set search.
    pub search_budget: u64,
}

impl Default for ConstructorOptions {
    fn default() -> Self {
        ConstructorOptions {
            limits: Limits::default(),
            scan_cap: 12,
            force_recursion: false,
            seed: 0,
            search_budget: 200_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RegularSetQuery {
    /// Skip sets of size exactly `degree/2`.
    pub forbid_half: bool,
    /// Number of sets wanted, one per size.
    pub want: usize,
    /// Sizes to try, in order. Defaults to `0..=degree/2`.
    pub sizes: Option<Vec<usize>>,
    /// Maximum number of subsets examined.
    pub budget: u64,
    pub seed: u64,
}

impl Default for RegularSetQuery {
    fn default() -> Self {
        RegularSetQuery {
            forbid_half: false,
            want: 1,
            sizes: None,
            budget: 200_000,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularSetScan {
    pub found: Vec<PointSet>,
    pub examined: u64,
    pub exhaustive: bool,
}

/// Scans for subsets with trivial setwise stabilizer, at most one per size.
pub fn regular_set_scan(w: &PermGroup, query: &RegularSetQuery) -> RegularSetScan {
    let n = w.degree();
    let mut sizes: Vec<usize> = query.sizes.clone().unwrap_or_else(|| (0..=n / 2).collect());
    sizes.retain(|&k| k <= n && !(query.forbid_half && 2 * k == n));
    let exhaustive = n <= EXHAUSTIVE_SEARCH_DEGREE;
    let mut found = Vec::new();
    let mut examined = 0u64;
    let per_size = (query.budget / sizes.len().max(1) as u64).max(1);
    'sizes: for &k in &sizes {
        if found.len() >= query.want {
            break;
        }
        if exhaustive {
            for set in k_subsets(n, k) {
                if examined >= query.budget {
                    break 'sizes;
                }
                examined += 1;
                if w.set_stabilizer(set).is_trivial() {
                    found.push(set);
                    continue 'sizes;
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(query.seed);
            rng.set_stream(k as u64);
            for _ in 0..per_size {
                if examined >= query.budget {
                    break 'sizes;
                }
                examined += 1;
                let set = random_subset(&mut rng, n, k);
                if w.set_stabilizer(set).is_trivial() {
                    found.push(set);
                    continue 'sizes;
                }
            }
        }
    }
    RegularSetScan {
        found,
        examined,
        exhaustive,
    }
}

/// Uniform-ish `k`-subset of `{0, …, n−1}` by a partial Fisher–Yates shuffle.
pub(crate) fn random_subset(rng: &mut ChaCha8Rng, n: usize, k: usize) -> PointSet {
    let mut pts: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = i + (rng.next_u64() % (n - i) as u64) as usize;
        pts.swap(i, j);
    }
    PointSet::from_points(pts[..k].iter().copied())
}

/// [`regular_set_scan`] that fails unless `query.want` sets were found.
pub fn regular_set_search(w: &PermGroup, query: &RegularSetQuery) -> Result<Vec<PointSet>> {
    if w.degree() < 2 || !w.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let scan = regular_set_scan(w, query);
    if scan.found.len() < query.want {
        return Err(Error::NotFound(format!(
            "{} of {} regular sets after examining {} subsets",
            scan.found.len(),
            query.want,
            scan.examined
        )));
    }
    Ok(scan.found)
}

/// First triple, in lexicographic order, with trivial pointwise stabilizer.
pub fn pointwise_free_triple(w: &PermGroup) -> Result<PointSet> {
    if w.degree() < 3 {
        return Err(Error::UnsupportedParams(format!(
            "degree {} below 3",
            w.degree()
        )));
    }
    for set in k_subsets(w.degree(), 3) {
        if w.pointwise_stabilizer(&set.to_vec())?.is_trivial() {
            return Ok(set);
        }
    }
    Err(Error::NotFound(
        "no triple with trivial pointwise stabilizer".into(),
    ))
}

/// First subset in (size, lexicographic) order with the target structure.
fn first_required(g: &PermGroup, from: usize) -> Option<PointSet> {
    let n = g.degree();
    (from..=n / 2)
        .find_map(|k| k_subsets(n, k).find(|&set| has_required_structure(&g.set_stabilizer(set))))
}

/// Nice pair by exhaustive scan: `Δ₁` is the first subset with the target
/// structure, `Δ₂` the first such subset of larger size.
pub fn primitive_base_pair(g: &PermGroup, limits: &Limits) -> Result<NicePair> {
    if g.is_trivial() {
        return Err(Error::UnsupportedParams("trivial group".into()));
    }
    let missing = || Error::NotFound(format!("no nice pair in a group of order {}", g.order()));
    let d1 = first_required(g, 0).ok_or_else(missing)?;
    let d2 = first_required(g, d1.len() + 1).ok_or_else(missing)?;
    verified_pair(g, d1, d2, limits)
}

/// Recomputes both stabilizers in `g` and checks every pair invariant.
fn verified_pair(g: &PermGroup, d1: PointSet, d2: PointSet, limits: &Limits) -> Result<NicePair> {
    let n = g.degree();
    if !(d1.len() < d2.len() && 2 * d2.len() <= n) {
        return Err(Error::VerificationFailed(format!(
            "sizes {} and {} on {} points",
            d1.len(),
            d2.len(),
            n
        )));
    }
    let report1 = g.set_stabilizer(d1).structure_report(limits)?;
    let report2 = g.set_stabilizer(d2).structure_report(limits)?;
    for (d, r) in [(d1, &report1), (d2, &report2)] {
        if !r.required_structure {
            return Err(Error::VerificationFailed(format!(
                "stabilizer of {d:?} has O² of order {}",
                r.o2_order
            )));
        }
    }
    Ok(NicePair {
        delta1: d1,
        delta2: d2,
        report1,
        report2,
    })
}

/// `⋃ wᵢ(Xᵢ)` where `Xᵢ ⊆ Ω₁` is chosen by `assignment[i]` from `pair`.
///
/// `pair` lives on the constituent's points `0…b−1`, that is, on block 0 in
/// increasing order.
pub fn wreath_tuple_assembly(
    tower: &PrimitiveTower,
    assignment: &[Piece],
    pair: &NicePair,
) -> PointSet {
    let block0 = tower.system.block(0);
    let b = block0.len();
    let lift = |x: PointSet| PointSet::from_points(x.iter().map(|i| block0[i]));
    let d1 = lift(pair.delta1);
    let d2 = lift(pair.delta2);
    let c1 = lift(pair.delta1.complement(b));
    let mut out = PointSet::EMPTY;
    for (w, piece) in tower.transversals.iter().zip(assignment) {
        let x = match piece {
            Piece::D1 => d1,
            Piece::D2 => d2,
            Piece::Comp1 => c1,
        };
        out = out.union(w.image_set(x));
    }
    out
}

/// Position-indexed tuples for `n ≤ 9` blocks.
fn small_tuples(n: usize) -> Option<(Vec<Piece>, Vec<Piece>)> {
    use Piece::*;
    let seven = (
        vec![D2, D2, Comp1, D1, D1, D1, D1],
        vec![D1, D1, Comp1, D2, D2, D2, D2],
    );
    let t = match n {
        2 => (vec![D1, D1], vec![D2, D2]),
        3 => (vec![D1, D1, D2], vec![D1, D2, D2]),
        4 => (vec![D1, D1, Comp1, D2], vec![D1, D2, Comp1, D2]),
        5 => (vec![D1, D1, D1, D2, D2], vec![D1, D1, D2, D2, D2]),
        7 => seven,
        8 | 9 => {
            let (mut a, mut b) = seven;
            for _ in 7..n {
                a.push(D1);
                b.push(D2);
            }
            (a, b)
        }
        _ => return None,
    };
    Some(t)
}

/// Two subsets `Δ₁, Δ₂` with `|Δ₁| < |Δ₂| ≤ n/2` whose stabilizers have the
/// target structure, together with the recursion trace.
pub fn nice_pair(g: &PermGroup, opts: &ConstructorOptions) -> Result<(NicePair, Vec<TraceStep>)> {
    opts.limits.check_degree(g.degree())?;
    if !g.is_solvable()? {
        return Err(Error::NotSolvable);
    }
    if g.is_trivial() {
        return Err(Error::UnsupportedParams("trivial group".into()));
    }
    let mut trace = Vec::new();
    let pair = solve(g, opts, 0, &mut trace)?;
    Ok((pair, trace))
}

fn solve(
    g: &PermGroup,
    opts: &ConstructorOptions,
    depth: usize,
    trace: &mut Vec<TraceStep>,
) -> Result<NicePair> {
    let n = g.degree();
    let slot = trace.len();
    trace.push(TraceStep {
        depth,
        case: StepCase::PrimitiveBase,
        degree: n,
        group_order: g.order().clone(),
        part_sizes: vec![n],
        pattern1: Vec::new(),
        pattern2: Vec::new(),
        triple: None,
        sizes: (0, 0),
    });
    let pair = if !g.is_transitive() {
        trace[slot].case = StepCase::IntransitiveCombine;
        intransitive(g, opts, depth, trace, slot)?
    } else {
        let small = n <= opts.scan_cap && !opts.force_recursion;
        if small {
            primitive_base_pair(g, &opts.limits)?
        } else if is_primitive(g)? {
            trace[slot].case = StepCase::PrimitiveSearch;
            primitive_base_pair(g, &opts.limits)?
        } else {
            imprimitive(g, opts, depth, trace, slot)?
        }
    };
    trace[slot].sizes = (pair.delta1.len(), pair.delta2.len());
    Ok(pair)
}

fn intransitive(
    g: &PermGroup,
    opts: &ConstructorOptions,
    depth: usize,
    trace: &mut Vec<TraceStep>,
    slot: usize,
) -> Result<NicePair> {
    let orbits = g.orbits();
    trace[slot].part_sizes = orbits.iter().map(Vec::len).collect();
    let mut parts: Vec<(PointSet, PointSet)> = Vec::with_capacity(orbits.len());
    for orbit in &orbits {
        let lift = |x: PointSet| PointSet::from_points(x.iter().map(|i| orbit[i]));
        let h = g.restrict_to(orbit)?;
        if h.is_trivial() {
            parts.push((PointSet::EMPTY, PointSet::from_points([orbit[0]])));
        } else {
            let sub = solve(&h, opts, depth + 1, trace)?;
            parts.push((lift(sub.delta1), lift(sub.delta2)));
        }
    }
    // the second set needs an orbit where |Δ₂| ≤ |orbit|/2, that is, one that is not a fixed point
    let lead = orbits
        .iter()
        .position(|o| o.len() > 1)
        .ok_or(Error::VerificationFailed("no moved point".into()))?;
    let d1 = parts.iter().fold(PointSet::EMPTY, |acc, p| acc.union(p.0));
    let d2 = parts
        .iter()
        .enumerate()
        .fold(PointSet::EMPTY, |acc, (i, p)| {
            acc.union(if i == lead { p.1 } else { p.0 })
        });
    verified_pair(g, d1, d2, &opts.limits)
}

fn imprimitive(
    g: &PermGroup,
    opts: &ConstructorOptions,
    depth: usize,
    trace: &mut Vec<TraceStep>,
    slot: usize,
) -> Result<NicePair> {
    let tower = primitive_quotient(g)?;
    let n = tower.num_blocks();
    let b = tower.system.block_size();
    trace[slot].case = StepCase::Wreath(n);
    trace[slot].part_sizes = vec![b; n];
    let inner = solve(&tower.constituent, opts, depth + 1, trace)?;

    let (pattern1, pattern2) = if n > 9 {
        let query = RegularSetQuery {
            forbid_half: true,
            want: 1,
            sizes: Some((1..=n / 2).collect()),
            budget: opts.search_budget,
            seed: opts.seed,
        };
        let gamma = regular_set_search(&tower.top, &query)?[0];
        let gamma = if 2 * gamma.len() > n {
            gamma.complement(n)
        } else {
            gamma
        };
        let p1: Vec<Piece> = (0..n)
            .map(|i| {
                if gamma.contains(i) {
                    Piece::D2
                } else {
                    Piece::D1
                }
            })
            .collect();
        let p2: Vec<Piece> = (0..n)
            .map(|i| {
                if gamma.contains(i) {
                    Piece::D1
                } else {
                    Piece::D2
                }
            })
            .collect();
        (p1, p2)
    } else {
        let (t1, t2) = small_tuples(n).ok_or_else(|| {
            Error::UnsupportedParams(format!("no primitive solvable action on {n} blocks"))
        })?;
        if n == 4 {
            let (a, c) = (inner.delta1.len(), inner.delta2.len());
            if !(a < c && c < b - a) {
                return Err(Error::VerificationFailed(format!(
                    "block sizes {a}, {c} not separated in {b}"
                )));
            }
        }
        // position j of the tuple goes to block order[j]
        let order: Vec<usize> = if n == 9 {
            let triple = pointwise_free_triple(&tower.top)?;
            trace[slot].triple = Some(triple);
            triple.iter().chain(triple.complement(n).iter()).collect()
        } else {
            (0..n).collect()
        };
        let mut p1 = vec![Piece::D1; n];
        let mut p2 = vec![Piece::D1; n];
        for (j, &blk) in order.iter().enumerate() {
            p1[blk] = t1[j];
            p2[blk] = t2[j];
        }
        (p1, p2)
    };
    let d1 = wreath_tuple_assembly(&tower, &pattern1, &inner);
    let d2 = wreath_tuple_assembly(&tower, &pattern2, &inner);
    trace[slot].pattern1 = pattern1;
    trace[slot].pattern2 = pattern2;
    verified_pair(g, d1, d2, &opts.limits)
}

/// A single subset whose stabilizer has the target structure: `Δ₁` of
/// [`nice_pair`], or `∅` for a trivial group.
pub fn small_stabilizer_set(g: &PermGroup, opts: &ConstructorOptions) -> Result<Certificate> {
    opts.limits.check_degree(g.degree())?;
    if !g.is_solvable()? {
        return Err(Error::NotSolvable);
    }
    let group_spec = explicit_spec(g);
    if g.is_trivial() || g.degree() <= 1 {
        let report = g.structure_report(&opts.limits)?;
        return Ok(Certificate {
            group_spec,
            degree: g.degree(),
            chosen_delta: PointSet::EMPTY,
            report,
            pair: None,
            trace: Vec::new(),
        });
    }
    let (pair, trace) = nice_pair(g, opts)?;
    Ok(Certificate {
        group_spec,
        degree: g.degree(),
        chosen_delta: pair.delta1,
        report: pair.report1.clone(),
        pair: Some(pair),
        trace,
    })
}

/// `perm(n; …)` text listing the generators of `g`.
fn explicit_spec(g: &PermGroup) -> String {
    format!(
        "{}",
        GroupExpr::Explicit {
            degree: g.degree(),
            generators: g.generators().to_vec()
        }
    )
}
