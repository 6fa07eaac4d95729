//! Power-set surveys: which subsets some element of `G₀` stabilizes, and how
//! setwise stabilizers look size by size.
//!
//! Every survey can be split into index ranges and merged back, and the
//! merged result does not depend on how the range was split.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use num_bigint::BigUint;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::perm::PointSet;
use crate::{Error, Limits, PermGroup, Permutation, Result};

/// Largest degree with a full `2ⁿ`-bit hit bitmap (2 MiB).
pub const BITMAP_MAX_DEGREE: usize = 24;
/// Largest degree for an exhaustive structure census.
pub const EXHAUSTIVE_MAX_DEGREE: usize = 16;

/// One bit per subset of `{0, …, n−1}`, indexed by characteristic vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HitBitmap {
    degree: usize,
    words: Vec<u64>,
}

impl HitBitmap {
    pub fn new(degree: usize) -> Result<Self> {
        if degree > BITMAP_MAX_DEGREE {
            return Err(Error::DegreeCapExceeded {
                degree,
                cap: BITMAP_MAX_DEGREE,
            });
        }
        Ok(HitBitmap {
            degree,
            words: vec![0; (1usize << degree).div_ceil(64)],
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Marks every subset stabilized by `g`.
    pub fn mark_element(&mut self, g: &Permutation) {
        for set in g.invariant_subsets() {
            let i = set.0 as usize;
            self.words[i / 64] |= 1 << (i % 64);
        }
    }

    pub fn contains(&self, set: PointSet) -> bool {
        let i = set.0 as usize;
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// Bitwise OR of two partial bitmaps.
    pub fn merge(&mut self, other: &HitBitmap) {
        assert_eq!(self.degree, other.degree);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn count(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Marked subsets of each size `0..=n`.
    pub fn count_by_size(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.degree + 1];
        for s in 0..1u64 << self.degree {
            if self.contains(PointSet(s)) {
                out[s.count_ones() as usize] += 1;
            }
        }
        out
    }

    /// First unmarked subset in characteristic-vector order.
    pub fn first_unmarked(&self) -> Option<PointSet> {
        (0..1u64 << self.degree)
            .map(PointSet)
            .find(|&s| !self.contains(s))
    }
}

/// The elements of odd prime order, in enumeration order.
pub fn g0_elements(g: &PermGroup, limits: &Limits) -> Result<Vec<Permutation>> {
    Ok(g.odd_prime_order_elements(limits.elem_cap)?.collect())
}

/// Bitmap of subsets stabilized by at least one element of `G₀`. A subset is
/// unmarked exactly when its stabilizer is a 2-group.
pub fn g0_hit_bitmap(g: &PermGroup, limits: &Limits) -> Result<HitBitmap> {
    let mut bitmap = HitBitmap::new(g.degree())?;
    for x in g.odd_prime_order_elements(limits.elem_cap)? {
        bitmap.mark_element(&x);
    }
    Ok(bitmap)
}

/// Unions of cycles of `g` with exactly `k` points.
pub fn invariant_subsets_of_size(g: &Permutation, k: usize) -> Vec<PointSet> {
    let cycles: Vec<PointSet> = g
        .cycles()
        .iter()
        .map(|c| c.iter().copied().collect())
        .collect();
    let mut out = Vec::new();
    fn walk(cycles: &[PointSet], i: usize, acc: PointSet, left: usize, out: &mut Vec<PointSet>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        if i == cycles.len() {
            return;
        }
        let c = cycles[i];
        if c.len() <= left {
            walk(cycles, i + 1, acc.union(c), left - c.len(), out);
        }
        walk(cycles, i + 1, acc, left, out);
    }
    walk(&cycles, 0, PointSet::EMPTY, k, &mut out);
    out
}

/// Number of `k`-subsets stabilized by some element of `G₀`, for each `k` in
/// `sizes`. Works at any degree.
pub fn g0_hits_by_size(
    g: &PermGroup,
    sizes: &[usize],
    limits: &Limits,
) -> Result<Vec<(usize, u64)>> {
    let g0 = g0_elements(g, limits)?;
    Ok(sizes
        .iter()
        .map(|&k| {
            let mut hit = BTreeSet::new();
            for x in &g0 {
                hit.extend(invariant_subsets_of_size(x, k).into_iter().map(|s| s.0));
            }
            (k, hit.len() as u64)
        })
        .collect())
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum CensusMode {
    /// Every subset, `n ≤ 16`.
    Exhaustive,
    /// `count` seeded uniform subsets, at any degree.
    Sample { count: u64, seed: u64 },
}

impl CensusMode {
    fn len(self, degree: usize) -> u64 {
        match self {
            CensusMode::Exhaustive => 1u64 << degree,
            CensusMode::Sample { count, .. } => count,
        }
    }
}

/// Uniform random subsets; subset `i` depends only on `seed` and `i`.
pub fn sampled_subsets(
    degree: usize,
    seed: u64,
    range: Range<u64>,
) -> impl Iterator<Item = PointSet> {
    let mask = PointSet::full(degree).0;
    range.map(move |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i);
        PointSet(rng.next_u64() & mask)
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRow {
    pub size: usize,
    /// `C(n, size)`.
    pub total: u64,
    /// Subsets of this size actually examined.
    pub examined: u64,
    /// Examined subsets stabilized by some element of `G₀`; `None` when no
    /// hit bitmap was available.
    pub hit_by_g0: Option<u64>,
    pub two_group: u64,
    pub required: u64,
    pub nilpotent: u64,
    pub min_stab_order: Option<BigUint>,
    pub max_stab_order: Option<BigUint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusTable {
    pub degree: usize,
    pub mode: CensusMode,
    pub rows: Vec<CensusRow>,
}

fn binomial(n: usize, k: usize) -> u64 {
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

impl CensusTable {
    pub fn empty(degree: usize, mode: CensusMode, with_hits: bool) -> Self {
        let rows = (0..=degree)
            .map(|k| CensusRow {
                size: k,
                total: binomial(degree, k),
                examined: 0,
                hit_by_g0: with_hits.then_some(0),
                two_group: 0,
                required: 0,
                nilpotent: 0,
                min_stab_order: None,
                max_stab_order: None,
            })
            .collect();
        CensusTable { degree, mode, rows }
    }

    /// Adds the counts of a census over a disjoint index range.
    pub fn merge(&mut self, other: &CensusTable) {
        assert_eq!((self.degree, self.mode), (other.degree, other.mode));
        for (a, b) in self.rows.iter_mut().zip(&other.rows) {
            a.examined += b.examined;
            a.hit_by_g0 = match (a.hit_by_g0, b.hit_by_g0) {
                (Some(x), Some(y)) => Some(x + y),
                _ => None,
            };
            a.two_group += b.two_group;
            a.required += b.required;
            a.nilpotent += b.nilpotent;
            a.min_stab_order = min_opt(a.min_stab_order.take(), b.min_stab_order.clone(), true);
            a.max_stab_order = min_opt(a.max_stab_order.take(), b.max_stab_order.clone(), false);
        }
    }

    pub fn row(&self, size: usize) -> &CensusRow {
        &self.rows[size]
    }
}

fn min_opt(a: Option<BigUint>, b: Option<BigUint>, min: bool) -> Option<BigUint> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if (x <= y) == min { x } else { y }),
        (x, None) => x,
        (None, y) => y,
    }
}

fn check_mode(g: &PermGroup, mode: CensusMode) -> Result<()> {
    let n = g.degree();
    let cap = match mode {
        CensusMode::Exhaustive => EXHAUSTIVE_MAX_DEGREE,
        CensusMode::Sample { .. } => crate::perm::MAX_DEGREE,
    };
    if n > cap {
        return Err(Error::DegreeCapExceeded { degree: n, cap });
    }
    Ok(())
}

/// Census over the index range `range` of the mode's subset sequence:
/// characteristic vectors `0…2ⁿ−1`, or sample indices.
pub fn structure_census_range(
    g: &PermGroup,
    mode: CensusMode,
    range: Range<u64>,
    hits: Option<&HitBitmap>,
) -> Result<CensusTable> {
    check_mode(g, mode)?;
    let n = g.degree();
    let end = range.end.min(mode.len(n));
    let range = range.start.min(end)..end;
    let mut table = CensusTable::empty(n, mode, hits.is_some());
    let subsets: alloc::boxed::Box<dyn Iterator<Item = PointSet>> = match mode {
        CensusMode::Exhaustive => alloc::boxed::Box::new(range.map(PointSet)),
        CensusMode::Sample { seed, .. } => alloc::boxed::Box::new(sampled_subsets(n, seed, range)),
    };
    for set in subsets {
        let s = g.set_stabilizer(set);
        let row = &mut table.rows[set.len()];
        row.examined += 1;
        if let (Some(h), Some(c)) = (hits, row.hit_by_g0.as_mut()) {
            *c += h.contains(set) as u64;
        }
        row.two_group += s.is_2_group() as u64;
        row.required += crate::constructor::has_required_structure(&s) as u64;
        row.nilpotent += s.is_nilpotent()? as u64;
        let o = s.order().clone();
        row.min_stab_order = min_opt(row.min_stab_order.take(), Some(o.clone()), true);
        row.max_stab_order = min_opt(row.max_stab_order.take(), Some(o), false);
    }
    Ok(table)
}

/// Full census. The `G₀` hit column is filled when the degree fits the
/// bitmap and `|G|` is within the enumeration cap.
pub fn structure_census(g: &PermGroup, mode: CensusMode, limits: &Limits) -> Result<CensusTable> {
    check_mode(g, mode)?;
    let bitmap = match g0_hit_bitmap(g, limits) {
        Ok(b) => Some(b),
        Err(Error::CapExceeded { .. } | Error::DegreeCapExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    structure_census_range(g, mode, 0..mode.len(g.degree()), bitmap.as_ref())
}

/// Splits `0..len` into `parts` contiguous ranges of near-equal length.
pub fn split_range(len: u64, parts: usize) -> Vec<Range<u64>> {
    let parts = parts.max(1) as u64;
    (0..parts)
        .map(|i| len * i / parts..len * (i + 1) / parts)
        .filter(|r| !r.is_empty())
        .collect()
}
