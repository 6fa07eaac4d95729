//! Permutations of `{0, …, n−1}`, point sets, and cycle analysis.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// Largest supported degree. Point sets are stored as a single `u64`.
pub const MAX_DEGREE: usize = 64;

/// A subset of `{0, …, 63}` stored as a bitmask, bit `i` standing for point `i`.
#[derive(Copy, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet(pub u64);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    /// All points below `degree`.
    pub fn full(degree: usize) -> Self {
        debug_assert!(degree <= MAX_DEGREE);
        if degree == 64 {
            PointSet(u64::MAX)
        } else {
            PointSet((1u64 << degree) - 1)
        }
    }

    pub fn from_points<I: IntoIterator<Item = usize>>(points: I) -> Self {
        let mut s = 0u64;
        for p in points {
            debug_assert!(p < MAX_DEGREE);
            s |= 1 << p;
        }
        PointSet(s)
    }

    #[inline]
    pub fn contains(self, p: usize) -> bool {
        p < MAX_DEGREE && self.0 >> p & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, p: usize) {
        self.0 |= 1 << p;
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn complement(self, degree: usize) -> Self {
        PointSet(!self.0 & PointSet::full(degree).0)
    }

    pub fn union(self, other: Self) -> Self {
        PointSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        PointSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest point in the set.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Points in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        core::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let p = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(p)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

/// All `k`-subsets of `{0, …, n−1}` in lexicographic order of their sorted
/// point lists.
pub fn k_subsets(n: usize, k: usize) -> KSubsets {
    KSubsets {
        n,
        idx: (0..k).collect(),
        done: k > n,
    }
}

/// Iterator returned by [`k_subsets`].
pub struct KSubsets {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Iterator for KSubsets {
    type Item = PointSet;

    fn next(&mut self) -> Option<PointSet> {
        if self.done {
            return None;
        }
        let out = PointSet::from_points(self.idx.iter().copied());
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for PointSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        PointSet::from_points(iter)
    }
}

/// A bijection of `{0, …, n−1}`.
///
/// `compose(g, h)` maps `x` to `g(h(x))`; [`Permutation::then`] is the
/// left-to-right product used by the chain algorithms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= MAX_DEGREE, "degree {degree} exceeds {MAX_DEGREE}");
        Permutation {
            images: (0..degree as u8).collect(),
        }
    }

    /// Builds a permutation from its image list, checking bijectivity.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(Error::DegreeCapExceeded {
                degree: n,
                cap: MAX_DEGREE,
            });
        }
        let mut seen = 0u64;
        for &x in images {
            if x >= n {
                return Err(Error::PointOutOfRange {
                    point: x,
                    degree: n,
                });
            }
            if seen >> x & 1 == 1 {
                return Err(Error::InvalidPermutation(format!(
                    "point {x} appears twice"
                )));
            }
            seen |= 1 << x;
        }
        Ok(Permutation {
            images: images.iter().map(|&x| x as u8).collect(),
        })
    }

    /// Builds a permutation from disjoint cycles given as 0-based point lists.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        if degree > MAX_DEGREE {
            return Err(Error::DegreeCapExceeded {
                degree,
                cap: MAX_DEGREE,
            });
        }
        let mut images: Vec<usize> = (0..degree).collect();
        let mut seen = 0u64;
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(Error::PointOutOfRange { point: x, degree });
                }
                if seen >> x & 1 == 1 {
                    return Err(Error::InvalidPermutation(format!("point {x} repeated")));
                }
                seen |= 1 << x;
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Permutation::from_images(&images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&x| x as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| i == x as usize)
    }

    /// `x ↦ self(other(x))`. Panics on degree mismatch.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        other.then(self)
    }

    /// `x ↦ next(self(x))`: apply `self` first. Panics on degree mismatch.
    #[inline]
    pub fn then(&self, next: &Permutation) -> Permutation {
        assert_eq!(self.degree(), next.degree(), "degree mismatch");
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| next.images[x as usize])
                .collect(),
        }
    }

    pub fn checked_compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.compose(other))
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = alloc::vec![0u8; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    /// `k`-fold product; negative exponents use the inverse.
    pub fn pow(&self, k: i64) -> Permutation {
        let mut base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    /// `self⁻¹ · other⁻¹ · self · other` in left-to-right notation.
    pub fn commutator(&self, other: &Permutation) -> Permutation {
        self.inverse().then(&other.inverse()).then(self).then(other)
    }

    /// `other⁻¹ · self · other`, i.e. `self` conjugated by `other`.
    pub fn conjugate_by(&self, other: &Permutation) -> Permutation {
        other.inverse().then(self).then(other)
    }

    /// Disjoint cycles, each starting at its least point, ordered by that point.
    /// Fixed points appear as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = 0u64;
        let mut out = Vec::new();
        for start in 0..n {
            if seen >> start & 1 == 1 {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            loop {
                seen |= 1 << x;
                cycle.push(x);
                x = self.image(x);
                if x == start {
                    break;
                }
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_data(&self) -> CycleData {
        let cycles = self.cycles();
        let fixed_count = cycles.iter().filter(|c| c.len() == 1).count();
        let element_order = cycles.iter().fold(1u64, |acc, c| lcm(acc, c.len() as u64));
        CycleData {
            cycle_count: cycles.len(),
            fixed_count,
            element_order,
            cycles,
        }
    }

    /// Number of cycles, `c(g)`.
    pub fn cycle_count(&self) -> usize {
        let n = self.degree();
        let mut seen = 0u64;
        let mut count = 0;
        for start in 0..n {
            if seen >> start & 1 == 1 {
                continue;
            }
            count += 1;
            let mut x = start;
            while seen >> x & 1 == 0 {
                seen |= 1 << x;
                x = self.image(x);
            }
        }
        count
    }

    pub fn fixed_count(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i == x as usize)
            .count()
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &x)| i != x as usize)
            .map(|(i, _)| i)
    }

    pub fn image_set(&self, set: PointSet) -> PointSet {
        let mut out = 0u64;
        for p in set.iter() {
            out |= 1 << self.images[p];
        }
        PointSet(out)
    }

    /// True iff `self(set) = set`.
    pub fn stabilizes(&self, set: PointSet) -> bool {
        set.iter().all(|p| set.contains(self.images[p] as usize))
    }

    /// Every union of cycles of `self`, i.e. all `2^{c(g)}` subsets that
    /// `self` stabilizes. Subsets come in binary-counter order over the
    /// cycle indices of [`Permutation::cycles`].
    pub fn invariant_subsets(&self) -> InvariantSubsets {
        let masks: Vec<u64> = self
            .cycles()
            .iter()
            .map(|c| PointSet::from_points(c.iter().copied()).0)
            .collect();
        let total = 1u128 << masks.len();
        InvariantSubsets {
            masks,
            next: 0,
            total,
        }
    }

    /// Restriction to the points of `domain`, re-indexed in increasing order.
    /// `domain` must be invariant under `self`.
    pub fn restrict(&self, domain: &[usize]) -> Permutation {
        let mut index = [u8::MAX; MAX_DEGREE];
        for (i, &p) in domain.iter().enumerate() {
            index[p] = i as u8;
        }
        let images = domain
            .iter()
            .map(|&p| index[self.image(p)])
            .collect::<Vec<_>>();
        debug_assert!(images.iter().all(|&x| x != u8::MAX), "domain not invariant");
        Permutation { images }
    }
}

/// Iterator returned by [`Permutation::invariant_subsets`].
pub struct InvariantSubsets {
    masks: Vec<u64>,
    next: u128,
    total: u128,
}

impl Iterator for InvariantSubsets {
    type Item = PointSet;

    fn next(&mut self) -> Option<PointSet> {
        if self.next >= self.total {
            return None;
        }
        let mut set = 0u64;
        let mut bits = self.next;
        let mut j = 0;
        while bits != 0 {
            if bits & 1 == 1 {
                set |= self.masks[j];
            }
            bits >>= 1;
            j += 1;
        }
        self.next += 1;
        Some(PointSet(set))
    }
}

/// Cycle decomposition summary of a permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleData {
    pub cycles: Vec<Vec<usize>>,
    pub cycle_count: usize,
    pub fixed_count: usize,
    pub element_order: u64,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({}; {})", self.degree(), self)
    }
}

/// Canonical 1-based cycle notation: cycles ordered by least moved point,
/// each starting at its least point, fixed points omitted; `()` for the
/// identity.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for cycle in self.cycles().iter().filter(|c| c.len() > 1) {
            any = true;
            f.write_str("(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
