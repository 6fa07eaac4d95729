//! Permutation groups given by generators, backed by a stabilizer chain.

mod chain;
mod search;
mod series;

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::perm::{is_prime, Permutation, PointSet, MAX_DEGREE};
use crate::{Error, Result};

use chain::StabChain;

/// Resource caps shared by every operation that enumerates elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest group order that may be enumerated element by element.
    pub elem_cap: u64,
    /// Largest admissible degree; never above [`MAX_DEGREE`].
    pub degree_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            elem_cap: 1_000_000,
            degree_cap: MAX_DEGREE,
        }
    }
}

impl Limits {
    pub fn check_degree(&self, degree: usize) -> Result<()> {
        let cap = self.degree_cap.min(MAX_DEGREE);
        if degree > cap {
            return Err(Error::DegreeCapExceeded { degree, cap });
        }
        Ok(())
    }
}

/// A finite permutation group on `{0, …, degree−1}`.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
    order: BigUint,
}

impl PermGroup {
    /// `⟨gens⟩` on `degree` points. Identity generators are dropped.
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        Self::with_base_prefix(degree, gens, &[])
    }

    /// As [`PermGroup::new`], but the chain starts with the given base points.
    pub fn with_base_prefix(
        degree: usize,
        gens: Vec<Permutation>,
        prefix: &[usize],
    ) -> Result<Self> {
        if degree > MAX_DEGREE {
            return Err(Error::DegreeCapExceeded {
                degree,
                cap: MAX_DEGREE,
            });
        }
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch(degree, g.degree()));
        }
        if let Some(&p) = prefix.iter().find(|&&p| p >= degree) {
            return Err(Error::PointOutOfRange { point: p, degree });
        }
        let generators: Vec<Permutation> = gens.into_iter().filter(|g| !g.is_identity()).collect();
        let chain = StabChain::build(degree, &generators, prefix);
        let order = chain.order();
        Ok(PermGroup {
            degree,
            generators,
            chain,
            order,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).expect("trivial group within degree cap")
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// Order as `u64`, if it fits.
    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    pub fn is_2_group(&self) -> bool {
        self.order.count_ones() == 1
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain.levels.iter().map(|l| l.base).collect()
    }

    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.chain.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Strong generators of the chain, deduplicated.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for level in &self.chain.levels {
            for g in &level.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain.contains(g)
    }

    pub fn try_contains(&self, g: &Permutation) -> Result<bool> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch(self.degree, g.degree()));
        }
        Ok(self.contains(g))
    }

    /// Adds a generator in place; returns false if it was already a member.
    pub fn add_generator(&mut self, g: Permutation) -> Result<bool> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch(self.degree, g.degree()));
        }
        if !self.chain.add_generator(&g) {
            return Ok(false);
        }
        self.generators.push(g);
        self.order = self.chain.order();
        Ok(true)
    }

    /// True iff every generator of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.order == other.order && self.is_subgroup_of(other)
    }

    /// Orbit of `point`, in breadth-first discovery order.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        orbit_under(&self.generators, point, self.degree)
    }

    /// Orbits partitioning the points, ordered by least point; each orbit sorted.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = PointSet::EMPTY;
        let mut out = Vec::new();
        for p in 0..self.degree {
            if seen.contains(p) {
                continue;
            }
            let mut orb = self.orbit(p);
            orb.sort_unstable();
            for &q in &orb {
                seen.insert(q);
            }
            out.push(orb);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit(0).len() == self.degree
    }

    /// Image of the group on an invariant point set, re-indexed in increasing order.
    pub fn restrict_to(&self, domain: &[usize]) -> Result<PermGroup> {
        let gens = self.generators.iter().map(|g| g.restrict(domain)).collect();
        PermGroup::new(domain.len(), gens)
    }

    /// Subgroup fixing every point of `points`.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> Result<PermGroup> {
        let rebased = PermGroup::with_base_prefix(self.degree, self.generators.clone(), points)?;
        let depth = points.len();
        let gens = rebased
            .chain
            .levels
            .get(depth)
            .map(|l| l.gens.clone())
            .unwrap_or_default();
        PermGroup::new(self.degree, gens)
    }

    pub(crate) fn check_cap(&self, cap: u64) -> Result<()> {
        match self.order.to_u64() {
            Some(o) if o <= cap => Ok(()),
            _ => Err(Error::CapExceeded {
                order: self.order.to_string(),
                cap,
            }),
        }
    }

    /// Every element exactly once. Fails if `|G| > cap`.
    pub fn elements(&self, cap: u64) -> Result<Elements<'_>> {
        self.check_cap(cap)?;
        Ok(Elements::new(&self.chain))
    }

    /// Elements whose order is an odd prime (the set `G₀`).
    pub fn odd_prime_order_elements(
        &self,
        cap: u64,
    ) -> Result<impl Iterator<Item = Permutation> + '_> {
        Ok(self.elements(cap)?.filter(|g| {
            let o = g.order();
            o % 2 == 1 && is_prime(o)
        }))
    }
}

pub(crate) fn orbit_under(gens: &[Permutation], point: usize, degree: usize) -> Vec<usize> {
    let mut seen = PointSet::EMPTY;
    let mut orb = vec![point];
    seen.insert(point);
    let mut head = 0;
    while head < orb.len() {
        let x = orb[head];
        head += 1;
        for g in gens {
            let y = g.image(x);
            if !seen.contains(y) {
                seen.insert(y);
                orb.push(y);
            }
        }
    }
    debug_assert!(orb.iter().all(|&x| x < degree));
    orb
}

/// Iterator over all group elements, produced as products of one coset
/// representative per chain level.
pub struct Elements<'a> {
    chain: &'a StabChain,
    /// Orbit index chosen at each level.
    idx: Vec<usize>,
    /// `partial[i]` = product of the chosen representatives of levels `0..=i`.
    partial: Vec<Permutation>,
    done: bool,
}

impl<'a> Elements<'a> {
    fn new(chain: &'a StabChain) -> Self {
        let k = chain.levels.len();
        let mut it = Elements {
            chain,
            idx: vec![0; k],
            partial: Vec::with_capacity(k),
            done: false,
        };
        it.refill(0);
        it
    }

    fn rep(&self, level: usize) -> &Permutation {
        let l = &self.chain.levels[level];
        l.reps[l.orbit[self.idx[level]] as usize].as_ref().unwrap()
    }

    fn refill(&mut self, from: usize) {
        self.partial.truncate(from);
        for level in from..self.chain.levels.len() {
            let next = match self.partial.last() {
                Some(prev) => self.rep(level).then(prev),
                None => self.rep(level).clone(),
            };
            self.partial.push(next);
        }
    }

    fn current(&self) -> Permutation {
        self.partial
            .last()
            .cloned()
            .unwrap_or_else(|| Permutation::identity(self.chain.degree))
    }
}

impl Iterator for Elements<'_> {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let out = self.current();
        // advance the odometer, deepest level fastest
        let mut level = self.chain.levels.len();
        loop {
            if level == 0 {
                self.done = true;
                break;
            }
            level -= 1;
            self.idx[level] += 1;
            if self.idx[level] < self.chain.levels[level].orbit.len() {
                self.refill(level);
                break;
            }
            self.idx[level] = 0;
        }
        Some(out)
    }
}

/// Structure of a subgroup `S` relative to the target property: `O²(S)` is a
/// (possibly trivial) elementary abelian 3-group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub stab_order: BigUint,
    pub o2_order: BigUint,
    pub o2_exponent: u64,
    pub o2_is_elementary_abelian_3: bool,
    pub is_2_group: bool,
    pub required_structure: bool,
    pub is_nilpotent: bool,
}

impl PermGroup {
    /// Computes the [`StructureReport`] of this group.
    pub fn structure_report(&self, limits: &Limits) -> Result<StructureReport> {
        let o2 = self.o2_residual();
        let o2_is_elementary_abelian_3 = o2.is_elementary_abelian(3);
        let o2_exponent = o2.exponent(limits.elem_cap)?;
        let is_nilpotent = self.is_nilpotent()?;
        Ok(StructureReport {
            stab_order: self.order.clone(),
            o2_order: o2.order().clone(),
            o2_exponent,
            o2_is_elementary_abelian_3,
            is_2_group: self.is_2_group(),
            required_structure: o2.is_trivial() || o2_is_elementary_abelian_3,
            is_nilpotent,
        })
    }
}
