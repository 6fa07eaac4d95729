//! Normal closures, derived and lower central series, and the 2-residual `O²`.

use alloc::vec::Vec;

use super::PermGroup;
use crate::perm::{lcm, Permutation};
use crate::{Error, Result};

/// Derived and lower central series give up after this many terms.
pub const SERIES_STEP_LIMIT: usize = 32;

impl PermGroup {
    /// Smallest normal subgroup of `self` containing `gens`.
    pub fn normal_closure(&self, gens: &[Permutation]) -> Result<PermGroup> {
        let mut closure = PermGroup::trivial(self.degree);
        let mut queue: Vec<Permutation> = Vec::new();
        for g in gens {
            if closure.add_generator(g.clone())? {
                queue.push(g.clone());
            }
        }
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head].clone();
            head += 1;
            for g in &self.generators {
                let c = x.conjugate_by(g);
                if closure.add_generator(c.clone())? {
                    queue.push(c);
                }
            }
        }
        Ok(closure)
    }

    /// `[G, G]`.
    pub fn derived_subgroup(&self) -> Result<PermGroup> {
        let comms = pairwise_commutators(&self.generators, &self.generators);
        self.normal_closure(&comms)
    }

    /// `G = G⁽⁰⁾ ≥ G⁽¹⁾ ≥ …` until the terms stabilize.
    pub fn derived_series(&self) -> Result<Vec<PermGroup>> {
        let mut series = alloc::vec![self.clone()];
        loop {
            let last = series.last().unwrap();
            if last.is_trivial() {
                return Ok(series);
            }
            let next = last.derived_subgroup()?;
            if next.order() == last.order() {
                return Ok(series);
            }
            if series.len() > SERIES_STEP_LIMIT {
                return Err(Error::SeriesTooLong(SERIES_STEP_LIMIT));
            }
            series.push(next);
        }
    }

    /// `γ₁ = G`, `γᵢ₊₁ = [γᵢ, G]` until the terms stabilize.
    pub fn lower_central_series(&self) -> Result<Vec<PermGroup>> {
        let mut series = alloc::vec![self.clone()];
        loop {
            let last = series.last().unwrap();
            if last.is_trivial() {
                return Ok(series);
            }
            let comms = pairwise_commutators(last.generators(), &self.generators);
            let next = self.normal_closure(&comms)?;
            if next.order() == last.order() {
                return Ok(series);
            }
            if series.len() > SERIES_STEP_LIMIT {
                return Err(Error::SeriesTooLong(SERIES_STEP_LIMIT));
            }
            series.push(next);
        }
    }

    pub fn is_solvable(&self) -> Result<bool> {
        Ok(self.derived_series()?.last().unwrap().is_trivial())
    }

    pub fn is_nilpotent(&self) -> Result<bool> {
        Ok(self.lower_central_series()?.last().unwrap().is_trivial())
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| a.then(b) == b.then(a)))
    }

    /// Abelian with every non-identity element of order `p`. The trivial group
    /// qualifies for every `p`.
    pub fn is_elementary_abelian(&self, p: u64) -> bool {
        self.is_abelian() && self.generators.iter().all(|g| g.order() == p)
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self, cap: u64) -> Result<u64> {
        if self.is_abelian() {
            return Ok(self.generators.iter().fold(1, |acc, g| lcm(acc, g.order())));
        }
        Ok(self.elements(cap)?.fold(1, |acc, g| lcm(acc, g.order())))
    }

    /// `O²(G)`, the smallest normal subgroup with 2-group quotient.
    ///
    /// Iterates `N ↦ ⟨[x, y], x² : x, y generators of N⟩^N`. Each step
    /// removes the largest elementary abelian 2-quotient of `N`, and
    /// `O²(N) = O²(G)` whenever `G/N` is a 2-group, so the fixed point is
    /// `O²(G)`.
    pub fn o2_residual(&self) -> PermGroup {
        let mut current = self.clone();
        loop {
            if current.is_trivial() {
                return current;
            }
            let gens = current.generators();
            let mut words = pairwise_commutators(gens, gens);
            words.extend(gens.iter().map(|g| g.then(g)));
            let next = current
                .normal_closure(&words)
                .expect("words share the degree");
            if next.order() == current.order() {
                return current;
            }
            current = next;
        }
    }

    /// `O²(G)` as the subgroup generated by the odd parts of all elements.
    /// Reference implementation for [`PermGroup::o2_residual`].
    pub fn o2_residual_by_enumeration(&self, cap: u64) -> Result<PermGroup> {
        let mut out = PermGroup::trivial(self.degree);
        for g in self.elements(cap)? {
            let o = g.order();
            let two_part = 1i64 << o.trailing_zeros();
            let odd = g.pow(two_part);
            if !odd.is_identity() && !out.contains(&odd) {
                out.add_generator(odd)?;
            }
        }
        Ok(out)
    }
}

fn pairwise_commutators(xs: &[Permutation], ys: &[Permutation]) -> Vec<Permutation> {
    let mut out = Vec::new();
    for x in xs {
        for y in ys {
            let c = x.commutator(y);
            if !c.is_identity() && !out.contains(&c) {
                out.push(c);
            }
        }
    }
    out
}
