//! Setwise stabilizers by backtracking over the stabilizer chain.

use alloc::vec::Vec;

use super::chain::StabChain;
use super::{orbit_under, PermGroup};
use crate::perm::{Permutation, PointSet};
use crate::Result;

impl PermGroup {
    /// `Stab_G(Δ) = {g ∈ G : g(Δ) = Δ}`.
    ///
    /// Levels are processed bottom-up. At level `i` only one candidate image
    /// of the base point per orbit of the stabilizer found so far is tried,
    /// and partial products are discarded as soon as a base point in `Δ` is
    /// sent outside `Δ` (or vice versa).
    pub fn set_stabilizer(&self, set: PointSet) -> PermGroup {
        let set = set.intersection(PointSet::full(self.degree));
        if set.is_empty() || set.len() == self.degree {
            return self.clone();
        }
        let chain = &self.chain;
        let mut found: Vec<Permutation> = Vec::new();
        for i in (0..chain.levels.len()).rev() {
            let level = &chain.levels[i];
            let b = level.base;
            let want = set.contains(b);
            let mut known = PointSet::from_points(orbit_under(&found, b, self.degree));
            for &beta in &level.orbit {
                let beta = beta as usize;
                if known.contains(beta) || set.contains(beta) != want {
                    continue;
                }
                let rep = level.reps[beta].as_ref().unwrap();
                if let Some(g) = find_in_coset(chain, i + 1, rep, set) {
                    found.push(g);
                    known = PointSet::from_points(orbit_under(&found, b, self.degree));
                }
            }
        }
        PermGroup::new(self.degree, found).expect("stabilizer generators share the degree")
    }

    /// Reference implementation: filter the full element list.
    pub fn set_stabilizer_by_enumeration(&self, set: PointSet, cap: u64) -> Result<PermGroup> {
        let mut stab = PermGroup::trivial(self.degree);
        for g in self.elements(cap)? {
            if g.stabilizes(set) && !stab.contains(&g) {
                stab.add_generator(g)?;
            }
        }
        Ok(stab)
    }
}

/// Searches `{x · suffix : x ∈ G⁽ˡᵉᵛᵉˡ⁾}` (apply `x` first) for an element
/// stabilizing `set`.
fn find_in_coset(
    chain: &StabChain,
    level: usize,
    suffix: &Permutation,
    set: PointSet,
) -> Option<Permutation> {
    let Some(l) = chain.levels.get(level) else {
        return suffix.stabilizes(set).then(|| suffix.clone());
    };
    let want = set.contains(l.base);
    for &beta in &l.orbit {
        let beta = beta as usize;
        if set.contains(suffix.image(beta)) != want {
            continue;
        }
        let next = l.reps[beta].as_ref().unwrap().then(suffix);
        if let Some(g) = find_in_coset(chain, level + 1, &next, set) {
            return Some(g);
        }
    }
    None
}
