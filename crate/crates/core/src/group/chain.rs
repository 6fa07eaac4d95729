//! Deterministic Schreier–Sims stabilizer chains.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::perm::{Permutation, MAX_DEGREE};

/// One level `G⁽ⁱ⁾` of the chain: the subgroup fixing the earlier base points.
#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub base: usize,
    /// Strong generators fixing every earlier base point.
    pub gens: Vec<Permutation>,
    /// Basic orbit of `base`, in discovery order.
    pub orbit: Vec<u8>,
    /// `reps[γ]` maps `base` to `γ`; `None` off the orbit.
    pub reps: Vec<Option<Permutation>>,
    pub reps_inv: Vec<Option<Permutation>>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut level = Level {
            base,
            gens: Vec::new(),
            orbit: Vec::new(),
            reps: vec![None; degree],
            reps_inv: vec![None; degree],
        };
        level.recompute(degree);
        level
    }

    fn recompute(&mut self, degree: usize) {
        self.reps.iter_mut().for_each(|r| *r = None);
        self.reps_inv.iter_mut().for_each(|r| *r = None);
        self.orbit.clear();
        let id = Permutation::identity(degree);
        self.reps[self.base] = Some(id.clone());
        self.reps_inv[self.base] = Some(id);
        self.orbit.push(self.base as u8);
        let mut head = 0;
        while head < self.orbit.len() {
            let beta = self.orbit[head] as usize;
            head += 1;
            for s in &self.gens {
                let img = s.image(beta);
                if self.reps[img].is_none() {
                    let rep = self.reps[beta].as_ref().unwrap().then(s);
                    self.reps_inv[img] = Some(rep.inverse());
                    self.reps[img] = Some(rep);
                    self.orbit.push(img as u8);
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct StabChain {
    pub degree: usize,
    pub levels: Vec<Level>,
}

impl StabChain {
    /// Builds a complete chain for `⟨gens⟩`, using `base_prefix` as the first
    /// base points and extending greedily by the smallest moved point.
    pub fn build(degree: usize, gens: &[Permutation], base_prefix: &[usize]) -> Self {
        debug_assert!(degree <= MAX_DEGREE);
        let mut chain = StabChain {
            degree,
            levels: base_prefix.iter().map(|&b| Level::new(b, degree)).collect(),
        };
        let mut added = false;
        for g in gens.iter().filter(|g| !g.is_identity()) {
            if chain.levels.iter().all(|l| g.image(l.base) == l.base) {
                let b = g.smallest_moved_point().unwrap();
                chain.levels.push(Level::new(b, degree));
            }
            for level in chain.levels.iter_mut() {
                level.gens.push(g.clone());
                if g.image(level.base) != level.base {
                    break;
                }
            }
            added = true;
        }
        if added {
            for level in chain.levels.iter_mut() {
                level.recompute(degree);
            }
            let top = chain.levels.len() - 1;
            chain.complete(top);
        }
        chain
    }

    /// Sifts `g` starting at level `from`. Returns the residue and the level
    /// at which sifting stopped (`levels.len()` if it passed every level).
    pub fn sift(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (j, level) in self.levels.iter().enumerate().skip(from) {
            let img = h.image(level.base);
            match &level.reps_inv[img] {
                Some(inv) => h = h.then(inv),
                None => return (h, j),
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (h, j) = self.sift(g, 0);
        j == self.levels.len() && h.is_identity()
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::from(1u32), |acc, l| {
            acc * BigUint::from(l.orbit.len())
        })
    }

    /// Adds `g` as a new strong generator unless it already lies in the group.
    pub fn add_generator(&mut self, g: &Permutation) -> bool {
        let (y, j) = self.sift(g, 0);
        if y.is_identity() {
            return false;
        }
        let j = self.insert_residue(y, 0, j);
        self.complete(j);
        true
    }

    /// Places residue `y`, which fixes the base points below `j`, into levels
    /// `from..=j`, creating a new level if needed. Returns `j`.
    fn insert_residue(&mut self, y: Permutation, from: usize, j: usize) -> usize {
        if j == self.levels.len() {
            let b = y.smallest_moved_point().unwrap();
            self.levels.push(Level::new(b, self.degree));
        }
        for l in from..=j {
            self.levels[l].gens.push(y.clone());
            self.levels[l].recompute(self.degree);
        }
        j
    }

    /// Verifies Schreier generators from level `start` downward, inserting
    /// residues until every level is complete.
    fn complete(&mut self, start: usize) {
        let mut i = start as isize;
        'outer: while i >= 0 {
            let lvl = i as usize;
            let orbit = self.levels[lvl].orbit.clone();
            let ngens = self.levels[lvl].gens.len();
            for &beta in &orbit {
                for s_idx in 0..ngens {
                    let level = &self.levels[lvl];
                    let s = &level.gens[s_idx];
                    let u_beta = level.reps[beta as usize].as_ref().unwrap();
                    let img = s.image(beta as usize);
                    let u_img_inv = level.reps_inv[img].as_ref().unwrap();
                    let h = u_beta.then(s).then(u_img_inv);
                    if h.is_identity() {
                        continue;
                    }
                    let (y, j) = self.sift(&h, lvl + 1);
                    if !y.is_identity() {
                        let j = self.insert_residue(y, lvl + 1, j);
                        i = j as isize;
                        continue 'outer;
                    }
                }
            }
            i -= 1;
        }
    }
}
