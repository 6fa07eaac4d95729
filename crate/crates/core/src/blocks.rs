//! Block systems of transitive groups and the embedding `G ≤ G₁ ≀ W`
//! obtained from a maximal block system.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::perm::Permutation;
use crate::{Error, PermGroup, Result};

/// A partition of the points into blocks of equal size, indexed by least point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSystem {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl BlockSystem {
    /// Builds the system whose blocks are the classes of `label`.
    pub fn from_labels(label: &[usize]) -> Self {
        let n = label.len();
        let mut index_of_label = vec![usize::MAX; label.iter().copied().max().map_or(0, |m| m + 1)];
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut block_of = vec![0; n];
        for p in 0..n {
            let l = label[p];
            if index_of_label[l] == usize::MAX {
                index_of_label[l] = blocks.len();
                blocks.push(Vec::new());
            }
            block_of[p] = index_of_label[l];
            blocks[index_of_label[l]].push(p);
        }
        BlockSystem { blocks, block_of }
    }

    pub fn singletons(degree: usize) -> Self {
        Self::from_labels(&(0..degree).collect::<Vec<_>>())
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &[usize] {
        &self.blocks[i]
    }

    pub fn block_of(&self, point: usize) -> usize {
        self.block_of[point]
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_size(&self) -> usize {
        self.blocks.first().map_or(0, Vec::len)
    }

    pub fn degree(&self) -> usize {
        self.block_of.len()
    }

    /// Neither the single-block nor the all-singletons partition.
    pub fn is_nontrivial(&self) -> bool {
        let b = self.block_size();
        1 < b && b < self.degree()
    }

    pub fn has_equal_blocks(&self) -> bool {
        let b = self.block_size();
        self.blocks.iter().all(|blk| blk.len() == b)
    }

    /// Every generator maps blocks onto blocks.
    pub fn is_invariant_under(&self, group: &PermGroup) -> bool {
        group.generators().iter().all(|g| {
            self.blocks.iter().all(|blk| {
                let target = self.block_of[g.image(blk[0])];
                blk.iter().all(|&p| self.block_of[g.image(p)] == target)
            })
        })
    }

    /// Action of `g` on block indices.
    pub fn block_image(&self, g: &Permutation) -> Permutation {
        let images: Vec<usize> = self
            .blocks
            .iter()
            .map(|blk| self.block_of[g.image(blk[0])])
            .collect();
        Permutation::from_images(&images).expect("system is invariant under g")
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Finest `G`-invariant partition in which `alpha` and `beta` share a block.
/// Returns the single-block partition when no proper system joins them.
pub fn minimal_blocks(group: &PermGroup, alpha: usize, beta: usize) -> Result<BlockSystem> {
    let n = group.degree();
    if !group.is_transitive() {
        return Err(Error::NotTransitive);
    }
    if alpha >= n || beta >= n || alpha == beta {
        return Err(Error::UnsupportedParams(format!(
            "point pair ({alpha}, {beta}) on {n} points"
        )));
    }
    let mut parent: Vec<usize> = (0..n).collect();
    let mut queue = vec![(alpha, beta)];
    let (ra, rb) = (find(&mut parent, alpha), find(&mut parent, beta));
    parent[rb.max(ra)] = ra.min(rb);
    let mut head = 0;
    while head < queue.len() {
        let (x, y) = queue[head];
        head += 1;
        for g in group.generators() {
            let (gx, gy) = (g.image(x), g.image(y));
            let (rx, ry) = (find(&mut parent, gx), find(&mut parent, gy));
            if rx != ry {
                parent[rx.max(ry)] = rx.min(ry);
                queue.push((gx, gy));
            }
        }
    }
    let labels: Vec<usize> = (0..n).map(|p| find(&mut parent, p)).collect();
    Ok(BlockSystem::from_labels(&labels))
}

/// The data of `G ≤ G₁ ≀ W` for a maximal block system.
#[derive(Clone, Debug)]
pub struct PrimitiveTower {
    /// Singleton blocks when `G` itself is primitive.
    pub system: BlockSystem,
    /// `W`, the action on block indices.
    pub top: PermGroup,
    /// Image in `W` of each generator of `G`, in generator order.
    pub quotient_gens: Vec<Permutation>,
    /// `G₁`, induced on block 0 (re-indexed `0…b−1`) by its setwise stabilizer.
    pub constituent: PermGroup,
    /// `wᵢ ∈ G` with `wᵢ(Ω₁) = Ωᵢ`; `w₀` is the identity.
    pub transversals: Vec<Permutation>,
    pub primitive: bool,
}

impl PrimitiveTower {
    pub fn num_blocks(&self) -> usize {
        self.system.num_blocks()
    }
}

/// Smallest nontrivial block containing point 0, if any.
fn minimal_nontrivial_system(group: &PermGroup) -> Result<Option<BlockSystem>> {
    let mut best: Option<BlockSystem> = None;
    for beta in 1..group.degree() {
        let sys = minimal_blocks(group, 0, beta)?;
        if sys.num_blocks() > 1
            && best
                .as_ref()
                .is_none_or(|b| sys.block_size() < b.block_size())
        {
            best = Some(sys);
        }
    }
    Ok(best)
}

fn quotient(group: &PermGroup, system: &BlockSystem) -> Result<(PermGroup, Vec<Permutation>)> {
    let images: Vec<Permutation> = group
        .generators()
        .iter()
        .map(|g| system.block_image(g))
        .collect();
    let top = PermGroup::new(system.num_blocks(), images.clone())?;
    Ok((top, images))
}

/// A block system with primitive induced action, or `None` if `group` is primitive.
///
/// Coarsens repeatedly: take a minimal nontrivial system, pass to the action
/// on its blocks, and pull the top system back.
fn maximal_system(group: &PermGroup) -> Result<Option<BlockSystem>> {
    let Some(min) = minimal_nontrivial_system(group)? else {
        return Ok(None);
    };
    let (top, _) = quotient(group, &min)?;
    match maximal_system(&top)? {
        None => Ok(Some(min)),
        Some(coarse) => {
            let labels: Vec<usize> = (0..group.degree())
                .map(|p| coarse.block_of(min.block_of(p)))
                .collect();
            Ok(Some(BlockSystem::from_labels(&labels)))
        }
    }
}

/// Block transversal and block constituent for a nontrivial invariant system.
pub fn block_constituent(
    group: &PermGroup,
    system: &BlockSystem,
) -> Result<(PermGroup, Vec<Permutation>)> {
    if !system.is_nontrivial() || !system.has_equal_blocks() || !system.is_invariant_under(group) {
        return Err(Error::InvalidSystem(format!(
            "{} blocks of size {} on {} points",
            system.num_blocks(),
            system.block_size(),
            system.degree()
        )));
    }
    let n = system.num_blocks();
    let mut transversals: Vec<Option<Permutation>> = vec![None; n];
    transversals[0] = Some(Permutation::identity(group.degree()));
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let i = queue[head];
        head += 1;
        for g in group.generators() {
            let j = system.block_of(g.image(system.block(i)[0]));
            if transversals[j].is_none() {
                transversals[j] = Some(transversals[i].as_ref().unwrap().then(g));
                queue.push(j);
            }
        }
    }
    let transversals: Vec<Permutation> = transversals
        .into_iter()
        .map(|t| t.ok_or(Error::NotTransitive))
        .collect::<Result<_>>()?;

    // Schreier generators of the stabilizer of block 0
    let mut stab_gens: Vec<Permutation> = Vec::new();
    for (i, w) in transversals.iter().enumerate() {
        for g in group.generators() {
            let j = system.block_of(g.image(system.block(i)[0]));
            let s = w.then(g).then(&transversals[j].inverse());
            if !s.is_identity() && !stab_gens.contains(&s) {
                stab_gens.push(s);
            }
        }
    }
    let block0 = system.block(0);
    let restricted: Vec<Permutation> = stab_gens.iter().map(|s| s.restrict(block0)).collect();
    let constituent = PermGroup::new(block0.len(), restricted)?;
    Ok((constituent, transversals))
}

/// Builds the [`PrimitiveTower`] of a transitive group.
pub fn primitive_quotient(group: &PermGroup) -> Result<PrimitiveTower> {
    if group.degree() < 2 || !group.is_transitive() {
        return Err(Error::NotTransitive);
    }
    match maximal_system(group)? {
        None => {
            let n = group.degree();
            let system = BlockSystem::singletons(n);
            let mut transversals: Vec<Option<Permutation>> = vec![None; n];
            transversals[0] = Some(Permutation::identity(n));
            let mut queue = vec![0usize];
            let mut head = 0;
            while head < queue.len() {
                let x = queue[head];
                head += 1;
                for g in group.generators() {
                    let y = g.image(x);
                    if transversals[y].is_none() {
                        transversals[y] = Some(transversals[x].as_ref().unwrap().then(g));
                        queue.push(y);
                    }
                }
            }
            Ok(PrimitiveTower {
                system,
                top: group.clone(),
                quotient_gens: group.generators().to_vec(),
                constituent: PermGroup::trivial(1),
                transversals: transversals.into_iter().map(Option::unwrap).collect(),
                primitive: true,
            })
        }
        Some(system) => {
            let (top, quotient_gens) = quotient(group, &system)?;
            let (constituent, transversals) = block_constituent(group, &system)?;
            Ok(PrimitiveTower {
                system,
                top,
                quotient_gens,
                constituent,
                transversals,
                primitive: false,
            })
        }
    }
}

pub fn is_primitive(group: &PermGroup) -> Result<bool> {
    if !group.is_transitive() {
        return Ok(false);
    }
    Ok(group.degree() <= 1 || minimal_nontrivial_system(group)?.is_none())
}
