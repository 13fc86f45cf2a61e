//! Block systems of transitive groups.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::perm::Permutation;

use super::{GroupHom, PermGroup};

/// A partition of the domain into blocks of equal size, each block sorted
/// and the blocks listed by smallest point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockSystem {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl BlockSystem {
    pub fn new(degree: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort();
        let size = blocks.first().map_or(0, Vec::len);
        if size == 0 || blocks.iter().any(|b| b.len() != size) {
            return Err(Error::InvalidBlocks("blocks must be nonempty and of equal size".into()));
        }
        let mut block_of = vec![usize::MAX; degree];
        for (i, b) in blocks.iter().enumerate() {
            for &x in b {
                if x >= degree {
                    return Err(Error::PointOutOfRange { point: x, degree });
                }
                if block_of[x] != usize::MAX {
                    return Err(Error::InvalidBlocks(format!("point {x} lies in two blocks")));
                }
                block_of[x] = i;
            }
        }
        if block_of.contains(&usize::MAX) {
            return Err(Error::InvalidBlocks("blocks do not cover the domain".into()));
        }
        Ok(BlockSystem { blocks, block_of })
    }

    fn from_labels(labels: &[usize]) -> Self {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; labels.len()];
        for (x, &l) in labels.iter().enumerate() {
            if slot[l] == usize::MAX {
                slot[l] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[slot[l]].push(x);
        }
        let block_of = labels.iter().map(|&l| slot[l]).collect();
        BlockSystem { blocks, block_of }
    }

    pub fn singletons(degree: usize) -> Self {
        Self::from_labels(&(0..degree).collect::<Vec<_>>())
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_size(&self) -> usize {
        self.blocks[0].len()
    }

    pub fn count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn degree(&self) -> usize {
        self.block_of.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.count() == 1 || self.block_size() == 1
    }

    /// Whether `g` maps blocks onto blocks.
    pub fn is_preserved_by(&self, g: &Permutation) -> bool {
        self.blocks.iter().all(|b| {
            let target = self.block_of[g.apply(b[0])];
            b.iter().all(|&x| self.block_of[g.apply(x)] == target)
        })
    }

    /// The permutation of blocks induced by `g`.
    pub fn induced(&self, g: &Permutation) -> Permutation {
        let images = self
            .blocks
            .iter()
            .map(|b| self.block_of[g.apply(b[0])] as u32)
            .collect();
        Permutation::from_raw(images)
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        self.0[hi] = lo;
        true
    }
}

impl PermGroup {
    /// The finest block system in which all of `points` share a block.
    pub fn minimal_block_system(&self, points: &[usize]) -> BlockSystem {
        let n = self.degree();
        let mut uf = UnionFind((0..n).collect());
        let mut queue = VecDeque::new();
        if let Some(&first) = points.first() {
            for &x in &points[1..] {
                if uf.union(first, x) {
                    queue.push_back((first, x));
                }
            }
        }
        while let Some((a, b)) = queue.pop_front() {
            for g in self.generators() {
                let (u, v) = (uf.find(g.apply(a)), uf.find(g.apply(b)));
                if uf.union(u, v) {
                    queue.push_back((u, v));
                }
            }
        }
        let labels: Vec<usize> = (0..n).map(|x| uf.find(x)).collect();
        BlockSystem::from_labels(&labels)
    }

    fn require_transitive(&self) -> Result<()> {
        if self.is_transitive() {
            Ok(())
        } else {
            Err(Error::Intransitive)
        }
    }

    /// All nontrivial block systems, by block size and then by the block of point 0.
    pub fn block_systems(&self) -> Result<Vec<BlockSystem>> {
        self.require_transitive()?;
        let n = self.degree();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut found = Vec::new();
        let mut frontier = Vec::new();
        for b in 1..n {
            let sys = self.minimal_block_system(&[0, b]);
            if sys.count() > 1 && seen.insert(sys.blocks()[0].clone()) {
                frontier.push(sys.blocks()[0].clone());
                found.push(sys);
            }
        }
        let atoms: Vec<Vec<usize>> = frontier.clone();
        while let Some(block) = frontier.pop() {
            for atom in &atoms {
                let joined: BTreeSet<usize> = block.iter().chain(atom).copied().collect();
                if joined.len() == block.len() {
                    continue;
                }
                let pts: Vec<usize> = joined.into_iter().collect();
                let sys = self.minimal_block_system(&pts);
                if sys.count() > 1 && seen.insert(sys.blocks()[0].clone()) {
                    frontier.push(sys.blocks()[0].clone());
                    found.push(sys);
                }
            }
        }
        found.sort_by(|a, b| {
            a.block_size()
                .cmp(&b.block_size())
                .then_with(|| a.blocks()[0].cmp(&b.blocks()[0]))
        });
        Ok(found)
    }

    pub fn is_primitive(&self) -> Result<bool> {
        self.require_transitive()?;
        Ok((1..self.degree()).all(|b| self.minimal_block_system(&[0, b]).count() == 1))
    }

    /// A system with the smallest nontrivial block size; singletons if primitive.
    pub fn minimal_blocks(&self) -> Result<BlockSystem> {
        self.require_transitive()?;
        let best = (1..self.degree())
            .map(|b| self.minimal_block_system(&[0, b]))
            .filter(|s| s.count() > 1)
            .min_by(|a, b| {
                a.block_size()
                    .cmp(&b.block_size())
                    .then_with(|| a.blocks()[0].cmp(&b.blocks()[0]))
            });
        Ok(best.unwrap_or_else(|| BlockSystem::singletons(self.degree())))
    }

    /// A system with the largest proper block size, so the action on blocks
    /// is primitive; singletons if the group is primitive.
    pub fn maximal_blocks(&self) -> Result<BlockSystem> {
        Ok(self
            .block_systems()?
            .into_iter()
            .max_by(|a, b| {
                a.block_size()
                    .cmp(&b.block_size())
                    .then_with(|| b.blocks()[0].cmp(&a.blocks()[0]))
            })
            .unwrap_or_else(|| BlockSystem::singletons(self.degree())))
    }

    /// The action on the blocks of `system`.
    pub fn action_on_blocks(&self, system: &BlockSystem) -> Result<GroupHom> {
        if system.degree() != self.degree() {
            return Err(Error::InvalidBlocks("system has the wrong degree".into()));
        }
        if let Some(g) = self.generators().iter().find(|g| !system.is_preserved_by(g)) {
            return Err(Error::InvalidBlocks(format!("{g} does not permute the blocks")));
        }
        Ok(GroupHom::from_action(self, system.count(), |g| system.induced(g)))
    }
}

#[cfg(test)]
mod tests {
    use super::super::construct::*;
    use super::*;

    #[test]
    fn dihedral_square_blocks() {
        let d4 = dihedral(4);
        assert!(!d4.is_primitive().unwrap());
        let sys = d4.minimal_blocks().unwrap();
        assert_eq!(sys.blocks(), &[vec![0, 2], vec![1, 3]]);
        let hom = d4.action_on_blocks(&sys).unwrap();
        assert_eq!(hom.image_group().order(), 2);
        assert_eq!(hom.kernel().order(), 4);
    }

    #[test]
    fn primitive_and_wreath() {
        assert!(symmetric(4).is_primitive().unwrap());
        let w = wreath(&symmetric(4), &cyclic(2));
        assert_eq!(w.minimal_blocks().unwrap().block_size(), 4);
        assert_eq!(w.maximal_blocks().unwrap().block_size(), 4);
        let hom = w.action_on_blocks(&w.maximal_blocks().unwrap()).unwrap();
        assert_eq!(hom.image_group().order(), 2);
        assert_eq!(hom.kernel().order(), 576);
    }

    #[test]
    fn nested_systems() {
        let g = wreath(&cyclic(2), &wreath(&cyclic(2), &cyclic(2)));
        let systems = g.block_systems().unwrap();
        let sizes: Vec<usize> = systems.iter().map(BlockSystem::block_size).collect();
        assert!(sizes.contains(&2) && sizes.contains(&4));
        assert_eq!(g.minimal_blocks().unwrap().block_size(), 2);
        assert_eq!(g.maximal_blocks().unwrap().block_size(), 4);
        assert!(cyclic(4).block_systems().unwrap().len() == 1);
        assert_eq!(symmetric(3).direct_product(&symmetric(2)).block_systems(), Err(Error::Intransitive));
    }
}
