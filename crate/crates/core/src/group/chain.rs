//! Base and strong generating sets (stabilizer chains).
//!
//! Each level stores its base point, the strong generators that fix all
//! earlier base points, and a breadth-first Schreier tree for the basic
//! orbit. Transversal elements are never stored; sifting walks the tree.

use std::collections::HashSet;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::perm::Permutation;

const NOT_IN_ORBIT: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    pub base_point: usize,
    pub gens: Vec<Permutation>,
    gens_inv: Vec<Permutation>,
    pub orbit: Vec<usize>,
    /// Label of the tree edge entering each point, or a sentinel.
    tree: Vec<u32>,
}

impl Level {
    fn new(base_point: usize, degree: usize) -> Self {
        let mut tree = vec![NOT_IN_ORBIT; degree];
        tree[base_point] = ROOT;
        Level {
            base_point,
            gens: Vec::new(),
            gens_inv: Vec::new(),
            orbit: vec![base_point],
            tree,
        }
    }

    /// Adds a generator and extends the Schreier tree without relabelling
    /// points already in the orbit, so their transversal elements (and the
    /// Schreier generators already checked against them) stay valid.
    fn push_gen(&mut self, g: Permutation) {
        let j = self.gens.len() as u32;
        let old = self.orbit.len();
        for i in 0..old {
            let y = g.apply(self.orbit[i]);
            if self.tree[y] == NOT_IN_ORBIT {
                self.tree[y] = j;
                self.orbit.push(y);
            }
        }
        self.gens_inv.push(g.inverse());
        self.gens.push(g);
        let mut head = old;
        while head < self.orbit.len() {
            let x = self.orbit[head];
            head += 1;
            for (k, h) in self.gens.iter().enumerate() {
                let y = h.apply(x);
                if self.tree[y] == NOT_IN_ORBIT {
                    self.tree[y] = k as u32;
                    self.orbit.push(y);
                }
            }
        }
    }

    #[inline]
    pub fn in_orbit(&self, x: usize) -> bool {
        self.tree[x] != NOT_IN_ORBIT
    }

    /// Transversal element mapping the base point to `x`.
    pub fn transversal(&self, x: usize) -> Permutation {
        debug_assert!(self.in_orbit(x));
        let mut labels = Vec::new();
        let mut y = x;
        while self.tree[y] != ROOT {
            let j = self.tree[y] as usize;
            labels.push(j);
            y = self.gens_inv[j].apply(y);
        }
        let degree = self.tree.len();
        let mut u = Permutation::identity(degree);
        for &j in labels.iter().rev() {
            u = u.then(&self.gens[j]);
        }
        u
    }

    /// Replaces `g` by `g · u_x⁻¹` where `x = g(base_point)`; `x` must lie in the orbit.
    pub fn strip(&self, g: &mut Permutation) {
        let mut y = g.apply(self.base_point);
        while self.tree[y] != ROOT {
            let j = self.tree[y] as usize;
            *g = g.then(&self.gens_inv[j]);
            y = self.gens_inv[j].apply(y);
        }
    }
}

/// A stabilizer chain `G = G⁽⁰⁾ ≥ G⁽¹⁾ ≥ … ≥ G⁽ᵐ⁾ = 1`.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    pub(crate) levels: Vec<Level>,
}

/// Result of sifting an element through a chain.
pub(crate) struct Sifted {
    pub residue: Permutation,
    /// Index of the level where sifting stopped (`levels.len()` if it fell through).
    pub level: usize,
}

impl StabChain {
    /// Deterministic Schreier–Sims. Base points are `prefix` followed by the
    /// smallest point moved by each new strong generator.
    pub fn schreier_sims(degree: usize, gens: &[Permutation], prefix: &[usize]) -> StabChain {
        let mut chain = StabChain::with_prefix(degree, prefix);
        let gens: Vec<Permutation> = dedup_nontrivial(gens);
        for g in &gens {
            chain.ensure_moves_base(g);
        }
        for g in gens {
            // Generators go to every level they fix the earlier base points of.
            let depth = chain.fixed_prefix_len(&g);
            chain.levels[0].push_gen(g.clone());
            for level in chain.levels.iter_mut().take(depth + 1).skip(1) {
                level.push_gen(g.clone());
            }
        }
        let keep = chain.levels.len().min(prefix.len());
        chain.complete();
        chain.trim(keep);
        chain
    }

    /// Randomized Schreier–Sims that stops once the chain reaches a known
    /// group order. Exact, since the chain always describes a subgroup.
    pub fn with_known_order(
        degree: usize,
        gens: &[Permutation],
        prefix: &[usize],
        order: u128,
        seed: u64,
    ) -> Result<StabChain> {
        let mut chain = StabChain::with_prefix(degree, prefix);
        let keep = chain.levels.len();
        let gens = dedup_nontrivial(gens);
        for g in &gens {
            chain.absorb(g.clone());
        }
        if chain.order() == order {
            chain.trim(keep);
            return Ok(chain);
        }
        if gens.is_empty() {
            return Err(Error::InvariantViolation(format!(
                "trivial generating set cannot have order {order}"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut state: Vec<Permutation> = gens.iter().cycle().take(gens.len().max(10)).cloned().collect();
        let mut acc = Permutation::identity(degree);
        let mut next = |rng: &mut ChaCha8Rng| {
            let r = state.len();
            let i = rng.random_range(0..r);
            let mut j = rng.random_range(0..r - 1);
            if j >= i {
                j += 1;
            }
            state[i] = if rng.random_bool(0.5) {
                state[i].then(&state[j])
            } else {
                state[j].then(&state[i])
            };
            acc = acc.then(&state[i]);
            acc.clone()
        };
        for _ in 0..50 {
            next(&mut rng);
        }
        let mut idle = 0usize;
        while chain.order() < order {
            let g = next(&mut rng);
            if chain.absorb(g) {
                idle = 0;
            } else {
                idle += 1;
                if idle > 20_000 {
                    return Err(Error::InvariantViolation(format!(
                        "random Schreier-Sims stalled at order {} below the claimed {order}",
                        chain.order()
                    )));
                }
            }
        }
        if chain.order() != order {
            return Err(Error::InvariantViolation(format!(
                "generated group has order {}, claimed {order}",
                chain.order()
            )));
        }
        chain.trim(keep);
        Ok(chain)
    }

    fn with_prefix(degree: usize, prefix: &[usize]) -> StabChain {
        let mut seen = HashSet::new();
        let levels = prefix
            .iter()
            .copied()
            .filter(|&b| seen.insert(b))
            .map(|b| Level::new(b, degree))
            .collect();
        StabChain { degree, levels }
    }

    /// Sifts `g` and, if it is not yet in the chain's group, adds the residue
    /// as a strong generator. Returns whether the chain grew.
    fn absorb(&mut self, g: Permutation) -> bool {
        let Sifted { residue, level } = self.sift(g);
        if residue.is_identity() {
            return false;
        }
        if level == self.levels.len() {
            let b = residue.first_moved().expect("nontrivial residue");
            self.levels.push(Level::new(b, self.degree));
        }
        for l in self.levels.iter_mut().take(level + 1) {
            l.push_gen(residue.clone());
        }
        true
    }

    fn ensure_moves_base(&mut self, g: &Permutation) {
        if g.is_identity() {
            return;
        }
        if self.levels.iter().all(|l| g.apply(l.base_point) == l.base_point) {
            let b = g.first_moved().expect("nontrivial");
            self.levels.push(Level::new(b, self.degree));
        }
    }

    fn fixed_prefix_len(&self, g: &Permutation) -> usize {
        self.levels
            .iter()
            .take_while(|l| g.apply(l.base_point) == l.base_point)
            .count()
    }

    /// Runs the Schreier generator test level by level, bottom-up.
    fn complete(&mut self) {
        let degree = self.degree;
        let mut checked: Vec<HashSet<(u32, u32)>> = vec![HashSet::new(); self.levels.len()];
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let iu = i as usize;
            let mut descend_to = None;
            'scan: for oi in 0..self.levels[iu].orbit.len() {
                let x = self.levels[iu].orbit[oi];
                for j in 0..self.levels[iu].gens.len() {
                    if !checked[iu].insert((x as u32, j as u32)) {
                        continue;
                    }
                    let level = &self.levels[iu];
                    let s = &level.gens[j];
                    let mut schreier = level.transversal(x).then(s);
                    level.strip(&mut schreier);
                    let Sifted { residue, level: stop } = self.sift_from(schreier, iu + 1);
                    if residue.is_identity() {
                        continue;
                    }
                    if stop == self.levels.len() {
                        let b = residue.first_moved().expect("nontrivial residue");
                        self.levels.push(Level::new(b, degree));
                        checked.push(HashSet::new());
                    }
                    for l in self.levels.iter_mut().take(stop + 1).skip(iu + 1) {
                        l.push_gen(residue.clone());
                    }
                    descend_to = Some(stop);
                    break 'scan;
                }
            }
            match descend_to {
                Some(l) => i = l as isize,
                None => i -= 1,
            }
        }
    }

    /// Drops trailing levels with trivial basic orbits, keeping the first `keep`.
    fn trim(&mut self, keep: usize) {
        while self.levels.len() > keep && self.levels.last().is_some_and(|l| l.orbit.len() == 1) {
            self.levels.pop();
        }
    }

    pub(crate) fn sift(&self, g: Permutation) -> Sifted {
        self.sift_from(g, 0)
    }

    fn sift_from(&self, mut g: Permutation, start: usize) -> Sifted {
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            let x = g.apply(level.base_point);
            if !level.in_orbit(x) {
                return Sifted { residue: g, level: i };
            }
            level.strip(&mut g);
        }
        Sifted {
            residue: g,
            level: self.levels.len(),
        }
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift(g.clone()).residue.is_identity()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> u128 {
        self.checked_order().expect("group order exceeds u128")
    }

    pub fn checked_order(&self) -> Option<u128> {
        self.levels
            .iter()
            .try_fold(1u128, |acc, l| acc.checked_mul(l.orbit.len() as u128))
    }

    /// Strong generators of the stabilizer of the first `depth` base points.
    pub(crate) fn stabilizer_gens(&self, depth: usize) -> Vec<Permutation> {
        self.levels
            .get(depth)
            .map(|l| l.gens.clone())
            .unwrap_or_default()
    }

    /// Chain of the stabilizer of the first `depth` base points.
    pub(crate) fn tail(&self, depth: usize) -> StabChain {
        StabChain {
            degree: self.degree,
            levels: self.levels.iter().skip(depth).cloned().collect(),
        }
    }

    /// All transversals, materialized.
    pub(crate) fn transversals(&self) -> Vec<Vec<Permutation>> {
        self.levels
            .iter()
            .map(|l| l.orbit.iter().map(|&x| l.transversal(x)).collect())
            .collect()
    }
}

fn dedup_nontrivial(gens: &[Permutation]) -> Vec<Permutation> {
    let mut seen = HashSet::new();
    gens.iter()
        .filter(|g| !g.is_identity())
        .filter(|g| seen.insert((*g).clone()))
        .cloned()
        .collect()
}
