//! Permutation groups given by generators.
//!
//! A [`PermGroup`] is immutable. Its stabilizer chain is built on first use
//! (deterministic Schreier–Sims, base points chosen in ascending order) and
//! then shared between clones.

mod blocks;
mod chain;
pub mod construct;
mod hom;
mod normal;

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::RngExt;

pub use blocks::BlockSystem;
pub use chain::StabChain;
pub use hom::GroupHom;
pub use normal::{subdirect_find_factor, NORMAL_STRUCTURE_CAP};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default cap on explicit element enumeration.
pub const ELEMENT_CAP: u128 = 1_000_000;

const BASE_CHANGE_SEED: u64 = 0x6d6f_7469_6f6e;

/// A finite permutation group on the points `0..degree`.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Permutation>,
    chain: Arc<OnceLock<Arc<StabChain>>>,
}

/// Minimal degree of a permutation group; the trivial group has `Infinity`,
/// which compares above every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MinDegree {
    Finite(usize),
    Infinity,
}

impl PartialOrd for MinDegree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MinDegree {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (MinDegree::Finite(a), MinDegree::Finite(b)) => a.cmp(b),
            (MinDegree::Finite(_), MinDegree::Infinity) => Ordering::Less,
            (MinDegree::Infinity, MinDegree::Finite(_)) => Ordering::Greater,
            (MinDegree::Infinity, MinDegree::Infinity) => Ordering::Equal,
        }
    }
}

impl fmt::Display for MinDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinDegree::Finite(m) => write!(f, "{m}"),
            MinDegree::Infinity => write!(f, "INFINITY"),
        }
    }
}

impl PermGroup {
    /// The group generated by `gens` on `0..degree`. Groups whose order does
    /// not fit in a `u128` are rejected.
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::EmptyDomain);
        }
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let group = Self::from_parts(degree, gens);
        if group.chain().checked_order().is_none() {
            return Err(Error::CapExceeded {
                what: "group order (u128)",
                cap: u128::MAX,
            });
        }
        Ok(group)
    }

    pub(crate) fn from_parts(degree: usize, gens: Vec<Permutation>) -> Self {
        let mut seen = HashSet::new();
        let gens = gens
            .into_iter()
            .filter(|g| !g.is_identity() && seen.insert(g.clone()))
            .collect();
        PermGroup {
            degree,
            gens,
            chain: Arc::new(OnceLock::new()),
        }
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_parts(degree, Vec::new())
    }

    /// Builds the chain by randomized Schreier–Sims, trusting nothing: the
    /// call fails unless the generators reach exactly `order`.
    pub fn with_known_order(degree: usize, gens: Vec<Permutation>, order: u128) -> Result<Self> {
        let group = Self::new(degree, gens)?;
        let chain = StabChain::with_known_order(degree, &group.gens, &[], order, BASE_CHANGE_SEED)?;
        let _ = group.chain.set(Arc::new(chain));
        Ok(group)
    }

    /// A subgroup of the same degree.
    pub fn subgroup(&self, gens: Vec<Permutation>) -> PermGroup {
        Self::from_parts(self.degree, gens)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| Arc::new(StabChain::schreier_sims(self.degree, &self.gens, &[])))
    }

    /// A chain whose base begins with `prefix`.
    pub fn chain_with_base(&self, prefix: &[usize]) -> Arc<StabChain> {
        let chain = self.chain();
        let base = chain.base();
        if base.len() >= prefix.len() && base[..prefix.len()] == *prefix {
            return self.chain.get().cloned().expect("initialized above");
        }
        if self.gens.is_empty() {
            return Arc::new(StabChain::schreier_sims(self.degree, &[], prefix));
        }
        Arc::new(
            StabChain::with_known_order(self.degree, &self.gens, prefix, chain.order(), BASE_CHANGE_SEED)
                .expect("base change preserves the group order"),
        )
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.gens.iter().all(|g| other.contains(g))
    }

    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .enumerate()
            .all(|(i, a)| self.gens[i + 1..].iter().all(|b| a.then(b) == b.then(a)))
    }

    /// All elements, each exactly once; fails if the order exceeds `cap`.
    pub fn elements(&self, cap: u128) -> Result<Elements> {
        let order = self.order();
        if order > cap {
            return Err(Error::CapExceeded {
                what: "element enumeration",
                cap,
            });
        }
        Ok(Elements::new(self.degree, self.chain().transversals()))
    }

    pub fn random_element<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let chain = self.chain();
        let mut g = self.identity();
        for level in chain.levels.iter().rev() {
            let x = level.orbit[rng.random_range(0..level.orbit.len())];
            g = g.then(&level.transversal(x));
        }
        g
    }

    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[x] = true;
        let mut orbit = vec![x];
        let mut head = 0;
        while head < orbit.len() {
            let y = orbit[head];
            head += 1;
            for g in &self.gens {
                let z = g.apply(y);
                if !seen[z] {
                    seen[z] = true;
                    orbit.push(z);
                }
            }
        }
        orbit.sort_unstable();
        orbit
    }

    /// Orbits, each sorted, listed by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for x in 0..self.degree {
            if !seen[x] {
                let orbit = self.orbit(x);
                for &y in &orbit {
                    seen[y] = true;
                }
                out.push(orbit);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(0).len() == self.degree
    }

    /// Some element mapping `from` to `to`.
    pub fn element_mapping(&self, from: usize, to: usize) -> Option<Permutation> {
        let chain = self.chain_with_base(&[from]);
        match chain.levels.first() {
            Some(level) if level.base_point == from => level.in_orbit(to).then(|| level.transversal(to)),
            _ => (from == to).then(|| self.identity()),
        }
    }

    /// Elements fixing every point of `points`.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> Result<PermGroup> {
        for &p in points {
            if p >= self.degree {
                return Err(Error::PointOutOfRange {
                    point: p,
                    degree: self.degree,
                });
            }
        }
        let mut prefix = Vec::new();
        let mut seen = HashSet::new();
        for &p in points {
            if seen.insert(p) {
                prefix.push(p);
            }
        }
        let chain = self.chain_with_base(&prefix);
        let depth = prefix.len();
        let group = PermGroup::from_parts(self.degree, chain.stabilizer_gens(depth));
        let tail = chain.tail(depth);
        let _ = group.chain.set(Arc::new(tail));
        Ok(group)
    }

    /// Restriction to a union of orbits, relabelled `0..points.len()` in the given order.
    pub fn restrict(&self, points: &[usize]) -> Result<PermGroup> {
        let index = self.point_index(points)?;
        let gens = self
            .gens
            .iter()
            .map(|g| g.restrict(points, &index))
            .collect();
        PermGroup::new(points.len(), gens)
    }

    pub(crate) fn point_index(&self, points: &[usize]) -> Result<Vec<Option<usize>>> {
        let mut index = vec![None; self.degree];
        for (i, &p) in points.iter().enumerate() {
            if p >= self.degree {
                return Err(Error::PointOutOfRange {
                    point: p,
                    degree: self.degree,
                });
            }
            index[p] = Some(i);
        }
        for g in &self.gens {
            if points.iter().any(|&p| index[g.apply(p)].is_none()) {
                return Err(Error::Precondition(
                    "restriction to a point set that is not invariant".into(),
                ));
            }
        }
        Ok(index)
    }

    /// Exact minimal degree by enumerating at most `cap` elements.
    pub fn minimal_degree(&self, cap: u128) -> Result<MinDegree> {
        if self.is_trivial() {
            return Ok(MinDegree::Infinity);
        }
        let mut best = usize::MAX;
        for g in self.elements(cap)? {
            let s = g.support_size();
            if s > 0 && s < best {
                best = s;
                if best == 2 {
                    break;
                }
            }
        }
        Ok(MinDegree::Finite(best))
    }

    /// Smallest support among generators and a deterministic sample of
    /// elements. Always an upper bound on the minimal degree.
    pub fn minimal_degree_estimate(&self, samples: usize, seed: u64) -> MinDegree {
        use rand::SeedableRng;
        if self.is_trivial() {
            return MinDegree::Infinity;
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut best = self
            .gens
            .iter()
            .map(Permutation::support_size)
            .min()
            .unwrap_or(usize::MAX);
        for _ in 0..samples {
            let g = self.random_element(&mut rng);
            // Powers of an element move a subset of its support.
            let ord = g.order();
            for p in prime_factors(ord) {
                let h = g.pow(ord / p);
                best = best.min(h.support_size());
            }
        }
        MinDegree::Finite(best)
    }

    /// Direct product acting on the disjoint union of the two domains.
    pub fn direct_product(&self, other: &PermGroup) -> PermGroup {
        let n = self.degree;
        let m = other.degree;
        let mut gens: Vec<Permutation> = self
            .gens
            .iter()
            .map(|g| g.juxtapose(&Permutation::identity(m)))
            .collect();
        gens.extend(
            other
                .gens
                .iter()
                .map(|g| Permutation::identity(n).juxtapose(g)),
        );
        PermGroup::from_parts(n + m, gens)
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup(degree {}, gens [", self.degree)?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "])")
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Iterator over all elements of a group, built from materialized transversals.
#[derive(Debug)]
pub struct Elements {
    degree: usize,
    transversals: Vec<Vec<Permutation>>,
    counters: Vec<usize>,
    done: bool,
}

impl Elements {
    fn new(degree: usize, transversals: Vec<Vec<Permutation>>) -> Self {
        let counters = vec![0; transversals.len()];
        Elements {
            degree,
            transversals,
            counters,
            done: false,
        }
    }
}

impl Iterator for Elements {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        // g = u_{m-1} · … · u_1 · u_0
        let mut g = Permutation::identity(self.degree);
        for (level, &c) in self.counters.iter().enumerate().rev() {
            g = g.then(&self.transversals[level][c]);
        }
        let mut i = 0;
        loop {
            if i == self.counters.len() {
                self.done = true;
                break;
            }
            self.counters[i] += 1;
            if self.counters[i] < self.transversals[i].len() {
                break;
            }
            self.counters[i] = 0;
            i += 1;
        }
        Some(g)
    }
}
