//! Normal structure: normal closures, derived series, perfect core and
//! nonabelian simple quotients.

use std::collections::{HashMap, HashSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::perm::Permutation;

use super::{GroupHom, PermGroup};

/// Default cap on the group order for [`PermGroup::simple_quotient_epi`].
pub const NORMAL_STRUCTURE_CAP: u128 = 1_000_000;

impl PermGroup {
    /// The smallest normal subgroup of `self` containing `elems`.
    pub fn normal_closure(&self, elems: &[Permutation]) -> PermGroup {
        let mut gens: Vec<Permutation> = elems.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut n = self.subgroup(gens.clone());
        let mut i = 0;
        while i < gens.len() {
            for g in self.generators() {
                let c = gens[i].conjugate_by(g);
                if !n.contains(&c) {
                    gens.push(c);
                    n = self.subgroup(gens.clone());
                }
            }
            i += 1;
        }
        n
    }

    /// Whether `self` is a normal subgroup of `g`.
    pub fn is_normal_in(&self, g: &PermGroup) -> bool {
        self.is_subgroup_of(g)
            && self
                .generators()
                .iter()
                .all(|x| g.generators().iter().all(|y| self.contains(&x.conjugate_by(y))))
    }

    /// `G′`, the normal closure of the commutators of generators.
    pub fn derived_subgroup(&self) -> PermGroup {
        let gens = self.generators();
        let mut comms = Vec::new();
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                let c = a.commutator(b);
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
    }

    /// `G = G⁽⁰⁾ > G⁽¹⁾ > …`, ending at the first term equal to its derived subgroup.
    pub fn derived_series(&self) -> Vec<PermGroup> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().unwrap();
            let next = last.derived_subgroup();
            if next.order() == last.order() {
                return series;
            }
            series.push(next);
        }
    }

    /// Derived length of a solvable group; `None` if the group is not solvable.
    pub fn derived_length(&self) -> Option<usize> {
        let series = self.derived_series();
        series
            .last()
            .unwrap()
            .is_trivial_order()
            .then(|| series.len() - 1)
    }

    fn is_trivial_order(&self) -> bool {
        self.order() == 1
    }

    pub fn is_solvable(&self) -> bool {
        self.perfect_core().is_trivial_order()
    }

    /// `G^(∞)`, where the derived series stabilizes.
    pub fn perfect_core(&self) -> PermGroup {
        self.derived_series().pop().unwrap()
    }

    pub fn is_perfect(&self) -> bool {
        self.derived_subgroup().order() == self.order()
    }

    /// One representative of each conjugacy class, found by enumerating the group.
    pub fn conjugacy_class_reps(&self, cap: u128) -> Result<Vec<Permutation>> {
        let mut seen: HashSet<Permutation> = HashSet::new();
        let mut reps = Vec::new();
        for x in self.elements(cap)? {
            if seen.contains(&x) {
                continue;
            }
            reps.push(x.clone());
            seen.insert(x.clone());
            let mut stack = vec![x];
            while let Some(y) = stack.pop() {
                for g in self.generators() {
                    let z = y.conjugate_by(g);
                    if seen.insert(z.clone()) {
                        stack.push(z);
                    }
                }
            }
        }
        Ok(reps)
    }

    /// Whether the group is nonabelian simple, decided from its conjugacy classes.
    pub fn is_nonabelian_simple(&self, cap: u128) -> Result<bool> {
        if self.order() == 1 || self.is_abelian() {
            return Ok(false);
        }
        let order = self.order();
        for r in self.conjugacy_class_reps(cap)? {
            if !r.is_identity() && self.normal_closure(&[r]).order() < order {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `O_p(G)`, the largest normal `p`-subgroup: generated by the
    /// conjugacy classes whose normal closure is a `p`-group.
    pub fn largest_normal_p_subgroup(&self, p: u128, cap: u128) -> Result<PermGroup> {
        let is_p_power = |mut m: u128| {
            while m % p == 0 {
                m /= p;
            }
            m == 1
        };
        let mut gens = Vec::new();
        for r in self.conjugacy_class_reps(cap)? {
            if !r.is_identity() && is_p_power(self.normal_closure(&[r.clone()]).order()) {
                gens.push(r);
            }
        }
        Ok(self.normal_closure(&gens))
    }

    /// An epimorphism from the perfect core `P` onto a nonabelian simple group
    /// `P/K`, or `None` if the group is solvable.
    ///
    /// `K` is grown greedily from normal closures; it is maximal once every
    /// conjugacy class of `P` outside `K` normally generates `P` together
    /// with `K`. The quotient is realized as the action of `P` on the right
    /// cosets of `M = ⟨K, P_(b_1..b_j)⟩` for the shortest base prefix making
    /// `M` proper; the core of `M` is `K` because `K` is maximal normal.
    pub fn simple_quotient_epi(&self, cap: u128) -> Result<Option<GroupHom>> {
        let p = self.perfect_core();
        let order = p.order();
        if order == 1 {
            return Ok(None);
        }
        if order > cap {
            return Err(Error::CapExceeded {
                what: "normal structure",
                cap,
            });
        }
        let mut k = p.subgroup(Vec::new());
        let grow = |k: &mut PermGroup, x: &Permutation| -> bool {
            if k.contains(x) {
                return false;
            }
            let mut gens = k.generators().to_vec();
            gens.push(x.clone());
            let m = p.normal_closure(&gens);
            if m.order() < order {
                *k = m;
                true
            } else {
                false
            }
        };
        // Cheap candidates first; they usually reach a maximal K at once.
        let mut rng = ChaCha8Rng::seed_from_u64(0x6b65_726e);
        let mut quick: Vec<Permutation> = p.generators().to_vec();
        quick.extend((0..16).map(|_| p.random_element(&mut rng)));
        for x in &quick {
            grow(&mut k, x);
        }
        let reps = p.conjugacy_class_reps(cap)?;
        loop {
            let mut changed = false;
            for r in &reps {
                changed |= grow(&mut k, r);
            }
            if !changed {
                break;
            }
        }
        if k.order() == 1 {
            return Ok(Some(GroupHom::identity(&p)));
        }
        let base = p.chain().base();
        for j in 1..=base.len() {
            let mut gens = k.generators().to_vec();
            gens.extend_from_slice(p.pointwise_stabilizer(&base[..j])?.generators());
            let m = p.subgroup(gens);
            if m.order() < order {
                return Ok(Some(coset_action(&p, &m)));
            }
        }
        unreachable!("the full base prefix gives M = K")
    }
}

/// The action of `p` on the right cosets of its subgroup `k`.
fn coset_action(p: &PermGroup, k: &PermGroup) -> GroupHom {
    let canon = |h: &Permutation| -> Permutation {
        let chain = k.chain();
        let mut h = h.clone();
        for level in &chain.levels {
            let y = *level
                .orbit
                .iter()
                .min_by_key(|&&y| h.apply(y))
                .expect("orbit contains the base point");
            h = level.transversal(y).then(&h);
        }
        h
    };
    let id = canon(&p.identity());
    let mut reps = vec![id.clone()];
    let mut index: HashMap<Permutation, usize> = HashMap::from([(id, 0)]);
    let mut images: Vec<Vec<u32>> = vec![Vec::new(); p.generators().len()];
    let mut j = 0;
    while j < reps.len() {
        for (gi, g) in p.generators().iter().enumerate() {
            let c = canon(&reps[j].then(g));
            let next = index.len();
            let t = *index.entry(c.clone()).or_insert_with(|| {
                reps.push(c);
                next
            });
            images[gi].push(t as u32);
        }
        j += 1;
    }
    let degree = reps.len();
    let images: Vec<Permutation> = images.into_iter().map(Permutation::from_raw).collect();
    let target = PermGroup::from_parts(degree, images.clone());
    GroupHom::trusted(p, &target, images)
}

/// Index `i` such that `ker(homs[i]) ≤ k`.
pub fn subdirect_find_factor(homs: &[GroupHom], k: &PermGroup) -> Result<usize> {
    homs.iter()
        .position(|h| h.kernel().is_subgroup_of(k))
        .ok_or_else(|| {
            Error::InvariantViolation("no factor kernel is contained in the given subgroup".into())
        })
}
