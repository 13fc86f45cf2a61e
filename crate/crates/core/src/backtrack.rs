//! Backtrack search for color-preserving elements.
//!
//! Elements of `G` are enumerated through a stabilizer chain whose base
//! begins with the points of every color class but one (a largest). An
//! element is fixed on the whole domain as soon as it is fixed on such a
//! prefix, since the remaining class has nowhere else to go. Each node
//! checks the colors of every point the chain has determined so far.

use crate::group::{PermGroup, StabChain};
use crate::perm::Permutation;

struct Search<'a> {
    chain: &'a StabChain,
    source: &'a [usize],
    target: &'a [usize],
    depth: usize,
    /// Points first fixed by the stabilizer of the first `j + 1` base points.
    newly_fixed: Vec<Vec<usize>>,
    initially_fixed: Vec<usize>,
}

fn color_prefix(source: &[usize]) -> Vec<usize> {
    let k = source.iter().copied().max().map_or(0, |m| m + 1);
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (x, &c) in source.iter().enumerate() {
        classes[c].push(x);
    }
    classes.retain(|c| !c.is_empty());
    classes.sort_by_key(Vec::len);
    classes.pop();
    classes.concat()
}

fn fixed_points(chain: &StabChain, level: usize, degree: usize) -> Vec<bool> {
    match chain.levels.get(level) {
        Some(l) => (0..degree).map(|x| l.gens.iter().all(|g| g.apply(x) == x)).collect(),
        None => vec![true; degree],
    }
}

impl<'a> Search<'a> {
    fn new(chain: &'a StabChain, source: &'a [usize], target: &'a [usize], depth: usize) -> Self {
        let n = source.len();
        let mut prev = fixed_points(chain, 0, n);
        let initially_fixed = (0..n).filter(|&x| prev[x]).collect();
        let mut newly_fixed = Vec::with_capacity(depth);
        for j in 0..depth {
            let next = fixed_points(chain, j + 1, n);
            newly_fixed.push((0..n).filter(|&x| next[x] && !prev[x]).collect());
            prev = next;
        }
        Search {
            chain,
            source,
            target,
            depth,
            newly_fixed,
            initially_fixed,
        }
    }

    fn root_ok(&self) -> bool {
        self.initially_fixed
            .iter()
            .all(|&x| self.target[x] == self.source[x])
    }

    /// Tries `g(b_j) = h(y)`; returns the extended partial element if consistent.
    fn extend(&self, j: usize, h: &Permutation, y: usize) -> Option<Permutation> {
        let level = &self.chain.levels[j];
        if self.target[h.apply(y)] != self.source[level.base_point] {
            return None;
        }
        let next = level.transversal(y).then(h);
        self.newly_fixed[j]
            .iter()
            .all(|&x| self.target[next.apply(x)] == self.source[x])
            .then_some(next)
    }

    /// First element below the node `(j, h)`, depth first.
    fn first_leaf(&self, j: usize, h: &Permutation) -> Option<Permutation> {
        if j == self.depth {
            return Some(h.clone());
        }
        for &y in &self.chain.levels[j].orbit {
            if let Some(next) = self.extend(j, h, y) {
                if let Some(found) = self.first_leaf(j + 1, &next) {
                    return Some(found);
                }
            }
        }
        None
    }
}

/// Chain of `g` whose base starts with the color prefix, plus the prefix length.
fn prefixed_chain(g: &PermGroup, prefix: &[usize]) -> (std::sync::Arc<StabChain>, usize) {
    let chain = g.chain_with_base(prefix);
    (chain, prefix.len())
}

/// `{g ∈ G : colors[g(x)] = colors[x] for all x}`.
pub(crate) fn color_stabilizer(g: &PermGroup, colors: &[usize]) -> PermGroup {
    let prefix = color_prefix(colors);
    if prefix.is_empty() || g.is_trivial() {
        return g.clone();
    }
    let (chain, depth) = prefixed_chain(g, &prefix);
    let search = Search::new(&chain, colors, colors, depth);
    let n = g.degree();
    let mut gens = chain.stabilizer_gens(depth);
    let mut k_chain = StabChain::schreier_sims(n, &gens, &prefix);
    for i in (0..depth).rev() {
        let level = &chain.levels[i];
        let b = level.base_point;
        let id = Permutation::identity(n);
        for &y in &level.orbit {
            if y == b || k_chain.levels[i].in_orbit(y) {
                continue;
            }
            let Some(next) = search.extend(i, &id, y) else {
                continue;
            };
            if let Some(found) = search.first_leaf(i + 1, &next) {
                gens.push(found);
                k_chain = StabChain::schreier_sims(n, &gens, &prefix);
            }
        }
    }
    let result = g.subgroup(gens);
    debug_assert_eq!(result.order(), k_chain.order());
    result
}

/// Some `g ∈ G` with `target[g(x)] = source[x]` for all `x`.
pub(crate) fn color_transporter(g: &PermGroup, source: &[usize], target: &[usize]) -> Option<Permutation> {
    let mut a = source.to_vec();
    let mut b = target.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return None;
    }
    let prefix = color_prefix(source);
    let (chain, depth) = prefixed_chain(g, &prefix);
    let search = Search::new(&chain, source, target, depth);
    if !search.root_ok() {
        return None;
    }
    search.first_leaf(0, &Permutation::identity(g.degree()))
}
