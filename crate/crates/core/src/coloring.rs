//! Colorings, their stabilizers, and searches for asymmetric and solvable colorings.
//!
//! A subset `Δ` is identified with the 2-coloring that gives `Δ` color 1
//! and everything else color 0; its stabilizer is the setwise stabilizer
//! `G_Δ`.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::backtrack::{color_stabilizer, color_transporter};
use crate::error::{Error, Result};
use crate::group::{MinDegree, PermGroup, ELEMENT_CAP};
use crate::perm::Permutation;

/// A map from the points `0..n` to the colors `0..k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coloring {
    colors: Vec<usize>,
    k: usize,
}

impl Coloring {
    pub fn new(colors: Vec<usize>, k: usize) -> Result<Self> {
        if let Some(&c) = colors.iter().find(|&&c| c >= k) {
            return Err(Error::Precondition(format!("color {c} is outside 0..{k}")));
        }
        Ok(Coloring { colors, k })
    }

    /// Uses as many colors as the largest entry requires.
    pub fn from_colors(colors: Vec<usize>) -> Self {
        let k = colors.iter().copied().max().map_or(1, |m| m + 1);
        Coloring { colors, k }
    }

    pub fn uniform(n: usize) -> Self {
        Coloring {
            colors: vec![0; n],
            k: 1,
        }
    }

    /// The 2-coloring with `subset` in color 1.
    pub fn from_subset(n: usize, subset: &[usize]) -> Self {
        let mut colors = vec![0; n];
        for &x in subset {
            colors[x] = 1;
        }
        Coloring { colors, k: 2 }
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, x: usize) -> usize {
        self.colors[x]
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn degree(&self) -> usize {
        self.colors.len()
    }

    /// Points of color `c`, ascending.
    pub fn class(&self, c: usize) -> Vec<usize> {
        (0..self.colors.len()).filter(|&x| self.colors[x] == c).collect()
    }

    /// How many points get each color.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.k];
        for &c in &self.colors {
            m[c] += 1;
        }
        m
    }

    /// Number of colors actually used.
    pub fn used_colors(&self) -> usize {
        self.multiplicities().iter().filter(|&&m| m > 0).count()
    }

    pub fn is_uniform(&self) -> bool {
        self.used_colors() <= 1
    }

    /// `π(γ)`, the coloring with `π(γ)(π(x)) = γ(x)`.
    pub fn permuted(&self, pi: &Permutation) -> Coloring {
        let mut colors = vec![0; self.colors.len()];
        for (x, &c) in self.colors.iter().enumerate() {
            colors[pi.apply(x)] = c;
        }
        Coloring { colors, k: self.k }
    }

    /// Renames colors by `map[old] = new`.
    pub fn recolored(&self, map: &[usize]) -> Coloring {
        let k = map.iter().copied().max().map_or(1, |m| m + 1);
        Coloring {
            colors: self.colors.iter().map(|&c| map[c]).collect(),
            k,
        }
    }
}

fn check_degree(g: &PermGroup, n: usize) -> Result<()> {
    if g.degree() == n {
        Ok(())
    } else {
        Err(Error::DegreeMismatch {
            expected: g.degree(),
            found: n,
        })
    }
}

/// `G_Δ = {π ∈ G : π(Δ) = Δ}`.
pub fn setwise_stabilizer(g: &PermGroup, subset: &[usize]) -> Result<PermGroup> {
    if let Some(&x) = subset.iter().find(|&&x| x >= g.degree()) {
        return Err(Error::PointOutOfRange {
            point: x,
            degree: g.degree(),
        });
    }
    Ok(color_stabilizer(g, Coloring::from_subset(g.degree(), subset).colors()))
}

/// `G_γ = {π ∈ G : γ ∘ π = γ}`.
pub fn coloring_stabilizer(g: &PermGroup, gamma: &Coloring) -> Result<PermGroup> {
    check_degree(g, gamma.degree())?;
    Ok(color_stabilizer(g, gamma.colors()))
}

/// Oracle: the stabilizer by filtering every element of `G`.
pub fn brute_force_stabilizer(g: &PermGroup, gamma: &Coloring, cap: u128) -> Result<Vec<Permutation>> {
    check_degree(g, gamma.degree())?;
    let c = gamma.colors();
    Ok(g.elements(cap)?
        .filter(|p| (0..c.len()).all(|x| c[p.apply(x)] == c[x]))
        .collect())
}

/// Facts about one coloring's stabilizer.
#[derive(Clone, Debug)]
pub struct ColoringReport {
    pub stabilizer: PermGroup,
    pub asymmetric: bool,
    pub solvable: bool,
    /// Longest orbit of the stabilizer.
    pub orbit_bound: usize,
    /// `None` when the stabilizer is not solvable.
    pub derived_length: Option<usize>,
}

pub fn classify_coloring(g: &PermGroup, gamma: &Coloring) -> Result<ColoringReport> {
    let stabilizer = coloring_stabilizer(g, gamma)?;
    let derived_length = stabilizer.derived_length();
    let orbit_bound = stabilizer.orbits().iter().map(Vec::len).max().unwrap_or(0);
    Ok(ColoringReport {
        asymmetric: stabilizer.order() == 1,
        solvable: derived_length.is_some(),
        orbit_bound,
        derived_length,
        stabilizer,
    })
}

/// Caps and parallelism for exhaustive searches.
#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Largest number of subsets examined.
    pub subset_cap: u128,
    /// Largest number of canonical colorings examined.
    pub coloring_cap: u128,
    /// Worker threads for subset scans; results do not depend on it.
    pub threads: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            subset_cap: 1 << 24,
            coloring_cap: 100_000_000,
            threads: 1,
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// The `rank`-th `k`-subset of `0..n` in lexicographic order.
fn unrank_subset(n: usize, k: usize, mut rank: u128) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut x = 0;
    while out.len() < k {
        let rest = k - out.len() - 1;
        let count = binomial(n - x - 1, rest);
        if rank < count {
            out.push(x);
        } else {
            rank -= count;
        }
        x += 1;
    }
    out
}

/// First subset, by size and then lexicographically, whose setwise
/// stabilizer satisfies `accept`. Parallel chunks keep the first hit, so
/// the answer does not depend on the thread count.
fn first_subset(
    g: &PermGroup,
    opts: &SearchOptions,
    sizes: impl Iterator<Item = usize>,
    accept: &(dyn Fn(&PermGroup) -> bool + Sync),
) -> Result<Option<Vec<usize>>> {
    let n = g.degree();
    let mut examined: u128 = 0;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads.max(1))
        .build()
        .map_err(|e| Error::Io(e.to_string()))?;
    for s in sizes {
        let total = binomial(n, s);
        let mut start = 0u128;
        while start < total {
            let chunk = (total - start).min(4096);
            if examined + chunk > opts.subset_cap {
                return Err(Error::CapExceeded {
                    what: "subset search",
                    cap: opts.subset_cap,
                });
            }
            examined += chunk;
            let found = pool.install(|| {
                (start..start + chunk)
                    .into_par_iter()
                    .map(|r| unrank_subset(n, s, r))
                    .find_first(|subset| accept(&color_stabilizer(g, Coloring::from_subset(n, subset).colors())))
            });
            if found.is_some() {
                return Ok(found);
            }
            start += chunk;
        }
    }
    Ok(None)
}

/// The first subset (by size, then lexicographically) with trivial setwise
/// stabilizer, or `None` if an exhaustive scan proves there is none.
pub fn find_asymmetric_subset(g: &PermGroup, opts: &SearchOptions) -> Result<Option<Vec<usize>>> {
    // Complements have the same stabilizer, so sizes up to n/2 suffice.
    let n = g.degree();
    first_subset(g, opts, 0..=n / 2, &|s| s.order() == 1)
}

/// The first `size`-subset with trivial setwise stabilizer.
pub fn find_asymmetric_subset_of_size(
    g: &PermGroup,
    size: usize,
    opts: &SearchOptions,
) -> Result<Option<Vec<usize>>> {
    if size > g.degree() {
        return Ok(None);
    }
    first_subset(g, opts, std::iter::once(size), &|s| s.order() == 1)
}

/// Every size `j` for which some `j`-subset has trivial setwise stabilizer.
pub fn asymmetric_subset_sizes(g: &PermGroup, opts: &SearchOptions) -> Result<Vec<usize>> {
    let n = g.degree();
    let mut sizes = Vec::new();
    for j in 0..=n / 2 {
        if first_subset(g, opts, std::iter::once(j), &|s| s.order() == 1)?.is_some() {
            sizes.push(j);
            if n - j != j {
                sizes.push(n - j);
            }
        }
    }
    sizes.sort_unstable();
    Ok(sizes)
}

/// Restricted growth strings: colorings where color `c > 0` first appears
/// after color `c − 1`. Each partition into at most `k` classes occurs once.
///
/// Subtrees are cut with a monotone test: elements that fix every still
/// uncolored point and preserve the colors already assigned stabilize every
/// completion, so if that subgroup already violates `accept`, no
/// completion can satisfy it.
struct ColoringSearch<'a> {
    g: &'a PermGroup,
    k: usize,
    /// `tails[i]` is the pointwise stabilizer of `i..n`.
    tails: Vec<PermGroup>,
    accept: &'a dyn Fn(&PermGroup) -> bool,
    examined: u128,
    cap: u128,
}

impl ColoringSearch<'_> {
    fn run(&mut self, prefix: &mut Vec<usize>, used: usize) -> Result<Option<Vec<usize>>> {
        let n = self.g.degree();
        let i = prefix.len();
        if i == n {
            self.examined += 1;
            if self.examined > self.cap {
                return Err(Error::CapExceeded {
                    what: "coloring search",
                    cap: self.cap,
                });
            }
            let stab = color_stabilizer(self.g, prefix);
            return Ok((self.accept)(&stab).then(|| prefix.clone()));
        }
        if i > 0 && !self.tails[i].is_trivial() {
            // Uncolored points get private colors so they stay fixed.
            let mut colors = prefix.clone();
            colors.extend((0..n - i).map(|j| self.k + j));
            let sub = color_stabilizer(&self.tails[i], &colors);
            if !(self.accept)(&sub) {
                return Ok(None);
            }
        }
        for c in 0..(used + 1).min(self.k) {
            prefix.push(c);
            let found = self.run(prefix, used.max(c + 1))?;
            prefix.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}

/// First canonical coloring with at most `k` colors whose stabilizer
/// satisfies `accept`, which must be inherited by subgroups.
pub fn find_coloring(
    g: &PermGroup,
    k: usize,
    opts: &SearchOptions,
    accept: &dyn Fn(&PermGroup) -> bool,
) -> Result<Option<Coloring>> {
    let n = g.degree();
    let reversed: Vec<usize> = (0..n).rev().collect();
    let chain = g.chain_with_base(&reversed);
    // Stabilizer of n−1, …, i is the chain tail after n − i levels.
    let tails = (0..=n)
        .map(|i| g.subgroup(chain.stabilizer_gens(n - i)))
        .collect();
    let mut search = ColoringSearch {
        g,
        k: k.max(1),
        tails,
        accept,
        examined: 0,
        cap: opts.coloring_cap,
    };
    Ok(search
        .run(&mut Vec::with_capacity(n), 0)?
        .map(|colors| Coloring { colors, k: k.max(1) }))
}

/// Least `k` such that some `k`-coloring has trivial stabilizer.
pub fn asy_number(g: &PermGroup, opts: &SearchOptions) -> Result<usize> {
    let accept = |s: &PermGroup| s.order() == 1;
    for k in 1..=g.degree().max(1) {
        if find_coloring(g, k, opts, &accept)?.is_some() {
            return Ok(k);
        }
    }
    unreachable!("distinct colors give a trivial stabilizer")
}

/// Least `k` such that some `k`-coloring has solvable stabilizer.
pub fn solv_number(g: &PermGroup, opts: &SearchOptions) -> Result<usize> {
    let accept = |s: &PermGroup| s.is_solvable();
    for k in 1..=g.degree().max(1) {
        if find_coloring(g, k, opts, &accept)?.is_some() {
            return Ok(k);
        }
    }
    unreachable!("distinct colors give a trivial stabilizer")
}

/// Whether some `π ∈ G` carries `γ₁` to `γ₂`, i.e. `γ₂(π(x)) = γ₁(x)`.
pub fn colorings_isomorphic(g: &PermGroup, a: &Coloring, b: &Coloring) -> Result<bool> {
    check_degree(g, a.degree())?;
    check_degree(g, b.degree())?;
    Ok(color_transporter(g, a.colors(), b.colors()).is_some())
}

/// Result of random sampling for an asymmetric coloring.
#[derive(Clone, Debug)]
pub enum MotionOutcome {
    /// A coloring verified to have trivial stabilizer, and the trial it came from.
    Found { coloring: Coloring, trials: usize },
    /// No sample was asymmetric within the budget.
    Exhausted { trials: usize },
}

/// Outcome plus whether `d^{μ/2} ≥ |G|` held, which guarantees existence.
#[derive(Clone, Debug)]
pub struct MotionReport {
    pub outcome: MotionOutcome,
    pub bound_holds: bool,
    pub minimal_degree: MinDegree,
}

/// Whether `d^{μ/2} ≥ |G|`.
pub fn motion_bound_holds(d: usize, mu: MinDegree, order: u128) -> bool {
    match mu {
        MinDegree::Infinity => true,
        // d^{μ/2} ≥ |G|  ⇔  d^μ ≥ |G|², compared exactly when it fits.
        MinDegree::Finite(m) => match ((d as u128).checked_pow(m as u32), order.checked_mul(order)) {
            (Some(lhs), Some(rhs)) => lhs >= rhs,
            (None, Some(_)) => true,
            _ => m as f64 * (d as f64).log2() >= 2.0 * (order as f64).log2(),
        },
    }
}

/// Samples uniform `d`-colorings until one is asymmetric. Every returned
/// coloring is checked exactly.
pub fn motion_lemma_coloring(g: &PermGroup, d: usize, seed: u64, budget: usize) -> Result<MotionReport> {
    if d < 2 {
        return Err(Error::Precondition("the motion lemma needs d ≥ 2".into()));
    }
    let minimal_degree = g.minimal_degree(ELEMENT_CAP)?;
    let bound_holds = motion_bound_holds(d, minimal_degree, g.order());
    let n = g.degree();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 1..=budget {
        let colors: Vec<usize> = (0..n).map(|_| rng.random_range(0..d)).collect();
        if color_stabilizer(g, &colors).order() == 1 {
            return Ok(MotionReport {
                outcome: MotionOutcome::Found {
                    coloring: Coloring { colors, k: d },
                    trials: trial,
                },
                bound_holds,
                minimal_degree,
            });
        }
    }
    Ok(MotionReport {
        outcome: MotionOutcome::Exhausted { trials: budget },
        bound_holds,
        minimal_degree,
    })
}
