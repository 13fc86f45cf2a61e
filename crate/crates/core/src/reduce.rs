//! Subsets whose setwise stabilizer has a strictly smaller image under an
//! epimorphism onto a nonabelian simple (or nonsolvable) group.
//!
//! Small orbits are searched exhaustively first. Otherwise the search
//! follows the group structure: intransitive groups reduce to the orbit
//! whose restriction kernel lies in `ker φ`; imprimitive groups work
//! through the action on maximal blocks; primitive groups either embed in
//! the target or have a subset with solvable stabilizer.

use std::fmt;

use crate::coloring::{find_coloring, setwise_stabilizer, SearchOptions};
use crate::error::{Error, Result};
use crate::group::{subdirect_find_factor, GroupHom, PermGroup, NORMAL_STRUCTURE_CAP};

/// Which step of the structural recursion produced a subset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReductionPath {
    /// Exhaustive scan over subsets of one orbit.
    Brute,
    /// Restriction to an orbit whose pointwise stabilizer lies in the kernel.
    Intransitive,
    /// The kernel contains the kernel of the action on blocks.
    BlocksCase1,
    /// Block sizes encode a solvable 5-coloring of the blocks.
    BlocksCase2a,
    /// Primitive group isomorphic to the target: any nontrivial subset.
    AlmostSimple,
    /// Primitive group with a subset whose stabilizer is solvable.
    PrimitiveSolvable,
    /// Exhaustive scan over an orbit of any size, after the structural steps.
    Fallback,
}

impl fmt::Display for ReductionPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ReductionPath::Brute => "brute",
            ReductionPath::Intransitive => "intransitive",
            ReductionPath::BlocksCase1 => "blocks-case1",
            ReductionPath::BlocksCase2a => "blocks-case2a",
            ReductionPath::AlmostSimple => "almost-simple",
            ReductionPath::PrimitiveSolvable => "primitive-solvable",
            ReductionPath::Fallback => "fallback",
        };
        f.write_str(s)
    }
}

/// A subset together with the image orders it certifies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionWitness {
    pub subset: Vec<usize>,
    pub image_before: u128,
    pub image_after: u128,
    /// Outermost step first.
    pub path: Vec<ReductionPath>,
}

#[derive(Clone, Debug)]
pub struct ReduceOptions {
    pub search: SearchOptions,
    /// Try exhaustive search first on orbits up to this size.
    pub brute_force: bool,
    pub brute_force_max_orbit: usize,
    /// Cap on group orders for conjugacy-class based normal structure.
    pub group_cap: u128,
}

impl Default for ReduceOptions {
    fn default() -> Self {
        ReduceOptions {
            search: SearchOptions::default(),
            brute_force: true,
            brute_force_max_orbit: 24,
            group_cap: NORMAL_STRUCTURE_CAP,
        }
    }
}

impl ReduceOptions {
    /// Skip the exhaustive first step, so the structural recursion runs.
    pub fn structural() -> Self {
        ReduceOptions {
            brute_force: false,
            ..Self::default()
        }
    }
}

type Found = (Vec<usize>, Vec<ReductionPath>);

/// `|φ(G_Δ)|`.
fn image_order(phi: &GroupHom, subset: &[usize]) -> Result<u128> {
    let stab = setwise_stabilizer(phi.source(), subset)?;
    Ok(phi.image_of(&stab).order())
}

/// The map `Q → T` induced by `φ` when `ker q ≤ ker φ`.
fn factor_through(q: &GroupHom, phi: &GroupHom) -> GroupHom {
    let quotient = q.image_group();
    let images = quotient
        .generators()
        .iter()
        .map(|h| phi.apply(&q.lift(h)))
        .collect();
    GroupHom::trusted(&quotient, phi.target(), images)
}

/// Smallest subset of `orbit` (by size, then lexicographically) with
/// `|φ(G_Δ)| < bound`, examining at most `budget` subsets.
fn scan_orbit(phi: &GroupHom, orbit: &[usize], bound: u128, budget: &mut u128) -> Result<Option<Vec<usize>>> {
    let m = orbit.len();
    for size in 1..=m / 2 {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            if *budget == 0 {
                return Err(Error::CapExceeded {
                    what: "reduction subset scan",
                    cap: 0,
                });
            }
            *budget -= 1;
            let subset: Vec<usize> = idx.iter().map(|&i| orbit[i]).collect();
            if image_order(phi, &subset)? < bound {
                return Ok(Some(subset));
            }
            // Next combination in lexicographic order.
            let Some(pos) = (0..size).rev().find(|&i| idx[i] < m - size + i) else {
                break;
            };
            idx[pos] += 1;
            for j in pos + 1..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    Ok(None)
}

fn brute(phi: &GroupHom, opts: &ReduceOptions, max_orbit: usize, tag: ReductionPath) -> Result<Option<Found>> {
    let bound = phi.target().order();
    let mut orbits = phi.source().orbits();
    orbits.sort_by_key(Vec::len);
    let mut budget = opts.search.subset_cap;
    for orbit in orbits.iter().filter(|o| o.len() <= max_orbit) {
        match scan_orbit(phi, orbit, bound, &mut budget) {
            Ok(Some(s)) => return Ok(Some((s, vec![tag]))),
            Ok(None) => {}
            Err(e) if e.is_cap() => return Ok(None),
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

fn solve(phi: &GroupHom, opts: &ReduceOptions) -> Result<Found> {
    if opts.brute_force {
        if let Some(found) = brute(phi, opts, opts.brute_force_max_orbit, ReductionPath::Brute)? {
            return Ok(found);
        }
    }
    match structural(phi, opts) {
        Ok(Some(found)) => Ok(found),
        Ok(None) => brute(phi, opts, usize::MAX, ReductionPath::Fallback)?.ok_or(Error::CapExceeded {
            what: "reduction strategies",
            cap: opts.search.subset_cap,
        }),
        Err(e) if e.is_cap() => brute(phi, opts, usize::MAX, ReductionPath::Fallback)?.ok_or(e),
        Err(e) => Err(e),
    }
}

fn structural(phi: &GroupHom, opts: &ReduceOptions) -> Result<Option<Found>> {
    let g = phi.source();
    let orbits = g.orbits();
    if orbits.len() > 1 {
        let homs = orbits
            .iter()
            .map(|o| GroupHom::restriction(g, o))
            .collect::<Result<Vec<_>>>()?;
        let i = subdirect_find_factor(&homs, &phi.kernel())?;
        let (inner, mut path) = solve(&factor_through(&homs[i], phi), opts)?;
        path.insert(0, ReductionPath::Intransitive);
        return Ok(Some((inner.iter().map(|&x| orbits[i][x]).collect(), path)));
    }
    if g.is_primitive()? {
        return primitive(phi, opts).map(Some);
    }
    let system = g.maximal_blocks()?;
    let psi = g.action_on_blocks(&system)?;
    let n_kernel = psi.kernel();
    let blocks = system.blocks();
    if n_kernel.is_subgroup_of(&phi.kernel()) {
        let (inner, mut path) = primitive(&factor_through(&psi, phi), opts)?;
        path.insert(0, ReductionPath::BlocksCase1);
        let mut subset: Vec<usize> = inner.iter().flat_map(|&b| blocks[b].iter().copied()).collect();
        subset.sort_unstable();
        return Ok(Some((subset, path)));
    }
    let quotient = psi.image_group();
    let solvable = |s: &PermGroup| s.is_solvable();
    let Some(gamma) = find_coloring(&quotient, 5, &opts.search, &solvable)? else {
        // Only alternating or symmetric actions on at least 21 blocks get here.
        return Ok(None);
    };
    let on_n = phi.restrict_to(&n_kernel);
    let homs = blocks
        .iter()
        .map(|b| GroupHom::restriction(&n_kernel, b))
        .collect::<Result<Vec<_>>>()?;
    let i = subdirect_find_factor(&homs, &on_n.kernel())?;
    let (inner, mut path) = solve(&factor_through(&homs[i], &on_n), opts)?;
    path.insert(0, ReductionPath::BlocksCase2a);
    let t = inner.len();
    let sizes: Vec<usize> = (0..=5).filter(|&s| s != t).collect();
    let mut subset: Vec<usize> = inner.iter().map(|&x| blocks[i][x]).collect();
    for (j, block) in blocks.iter().enumerate() {
        if j != i {
            subset.extend(block.iter().take(sizes[gamma.color(j)]).copied());
        }
    }
    subset.sort_unstable();
    Ok(Some((subset, path)))
}

fn primitive(phi: &GroupHom, opts: &ReduceOptions) -> Result<Found> {
    let g = phi.source();
    if g.order() == phi.target().order() {
        return Ok((vec![0], vec![ReductionPath::AlmostSimple]));
    }
    let solvable = |s: &PermGroup| s.is_solvable();
    let gamma = find_coloring(g, 2, &opts.search, &solvable)?
        .ok_or_else(|| Error::InvariantViolation("primitive group without a solvable 2-coloring".into()))?;
    let mut class = gamma.class(1);
    if class.is_empty() {
        class = gamma.class(0);
    }
    Ok((class, vec![ReductionPath::PrimitiveSolvable]))
}

fn require_simple_epi(phi: &GroupHom, opts: &ReduceOptions) -> Result<()> {
    if !phi.is_epi() {
        return Err(Error::Precondition("map is not onto its target".into()));
    }
    if !phi.target().is_nonabelian_simple(opts.group_cap)? {
        return Err(Error::Precondition("target is not nonabelian simple".into()));
    }
    Ok(())
}

fn witness(phi: &GroupHom, (subset, path): Found) -> Result<ReductionWitness> {
    let image_before = phi.image_group().order();
    let image_after = image_order(phi, &subset)?;
    if image_after >= image_before {
        return Err(Error::InvariantViolation(format!(
            "subset {subset:?} does not shrink the image ({image_after} of {image_before})"
        )));
    }
    Ok(ReductionWitness {
        subset,
        image_before,
        image_after,
        path,
    })
}

/// `Δ` inside one orbit of `G` with `φ(G_Δ) < T`, for `φ: G ↠ T` nonabelian simple.
pub fn reduce_simple_image(phi: &GroupHom, opts: &ReduceOptions) -> Result<ReductionWitness> {
    require_simple_epi(phi, opts)?;
    let found = solve(phi, opts)?;
    let w = witness(phi, found)?;
    let orbit = phi.source().orbit(w.subset[0]);
    if !w.subset.iter().all(|x| orbit.contains(x)) {
        return Err(Error::InvariantViolation("subset meets two orbits".into()));
    }
    Ok(w)
}

/// The primitive case on its own.
pub fn primitive_reduce(phi: &GroupHom, opts: &ReduceOptions) -> Result<ReductionWitness> {
    if !phi.source().is_primitive()? {
        return Err(Error::Precondition("group is not primitive".into()));
    }
    require_simple_epi(phi, opts)?;
    let found = primitive(phi, opts)?;
    witness(phi, found)
}

/// `Δ` with `φ(G_Δ) < H` for `φ` onto a nonsolvable group `H`: reduce a
/// simple quotient of the perfect core and pull back.
pub fn reduce_nonsolvable_image(phi: &GroupHom, opts: &ReduceOptions) -> Result<ReductionWitness> {
    let h = phi.image_group();
    let h_core = h.perfect_core();
    let Some(psi) = h_core.simple_quotient_epi(opts.group_cap)? else {
        return Err(Error::Precondition("image is solvable".into()));
    };
    let g_core = phi.source().perfect_core();
    let images = g_core
        .generators()
        .iter()
        .map(|x| psi.apply(&phi.apply(x)))
        .collect();
    let xi = GroupHom::trusted(&g_core, psi.target(), images);
    let inner = reduce_simple_image(&xi, opts)?;
    let image_after = image_order(phi, &inner.subset)?;
    if image_after >= h.order() {
        return Err(Error::InvariantViolation("pulled-back subset does not shrink the image".into()));
    }
    Ok(ReductionWitness {
        subset: inner.subset,
        image_before: h.order(),
        image_after,
        path: inner.path,
    })
}
