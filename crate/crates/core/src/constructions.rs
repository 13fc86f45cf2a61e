//! Explicit subsets and colorings with small or structured stabilizers.
//!
//! The affine, projective and Mathieu subsets have solvable setwise
//! stabilizers in the full ambient group. The remaining constructions work
//! for an arbitrary solvable group: orbit transversals of abelian groups,
//! derived-length descent, asymmetric colorings with at most five colors,
//! and subsets whose stabilizer has short orbits.

use crate::coloring::{
    asymmetric_subset_sizes, coloring_stabilizer, find_asymmetric_subset, find_asymmetric_subset_of_size,
    find_coloring, setwise_stabilizer, Coloring, SearchOptions,
};
use crate::error::{Error, Result};
use crate::geometry::{AffineContext, ProjectiveContext};
use crate::group::{construct, BlockSystem, PermGroup};
use crate::perm::Permutation;
use crate::refine::{automorphism_group, ColoredDigraph};

/// `{e_0, …}` for the affine space, as sorted point indices.
pub fn affine_solvable_subset(ctx: &AffineContext) -> Vec<usize> {
    let d = ctx.dimension();
    let p = ctx.p();
    let e = |i: usize| ctx.e(i);
    let neg = |v: Vec<usize>| ctx.scale(p - 1, &v);
    let mut vectors: Vec<Vec<usize>> = match d {
        1 => Vec::new(),
        2 => vec![e(0), e(1)],
        3..=6 => {
            let mut v = vec![e(0), e(1), e(2), ctx.add(&e(1), &e(2))];
            v.extend((3..=d).map(e));
            v
        }
        _ => {
            let mut v: Vec<Vec<usize>> = (0..=d)
                .map(|i| if i % 2 == 1 { e(i) } else { neg(e(i)) })
                .collect();
            let k = (d - 1) / 2;
            for i in 1..=k {
                v.push(ctx.add(&ctx.add(&e(2 * i - 1), &e(2 * i)), &e(2 * i + 1)));
            }
            v
        }
    };
    let mut points: Vec<usize> = vectors.drain(..).map(|v| ctx.point(&v)).collect();
    points.sort_unstable();
    points.dedup();
    points
}

/// All 4-subsets `{a, b, c, d}` of `subset` with `a + b = c + d` for some
/// pairing; each is returned sorted.
pub fn affine_sum_quadruples(ctx: &AffineContext, subset: &[usize]) -> Vec<[usize; 4]> {
    let vecs: Vec<Vec<usize>> = subset.iter().map(|&x| ctx.vector(x)).collect();
    let sum = |i: usize, j: usize| ctx.add(&vecs[i], &vecs[j]);
    let m = subset.len();
    let mut out = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                for d in c + 1..m {
                    if sum(a, b) == sum(c, d) || sum(a, c) == sum(b, d) || sum(a, d) == sum(b, c) {
                        let mut q = [subset[a], subset[b], subset[c], subset[d]];
                        q.sort_unstable();
                        out.push(q);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// The quadruples the construction predicts for `d ≥ 7`, or the single
/// `{e_0, e_1, e_2, e_1 + e_2}` for `3 ≤ d ≤ 6`.
pub fn affine_expected_quadruples(ctx: &AffineContext) -> Vec<[usize; 4]> {
    let d = ctx.dimension();
    let p = ctx.p();
    let e = |i: usize| ctx.e(i);
    let mut out: Vec<[usize; 4]> = match d {
        0..=2 => Vec::new(),
        3..=6 => vec![[
            ctx.point(&e(0)),
            ctx.point(&e(1)),
            ctx.point(&e(2)),
            ctx.point(&ctx.add(&e(1), &e(2))),
        ]],
        _ => (1..=(d - 1) / 2)
            .map(|i| {
                let s = ctx.add(&ctx.add(&e(2 * i - 1), &e(2 * i)), &e(2 * i + 1));
                [
                    ctx.point(&e(2 * i - 1)),
                    ctx.point(&ctx.scale(p - 1, &e(2 * i))),
                    ctx.point(&e(2 * i + 1)),
                    ctx.point(&s),
                ]
            })
            .collect(),
    };
    for q in &mut out {
        q.sort_unstable();
    }
    out.sort_unstable();
    out
}

/// Graph on `subset` (vertices in the given order) joining two points when
/// some sum quadruple contains both.
pub fn affine_quadruple_graph(ctx: &AffineContext, subset: &[usize]) -> ColoredDigraph {
    let pos = |x: usize| subset.iter().position(|&y| y == x).expect("quadruple inside subset");
    let mut edges = Vec::new();
    for q in affine_sum_quadruples(ctx, subset) {
        for i in 0..4 {
            for j in i + 1..4 {
                edges.push((pos(q[i]), pos(q[j])));
            }
        }
    }
    ColoredDigraph::from_edges(subset.len(), &edges, None)
}

/// Order of the automorphism group of the quadruple graph, and the index
/// of its largest normal 2-subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GadgetStructure {
    pub automorphism_order: u128,
    pub normal_two_subgroup_index: u128,
}

pub fn affine_gadget_structure(ctx: &AffineContext) -> Result<GadgetStructure> {
    let subset = affine_solvable_subset(ctx);
    let aut = automorphism_group(&affine_quadruple_graph(ctx, &subset), 1 << 22)?;
    let o2 = aut.largest_normal_p_subgroup(2, crate::group::ELEMENT_CAP)?;
    Ok(GadgetStructure {
        automorphism_order: aut.order(),
        normal_two_subgroup_index: aut.order() / o2.order(),
    })
}

fn projective_points(ctx: &ProjectiveContext, vectors: &[Vec<usize>]) -> Vec<usize> {
    let mut points: Vec<usize> = vectors
        .iter()
        .map(|v| ctx.point(v).expect("nonzero vector"))
        .collect();
    points.sort_unstable();
    points
}

/// A subset of projective space whose stabilizer in PSL(d, q) is solvable.
pub fn projective_solvable_subset(ctx: &ProjectiveContext) -> Vec<usize> {
    let d = ctx.dimension();
    let e = |i: usize| ctx.e(i);
    let f = (2..=d).fold(e(1), |acc, i| ctx.add(&acc, &e(i)));
    let vectors: Vec<Vec<usize>> = match d {
        2 => vec![e(1)],
        3 => vec![e(1), e(2), e(3), f],
        _ => {
            let mut v: Vec<Vec<usize>> = (1..=d).map(e).collect();
            v.extend((1..d).map(|i| ctx.add(&e(i), &e(i + 1))));
            v.push(f);
            v
        }
    };
    projective_points(ctx, &vectors)
}

fn rank(ctx: &ProjectiveContext, rows: &[&[usize]]) -> usize {
    let f = ctx.field();
    let mut m: Vec<Vec<usize>> = rows.iter().map(|r| r.to_vec()).collect();
    let cols = ctx.dimension();
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pivot);
        let inv = f.inv(m[r][c]);
        let row: Vec<usize> = m[r].iter().map(|&x| f.mul(inv, x)).collect();
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let factor = m[i][c];
                for j in 0..cols {
                    m[i][j] = f.sub(m[i][j], f.mul(factor, row[j]));
                }
            }
        }
        m[r] = row;
        r += 1;
    }
    r
}

/// All linearly dependent triples of distinct points in `subset`, sorted.
pub fn projective_dependent_triples(ctx: &ProjectiveContext, subset: &[usize]) -> Vec<[usize; 3]> {
    let m = subset.len();
    let mut out = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                let rows = [subset[a], subset[b], subset[c]].map(|x| ctx.representative(x));
                if rank(ctx, &rows) < 3 {
                    let mut t = [subset[a], subset[b], subset[c]];
                    t.sort_unstable();
                    out.push(t);
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// The dependent triples predicted for `d ≥ 4`.
pub fn projective_expected_triples(ctx: &ProjectiveContext) -> Vec<[usize; 3]> {
    let d = ctx.dimension();
    if d < 4 {
        return Vec::new();
    }
    let e = |i: usize| ctx.e(i);
    let pt = |v: &[usize]| ctx.point(v).expect("nonzero vector");
    let mut out: Vec<[usize; 3]> = (1..d)
        .map(|i| [pt(&e(i)), pt(&e(i + 1)), pt(&ctx.add(&e(i), &e(i + 1)))])
        .collect();
    if d == 4 {
        let f = (2..=4).fold(e(1), |acc, i| ctx.add(&acc, &e(i)));
        out.push([pt(&ctx.add(&e(1), &e(2))), pt(&ctx.add(&e(3), &e(4))), pt(&f)]);
    }
    for t in &mut out {
        t.sort_unstable();
    }
    out.sort_unstable();
    out
}

/// The first `2 + k` points for `M_{m+k}`, and `{0, …, 9}` for M24.
pub fn mathieu_solvable_subset(name: &str) -> Result<Vec<usize>> {
    let degree: usize = name
        .strip_prefix('M')
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::UnknownGroup(name.to_string()))?;
    let size = match degree {
        11 | 12 => 2 + degree - 10,
        22 | 23 => 2 + degree - 21,
        24 => 10,
        _ => return Err(Error::UnknownGroup(name.to_string())),
    };
    Ok((0..size).collect())
}

/// The smallest point of every orbit; its stabilizer in an abelian group is trivial.
pub fn abelian_asymmetric_subset(g: &PermGroup) -> Result<Vec<usize>> {
    if !g.is_abelian() {
        return Err(Error::Precondition("group is not abelian".into()));
    }
    let mut points: Vec<usize> = g.orbits().iter().map(|o| o[0]).collect();
    points.sort_unstable();
    Ok(points)
}

/// A subset whose stabilizer has smaller derived length, taken as an
/// orbit transversal of the last nontrivial derived subgroup.
pub fn derived_length_reduction(g: &PermGroup) -> Result<Vec<usize>> {
    if g.order() == 1 {
        return Err(Error::Precondition("group is trivial".into()));
    }
    let series = g.derived_series();
    if series.last().unwrap().order() != 1 {
        return Err(Error::Precondition("group is not solvable".into()));
    }
    let h = &series[series.len() - 2];
    abelian_asymmetric_subset(h)
}

fn require_solvable(g: &PermGroup) -> Result<()> {
    if g.is_solvable() {
        Ok(())
    } else {
        Err(Error::Precondition("group is not solvable".into()))
    }
}

/// For each block, an element carrying the first block onto it.
fn block_transporters(g: &PermGroup, system: &BlockSystem) -> Result<Vec<Permutation>> {
    let b0 = system.blocks()[0][0];
    system
        .blocks()
        .iter()
        .map(|b| {
            g.element_mapping(b0, b[0])
                .ok_or_else(|| Error::InvariantViolation("blocks of a transitive group".into()))
        })
        .collect()
}

/// The stabilizer of the first block, restricted to it.
fn block_group(g: &PermGroup, system: &BlockSystem) -> Result<PermGroup> {
    let b0 = &system.blocks()[0];
    setwise_stabilizer(g, b0)?.restrict(b0)
}

/// Identify a primitive solvable group of degree `p^d` with a subgroup of
/// AGL(d, p): colour the origin and a basis of its translation subgroup.
fn affine_base_coloring(g: &PermGroup) -> Result<Coloring> {
    let n = g.degree();
    let series = g.derived_series();
    let socle = &series[series.len() - 2];
    if socle.order() != n as u128 || !socle.is_abelian() {
        return Err(Error::InvariantViolation(
            "primitive solvable group without a regular abelian socle".into(),
        ));
    }
    let mut colors = vec![0; n];
    colors[0] = 1;
    let mut chosen: Vec<Permutation> = Vec::new();
    let mut span = vec![0usize];
    while span.len() < n {
        let x = (0..n).find(|x| !span.contains(x)).unwrap();
        let t = socle.element_mapping(0, x).expect("socle is transitive");
        chosen.push(t);
        colors[x] = chosen.len() + 1;
        span = PermGroup::from_parts(n, chosen.clone()).orbit(0);
    }
    Ok(Coloring::from_colors(colors))
}

fn asymmetric(g: &PermGroup, gamma: &Coloring) -> Result<bool> {
    Ok(coloring_stabilizer(g, gamma)?.order() == 1)
}

fn primitive_five_coloring(g: &PermGroup, opts: &SearchOptions) -> Result<Coloring> {
    let n = g.degree();
    if n >= 10 {
        match find_asymmetric_subset(g, opts) {
            Ok(Some(s)) if !s.is_empty() => return Ok(Coloring::from_subset(n, &s)),
            Ok(_) => {}
            Err(e) if e.is_cap() => {}
            Err(e) => return Err(e),
        }
    }
    let gamma = affine_base_coloring(g)?;
    if gamma.used_colors() <= 5 {
        return Ok(gamma);
    }
    find_coloring(g, 5, opts, &|s| s.order() == 1)?
        .ok_or_else(|| Error::InvariantViolation("no asymmetric 5-coloring found".into()))
}

/// Color permutations of `gamma` that are pairwise non-isomorphic under `h`,
/// one for each of the five colors.
fn five_types(h: &PermGroup, gamma: &Coloring) -> Result<Vec<Coloring>> {
    let mut kept: Vec<Coloring> = Vec::new();
    let mut perm = [0usize, 1, 2, 3, 4];
    loop {
        let candidate = Coloring::new(gamma.colors().iter().map(|&c| perm[c]).collect(), 5)?;
        let mut fresh = true;
        for k in &kept {
            if crate::coloring::colorings_isomorphic(h, k, &candidate)? {
                fresh = false;
                break;
            }
        }
        if fresh {
            kept.push(candidate);
            if kept.len() == 5 {
                return Ok(kept);
            }
        }
        if !next_permutation(&mut perm) {
            return Err(Error::InvariantViolation(
                "fewer than five non-isomorphic recolorings".into(),
            ));
        }
    }
}

fn next_permutation(a: &mut [usize]) -> bool {
    let Some(i) = (1..a.len()).rev().find(|&i| a[i - 1] < a[i]) else {
        return false;
    };
    let j = (i..a.len()).rev().find(|&j| a[j] > a[i - 1]).unwrap();
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

fn five_coloring_rec(g: &PermGroup, opts: &SearchOptions) -> Result<Coloring> {
    let n = g.degree();
    if g.order() == 1 {
        return Ok(Coloring::from_colors(vec![0; n]));
    }
    let orbits = g.orbits();
    if orbits.len() > 1 {
        let mut colors = vec![0; n];
        for orbit in &orbits {
            let part = five_coloring_rec(&g.restrict(orbit)?, opts)?;
            for (i, &x) in orbit.iter().enumerate() {
                colors[x] = part.color(i);
            }
        }
        return Ok(Coloring::from_colors(colors));
    }
    let system = g.minimal_blocks()?;
    if system.count() == n {
        return primitive_five_coloring(g, opts);
    }
    let h = block_group(g, &system)?;
    let types = five_types(&h, &five_coloring_rec(&h, opts)?)?;
    let action = g.action_on_blocks(&system)?;
    let block_colors = five_coloring_rec(&action.image_group(), opts)?;
    let transporters = block_transporters(g, &system)?;
    let b0 = &system.blocks()[0];
    let mut colors = vec![0; n];
    for (i, t) in transporters.iter().enumerate() {
        let ty = &types[block_colors.color(i)];
        for (j, &x) in b0.iter().enumerate() {
            colors[t.apply(x)] = ty.color(j);
        }
    }
    Ok(Coloring::from_colors(colors))
}

/// An asymmetric coloring with at most five colors of a solvable group.
pub fn solvable_asymmetric_5coloring(g: &PermGroup, opts: &SearchOptions) -> Result<Coloring> {
    require_solvable(g)?;
    let gamma = five_coloring_rec(g, opts)?;
    if gamma.used_colors() > 5 || !asymmetric(g, &gamma)? {
        return Err(Error::InvariantViolation(
            "constructed coloring is not an asymmetric 5-coloring".into(),
        ));
    }
    Ok(gamma)
}

/// Sizes of the asymmetric subsets of a primitive solvable group.
pub fn asymmetric_size_catalog(g: &PermGroup, opts: &SearchOptions) -> Result<Vec<usize>> {
    require_solvable(g)?;
    if !g.is_primitive()? {
        return Err(Error::Precondition("group is not primitive".into()));
    }
    asymmetric_subset_sizes(g, opts)
}

/// How one transitive constituent was handled by [`bounded_orbit_subset`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitCase {
    /// Regular abelian action: one point.
    Abelian,
    /// Primitive action with an asymmetric subset.
    Primitive,
    /// Block coloring encoded by subset sizes `0..=4` in blocks of size `t ≥ 4`.
    SmallSizes { block_size: usize },
    /// Block coloring encoded by five sizes of asymmetric subsets of a block.
    AsymmetricSizes { block_size: usize, sizes: [usize; 5] },
    /// Union of blocks lifted from the action on blocks of size 2 or 3.
    Lifted { block_size: usize, inner: Box<OrbitCase> },
    /// Exhaustive minimization of the longest stabilizer orbit.
    Exhaustive,
}

/// Result of [`bounded_orbit_subset`].
#[derive(Clone, Debug)]
pub struct BoundedOrbits {
    pub subset: Vec<usize>,
    /// Longest orbit of the setwise stabilizer.
    pub bound: usize,
    /// Derived length of the setwise stabilizer.
    pub derived_length: usize,
    /// One entry per orbit of the group, in orbit order.
    pub cases: Vec<OrbitCase>,
}

fn max_orbit(g: &PermGroup) -> usize {
    g.orbits().iter().map(Vec::len).max().unwrap_or(0)
}

fn exhaustive_min_orbits(g: &PermGroup, opts: &SearchOptions) -> Result<Vec<usize>> {
    let n = g.degree();
    if n > 40 || (1u128 << n) > opts.subset_cap {
        return Err(Error::CapExceeded {
            what: "exhaustive orbit minimization",
            cap: opts.subset_cap,
        });
    }
    let mut best: Option<(usize, Vec<usize>)> = None;
    for mask in 0u64..(1u64 << n) {
        let subset: Vec<usize> = (0..n).filter(|&x| mask >> x & 1 == 1).collect();
        if subset.len() * 2 > n {
            continue;
        }
        let m = max_orbit(&setwise_stabilizer(g, &subset)?);
        if best.as_ref().is_none_or(|(b, s)| m < *b || (m == *b && subset < *s)) {
            best = Some((m, subset));
            if m == 1 {
                break;
            }
        }
    }
    Ok(best.map(|(_, s)| s).unwrap_or_default())
}

/// Transitive case; points are `0..g.degree()`.
fn bounded_transitive(g: &PermGroup, opts: &SearchOptions) -> Result<(Vec<usize>, OrbitCase)> {
    let n = g.degree();
    if g.is_abelian() {
        return Ok((vec![0], OrbitCase::Abelian));
    }
    let system = g.minimal_blocks()?;
    if system.count() == n {
        return Ok(match find_asymmetric_subset(g, opts)? {
            Some(s) => (s, OrbitCase::Primitive),
            None => (exhaustive_min_orbits(g, opts)?, OrbitCase::Exhaustive),
        });
    }
    let t = system.block_size();
    let h = block_group(g, &system)?;
    let action = g.action_on_blocks(&system)?;
    let block_action = action.image_group();
    let transporters = block_transporters(g, &system)?;
    let b0 = &system.blocks()[0];
    let catalog = asymmetric_size_catalog(&h, opts)?;
    if catalog.len() >= 5 || t >= 4 {
        let gamma = solvable_asymmetric_5coloring(&block_action, opts)?;
        let (pieces, case): (Vec<Vec<usize>>, OrbitCase) = if catalog.len() >= 5 {
            let sizes = [catalog[0], catalog[1], catalog[2], catalog[3], catalog[4]];
            let mut pieces = Vec::new();
            for s in sizes {
                let a = find_asymmetric_subset_of_size(&h, s, opts)?
                    .ok_or_else(|| Error::InvariantViolation("catalog size without a subset".into()))?;
                pieces.push(a);
            }
            (pieces, OrbitCase::AsymmetricSizes { block_size: t, sizes })
        } else {
            ((0..5).map(|s| (0..s).collect()).collect(), OrbitCase::SmallSizes { block_size: t })
        };
        let mut subset = Vec::new();
        for (i, tr) in transporters.iter().enumerate() {
            for &j in &pieces[gamma.color(i)] {
                subset.push(tr.apply(b0[j]));
            }
        }
        subset.sort_unstable();
        return Ok((subset, case));
    }
    let (inner, inner_case) = bounded_transitive(&block_action, opts)?;
    let mut subset: Vec<usize> = inner
        .iter()
        .flat_map(|&b| system.blocks()[b].iter().copied())
        .collect();
    subset.sort_unstable();
    Ok((
        subset,
        OrbitCase::Lifted {
            block_size: t,
            inner: Box::new(inner_case),
        },
    ))
}

/// A subset of a solvable group's domain whose setwise stabilizer has
/// short orbits, built per orbit from the block structure.
pub fn bounded_orbit_subset(g: &PermGroup, opts: &SearchOptions) -> Result<BoundedOrbits> {
    require_solvable(g)?;
    let mut subset = Vec::new();
    let mut cases = Vec::new();
    for orbit in g.orbits() {
        let r = g.restrict(&orbit)?;
        let (part, case) = match bounded_transitive(&r, opts) {
            Ok(found) => found,
            Err(e) if e.is_cap() => (exhaustive_min_orbits(&r, opts)?, OrbitCase::Exhaustive),
            Err(e) => return Err(e),
        };
        subset.extend(part.iter().map(|&i| orbit[i]));
        cases.push(case);
    }
    subset.sort_unstable();
    let stab = setwise_stabilizer(g, &subset)?;
    let bound = max_orbit(&stab);
    let derived_length = stab
        .derived_length()
        .ok_or_else(|| Error::InvariantViolation("stabilizer of a solvable group".into()))?;
    if derived_length >= 2 * bound {
        return Err(Error::InvariantViolation(format!(
            "derived length {derived_length} is not below twice the orbit bound {bound}"
        )));
    }
    Ok(BoundedOrbits {
        subset,
        bound,
        derived_length,
        cases,
    })
}

/// The Mathieu group named `M<n>` with its construction subset.
pub fn mathieu_with_subset(name: &str) -> Result<(PermGroup, Vec<usize>)> {
    let subset = mathieu_solvable_subset(name)?;
    let g = construct::by_name(name)?;
    Ok((g, subset))
}
