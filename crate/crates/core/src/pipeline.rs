//! Finite inverse sequences of permutation groups on disjoint domains and
//! zero-neutral zero-asymmetric 2-colorings of their limits.
//!
//! A finite epimorphic sequence `G_k → … → G_0` has its limit realized by
//! the top group: a strand is determined by its top coordinate. Every limit
//! computation is therefore a computation inside `G_k`, with level `i`
//! reached through the composed map `φ_{k,i}`.

use std::ops::Range;

use crate::coloring::{coloring_stabilizer, setwise_stabilizer, Coloring};
use crate::constructions::{bounded_orbit_subset, derived_length_reduction};
use crate::error::{Error, Result};
use crate::group::{construct, GroupHom, PermGroup};
use crate::io::{images_from_table, parse_map_table, read_generators};
use crate::perm::Permutation;
use crate::reduce::{reduce_nonsolvable_image, ReduceOptions};

/// A group and the offset of its domain in the combined domain.
#[derive(Clone, Debug)]
pub struct Level {
    pub group: PermGroup,
    pub offset: usize,
}

/// `G_0 ← G_1 ← … ← G_k`; `maps[i − 1]` is `φ_i: G_i → G_{i−1}`.
#[derive(Clone, Debug)]
pub struct InverseSequence {
    levels: Vec<Level>,
    maps: Vec<GroupHom>,
}

/// A defect found by [`InverseSequence::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SequenceIssue {
    /// The domains of two levels intersect.
    Overlap { first: usize, second: usize },
    /// `φ_level` is not a homomorphism into `G_{level−1}`.
    NotHomomorphism { level: usize, reason: String },
    /// `φ_level` misses part of `G_{level−1}`.
    NotSurjective { level: usize, image: u128, target: u128 },
}

impl InverseSequence {
    /// Checks only shapes: one map per level above 0, with matching degrees.
    pub fn new(levels: Vec<Level>, maps: Vec<GroupHom>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::Precondition("a sequence needs at least one level".into()));
        }
        if maps.len() + 1 != levels.len() {
            return Err(Error::Precondition(format!(
                "{} levels need {} maps, found {}",
                levels.len(),
                levels.len() - 1,
                maps.len()
            )));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.source().degree() != levels[i + 1].group.degree()
                || m.target().degree() != levels[i].group.degree()
            {
                return Err(Error::Precondition(format!("map {} has the wrong degrees", i + 1)));
            }
        }
        Ok(InverseSequence { levels, maps })
    }

    /// Builds maps from generator image lists without checking them; see
    /// [`InverseSequence::validate`].
    pub fn from_images(levels: Vec<Level>, images: Vec<Vec<Permutation>>) -> Result<Self> {
        if images.len() + 1 != levels.len() {
            return Err(Error::Precondition("one image list per level above 0".into()));
        }
        let maps = images
            .into_iter()
            .enumerate()
            .map(|(i, imgs)| {
                if imgs.len() != levels[i + 1].group.generators().len() {
                    return Err(Error::NotAHomomorphism(format!(
                        "map {} lists {} images for {} generators",
                        i + 1,
                        imgs.len(),
                        levels[i + 1].group.generators().len()
                    )));
                }
                Ok(GroupHom::trusted(&levels[i + 1].group, &levels[i].group, imgs))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(levels, maps)
    }

    /// Number of levels, `k + 1`.
    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// Index `k` of the top level.
    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, i: usize) -> &Level {
        &self.levels[i]
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// `φ_i: G_i → G_{i−1}` for `i ≥ 1`.
    pub fn map(&self, i: usize) -> &GroupHom {
        &self.maps[i - 1]
    }

    /// Points of `Ω_i` in the combined domain.
    pub fn domain(&self, i: usize) -> Range<usize> {
        let l = &self.levels[i];
        l.offset..l.offset + l.group.degree()
    }

    pub fn combined_degree(&self) -> usize {
        (0..self.len()).map(|i| self.domain(i).end).max().unwrap_or(0)
    }

    pub fn validate(&self) -> Vec<SequenceIssue> {
        let mut issues = Vec::new();
        for a in 0..self.len() {
            for b in a + 1..self.len() {
                let (x, y) = (self.domain(a), self.domain(b));
                if x.start < y.end && y.start < x.end {
                    issues.push(SequenceIssue::Overlap { first: a, second: b });
                }
            }
        }
        for (i, m) in self.maps.iter().enumerate() {
            let level = i + 1;
            match GroupHom::new(m.source(), m.target(), m.images().to_vec()) {
                Err(e) => issues.push(SequenceIssue::NotHomomorphism {
                    level,
                    reason: e.to_string(),
                }),
                Ok(h) => {
                    let (image, target) = (h.image_group().order(), h.target().order());
                    if image != target {
                        issues.push(SequenceIssue::NotSurjective { level, image, target });
                    }
                }
            }
        }
        issues
    }

    pub fn is_epimorphic(&self) -> bool {
        self.validate().is_empty()
    }

    /// `φ_{i,j}: G_i → G_j` for `i ≥ j`.
    pub fn transition(&self, i: usize, j: usize) -> GroupHom {
        assert!(i >= j, "transitions go down the sequence");
        let mut h = GroupHom::identity(&self.levels[i].group);
        for m in (j + 1..=i).rev() {
            h = h.then(&self.maps[m - 1]);
        }
        h
    }

    /// `φ_{k,i}` for every level `i`.
    pub fn projections(&self) -> Vec<GroupHom> {
        let k = self.top();
        let mut out = vec![GroupHom::identity(&self.levels[k].group)];
        for i in (0..k).rev() {
            let next = out.last().unwrap().then(&self.maps[i]);
            out.push(next);
        }
        out.reverse();
        out
    }

    /// Replaces each `G_i` by `φ_{k,i}(G_k)`, making every map onto.
    pub fn epimorphic_reduction(&self) -> InverseSequence {
        let images: Vec<PermGroup> = self.projections().iter().map(GroupHom::image_group).collect();
        let levels: Vec<Level> = images
            .iter()
            .zip(&self.levels)
            .map(|(g, l)| Level {
                group: g.clone(),
                offset: l.offset,
            })
            .collect();
        let maps = (1..levels.len())
            .map(|i| {
                let src = &levels[i].group;
                let imgs = src.generators().iter().map(|g| self.maps[i - 1].apply(g)).collect();
                GroupHom::trusted(src, &levels[i - 1].group, imgs)
            })
            .collect();
        InverseSequence { levels, maps }
    }

    /// The subsequence on `keep` (increasing, containing the top), with
    /// composed maps between consecutive kept levels.
    pub fn sublimit(&self, keep: &[usize]) -> Result<InverseSequence> {
        if keep.is_empty() || keep.windows(2).any(|w| w[0] >= w[1]) || *keep.last().unwrap() != self.top() {
            return Err(Error::Precondition(
                "kept levels must increase and include the top".into(),
            ));
        }
        let levels = keep.iter().map(|&i| self.levels[i].clone()).collect();
        let maps = keep.windows(2).map(|w| self.transition(w[1], w[0])).collect();
        InverseSequence::new(levels, maps)
    }

    /// The limit as a permutation group on the combined domain.
    pub fn limit_view(&self) -> LimitView {
        let projections = self.projections();
        let top = self.levels[self.top()].group.clone();
        let degree = self.combined_degree();
        let combined = GroupHom::from_action(&top, degree, |g| {
            let mut images: Vec<usize> = (0..degree).collect();
            for (i, p) in projections.iter().enumerate() {
                let h = p.apply(g);
                let off = self.levels[i].offset;
                for x in 0..h.degree() {
                    images[off + x] = off + h.apply(x);
                }
            }
            Permutation::from_images(images).expect("levels act on disjoint domains")
        });
        LimitView {
            top,
            projections,
            combined,
        }
    }
}

/// The limit of a finite epimorphic sequence, realized by its top group.
#[derive(Clone, Debug)]
pub struct LimitView {
    pub top: PermGroup,
    /// `φ_{k,i}` for each level.
    pub projections: Vec<GroupHom>,
    /// The action of the top group on the combined domain.
    pub combined: GroupHom,
}

/// `{g ∈ G_k : φ_{k,i}(g)` preserves `colors` on `Ω_i` for every `i}`,
/// computed one level at a time.
pub fn coloring_stabilizer_in_limit(seq: &InverseSequence, colors: &[usize]) -> Result<PermGroup> {
    if colors.len() != seq.combined_degree() {
        return Err(Error::DegreeMismatch {
            expected: seq.combined_degree(),
            found: colors.len(),
        });
    }
    let mut l = seq.level(seq.top()).group.clone();
    for (i, p) in seq.projections().iter().enumerate() {
        let local = Coloring::from_colors(colors[seq.domain(i)].to_vec());
        let r = p.restrict_to(&l);
        let image = r.image_group();
        let stab = coloring_stabilizer(&image, &local)?;
        if stab.order() < image.order() {
            l = r.preimage(&stab)?;
        }
    }
    Ok(l)
}

/// `k + 1` copies of `g` on consecutive domains with identity maps.
pub fn diagonal_sequence(g: &PermGroup, k: usize) -> InverseSequence {
    let n = g.degree();
    let levels = (0..=k)
        .map(|i| Level {
            group: g.clone(),
            offset: i * n,
        })
        .collect();
    let maps = (0..k).map(|_| GroupHom::identity(g)).collect();
    InverseSequence { levels, maps }
}

/// `δ(x) = (γ(x, 1), …, γ(x, k))` read as a binary number, for a subset of
/// the combined domain of a diagonal sequence over `n` points.
pub fn decode_diagonal_coloring(n: usize, k: usize, subset: &[usize]) -> Result<Coloring> {
    let mut colors = vec![0usize; n];
    for &p in subset {
        let (level, x) = (p / n, p % n);
        if level == 0 || level > k {
            return Err(Error::Precondition(format!(
                "point {p} is not on levels 1..={k}"
            )));
        }
        colors[x] |= 1 << (level - 1);
    }
    Coloring::new(colors, 1 << k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    /// Reduce the pivot image to a solvable group.
    A,
    /// Bound the orbits, and so the derived length, at the pivot.
    B,
    /// Lower the derived length one level at a time.
    C,
}

/// One colored level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    pub phase: Phase,
    /// Level whose image is being reduced.
    pub watched: usize,
    pub colored: usize,
    /// Colored points, in the combined domain.
    pub subset: Vec<usize>,
    /// Order of the watched image before and after.
    pub order_before: u128,
    pub order_after: u128,
    pub derived_length_after: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct PipelineTrace {
    pub pivot: usize,
    /// Pivots tried before `pivot` succeeded.
    pub abandoned_pivots: Vec<usize>,
    pub entries: Vec<TraceEntry>,
    /// The red points of the final 2-coloring, in the combined domain.
    pub subset: Vec<usize>,
    /// Order of the coloring stabilizer in the limit.
    pub limit_stabilizer_order: u128,
}

impl PipelineTrace {
    /// Number of levels colored in each phase.
    pub fn phase_counts(&self) -> [usize; 3] {
        let mut c = [0; 3];
        for e in &self.entries {
            c[e.phase as usize] += 1;
        }
        c
    }
}

struct State<'a> {
    seq: &'a InverseSequence,
    proj: Vec<GroupHom>,
    l: PermGroup,
    subset: Vec<usize>,
    entries: Vec<TraceEntry>,
}

enum Attempt {
    Done,
    /// The pivot image kept too large a derived length; try this pivot.
    Raise(usize),
}

impl<'a> State<'a> {
    fn new(seq: &'a InverseSequence) -> Self {
        State {
            seq,
            proj: seq.projections(),
            l: seq.level(seq.top()).group.clone(),
            subset: Vec::new(),
            entries: Vec::new(),
        }
    }

    fn image_at(&self, i: usize) -> PermGroup {
        self.proj[i].image_of(&self.l)
    }

    /// Colors `psi ⊆ Ω_m` (local points) and shrinks the limit accordingly.
    fn color(&mut self, m: usize, psi: &[usize]) -> Result<Vec<usize>> {
        let r = self.proj[m].restrict_to(&self.l);
        let image = r.image_group();
        let stab = setwise_stabilizer(&image, psi)?;
        if stab.order() < image.order() {
            self.l = r.preimage(&stab)?;
        }
        let off = self.seq.level(m).offset;
        let points: Vec<usize> = psi.iter().map(|&x| off + x).collect();
        self.subset.extend(&points);
        Ok(points)
    }

    fn record(&mut self, phase: Phase, watched: usize, colored: usize, points: Vec<usize>, before: u128) {
        let after = self.image_at(watched);
        self.entries.push(TraceEntry {
            phase,
            watched,
            colored,
            subset: points,
            order_before: before,
            order_after: after.order(),
            derived_length_after: after.derived_length(),
        });
    }
}

/// Colors levels from `levels` in turn until the image at `watched`
/// satisfies `done`; `reducer` picks the subset of each level.
pub fn color_reduction_loop(
    seq: &InverseSequence,
    watched: usize,
    levels: &[usize],
    done: &dyn Fn(&PermGroup) -> bool,
    reducer: &dyn Fn(&GroupHom) -> Result<Vec<usize>>,
) -> Result<(PermGroup, Vec<TraceEntry>)> {
    let mut state = State::new(seq);
    reduction_loop(&mut state, watched, levels, Phase::A, done, reducer)?;
    Ok((state.l, state.entries))
}

fn reduction_loop(
    state: &mut State<'_>,
    watched: usize,
    levels: &[usize],
    phase: Phase,
    done: &dyn Fn(&PermGroup) -> bool,
    reducer: &dyn Fn(&GroupHom) -> Result<Vec<usize>>,
) -> Result<()> {
    let mut next = levels.iter().copied();
    loop {
        let f = state.image_at(watched);
        if done(&f) {
            return Ok(());
        }
        let m = next.next().ok_or_else(|| {
            Error::SequenceTooShort(format!(
                "levels {levels:?} are used up while the image at level {watched} has order {}; \
                 at most {} more levels are needed",
                f.order(),
                log2_floor(f.order())
            ))
        })?;
        let chi = state.seq.transition(m, watched).restrict_to(&state.image_at(m));
        let psi = reducer(&chi)?;
        let points = state.color(m, &psi)?;
        state.record(phase, watched, m, points, f.order());
        let last = state.entries.last().unwrap();
        if last.order_after >= last.order_before {
            return Err(Error::InvariantViolation(format!(
                "coloring level {m} did not shrink the image at level {watched}"
            )));
        }
    }
}

fn log2_floor(x: u128) -> u32 {
    127 - x.max(1).leading_zeros()
}

#[derive(Clone, Debug, Default)]
pub struct PipelineOptions {
    pub reduce: ReduceOptions,
    /// In Phase A, scan orbits of at most this many points for the subset
    /// with the smallest image (solvable images first) before falling back
    /// to the one-step reduction. `0` disables the scan.
    pub greedy_orbit_max: usize,
}

/// Subset of one small orbit minimizing `(image not solvable, |image|)`.
fn greedy_subset(chi: &GroupHom, max_orbit: usize) -> Result<Option<Vec<usize>>> {
    let bound = chi.image_group().order();
    let mut best: Option<((bool, u128), Vec<usize>)> = None;
    for orbit in chi.source().orbits().into_iter().filter(|o| o.len() <= max_orbit) {
        let m = orbit.len();
        for mask in 1u32..(1 << m) {
            if mask.count_ones() as usize > m / 2 {
                continue;
            }
            let subset: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| orbit[i]).collect();
            let image = chi.image_of(&setwise_stabilizer(chi.source(), &subset)?);
            let key = (!image.is_solvable(), image.order());
            if key.1 < bound && best.as_ref().is_none_or(|(k, b)| (key, subset.len()) < (*k, b.len())) {
                best = Some((key, subset));
            }
        }
    }
    Ok(best.map(|(_, s)| s))
}

fn attempt(state: &mut State<'_>, c: usize, opts: &PipelineOptions) -> Result<Attempt> {
    let k = state.seq.top();
    let above: Vec<usize> = (c + 1..=k).collect();
    let solvable = |g: &PermGroup| g.is_solvable();
    let reducer = |chi: &GroupHom| {
        if opts.greedy_orbit_max > 0 {
            if let Some(s) = greedy_subset(chi, opts.greedy_orbit_max.min(16))? {
                return Ok(s);
            }
        }
        reduce_nonsolvable_image(chi, &opts.reduce).map(|w| w.subset)
    };
    reduction_loop(state, c, &above, Phase::A, &solvable, &reducer)?;

    let f = state.image_at(c);
    if f.order() > 1 && f.derived_length().is_some_and(|d| d + 1 > c) {
        let bounded = bounded_orbit_subset(&f, &opts.reduce.search)?;
        let points = state.color(c, &bounded.subset)?;
        state.record(Phase::B, c, c, points, f.order());
    }
    let d = state
        .image_at(c)
        .derived_length()
        .ok_or_else(|| Error::InvariantViolation("pivot image is not solvable".into()))?;
    if d + 1 > c {
        return Ok(Attempt::Raise(d + 1));
    }
    for j in (1..c).rev() {
        let h = state.image_at(j);
        if h.order() == 1 {
            continue;
        }
        let before = h.derived_length().expect("quotient of a solvable group");
        let delta = derived_length_reduction(&h)?;
        let points = state.color(j, &delta)?;
        state.record(Phase::C, j, j, points, h.order());
        let after = state.entries.last().unwrap().derived_length_after.unwrap_or(usize::MAX);
        if after >= before {
            return Err(Error::InvariantViolation(format!(
                "derived length at level {j} did not drop"
            )));
        }
    }
    Ok(Attempt::Done)
}

/// A zero-neutral zero-asymmetric 2-coloring of the limit of an epimorphic
/// sequence, with the pivot level chosen per instance.
pub fn run_pipeline(seq: &InverseSequence, opts: &PipelineOptions) -> Result<PipelineTrace> {
    let issues = seq.validate();
    if !issues.is_empty() {
        return Err(Error::Precondition(format!("sequence is not epimorphic: {issues:?}")));
    }
    let k = seq.top();
    if k == 0 {
        if seq.level(0).group.order() == 1 {
            return Ok(PipelineTrace {
                pivot: 0,
                abandoned_pivots: Vec::new(),
                entries: Vec::new(),
                subset: Vec::new(),
                limit_stabilizer_order: 1,
            });
        }
        return Err(Error::SequenceTooShort(
            "a single nontrivial level cannot be reduced without coloring it".into(),
        ));
    }
    let mut abandoned = Vec::new();
    let mut c = 1;
    loop {
        if c > k {
            return Err(Error::SequenceTooShort(format!(
                "pivot {c} is needed but the top level is {k}; add at least {} levels",
                c - k
            )));
        }
        let mut state = State::new(seq);
        match attempt(&mut state, c, opts)? {
            Attempt::Raise(next) => {
                abandoned.push(c);
                c = next.max(c + 1);
            }
            Attempt::Done => {
                if state.image_at(0).order() != 1 {
                    return Err(Error::InvariantViolation("bottom image is not trivial".into()));
                }
                let mut subset = state.subset;
                subset.sort_unstable();
                if subset.iter().any(|p| seq.domain(0).contains(p)) {
                    return Err(Error::InvariantViolation("level 0 was colored".into()));
                }
                return Ok(PipelineTrace {
                    pivot: c,
                    abandoned_pivots: abandoned,
                    entries: state.entries,
                    subset,
                    limit_stabilizer_order: state.l.order(),
                });
            }
        }
    }
}

/// Parses a sequence file. `resolve` loads the group behind a `file` entry.
///
/// ```text
/// levels 2
/// level 0 offset 0 group S3
/// level 1 offset 3 file s3.gens
/// map 1
/// (1,2) -> (1,2)
/// (1,2,3) -> (1,2,3)
/// ```
///
/// Offsets are shifts, so `offset 3` puts the level on points 4, 5, ….
pub fn parse_sequence(text: &str, resolve: &dyn Fn(&str) -> Result<PermGroup>) -> Result<InverseSequence> {
    let perr = |line: usize, m: String| Error::Parse { line, message: m };
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let (ln, head) = *lines.first().ok_or_else(|| perr(1, "empty sequence file".into()))?;
    let count: usize = head
        .strip_prefix("levels")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| perr(ln, "expected `levels <count>`".into()))?;
    let mut levels: Vec<Option<Level>> = vec![None; count];
    let mut tables: Vec<Option<String>> = vec![None; count];
    let mut current_map: Option<usize> = None;
    for &(ln, line) in &lines[1..] {
        let words: Vec<&str> = line.split_whitespace().collect();
        match words.as_slice() {
            ["level", i, "offset", off, kind, arg] => {
                current_map = None;
                let i: usize = i.parse().map_err(|_| perr(ln, format!("bad level {i:?}")))?;
                let offset: usize = off.parse().map_err(|_| perr(ln, format!("bad offset {off:?}")))?;
                let group = match *kind {
                    "group" => construct::by_name(arg)?,
                    "file" => resolve(arg)?,
                    other => return Err(perr(ln, format!("expected `group` or `file`, found {other:?}"))),
                };
                let slot = levels
                    .get_mut(i)
                    .ok_or_else(|| perr(ln, format!("level {i} is beyond the declared count")))?;
                *slot = Some(Level { group, offset });
            }
            ["map", i] => {
                let i: usize = i.parse().map_err(|_| perr(ln, format!("bad map index {i:?}")))?;
                if i == 0 || i >= count {
                    return Err(perr(ln, format!("map {i} does not exist")));
                }
                tables[i] = Some(String::new());
                current_map = Some(i);
            }
            _ if line.contains("->") => {
                let i = current_map.ok_or_else(|| perr(ln, "image line outside a map block".into()))?;
                let t = tables[i].as_mut().unwrap();
                t.push_str(line);
                t.push('\n');
            }
            _ => return Err(perr(ln, format!("unrecognized line {line:?}"))),
        }
    }
    let levels: Vec<Level> = levels
        .into_iter()
        .enumerate()
        .map(|(i, l)| l.ok_or_else(|| perr(0, format!("level {i} is missing"))))
        .collect::<Result<_>>()?;
    let mut images = Vec::new();
    for i in 1..count {
        let text = tables[i].as_ref().ok_or_else(|| perr(0, format!("map {i} is missing")))?;
        let table = parse_map_table(text, levels[i].group.degree(), levels[i - 1].group.degree())?;
        images.push(images_from_table(&levels[i].group, &table)?);
    }
    InverseSequence::from_images(levels, images)
}

/// Reads a sequence file, resolving `file` entries relative to its directory.
pub fn read_sequence(path: &std::path::Path) -> Result<InverseSequence> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let dir = path.parent().map(std::path::Path::to_path_buf).unwrap_or_default();
    parse_sequence(&text, &|name| read_generators(dir.join(name)))
}
