//! Rooted truncations of locally finite graphs: spheres, balls, their
//! automorphism groups, the odd-sphere inverse sequence and special subsets.
//!
//! Vertices are stored in breadth-first order from the root, so every ball
//! `B_r` is a prefix of the vertex range and every sphere `S_r` is a
//! contiguous block.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::ops::Range;

use crate::coloring::setwise_stabilizer;
use crate::error::{Error, Result};
use crate::group::{GroupHom, PermGroup};
use crate::perm::Permutation;
use crate::pipeline::{run_pipeline, InverseSequence, Level, PipelineOptions, PipelineTrace};
use crate::refine::{automorphism_group, ColoredDigraph};

/// Node budget for ball automorphism searches.
pub const AUTOMORPHISM_NODE_CAP: u64 = 1 << 22;

#[derive(Clone, Debug)]
pub struct RootedTruncation {
    names: Vec<String>,
    adj: Vec<BTreeSet<usize>>,
    dist: Vec<usize>,
    /// `sphere_start[d]` is the first vertex of `S_d`; one extra entry ends `S_R`.
    sphere_start: Vec<usize>,
}

impl RootedTruncation {
    /// Builds a truncation from named vertices and edges. Every vertex must be
    /// reachable from the root.
    pub fn new(names: Vec<String>, edges: &[(usize, usize)], root: usize) -> Result<Self> {
        let n = names.len();
        if root >= n {
            return Err(Error::PointOutOfRange { point: root, degree: n });
        }
        let mut adj = vec![BTreeSet::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::PointOutOfRange { point: a.max(b), degree: n });
            }
            if a == b {
                return Err(Error::Precondition(format!("self-loop at {}", names[a])));
            }
            adj[a].insert(b);
            adj[b].insert(a);
        }
        let mut dist = vec![usize::MAX; n];
        let mut order = vec![root];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    order.push(w);
                    queue.push_back(w);
                }
            }
        }
        if let Some(v) = (0..n).find(|&v| dist[v] == usize::MAX) {
            return Err(Error::Precondition(format!(
                "vertex {} is not connected to the root",
                names[v]
            )));
        }
        let mut new_index = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            new_index[v] = i;
        }
        let radius = dist[*order.last().unwrap()];
        let mut sphere_start = vec![0; radius + 2];
        for &v in &order {
            sphere_start[dist[v] + 1] += 1;
        }
        for d in 1..sphere_start.len() {
            sphere_start[d] += sphere_start[d - 1];
        }
        Ok(RootedTruncation {
            names: order.iter().map(|&v| names[v].clone()).collect(),
            adj: order
                .iter()
                .map(|&v| adj[v].iter().map(|&w| new_index[w]).collect())
                .collect(),
            dist: order.iter().map(|&v| dist[v]).collect(),
            sphere_start,
        })
    }

    /// Parses `v <id>`, `e <id> <id>` and `r <id>` lines. Edges may name
    /// undeclared vertices.
    pub fn parse(text: &str) -> Result<Self> {
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut names = Vec::new();
        let mut edges = Vec::new();
        let mut root = None;
        let mut id = |name: &str, names: &mut Vec<String>| {
            *index.entry(name.to_string()).or_insert_with(|| {
                names.push(name.to_string());
                names.len() - 1
            })
        };
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            let words: Vec<&str> = line.split_whitespace().collect();
            let perr = |m: String| Error::Parse { line: i + 1, message: m };
            match words.as_slice() {
                [] => {}
                ["v", a] => {
                    id(a, &mut names);
                }
                ["e", a, b] => {
                    let (a, b) = (id(a, &mut names), id(b, &mut names));
                    edges.push((a, b));
                }
                ["r", a] => {
                    if root.is_some() {
                        return Err(perr("second root".into()));
                    }
                    root = Some(id(a, &mut names));
                }
                _ => return Err(perr(format!("unrecognized line {line:?}"))),
            }
        }
        let root = root.ok_or_else(|| Error::Precondition("no root given (`r <id>`)".into()))?;
        Self::new(names, &edges, root)
    }

    pub fn format(&self) -> String {
        let mut out = String::new();
        for name in &self.names {
            out.push_str(&format!("v {name}\n"));
        }
        for (a, b) in self.edges() {
            out.push_str(&format!("e {} {}\n", self.names[a], self.names[b]));
        }
        out.push_str(&format!("r {}\n", self.names[0]));
        out
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    /// The root is always vertex 0.
    pub fn root(&self) -> usize {
        0
    }

    pub fn radius(&self) -> usize {
        self.sphere_start.len() - 2
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn distance(&self, v: usize) -> usize {
        self.dist[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.order())
            .flat_map(|a| self.adj[a].range(a + 1..).map(move |&b| (a, b)))
            .collect()
    }

    /// `S_d`; empty beyond the radius.
    pub fn sphere(&self, d: usize) -> Range<usize> {
        if d > self.radius() {
            return self.order()..self.order();
        }
        self.sphere_start[d]..self.sphere_start[d + 1]
    }

    pub fn spheres(&self) -> Vec<Range<usize>> {
        (0..=self.radius()).map(|d| self.sphere(d)).collect()
    }

    /// `B_r`.
    pub fn ball(&self, r: usize) -> Range<usize> {
        0..self.sphere(r.min(self.radius())).end
    }

    fn are_twins(&self, u: usize, v: usize) -> bool {
        let strip = |a: usize, b: usize| self.adj[a].iter().filter(move |&&x| x != b);
        strip(u, v).eq(strip(v, u))
    }

    /// Pairs `(u, v)` whose transposition is an automorphism, restricted to
    /// vertices within distance `within` of the root.
    pub fn twins_within(&self, within: usize) -> Vec<(usize, usize)> {
        let b = self.ball(within).end;
        (0..b)
            .flat_map(|u| (u + 1..b).map(move |v| (u, v)))
            .filter(|&(u, v)| self.are_twins(u, v))
            .collect()
    }

    pub fn twin_free(&self) -> bool {
        self.twins_within(self.radius()).is_empty()
    }

    fn ball_digraph(&self, r: usize, rooted: bool) -> ColoredDigraph {
        let b = self.ball(r).end;
        let edges: Vec<(usize, usize)> = self.edges().into_iter().filter(|&(x, y)| x < b && y < b).collect();
        let colors = rooted.then(|| self.dist[..b].to_vec());
        ColoredDigraph::from_edges(b, &edges, colors)
    }

    /// Automorphisms of the subgraph induced on `B_r`.
    pub fn ball_automorphisms(&self, r: usize) -> Result<PermGroup> {
        automorphism_group(&self.ball_digraph(r, false), AUTOMORPHISM_NODE_CAP)
    }

    /// Automorphisms of the subgraph induced on `B_r` that fix the root.
    pub fn rooted_automorphisms(&self, r: usize) -> Result<PermGroup> {
        automorphism_group(&self.ball_digraph(r, true), AUTOMORPHISM_NODE_CAP)
    }

    /// Whether every rooted automorphism of the truncation that fixes `S_r`
    /// pointwise also fixes `B_r` pointwise. A nontrivial kernel element is
    /// returned as the witness.
    pub fn sphere_restriction_check(&self, r: usize) -> Result<RestrictionCheck> {
        let group = self.rooted_automorphisms(self.radius())?;
        Ok(restriction_check(&group, &self.sphere(r), &self.ball(r)))
    }

    /// `G_i` = the rooted group restricted to `S_i` for odd `i` from 3 to
    /// `max_radius`; level domains sit at the vertex indices of the spheres.
    pub fn sphere_sequence(&self, max_radius: usize) -> Result<InverseSequence> {
        let group = self.rooted_automorphisms(self.radius())?;
        self.sphere_sequence_in(&group, max_radius)
    }

    fn sphere_sequence_in(&self, group: &PermGroup, max_radius: usize) -> Result<InverseSequence> {
        let top = max_radius.min(self.radius());
        if top < 3 {
            return Err(Error::SequenceTooShort(format!(
                "the odd-sphere sequence starts at radius 3, but the usable radius is {top}"
            )));
        }
        let radii: Vec<usize> = (3..=top).step_by(2).collect();
        let mut restrictions = Vec::new();
        for &i in &radii {
            let check = restriction_check(group, &self.sphere(i), &self.ball(i));
            if !check.ok {
                return Err(Error::Precondition(format!(
                    "an automorphism fixing S_{i} pointwise moves an inner vertex"
                )));
            }
            let points: Vec<usize> = self.sphere(i).collect();
            restrictions.push(GroupHom::restriction(group, &points)?);
        }
        let levels: Vec<Level> = radii
            .iter()
            .zip(&restrictions)
            .map(|(&i, r)| Level {
                group: r.image_group(),
                offset: self.sphere(i).start,
            })
            .collect();
        let images = (1..levels.len())
            .map(|l| {
                levels[l]
                    .group
                    .generators()
                    .iter()
                    .map(|h| restrictions[l - 1].apply(&restrictions[l].lift(h)))
                    .collect()
            })
            .collect();
        InverseSequence::from_images(levels, images)
    }

    /// `Δ = Γ ∪ S_2 ∪ S_4 ∪ …` where `Γ` comes from the pipeline on the
    /// odd-sphere sequence, with the root-fixing property checked against
    /// the unrooted automorphism group of the truncation.
    pub fn special_subset(&self, max_radius: usize, opts: &PipelineOptions) -> Result<SpecialSubsetResult> {
        let top = max_radius.min(self.radius());
        if let Some(&(u, v)) = self.twins_within(top.saturating_sub(1)).first() {
            return Err(Error::Precondition(format!(
                "vertices {} and {} are twins",
                self.names[u], self.names[v]
            )));
        }
        let rooted = self.rooted_automorphisms(self.radius())?;
        let seq = self.sphere_sequence_in(&rooted, top)?;
        let trace = run_pipeline(&seq, opts)?;
        let mut subset = trace.subset.clone();
        for d in (2..=top).step_by(2) {
            subset.extend(self.sphere(d));
        }
        subset.sort_unstable();

        let full = self.ball_automorphisms(self.radius())?;
        let stab = setwise_stabilizer(&full, &subset)?;
        let root_fixed = stab.orbit(self.root()).len() == 1;
        let spheres_fixed = (0..=top)
            .map(|d| self.sphere(d).all(|v| stab.orbit(v).len() == 1))
            .collect();
        Ok(SpecialSubsetResult {
            subset,
            gamma: trace.subset.clone(),
            root_fixed,
            spheres_fixed,
            stabilizer_order: stab.order(),
            trace,
        })
    }
}

#[derive(Clone, Debug)]
pub struct RestrictionCheck {
    pub ok: bool,
    /// An automorphism fixing the sphere pointwise but moving a ball vertex.
    pub witness: Option<Permutation>,
}

fn restriction_check(group: &PermGroup, sphere: &Range<usize>, ball: &Range<usize>) -> RestrictionCheck {
    let points: Vec<usize> = sphere.clone().collect();
    let kernel = group
        .pointwise_stabilizer(&points)
        .expect("sphere points lie in the domain");
    let witness = kernel
        .generators()
        .iter()
        .find(|g| ball.clone().any(|v| g.apply(v) != v))
        .cloned();
    RestrictionCheck {
        ok: witness.is_none(),
        witness,
    }
}

#[derive(Clone, Debug)]
pub struct SpecialSubsetResult {
    /// `Δ`, as vertex indices.
    pub subset: Vec<usize>,
    /// The pipeline part `Γ` on odd spheres.
    pub gamma: Vec<usize>,
    /// Whether the setwise stabilizer of `Δ` in the full automorphism group
    /// of the truncation fixes the root.
    pub root_fixed: bool,
    /// Per sphere `S_0..S_R`, whether that stabilizer fixes it pointwise.
    pub spheres_fixed: Vec<bool>,
    pub stabilizer_order: u128,
    pub trace: PipelineTrace,
}

/// The path on `-m..=m`, rooted at 0.
pub fn path(m: usize) -> RootedTruncation {
    let m = m as i64;
    let names: Vec<String> = (-m..=m).map(|i| i.to_string()).collect();
    let edges: Vec<(usize, usize)> = (0..names.len() - 1).map(|i| (i, i + 1)).collect();
    RootedTruncation::new(names, &edges, m as usize).expect("a path is connected")
}

/// `legs` paths of `length` edges joined at the root.
pub fn spider(legs: usize, length: usize) -> RootedTruncation {
    let mut names = vec!["r".to_string()];
    let mut edges = Vec::new();
    for leg in 0..legs {
        let mut prev = 0;
        for d in 1..=length {
            names.push(format!("{leg}.{d}"));
            edges.push((prev, names.len() - 1));
            prev = names.len() - 1;
        }
    }
    RootedTruncation::new(names, &edges, 0).expect("a spider is connected")
}

/// A rooted tree where the root has `root_children` children, every other
/// internal vertex has `children`, and leaves sit at depth `depth`.
pub fn tree(root_children: usize, children: usize, depth: usize) -> RootedTruncation {
    let mut names = vec!["r".to_string()];
    let mut edges = Vec::new();
    let mut layer = vec![0usize];
    for d in 1..=depth {
        let mut next = Vec::new();
        for &p in &layer {
            let count = if d == 1 { root_children } else { children };
            for c in 0..count {
                names.push(format!("{}.{c}", names[p]));
                edges.push((p, names.len() - 1));
                next.push(names.len() - 1);
            }
        }
        layer = next;
    }
    RootedTruncation::new(names, &edges, 0).expect("a tree is connected")
}
