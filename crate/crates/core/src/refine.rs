//! Automorphisms of vertex- and arc-colored complete digraphs by partition
//! refinement and individualization.
//!
//! Graphs use arc color 1 for edges and 0 for non-edges; coherent
//! configurations use their color matrix directly. The search walks one
//! "first path" to a discrete partition and then, bottom-up, tries to map
//! it onto leaves below every sibling of a first-path node. Siblings in an
//! orbit of the automorphisms already found are skipped, and nodes whose
//! refinement trace differs from the first path at the same depth are cut.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// A complete digraph with colored vertices and arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredDigraph {
    n: usize,
    vertex_colors: Vec<usize>,
    arcs: Vec<u32>,
}

impl ColoredDigraph {
    pub fn new(vertex_colors: Vec<usize>, arcs: Vec<u32>) -> Result<Self> {
        let n = vertex_colors.len();
        if arcs.len() != n * n {
            return Err(Error::Precondition(format!(
                "arc matrix has {} entries, expected {}",
                arcs.len(),
                n * n
            )));
        }
        Ok(ColoredDigraph {
            n,
            vertex_colors,
            arcs,
        })
    }

    /// Undirected simple graph from an edge list.
    pub fn from_edges(n: usize, edges: &[(usize, usize)], vertex_colors: Option<Vec<usize>>) -> Self {
        let mut arcs = vec![0u32; n * n];
        for &(a, b) in edges {
            arcs[a * n + b] = 1;
            arcs[b * n + a] = 1;
        }
        ColoredDigraph {
            n,
            vertex_colors: vertex_colors.unwrap_or_else(|| vec![0; n]),
            arcs,
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn arc(&self, x: usize, y: usize) -> u32 {
        self.arcs[x * self.n + y]
    }

    pub fn vertex_color(&self, x: usize) -> usize {
        self.vertex_colors[x]
    }

    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        let n = self.n;
        (0..n).all(|x| self.vertex_colors[p.apply(x)] == self.vertex_colors[x])
            && (0..n).all(|x| {
                let px = p.apply(x);
                (0..n).all(|y| self.arc(px, p.apply(y)) == self.arc(x, y))
            })
    }
}

/// Ordered partition: cells in order, plus the cell index of every vertex.
#[derive(Clone)]
struct Partition {
    cells: Vec<Vec<usize>>,
    cell_of: Vec<usize>,
}

impl Partition {
    fn from_cells(n: usize, cells: Vec<Vec<usize>>) -> Self {
        let mut cell_of = vec![0; n];
        for (i, c) in cells.iter().enumerate() {
            for &x in c {
                cell_of[x] = i;
            }
        }
        Partition { cells, cell_of }
    }

    fn is_discrete(&self) -> bool {
        self.cells.len() == self.cell_of.len()
    }
}

/// Refines to the coarsest equitable partition below `p`, returning a hash
/// of the invariant information seen along the way.
fn refine(g: &ColoredDigraph, mut p: Partition) -> (Partition, u64) {
    let n = g.n;
    let mut trace = DefaultHasher::new();
    loop {
        let mut sigs: Vec<Vec<(usize, u32, u32)>> = Vec::with_capacity(n);
        for x in 0..n {
            let mut sig: Vec<(usize, u32, u32)> = (0..n)
                .map(|y| (p.cell_of[y], g.arc(x, y), g.arc(y, x)))
                .collect();
            sig.sort_unstable();
            sigs.push(sig);
        }
        let mut cells = Vec::with_capacity(p.cells.len());
        for cell in &p.cells {
            let mut members = cell.clone();
            members.sort_by(|&a, &b| sigs[a].cmp(&sigs[b]));
            let mut start = 0;
            for i in 1..=members.len() {
                if i == members.len() || sigs[members[i]] != sigs[members[start]] {
                    sigs[members[start]].hash(&mut trace);
                    (i - start).hash(&mut trace);
                    cells.push(members[start..i].to_vec());
                    start = i;
                }
            }
        }
        let changed = cells.len() != p.cells.len();
        p = Partition::from_cells(n, cells);
        if !changed {
            return (p, trace.finish());
        }
    }
}

fn individualize(p: &Partition, cell: usize, v: usize) -> Partition {
    let mut cells = Vec::with_capacity(p.cells.len() + 1);
    for (i, c) in p.cells.iter().enumerate() {
        if i == cell {
            cells.push(vec![v]);
            cells.push(c.iter().copied().filter(|&x| x != v).collect());
        } else {
            cells.push(c.clone());
        }
    }
    Partition::from_cells(p.cell_of.len(), cells)
}

fn target_cell(p: &Partition) -> usize {
    p.cells
        .iter()
        .position(|c| c.len() > 1)
        .expect("partition is not discrete")
}

struct OrbitUnion(Vec<usize>);

impl OrbitUnion {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn absorb(&mut self, p: &Permutation) {
        for x in 0..self.0.len() {
            let (a, b) = (self.find(x), self.find(p.apply(x)));
            if a != b {
                self.0[a.max(b)] = a.min(b);
            }
        }
    }
}

struct Search<'a> {
    g: &'a ColoredDigraph,
    /// Trace hash at each depth along the first path.
    first_traces: Vec<u64>,
    first_leaf: Vec<usize>,
    gens: Vec<Permutation>,
    nodes: u64,
    cap: u64,
}

impl Search<'_> {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(Error::CapExceeded {
                what: "automorphism search nodes",
                cap: self.cap as u128,
            });
        }
        Ok(())
    }

    fn leaf_map(&self, leaf: &Partition) -> Permutation {
        let mut images = vec![0u32; self.g.n];
        for (i, c) in leaf.cells.iter().enumerate() {
            images[self.first_leaf[i]] = c[0] as u32;
        }
        Permutation::from_raw(images)
    }

    /// Looks below a node for a leaf that yields an automorphism.
    fn find_automorphism(&mut self, p: Partition, depth: usize) -> Result<Option<Permutation>> {
        self.tick()?;
        if p.is_discrete() {
            let pi = self.leaf_map(&p);
            return Ok(self.g.is_automorphism(&pi).then_some(pi));
        }
        let cell = target_cell(&p);
        for &v in &p.cells[cell].clone() {
            let (child, trace) = refine(self.g, individualize(&p, cell, v));
            if self.first_traces.get(depth + 1) != Some(&trace) {
                continue;
            }
            if let Some(found) = self.find_automorphism(child, depth + 1)? {
                return Ok(Some(found));
            }
        }
        Ok(None)
    }
}

/// The automorphism group, exploring at most `node_cap` search nodes.
pub fn automorphism_group(g: &ColoredDigraph, node_cap: u64) -> Result<PermGroup> {
    let n = g.n;
    if n == 0 {
        return Err(Error::EmptyDomain);
    }
    let mut colors: Vec<usize> = g.vertex_colors.clone();
    colors.sort_unstable();
    colors.dedup();
    let cells = colors
        .iter()
        .map(|&c| (0..n).filter(|&x| g.vertex_colors[x] == c).collect())
        .collect();
    let (root, root_trace) = refine(g, Partition::from_cells(n, cells));

    // First path: always individualize the first vertex of the target cell.
    let mut path = vec![root];
    let mut traces = vec![root_trace];
    while !path.last().unwrap().is_discrete() {
        let p = path.last().unwrap();
        let cell = target_cell(p);
        let (child, trace) = refine(g, individualize(p, cell, p.cells[cell][0]));
        path.push(child);
        traces.push(trace);
    }
    let first_leaf: Vec<usize> = path.last().unwrap().cells.iter().map(|c| c[0]).collect();
    let mut search = Search {
        g,
        first_traces: traces,
        first_leaf,
        gens: Vec::new(),
        nodes: path.len() as u64,
        cap: node_cap,
    };
    let mut orbits = OrbitUnion((0..n).collect());
    for depth in (0..path.len() - 1).rev() {
        let p = &path[depth];
        let cell = target_cell(p);
        let fixed = p.cells[cell][0];
        for &v in &p.cells[cell][1..] {
            if orbits.find(v) == orbits.find(fixed) {
                continue;
            }
            let (child, trace) = refine(g, individualize(p, cell, v));
            if search.first_traces[depth + 1] != trace {
                continue;
            }
            if let Some(pi) = search.find_automorphism(child, depth + 1)? {
                orbits.absorb(&pi);
                search.gens.push(pi);
            }
        }
    }
    PermGroup::new(n, search.gens)
}
