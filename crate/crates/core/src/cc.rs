//! Coherent configurations: validation, Schurian configurations from
//! orbitals, primitivity, distinguishing sets and motion.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{MinDegree, PermGroup};
use crate::refine::{automorphism_group, ColoredDigraph};

/// An edge coloring of the complete digraph with loops, colors numbered
/// canonically: diagonal colors first, then the rest by first occurrence in
/// row-major order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherentConfig {
    n: usize,
    color: Vec<u32>,
    rank: usize,
    diagonal_colors: usize,
}

/// The first failed axiom, with the points that witness it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CcViolation {
    /// `c(x, x) = c(y, z)` with `y ≠ z`.
    DiagonalMixed { x: usize, y: usize, z: usize },
    /// `c(x, y) = c(u, v)` but `c(y, x) ≠ c(v, u)`.
    Converse { x: usize, y: usize, u: usize, v: usize },
    /// `(x, y)` and `(u, v)` share a color but see different counts of
    /// `z` with `c(x, z) = i`, `c(z, y) = j`.
    Intersection {
        x: usize,
        y: usize,
        u: usize,
        v: usize,
        i: u32,
        j: u32,
    },
}

impl std::fmt::Display for CcViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            CcViolation::DiagonalMixed { x, y, z } => {
                write!(f, "c({x},{x}) = c({y},{z}) with {y} != {z}")
            }
            CcViolation::Converse { x, y, u, v } => {
                write!(f, "c({x},{y}) = c({u},{v}) but c({y},{x}) != c({v},{u})")
            }
            CcViolation::Intersection { x, y, u, v, i, j } => write!(
                f,
                "pairs ({x},{y}) and ({u},{v}) have the same color but different counts for colors ({i},{j})"
            ),
        }
    }
}

/// Intersection numbers `p_{i,j}^k`, stored densely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionNumbers {
    rank: usize,
    p: Vec<u32>,
}

impl IntersectionNumbers {
    pub fn get(&self, i: usize, j: usize, k: usize) -> u32 {
        self.p[(i * self.rank + j) * self.rank + k]
    }
}

/// Renumbers colors canonically.
fn canonical(n: usize, raw: &[u32]) -> (Vec<u32>, usize, usize) {
    let mut map: HashMap<u32, u32> = HashMap::new();
    for x in 0..n {
        let next = map.len() as u32;
        map.entry(raw[x * n + x]).or_insert(next);
    }
    let diagonal_colors = map.len();
    for &c in raw {
        let next = map.len() as u32;
        map.entry(c).or_insert(next);
    }
    let rank = map.len();
    (raw.iter().map(|c| map[c]).collect(), rank, diagonal_colors)
}

/// Checks the axioms on an `n × n` color matrix and returns the
/// intersection numbers, or the first violation in row-major order.
pub fn validate_cc(n: usize, raw: &[u32]) -> Result<std::result::Result<IntersectionNumbers, CcViolation>> {
    if raw.len() != n * n || n == 0 {
        return Err(Error::Precondition(format!("expected a {n} x {n} matrix")));
    }
    let (color, rank, _) = canonical(n, raw);
    let c = |x: usize, y: usize| color[x * n + y];

    // Axiom (i): a representative diagonal point per color, and the converse
    // pair seen first for each color.
    let mut first: Vec<Option<(usize, usize)>> = vec![None; rank];
    for x in 0..n {
        for y in 0..n {
            let k = c(x, y) as usize;
            match first[k] {
                None => first[k] = Some((x, y)),
                Some((u, v)) => {
                    if (u == v) != (x == y) {
                        let (d, (a, b)) = if u == v { (u, (x, y)) } else { (x, (u, v)) };
                        return Ok(Err(CcViolation::DiagonalMixed { x: d, y: a, z: b }));
                    }
                    if c(y, x) != c(v, u) {
                        return Ok(Err(CcViolation::Converse { x: u, y: v, u: x, v: y }));
                    }
                }
            }
        }
    }

    // Axiom (iii): count (c(x,z), c(z,y)) over z for every pair.
    let counts = |x: usize, y: usize| -> Vec<u32> {
        let mut v = vec![0u32; rank * rank];
        for z in 0..n {
            v[c(x, z) as usize * rank + c(z, y) as usize] += 1;
        }
        v
    };
    let reference: Vec<Vec<u32>> = first
        .iter()
        .map(|f| {
            let (x, y) = f.expect("every canonical color occurs");
            counts(x, y)
        })
        .collect();
    let violation = (0..n)
        .into_par_iter()
        .map(|x| {
            for y in 0..n {
                let k = c(x, y) as usize;
                let got = counts(x, y);
                if let Some(pos) = (0..rank * rank).find(|&t| got[t] != reference[k][t]) {
                    let (u, v) = first[k].unwrap();
                    return Some(CcViolation::Intersection {
                        x: u,
                        y: v,
                        u: x,
                        v: y,
                        i: (pos / rank) as u32,
                        j: (pos % rank) as u32,
                    });
                }
            }
            None
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .next();
    if let Some(v) = violation {
        return Ok(Err(v));
    }
    let mut p = vec![0u32; rank * rank * rank];
    for (k, r) in reference.iter().enumerate() {
        for i in 0..rank {
            for j in 0..rank {
                p[(i * rank + j) * rank + k] = r[i * rank + j];
            }
        }
    }
    Ok(Ok(IntersectionNumbers { rank, p }))
}

impl CoherentConfig {
    /// Validates and canonicalizes a color matrix.
    pub fn new(n: usize, raw: &[u32]) -> Result<Self> {
        if let Err(v) = validate_cc(n, raw)? {
            return Err(Error::Precondition(format!("not a coherent configuration: {v}")));
        }
        let (color, rank, diagonal_colors) = canonical(n, raw);
        Ok(CoherentConfig {
            n,
            color,
            rank,
            diagonal_colors,
        })
    }

    /// Parses `n` followed by `n` rows of color indices.
    pub fn parse(text: &str) -> Result<Self> {
        let mut tokens = text
            .lines()
            .enumerate()
            .flat_map(|(i, l)| {
                l.split('#')
                    .next()
                    .unwrap_or("")
                    .split_whitespace()
                    .map(move |t| (i + 1, t))
            });
        let num = |(line, t): (usize, &str)| -> Result<u64> {
            t.parse().map_err(|_| Error::Parse {
                line,
                message: format!("expected a number, found {t:?}"),
            })
        };
        let n = num(tokens.next().ok_or(Error::Parse {
            line: 1,
            message: "empty file".into(),
        })?)? as usize;
        let raw: Vec<u32> = tokens.map(|t| num(t).map(|x| x as u32)).collect::<Result<_>>()?;
        if raw.len() != n * n {
            return Err(Error::Parse {
                line: text.lines().count(),
                message: format!("expected {} entries, found {}", n * n, raw.len()),
            });
        }
        Self::new(n, &raw)
    }

    pub fn format(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for row in self.color.chunks(self.n) {
            let cells: Vec<String> = row.iter().map(u32::to_string).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn color(&self, x: usize, y: usize) -> u32 {
        self.color[x * self.n + y]
    }

    pub fn is_homogeneous(&self) -> bool {
        self.diagonal_colors == 1
    }

    pub fn intersection_numbers(&self) -> IntersectionNumbers {
        validate_cc(self.n, &self.color)
            .expect("square matrix")
            .expect("validated on construction")
    }

    /// Homogeneous, and every non-diagonal constituent is strongly connected.
    pub fn is_primitive(&self) -> bool {
        if !self.is_homogeneous() {
            return false;
        }
        let n = self.n;
        (1..self.rank as u32).all(|k| {
            let reach = |forward: bool| {
                let mut seen = vec![false; n];
                seen[0] = true;
                let mut stack = vec![0];
                while let Some(x) = stack.pop() {
                    for y in 0..n {
                        let c = if forward { self.color(x, y) } else { self.color(y, x) };
                        if c == k && !seen[y] {
                            seen[y] = true;
                            stack.push(y);
                        }
                    }
                }
                seen.into_iter().all(|s| s)
            };
            reach(true) && reach(false)
        })
    }

    /// Primitive of rank at least 3.
    pub fn is_upcc(&self) -> bool {
        self.rank >= 3 && self.is_primitive()
    }

    /// `D(x, y) = {z : c(z, x) ≠ c(z, y)}`.
    pub fn distinguishing_set(&self, x: usize, y: usize) -> Result<Vec<usize>> {
        if x == y {
            return Err(Error::Precondition("D(x, x) is empty by definition".into()));
        }
        if x.max(y) >= self.n {
            return Err(Error::PointOutOfRange { point: x.max(y), degree: self.n });
        }
        Ok((0..self.n).filter(|&z| self.color(z, x) != self.color(z, y)).collect())
    }

    /// `min |D(x, y)|` over `x ≠ y`; a lower bound on the motion.
    pub fn min_distinguishing(&self) -> usize {
        let n = self.n;
        (0..n)
            .into_par_iter()
            .map(|x| {
                (x + 1..n)
                    .map(|y| (0..n).filter(|&z| self.color(z, x) != self.color(z, y)).count())
                    .min()
                    .unwrap_or(usize::MAX)
            })
            .min()
            .unwrap_or(usize::MAX)
    }

    pub fn automorphism_group(&self, node_cap: u64) -> Result<PermGroup> {
        let vertex_colors = (0..self.n).map(|x| self.color(x, x) as usize).collect();
        let g = ColoredDigraph::new(vertex_colors, self.color.clone())?;
        automorphism_group(&g, node_cap)
    }

    /// Whether every element of `g` preserves all colors.
    pub fn preserved_by(&self, g: &PermGroup) -> bool {
        g.generators().iter().all(|p| {
            (0..self.n).all(|x| (0..self.n).all(|y| self.color(p.apply(x), p.apply(y)) == self.color(x, y)))
        })
    }
}

/// Lower bound from distinguishing sets and the exact motion of the
/// automorphism group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotionReport {
    pub lower_bound: usize,
    pub motion: MinDegree,
    pub automorphisms: u128,
}

pub fn motion(x: &CoherentConfig, node_cap: u64, element_cap: u128) -> Result<MotionReport> {
    let aut = x.automorphism_group(node_cap)?;
    let motion = aut.minimal_degree(element_cap)?;
    let lower_bound = x.min_distinguishing();
    if motion < MinDegree::Finite(lower_bound) {
        return Err(Error::InvariantViolation(format!(
            "motion {motion} is below the distinguishing bound {lower_bound}"
        )));
    }
    Ok(MotionReport {
        lower_bound,
        motion,
        automorphisms: aut.order(),
    })
}

/// The orbitals of `g` as a coherent configuration.
pub fn schurian_cc(g: &PermGroup) -> CoherentConfig {
    let n = g.degree();
    let mut parent: Vec<usize> = (0..n * n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for p in g.generators() {
        for x in 0..n {
            for y in 0..n {
                let a = find(&mut parent, x * n + y);
                let b = find(&mut parent, p.apply(x) * n + p.apply(y));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let raw: Vec<u32> = (0..n * n).map(|i| find(&mut parent, i) as u32).collect();
    let (color, rank, diagonal_colors) = canonical(n, &raw);
    CoherentConfig {
        n,
        color,
        rank,
        diagonal_colors,
    }
}

fn from_fn(n: usize, f: impl Fn(usize, usize) -> u32) -> CoherentConfig {
    let raw: Vec<u32> = (0..n * n).map(|i| f(i / n, i % n)).collect();
    CoherentConfig::new(n, &raw).expect("fixture is coherent")
}

/// The rank-2 configuration on `n` points.
pub fn clique(n: usize) -> CoherentConfig {
    from_fn(n, |x, y| u32::from(x != y))
}

/// `T(r)`: 2-subsets of an `r`-set, colored by intersection size.
pub fn triangular(r: usize) -> CoherentConfig {
    let pairs = crate::group::construct::k_subsets(r, 2);
    from_fn(pairs.len(), |x, y| {
        let shared = pairs[x].iter().filter(|a| pairs[y].contains(a)).count();
        2 - shared as u32
    })
}

/// `L_2(r)`: the `r × r` grid, colored by equal, same line, or neither.
pub fn lattice(r: usize) -> CoherentConfig {
    from_fn(r * r, |x, y| {
        if x == y {
            0
        } else if x / r == y / r || x % r == y % r {
            1
        } else {
            2
        }
    })
}

/// The Paley configuration over GF(q), `q ≡ 1 (mod 4)` a prime power.
pub fn paley(q: usize) -> Result<CoherentConfig> {
    if q % 4 != 1 || crate::gf::prime_power(q).is_none() {
        return Err(Error::Precondition(format!("{q} is not a prime power congruent to 1 mod 4")));
    }
    let f = crate::gf::Field::new(q)?;
    let mut square = vec![false; q];
    for a in 1..q {
        square[f.mul(a, a)] = true;
    }
    Ok(from_fn(q, |x, y| {
        if x == y {
            0
        } else if square[f.sub(x, y)] {
            1
        } else {
            2
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::construct::*;

    #[test]
    fn schurian_ranks() {
        assert_eq!(schurian_cc(&symmetric(5)).rank(), 2);
        assert_eq!(schurian_cc(&on_k_subsets(&symmetric(5), 2)).rank(), 3);
        assert_eq!(schurian_cc(&cyclic(5)).rank(), 5);
        assert!(!schurian_cc(&symmetric(4).direct_product(&symmetric(2))).is_homogeneous());
    }

    #[test]
    fn validation_witnesses() {
        let d4 = schurian_cc(&dihedral(4));
        assert!(validate_cc(4, &d4.color).unwrap().is_ok());
        // Path P4 with a loop color: endpoints and inner vertices differ.
        let path: Vec<u32> = (0..16)
            .map(|i| {
                let (x, y): (usize, usize) = (i / 4, i % 4);
                if x == y {
                    0
                } else if x.abs_diff(y) == 1 {
                    1
                } else {
                    2
                }
            })
            .collect();
        assert!(matches!(validate_cc(4, &path).unwrap(), Err(CcViolation::Intersection { .. })));
        let mixed = [0, 0, 1, 0];
        assert!(matches!(validate_cc(2, &mixed).unwrap(), Err(CcViolation::DiagonalMixed { .. })));
        assert!(validate_cc(5, &clique(5).color).unwrap().is_ok());
    }

    #[test]
    fn primitivity() {
        assert!(triangular(5).is_upcc());
        assert!(clique(5).is_primitive() && !clique(5).is_upcc());
        assert!(!schurian_cc(&cyclic(4)).is_primitive());
    }

    #[test]
    fn distinguishing_sets() {
        assert_eq!(clique(5).distinguishing_set(1, 3).unwrap(), vec![1, 3]);
        assert_eq!(triangular(5).min_distinguishing(), 6);
        assert_eq!(lattice(3).min_distinguishing(), 6);
        assert!(clique(3).distinguishing_set(1, 1).is_err());
    }

    #[test]
    fn file_round_trip() {
        let x = lattice(3);
        assert_eq!(CoherentConfig::parse(&x.format()).unwrap(), x);
        assert!(CoherentConfig::parse("2\n0 1\n1\n").is_err());
    }
}
