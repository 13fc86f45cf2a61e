//! Bodies of the property suites, shared by the proptest targets and the
//! acceptance run. Each check returns `Err` with a description on a
//! counterexample.

use std::sync::OnceLock;

use motionforge::group::construct::{alternating, cyclic, diagonal_copies, direct_product, psl, symmetric, wreath};
use motionforge::graph;
use motionforge::pipeline::{coloring_stabilizer_in_limit, diagonal_sequence, InverseSequence, Level};
use motionforge::{GroupHom, PermGroup, Permutation};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{intersection, join, normal_subgroups};

/// The normal subgroup lattice of one group, with the data the
/// three-normal check reads repeatedly.
pub struct Lattice {
    pub name: &'static str,
    pub normals: Vec<PermGroup>,
    /// `joins_to_top[i][j]`: `N_i N_j = H`.
    pub joins_to_top: Vec<Vec<bool>>,
    /// `H / N_i` is nonabelian simple.
    pub simple_quotient: Vec<bool>,
    /// `meets[i][j]` is the index of `N_i ∩ N_j`.
    pub meets: Vec<Vec<usize>>,
}

impl Lattice {
    fn build(name: &'static str, h: PermGroup) -> Lattice {
        let normals = normal_subgroups(&h);
        let n = normals.len();
        let top = h.order();
        let derived = h.derived_subgroup();
        let joins_to_top = (0..n)
            .map(|i| (0..n).map(|j| join(&normals[i], &normals[j]).order() == top).collect())
            .collect();
        let simple_quotient = (0..n)
            .map(|i| {
                let a = &normals[i];
                a.order() < top
                    && !derived.is_subgroup_of(a)
                    && !normals
                        .iter()
                        .any(|m| m.order() > a.order() && m.order() < top && a.is_subgroup_of(m))
            })
            .collect();
        let index_of = |g: &PermGroup| normals.iter().position(|m| m.same_group(g)).expect("meet of normal subgroups is normal");
        let meets = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let (a, b) = (&normals[i], &normals[j]);
                        if a.is_subgroup_of(b) {
                            i
                        } else if b.is_subgroup_of(a) {
                            j
                        } else if a.order() <= b.order() {
                            index_of(&intersection(a, b))
                        } else {
                            index_of(&intersection(b, a))
                        }
                    })
                    .collect()
            })
            .collect();
        Lattice {
            name,
            normals,
            joins_to_top,
            simple_quotient,
            meets,
        }
    }

    /// `Ok(true)` when the hypotheses hold and the conclusion `B ⊉ A ∩ C`
    /// does too, `Ok(false)` when the hypotheses fail.
    pub fn check(&self, a: usize, b: usize, c: usize) -> Result<bool, String> {
        let hyp = self.joins_to_top[a][b]
            && self.joins_to_top[a][c]
            && self.joins_to_top[b][c]
            && self.simple_quotient[a]
            && self.simple_quotient[b];
        if !hyp {
            return Ok(false);
        }
        let meet = &self.normals[self.meets[a][c]];
        if meet.is_subgroup_of(&self.normals[b]) {
            return Err(format!("{}: B = N{b} contains A ∩ C for A = N{a}, C = N{c}", self.name));
        }
        Ok(true)
    }
}

/// Groups with several nonabelian simple quotients.
pub fn lattices() -> &'static [Lattice] {
    static CELL: OnceLock<Vec<Lattice>> = OnceLock::new();
    CELL.get_or_init(|| {
        let a5 = alternating(5);
        let l27 = psl(2, 7).unwrap();
        vec![
            Lattice::build("A5^2", direct_product(&[a5.clone(), a5.clone()])),
            Lattice::build("A5^3", direct_product(&[a5.clone(), a5.clone(), a5.clone()])),
            Lattice::build("A5 x PSL(2,7)", direct_product(&[a5.clone(), l27.clone()])),
            Lattice::build("A5^2 x C2", direct_product(&[a5.clone(), a5.clone(), cyclic(2)])),
            Lattice::build("A5 x S4", direct_product(&[a5.clone(), symmetric(4)])),
            Lattice::build("A6 x A5", direct_product(&[alternating(6), a5.clone()])),
            Lattice::build("A5 diag x A5", direct_product(&[diagonal_copies(&a5, 2), a5])),
        ]
    })
}

/// Epimorphisms to sample subgroups from.
pub fn base_epimorphisms() -> &'static [(&'static str, GroupHom)] {
    static CELL: OnceLock<Vec<(&'static str, GroupHom)>> = OnceLock::new();
    CELL.get_or_init(|| {
        let on_blocks = |g: PermGroup| {
            let sys = g.minimal_blocks().unwrap();
            g.action_on_blocks(&sys).unwrap()
        };
        let a5s3 = direct_product(&[alternating(5), symmetric(3)]);
        vec![
            ("S3 wr S3 on blocks", on_blocks(wreath(&symmetric(3), &symmetric(3)))),
            ("C2 wr A5 on blocks", on_blocks(wreath(&cyclic(2), &alternating(5)))),
            ("S4 wr C2 on blocks", on_blocks(wreath(&symmetric(4), &cyclic(2)))),
            (
                "A5 x S4 onto S4",
                GroupHom::restriction(&direct_product(&[alternating(5), symmetric(4)]), &(5..9).collect::<Vec<_>>()).unwrap(),
            ),
            (
                "S4 x S3 x C2 onto S3 x C2",
                GroupHom::restriction(
                    &direct_product(&[symmetric(4), symmetric(3), cyclic(2)]),
                    &(4..9).collect::<Vec<_>>(),
                )
                .unwrap(),
            ),
            ("A5 x S3 simple quotient", a5s3.simple_quotient_epi(1 << 20).unwrap().expect("A5 quotient")),
            ("S4 onto S3", s4_onto_s3()),
            ("S5 identity", GroupHom::identity(&symmetric(5))),
        ]
    })
}

/// `S4` acting on its three pairings of four points.
pub fn s4_onto_s3() -> GroupHom {
    let pairing = |x: usize, y: usize| {
        let partner = if x == 0 {
            y
        } else if y == 0 {
            x
        } else {
            6 - x - y
        };
        partner - 1
    };
    GroupHom::from_action(&symmetric(4), 3, |g| {
        // Pairing p contains the pair {0, p + 1}.
        let images = (1..4).map(|a| pairing(g.apply(0), g.apply(a))).collect();
        Permutation::from_images(images).unwrap()
    })
}

/// The sign map of `S3` onto a two-point group.
fn s3_sign() -> GroupHom {
    GroupHom::from_action(&symmetric(3), 2, |g| {
        if g.is_even() {
            Permutation::identity(2)
        } else {
            Permutation::from_images(vec![1, 0]).unwrap()
        }
    })
}

/// Subgroup `⟨x_1, …, x_m⟩` of a base source, `m = 0` giving the whole group,
/// with the restricted epimorphism onto its image.
pub fn sample_epimorphism(base: usize, seed: u64) -> (String, GroupHom) {
    let (name, phi) = &base_epimorphisms()[base % base_epimorphisms().len()];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = rng.random_range(0..4usize);
    let src = phi.source();
    let g = if m == 0 {
        src.clone()
    } else {
        let gens = (0..m).map(|_| src.random_element(&mut rng)).collect();
        src.subgroup(gens)
    };
    (format!("{name}, {m} random generators"), phi.restrict_to(&g).onto_image())
}

/// `φ(G') = H'` and `φ(G^∞) = H^∞` for an epimorphism `φ: G → H`.
pub fn check_core(name: &str, phi: &GroupHom) -> Result<(), String> {
    let (g, h) = (phi.source(), phi.target());
    if phi.image_group().order() != h.order() {
        return Err(format!("{name}: not onto"));
    }
    if !phi.image_of(&g.derived_subgroup()).same_group(&h.derived_subgroup()) {
        return Err(format!("{name}: image of the derived subgroup differs"));
    }
    if !phi.image_of(&g.perfect_core()).same_group(&h.perfect_core()) {
        return Err(format!("{name}: image of the perfect core differs"));
    }
    Ok(())
}

/// Epimorphic sequences with at least three levels.
pub fn sequences() -> &'static [(&'static str, InverseSequence)] {
    static CELL: OnceLock<Vec<(&'static str, InverseSequence)>> = OnceLock::new();
    CELL.get_or_init(|| {
        let tower = {
            let levels = vec![
                Level { group: symmetric(2), offset: 0 },
                Level { group: symmetric(3), offset: 2 },
                Level { group: symmetric(4), offset: 5 },
            ];
            InverseSequence::new(levels, vec![s3_sign(), s4_onto_s3()]).unwrap()
        };
        vec![
            ("diagonal S3, k = 3", diagonal_sequence(&symmetric(3), 3)),
            ("diagonal C4, k = 4", diagonal_sequence(&cyclic(4), 4)),
            ("diagonal D5, k = 3", diagonal_sequence(&motionforge::group::construct::dihedral(5), 3)),
            ("C2 <- S3 <- S4", tower),
            ("path of radius 9", graph::path(9).sphere_sequence(9).unwrap().epimorphic_reduction()),
            ("spider(3, 7)", graph::spider(3, 7).sphere_sequence(7).unwrap().epimorphic_reduction()),
        ]
    })
}

/// Deleting a random set of non-top levels leaves the stabilizer of a
/// random coloring of the surviving domains unchanged.
pub fn check_sublimit(index: usize, seed: u64) -> Result<(), String> {
    let (name, seq) = &sequences()[index % sequences().len()];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut keep: Vec<usize> = (0..seq.top()).filter(|_| rng.random_bool(0.5)).collect();
    keep.push(seq.top());
    let sub = seq.sublimit(&keep).map_err(|e| e.to_string())?;
    let mut full_colors = vec![0usize; seq.combined_degree()];
    for &i in &keep {
        for x in seq.domain(i) {
            full_colors[x] = rng.random_range(0..3);
        }
    }
    let sub_colors = full_colors[..sub.combined_degree()].to_vec();
    let full = coloring_stabilizer_in_limit(seq, &full_colors).map_err(|e| e.to_string())?;
    let part = coloring_stabilizer_in_limit(&sub, &sub_colors).map_err(|e| e.to_string())?;
    if !full.same_group(&part) {
        return Err(format!("{name}: keeping {keep:?} changed the stabilizer ({} vs {})", full.order(), part.order()));
    }
    Ok(())
}
