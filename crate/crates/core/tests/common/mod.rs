//! Shared fixtures and brute-force oracles for the integration tests.
//! The oracles avoid stabilizer chains: elements come from closing the
//! generators under multiplication.
#![allow(dead_code)]

pub mod props;

use std::collections::{HashSet, VecDeque};

use motionforge::group::{self, PermGroup};
use motionforge::perm::Permutation;

/// All elements of `<gens>`, by breadth-first closure.
pub fn closure_elements(degree: usize, gens: &[Permutation]) -> Vec<Permutation> {
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id.clone()]);
    let mut out = vec![id];
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.then(g);
            if seen.insert(y.clone()) {
                queue.push_back(y.clone());
                out.push(y);
            }
        }
    }
    out
}

pub fn elements_of(g: &PermGroup) -> Vec<Permutation> {
    closure_elements(g.degree(), g.generators())
}

/// Elements mapping `subset` onto itself.
pub fn brute_setwise(elements: &[Permutation], degree: usize, subset: &[usize]) -> Vec<Permutation> {
    let mut inside = vec![false; degree];
    for &x in subset {
        inside[x] = true;
    }
    elements
        .iter()
        .filter(|p| (0..degree).all(|x| inside[p.apply(x)] == inside[x]))
        .cloned()
        .collect()
}

/// Elements preserving every color.
pub fn brute_color_stabilizer(elements: &[Permutation], colors: &[usize]) -> Vec<Permutation> {
    elements
        .iter()
        .filter(|p| (0..colors.len()).all(|x| colors[p.apply(x)] == colors[x]))
        .cloned()
        .collect()
}

/// Fewest moved points over non-identity elements; `None` for the trivial group.
pub fn brute_min_degree(elements: &[Permutation]) -> Option<usize> {
    elements
        .iter()
        .filter(|p| !p.is_identity())
        .map(Permutation::support_size)
        .min()
}

/// Whether `subgroup`, given by its elements, equals `g` exactly.
pub fn equals_group(elements: &[Permutation], g: &PermGroup) -> bool {
    elements.len() as u128 == g.order() && elements.iter().all(|p| g.contains(p))
}

/// Group generated by the union of the generators.
pub fn join(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let gens = a.generators().iter().chain(b.generators()).cloned().collect();
    PermGroup::new(a.degree(), gens).expect("join of subgroups")
}

pub fn intersection(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let elems: Vec<Permutation> = elements_of(a).into_iter().filter(|p| b.contains(p)).collect();
    PermGroup::new(a.degree(), elems).expect("intersection")
}

/// Every normal subgroup of `h`: normal closures of class representatives,
/// closed under joins.
pub fn normal_subgroups(h: &PermGroup) -> Vec<PermGroup> {
    let reps = h.conjugacy_class_reps(1 << 22).expect("enumerable group");
    let mut out: Vec<PermGroup> = vec![PermGroup::trivial(h.degree())];
    let push = |out: &mut Vec<PermGroup>, n: PermGroup| {
        if !out.iter().any(|m| m.same_group(&n)) {
            out.push(n);
        }
    };
    for r in reps.iter().filter(|r| !r.is_identity()) {
        push(&mut out, h.normal_closure(std::slice::from_ref(r)));
    }
    let mut i = 0;
    while i < out.len() {
        for j in 0..i {
            let n = join(&out[i], &out[j]);
            push(&mut out, n);
        }
        i += 1;
    }
    out
}

/// A named permutation group.
pub struct Fixture {
    pub name: String,
    pub group: PermGroup,
}

fn fx(name: impl Into<String>, group: PermGroup) -> Fixture {
    Fixture {
        name: name.into(),
        group,
    }
}

/// Groups of order at most 10⁴ in many shapes: symmetric, alternating,
/// cyclic, dihedral, affine, projective, Mathieu, products and wreaths.
pub fn corpus() -> Vec<Fixture> {
    use motionforge::group::construct::*;
    let mut out = Vec::new();
    for n in 3..=7 {
        out.push(fx(format!("S{n}"), symmetric(n)));
    }
    for n in 4..=7 {
        out.push(fx(format!("A{n}"), alternating(n)));
    }
    for n in 2..=12 {
        out.push(fx(format!("C{n}"), cyclic(n)));
    }
    for n in 3..=12 {
        out.push(fx(format!("D{n}"), dihedral(n)));
    }
    for (d, p) in [(1, 5), (1, 7), (1, 11), (1, 13), (2, 2), (2, 3), (3, 2)] {
        out.push(fx(format!("AGL({d},{p})"), agl(d, p).unwrap()));
    }
    for (d, q) in [(2, 5), (2, 7), (2, 8), (2, 9), (2, 11), (2, 13), (3, 2)] {
        out.push(fx(format!("PSL({d},{q})"), psl(d, q).unwrap()));
    }
    out.push(fx("M11", mathieu(11).unwrap()));
    let (s3, s4, a5) = (symmetric(3), symmetric(4), alternating(5));
    let (c2, c3) = (cyclic(2), cyclic(3));
    out.push(fx("S3 wr C2", wreath(&s3, &c2)));
    out.push(fx("S3 wr S3", wreath(&s3, &s3)));
    out.push(fx("S4 wr C2", wreath(&s4, &c2)));
    out.push(fx("C2 wr S4", wreath(&c2, &s4)));
    out.push(fx("C3 wr C3", wreath(&c3, &c3)));
    out.push(fx("S3 pa C2", product_action(&s3, &c2)));
    out.push(fx("S4 pa C2", product_action(&s4, &c2)));
    out.push(fx("S5 on pairs", on_k_subsets(&symmetric(5), 2)));
    out.push(fx("A5 on pairs", on_k_subsets(&a5, 2)));
    out.push(fx("S6 on pairs", on_k_subsets(&symmetric(6), 2)));
    out.push(fx("S6 on triples", on_k_subsets(&symmetric(6), 3)));
    out.push(fx("A5 x S3", direct_product(&[a5.clone(), s3.clone()])));
    out.push(fx("C3 x C4 x C5", direct_product(&[c3.clone(), cyclic(4), cyclic(5)])));
    out.push(fx("S4 diag 2", diagonal_copies(&s4, 2)));
    out.push(fx("D4 x D4", direct_product(&[dihedral(4), dihedral(4)])));
    out.push(fx("trivial(4)", PermGroup::trivial(4)));
    for f in &out {
        assert!(f.group.order() <= 10_000, "{} is too large for the corpus", f.name);
    }
    out
}

pub fn by_name(name: &str) -> PermGroup {
    group::construct::by_name(name).unwrap()
}

pub fn data_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

/// `(G, φ)` with `φ(G)` nonabelian simple: point actions of A5, A6,
/// PSL(3,2) and others, projections of products, and block actions of
/// wreath products.
pub fn reduction_instances() -> Vec<(String, motionforge::GroupHom)> {
    use motionforge::group::construct::*;
    use motionforge::GroupHom;
    let id = |name: &str, g: PermGroup| (name.to_string(), GroupHom::identity(&g));
    let project = |name: &str, g: PermGroup, points: std::ops::Range<usize>| {
        let pts: Vec<usize> = points.collect();
        (name.to_string(), GroupHom::restriction(&g, &pts).unwrap())
    };
    let on_blocks = |name: &str, g: PermGroup| {
        let sys = g.minimal_blocks().unwrap();
        (name.to_string(), g.action_on_blocks(&sys).unwrap())
    };
    let (a5, a6, l32) = (alternating(5), alternating(6), psl(3, 2).unwrap());
    // A5 on points and on pairs at once, mapped to the pairs.
    let pairs = k_subsets(5, 2);
    let points_and_pairs = GroupHom::from_action(&a5, 15, |g| {
        let on_pairs: Vec<usize> = pairs
            .iter()
            .map(|p| {
                let mut q = vec![g.apply(p[0]), g.apply(p[1])];
                q.sort_unstable();
                pairs.iter().position(|r| *r == q).unwrap()
            })
            .collect();
        g.juxtapose(&Permutation::from_images(on_pairs).unwrap())
    })
    .image_group();
    vec![
        id("A5 on 5", a5.clone()),
        id("A5 on 6", psl(2, 5).unwrap()),
        id("A5 on 10", on_k_subsets(&a5, 2)),
        id("A6 on 6", a6.clone()),
        id("A6 on 10", psl(2, 9).unwrap()),
        id("A6 on 15", on_k_subsets(&a6, 2)),
        id("PSL(3,2) on 7", l32.clone()),
        id("PSL(2,7) on 8", psl(2, 7).unwrap()),
        id("PSL(3,2) on 21", on_k_subsets(&l32, 2)),
        id("A7 on 7", alternating(7)),
        id("PSL(2,8) on 9", psl(2, 8).unwrap()),
        id("PSL(2,11) on 12", psl(2, 11).unwrap()),
        id("M11 on 11", mathieu(11).unwrap()),
        project("A5 x A5 onto the first factor", direct_product(&[a5.clone(), a5.clone()]), 0..5),
        project("A5 x A5 onto the second factor", direct_product(&[a5.clone(), a5.clone()]), 5..10),
        project("A5 x S3 onto A5", direct_product(&[a5.clone(), symmetric(3)]), 0..5),
        project("C2 x A5 onto A5", direct_product(&[cyclic(2), a5.clone()]), 2..7),
        project("A6 x A5 onto A6", direct_product(&[a6.clone(), a5.clone()]), 0..6),
        project("PSL(3,2) x S3 onto PSL(3,2)", direct_product(&[l32.clone(), symmetric(3)]), 0..7),
        project("A5 diagonal on 10 onto 5", diagonal_copies(&a5, 2), 0..5),
        project("A5 on points and pairs onto pairs", points_and_pairs, 5..15),
        on_blocks("C2 wr A5 on blocks", wreath(&cyclic(2), &a5)),
        on_blocks("S3 wr A5 on blocks", wreath(&symmetric(3), &a5)),
        on_blocks("C2 wr PSL(3,2) on blocks", wreath(&cyclic(2), &l32)),
    ]
}

/// Nonsolvable groups for iterated reduction.
pub fn nonsolvable_instances() -> Vec<(String, PermGroup)> {
    use motionforge::group::construct::*;
    let a5 = alternating(5);
    vec![
        ("S5".into(), symmetric(5)),
        ("S6".into(), symmetric(6)),
        ("A7".into(), alternating(7)),
        ("M11".into(), mathieu(11).unwrap()),
        ("A5 wr C2".into(), wreath(&a5, &cyclic(2))),
        ("C2 wr A5".into(), wreath(&cyclic(2), &a5)),
        ("PSL(2,7) x S3".into(), direct_product(&[psl(2, 7).unwrap(), symmetric(3)])),
        ("A5 x A5 x A5".into(), direct_product(&[a5.clone(), a5.clone(), a5])),
        ("S5 on pairs".into(), on_k_subsets(&symmetric(5), 2)),
        ("AGL(3,2)".into(), agl(3, 2).unwrap()),
    ]
}

/// An inverse-sequence fixture for the pipeline; diagonal fixtures carry
/// `(n, k)` for decoding.
pub struct SequenceFixture {
    pub name: String,
    pub seq: motionforge::pipeline::InverseSequence,
    pub diagonal: Option<(PermGroup, usize)>,
}

pub fn pipeline_fixtures() -> Vec<SequenceFixture> {
    use motionforge::graph;
    use motionforge::pipeline::{diagonal_sequence, read_sequence};
    let mut out = Vec::new();
    for (name, k) in [
        ("C2", 1),
        ("C2", 2),
        ("C3", 2),
        ("S3", 2),
        ("S4", 3),
        ("D5", 3),
        ("S5", 3),
        ("S5", 4),
        ("A5", 3),
        ("PSL(3,2)", 5),
    ] {
        let g = by_name(name);
        out.push(SequenceFixture {
            name: format!("diagonal {name}, k = {k}"),
            seq: diagonal_sequence(&g, k),
            diagonal: Some((g, k)),
        });
    }
    let w = group::construct::wreath(&by_name("S4"), &by_name("C2"));
    out.push(SequenceFixture {
        name: "diagonal S4 wr C2, k = 5".into(),
        seq: diagonal_sequence(&w, 5),
        diagonal: Some((w, 5)),
    });
    out.push(SequenceFixture {
        name: "S4 onto S3".into(),
        seq: read_sequence(&data_dir().join("seq/s4-quotient.seq")).unwrap(),
        diagonal: None,
    });
    for (name, t) in [("path, radius 9", graph::path(9)), ("spider(3, 9)", graph::spider(3, 9))] {
        out.push(SequenceFixture {
            name: format!("spheres of {name}"),
            seq: t.sphere_sequence(9).unwrap(),
            diagonal: None,
        });
    }
    out
}

/// Color-preserving automorphisms of an undirected graph, counted by
/// extending partial maps one vertex at a time.
pub fn brute_automorphism_count(adj: &[Vec<bool>], colors: &[usize]) -> u128 {
    fn extend(i: usize, adj: &[Vec<bool>], colors: &[usize], map: &mut Vec<usize>, used: &mut [bool]) -> u128 {
        let n = adj.len();
        if i == n {
            return 1;
        }
        let degree = |v: usize| adj[v].iter().filter(|&&e| e).count();
        let mut total = 0;
        for y in 0..n {
            if used[y] || colors[y] != colors[i] || degree(y) != degree(i) {
                continue;
            }
            if (0..i).all(|j| adj[i][j] == adj[y][map[j]]) {
                map.push(y);
                used[y] = true;
                total += extend(i + 1, adj, colors, map, used);
                used[y] = false;
                map.pop();
            }
        }
        total
    }
    extend(0, adj, colors, &mut Vec::new(), &mut vec![false; adj.len()])
}
