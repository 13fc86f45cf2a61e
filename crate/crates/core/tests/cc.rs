mod common;

use common::{corpus, elements_of};
use motionforge::cc::*;
use motionforge::coloring::{motion_bound_holds, motion_lemma_coloring, MotionOutcome};
use motionforge::MinDegree;

/// Permutations preserving every color of the matrix, counted by extension.
fn brute_cc_automorphisms(x: &CoherentConfig) -> u128 {
    fn extend(i: usize, x: &CoherentConfig, map: &mut Vec<usize>, used: &mut [bool]) -> u128 {
        let n = x.order();
        if i == n {
            return 1;
        }
        let mut total = 0;
        for y in 0..n {
            if used[y] || x.color(y, y) != x.color(i, i) {
                continue;
            }
            if (0..i).all(|j| x.color(i, j) == x.color(y, map[j]) && x.color(j, i) == x.color(map[j], y)) {
                map.push(y);
                used[y] = true;
                total += extend(i + 1, x, map, used);
                used[y] = false;
                map.pop();
            }
        }
        total
    }
    extend(0, x, &mut Vec::new(), &mut vec![false; x.order()])
}

#[test]
fn small_cc_automorphism_counts_match_brute_force() {
    for x in [triangular(5), lattice(3), lattice(4), clique(5), paley(13).unwrap()] {
        let aut = x.automorphism_group(1 << 22).unwrap();
        assert_eq!(aut.order(), brute_cc_automorphisms(&x));
    }
}

#[test]
fn intersection_numbers_match_direct_counts() {
    for x in [triangular(6), lattice(3), paley(9).unwrap()] {
        let p = x.intersection_numbers();
        let n = x.order();
        for a in 0..n {
            for b in 0..n {
                let k = x.color(a, b) as usize;
                for i in 0..x.rank() {
                    for j in 0..x.rank() {
                        let count = (0..n)
                            .filter(|&z| x.color(a, z) as usize == i && x.color(z, b) as usize == j)
                            .count();
                        assert_eq!(p.get(i, j, k) as usize, count);
                    }
                }
            }
        }
    }
}

#[test]
fn schurian_configurations_of_the_corpus() {
    for f in corpus().into_iter().filter(|f| f.group.degree() <= 30) {
        let x = schurian_cc(&f.group);
        let raw: Vec<u32> = (0..x.order())
            .flat_map(|a| (0..x.order()).map(move |b| (a, b)))
            .map(|(a, b)| x.color(a, b))
            .collect();
        assert!(validate_cc(x.order(), &raw).unwrap().is_ok(), "{}", f.name);
        assert!(x.preserved_by(&f.group), "{}", f.name);
        let aut = x.automorphism_group(1 << 22).unwrap();
        assert!(f.group.is_subgroup_of(&aut), "{}", f.name);
        assert_eq!(x.is_homogeneous(), f.group.is_transitive(), "{}", f.name);
    }
}

#[test]
fn distinguishing_bound_is_below_motion() {
    for f in corpus().into_iter().filter(|f| f.group.degree() <= 16 && f.group.is_transitive()) {
        let x = schurian_cc(&f.group);
        let aut = x.automorphism_group(1 << 22).unwrap();
        if aut.order() > 1 << 20 {
            continue;
        }
        let mu = common::brute_min_degree(&elements_of(&aut)).map_or(MinDegree::Infinity, MinDegree::Finite);
        assert!(mu >= MinDegree::Finite(x.min_distinguishing()), "{}", f.name);
    }
}

#[test]
fn motion_lemma_bridge() {
    // Whenever 2^{μ/2} ≥ |Aut|, random 2-colorings find an asymmetric one.
    let mut used = 0;
    for x in [paley(13).unwrap(), paley(17).unwrap(), triangular(7), lattice(5), paley(29).unwrap()] {
        let aut = x.automorphism_group(1 << 22).unwrap();
        let mu = aut.minimal_degree(1 << 24).unwrap();
        if !motion_bound_holds(2, mu, aut.order()) {
            continue;
        }
        used += 1;
        let report = motion_lemma_coloring(&aut, 2, 17, 10_000).unwrap();
        match report.outcome {
            MotionOutcome::Found { coloring, .. } => {
                let stab = common::brute_color_stabilizer(&elements_of(&aut), coloring.colors());
                assert_eq!(stab.len(), 1);
            }
            MotionOutcome::Exhausted { trials } => panic!("nothing in {trials} trials"),
        }
    }
    assert!(used >= 1);
}

#[test]
fn paley_configurations_beat_the_square_root_bound() {
    for q in [5, 9, 13, 17, 25, 29, 37, 41] {
        let x = paley(q).unwrap();
        assert!(x.is_upcc(), "P({q})");
        let d = x.min_distinguishing() as f64;
        assert!(d >= ((q as f64).sqrt() - 1.0) / 2.0, "P({q})");
    }
}

#[test]
fn violations_are_reported() {
    let text = std::fs::read_to_string(common::data_dir().join("cc/p4-not-cc.cc")).unwrap();
    assert!(CoherentConfig::parse(&text).is_err());
    // A diagonal color reused off the diagonal.
    let raw = [0, 0, 1, 0];
    assert!(matches!(validate_cc(2, &raw).unwrap(), Err(CcViolation::DiagonalMixed { .. })));
    // The directed 3-cycle is a configuration; recoloring one arc breaks the converse axiom.
    let raw = [0, 1, 2, 2, 0, 1, 1, 2, 0];
    assert!(validate_cc(3, &raw).unwrap().is_ok());
    let raw = [0, 1, 1, 2, 0, 1, 1, 2, 0];
    assert!(validate_cc(3, &raw).unwrap().is_err());
}

#[test]
fn cc_files_round_trip() {
    for name in ["t5", "t6", "l2-3", "l2-4", "paley13", "clique5"] {
        let text = std::fs::read_to_string(common::data_dir().join(format!("cc/{name}.cc"))).unwrap();
        let x = CoherentConfig::parse(&text).unwrap();
        let back = CoherentConfig::parse(&x.format()).unwrap();
        assert_eq!(back.rank(), x.rank(), "{name}");
        assert!((0..x.order()).all(|a| (0..x.order()).all(|b| back.color(a, b) == x.color(a, b))), "{name}");
    }
}
