mod common;

use common::{brute_automorphism_count, brute_setwise, elements_of};
use motionforge::graph::{path, spider, tree, RootedTruncation};
use motionforge::pipeline::PipelineOptions;

fn adjacency(t: &RootedTruncation) -> Vec<Vec<bool>> {
    let n = t.order();
    let mut adj = vec![vec![false; n]; n];
    for (a, b) in t.edges() {
        adj[a][b] = true;
        adj[b][a] = true;
    }
    adj
}

#[test]
fn rooted_automorphism_orders_match_brute_force() {
    let cases = [
        ("path -3..3", path(3), 2u128),
        ("binary tree of depth 3", tree(2, 2, 3), 1 << 7),
        ("spider(3, 3)", spider(3, 3), 6),
        ("ternary root, binary below, depth 2", tree(3, 2, 2), 6 * 8),
    ];
    for (name, t, expected) in cases {
        let dist: Vec<usize> = (0..t.order()).map(|v| t.distance(v)).collect();
        let brute = brute_automorphism_count(&adjacency(&t), &dist);
        assert_eq!(brute, expected, "{name}");
        assert_eq!(t.rooted_automorphisms(t.radius()).unwrap().order(), brute, "{name}");
    }
}

#[test]
fn unrooted_ball_automorphisms_match_brute_force() {
    for t in [path(4), spider(3, 2), tree(2, 2, 2)] {
        let n = t.order();
        let brute = brute_automorphism_count(&adjacency(&t), &vec![0; n]);
        assert_eq!(t.ball_automorphisms(t.radius()).unwrap().order(), brute);
    }
}

#[test]
fn spheres_are_contiguous_and_balls_are_prefixes() {
    let t = spider(4, 5);
    for d in 0..=t.radius() {
        for v in t.sphere(d) {
            assert_eq!(t.distance(v), d);
        }
        assert_eq!(t.ball(d).end, t.sphere(d).end);
    }
    assert_eq!(t.sphere(0), 0..1);
}

#[test]
fn special_subsets_fix_the_root_and_every_sphere() {
    for (name, t) in [("path9", path(9)), ("spider(3, 9)", spider(3, 9)), ("spider(4, 9)", spider(4, 9))] {
        let r = t.special_subset(9, &PipelineOptions::default()).unwrap();
        assert!(r.subset.iter().all(|&v| t.distance(v) >= 2), "{name}: meets B_1");
        for d in (2..=9).step_by(2) {
            assert!(t.sphere(d).all(|v| r.subset.contains(&v)), "{name}: misses S_{d}");
        }
        assert!(r.root_fixed && r.spheres_fixed.iter().all(|&f| f), "{name}");
        // Enumerate the unrooted automorphisms of the truncation.
        let full = t.ball_automorphisms(t.radius()).unwrap();
        let stab = brute_setwise(&elements_of(&full), t.order(), &r.subset);
        assert_eq!(stab.len() as u128, r.stabilizer_order, "{name}");
        assert!(stab.iter().all(|g| g.apply(t.root()) == t.root()), "{name}");
    }
}

#[test]
fn too_short_truncations_are_reported() {
    assert!(path(2).sphere_sequence(2).is_err());
    assert!(spider(4, 5).special_subset(5, &PipelineOptions::default()).is_err());
}

#[test]
fn twins_are_rejected() {
    // Leaves of a star are twins.
    let t = tree(3, 1, 1);
    assert!(!t.twin_free());
    assert!(t.special_subset(3, &PipelineOptions::default()).is_err());
}

#[test]
fn graph_files_parse_and_round_trip() {
    for name in ["path9", "spider3-9", "spider5-11", "star3", "binary4"] {
        let text = std::fs::read_to_string(common::data_dir().join(format!("graphs/{name}.graph"))).unwrap();
        let t = RootedTruncation::parse(&text).unwrap();
        let back = RootedTruncation::parse(&t.format()).unwrap();
        assert_eq!(back.order(), t.order(), "{name}");
        assert_eq!(back.edges(), t.edges(), "{name}");
    }
    assert!(RootedTruncation::parse("v a\nv b\ne a b\n").is_err());
}

#[test]
fn pendant_leaves_break_the_sphere_restriction() {
    // r - a, a - b, a - c, a - d, d - e: swapping the leaves b and c fixes S_3 = {e}.
    let names: Vec<String> = ["r", "a", "b", "c", "d", "e"].iter().map(|s| s.to_string()).collect();
    let t = RootedTruncation::new(names, &[(0, 1), (1, 2), (1, 3), (1, 4), (4, 5)], 0).unwrap();
    let check = t.sphere_restriction_check(3).unwrap();
    assert!(!check.ok);
    let w = check.witness.unwrap();
    assert_eq!(w.apply(t.vertex("e").unwrap()), t.vertex("e").unwrap());
    assert_ne!(w.apply(t.vertex("b").unwrap()), t.vertex("b").unwrap());
    assert!(spider(3, 5).sphere_restriction_check(3).unwrap().ok);
}
