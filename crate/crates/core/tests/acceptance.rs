//! Acceptance run: ten criteria, each printed as one PASS or FAIL line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::props;
use common::{brute_color_stabilizer, brute_setwise, corpus, elements_of, equals_group};
use motionforge::cc::{lattice, motion, paley, schurian_cc, triangular, CoherentConfig};
use motionforge::coloring::{asy_number, find_asymmetric_subset, setwise_stabilizer, solv_number, SearchOptions};
use motionforge::constructions::{affine_solvable_subset, projective_solvable_subset};
use motionforge::geometry::{AffineContext, ProjectiveContext};
use motionforge::group::construct::{alternating, cyclic, dihedral, mathieu, symmetric, wreath};
use motionforge::pipeline::{coloring_stabilizer_in_limit, decode_diagonal_coloring, run_pipeline, PipelineOptions};
use motionforge::reduce::{reduce_nonsolvable_image, reduce_simple_image, ReduceOptions};
use motionforge::{GroupHom, MinDegree, PermGroup};
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn stabilizer_oracle() -> Outcome {
    let groups = corpus();
    ensure!(groups.len() >= 50, "corpus has only {} groups", groups.len());
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for f in &groups {
        ensure!(f.group.order() <= 10_000, "{} is too large", f.name);
        let n = f.group.degree();
        let els = elements_of(&f.group);
        for _ in 0..200 {
            let subset: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.5)).collect();
            let stab = setwise_stabilizer(&f.group, &subset).map_err(|e| e.to_string())?;
            ensure!(
                equals_group(&brute_setwise(&els, n, &subset), &stab),
                "{}: stabilizer of {subset:?} differs",
                f.name
            );
        }
    }
    Ok(format!("{} groups x 200 subsets agree with filtering", groups.len()))
}

fn minimal_degrees() -> Outcome {
    for n in 3..=8 {
        let s = symmetric(n).minimal_degree(1 << 20).map_err(|e| e.to_string())?;
        let a = alternating(n).minimal_degree(1 << 20).map_err(|e| e.to_string())?;
        ensure!(s == MinDegree::Finite(2), "mu(S{n}) = {s}");
        ensure!(a == MinDegree::Finite(3), "mu(A{n}) = {a}");
    }
    let t = PermGroup::trivial(5).minimal_degree(1 << 20).map_err(|e| e.to_string())?;
    ensure!(t == MinDegree::Infinity, "trivial group gives {t}");
    Ok("mu(Sn) = 2, mu(An) = 3 for n = 3..8; trivial group is infinite".into())
}

fn solvable_coloring_numbers() -> Outcome {
    let opts = SearchOptions::default();
    let s8 = solv_number(&symmetric(8), &opts).map_err(|e| e.to_string())?;
    let s12 = solv_number(&symmetric(12), &opts).map_err(|e| e.to_string())?;
    ensure!(s8 == 2, "solv(S8) = {s8}");
    ensure!(s12 == 3, "solv(S12) = {s12}");
    Ok("solv(S8) = 2, solv(S12) = 3".into())
}

fn exception_fixtures() -> Outcome {
    let opts = SearchOptions::default();
    let d5 = dihedral(5);
    let els = elements_of(&d5);
    let asymmetric = (0u32..32)
        .filter(|mask| {
            let subset: Vec<usize> = (0..5).filter(|&x| mask >> x & 1 == 1).collect();
            brute_setwise(&els, 5, &subset).len() == 1
        })
        .count();
    ensure!(asymmetric == 0, "D5 has {asymmetric} asymmetric subsets");
    ensure!(find_asymmetric_subset(&d5, &opts).map_err(|e| e.to_string())?.is_none(), "search found one for D5");
    let c5 = cyclic(5);
    let found = find_asymmetric_subset(&c5, &opts).map_err(|e| e.to_string())?;
    let ok = found.is_some_and(|s| brute_setwise(&elements_of(&c5), 5, &s).len() == 1);
    ensure!(ok, "no verified asymmetric subset for C5");
    let s4 = asy_number(&symmetric(4), &opts).map_err(|e| e.to_string())?;
    ensure!(s4 == 4, "asy(S4) = {s4}");
    let w = asy_number(&wreath(&symmetric(4), &cyclic(2)), &opts).map_err(|e| e.to_string())?;
    ensure!(w == 5, "asy(S4 wr C2) = {w}");
    Ok("D5: none of 32 subsets; C5: found; asy(S4) = 4; asy(S4 wr C2) = 5".into())
}

fn construction_postconditions() -> Outcome {
    let affine: Vec<(usize, usize)> = (1..=7).flat_map(|d| [(d, 2), (d, 3)]).chain([(2, 5), (3, 5)]).collect();
    for &(d, p) in &affine {
        let ctx = AffineContext::new(d, p).map_err(|e| e.to_string())?;
        let stab = setwise_stabilizer(&ctx.full_group(), &affine_solvable_subset(&ctx)).map_err(|e| e.to_string())?;
        ensure!(stab.is_solvable(), "AGL({d},{p}) stabilizer is not solvable");
    }
    let projective = [(2, 5), (3, 2), (3, 3), (4, 2), (5, 2)];
    for (d, q) in projective {
        let ctx = ProjectiveContext::new(d, q).map_err(|e| e.to_string())?;
        let stab = setwise_stabilizer(&ctx.full_group(), &projective_solvable_subset(&ctx)).map_err(|e| e.to_string())?;
        ensure!(stab.is_solvable(), "PSL({d},{q}) stabilizer is not solvable");
    }
    Ok(format!("{} affine and {} projective subsets have solvable stabilizers", affine.len(), projective.len()))
}

fn mathieu_24() -> Outcome {
    let m24 = mathieu(24).map_err(|e| e.to_string())?;
    ensure!(m24.order() == 244_823_040, "|M24| = {}", m24.order());
    let stab = setwise_stabilizer(&m24, &(0..10).collect::<Vec<_>>()).map_err(|e| e.to_string())?;
    ensure!(stab.order() == 144, "stabilizer order {}", stab.order());
    ensure!(stab.is_solvable(), "stabilizer is not solvable");
    Ok("|M24| = 244823040; stabilizer of {1..10} has order 144 and is solvable".into())
}

fn reduction_engine() -> Outcome {
    let instances = common::reduction_instances();
    ensure!(instances.len() >= 20, "only {} instances", instances.len());
    for (name, phi) in &instances {
        let g = phi.source();
        let t = phi.image_group().order();
        for opts in [ReduceOptions::default(), ReduceOptions::structural()] {
            let w = reduce_simple_image(phi, &opts).map_err(|e| format!("{name}: {e}"))?;
            let one_orbit = g.orbits().iter().any(|o| w.subset.iter().all(|x| o.contains(x)));
            ensure!(one_orbit, "{name}: subset spans orbits");
            let stab = setwise_stabilizer(g, &w.subset).map_err(|e| e.to_string())?;
            let after = phi.image_of(&stab).order();
            ensure!(after < t, "{name}: image order {after} is not below {t}");
        }
    }
    let groups = common::nonsolvable_instances();
    for (name, g) in &groups {
        let bound = 127 - g.order().leading_zeros() as usize;
        let mut l = g.clone();
        let mut rounds = 0;
        while !l.is_solvable() {
            let w = reduce_nonsolvable_image(&GroupHom::identity(&l), &ReduceOptions::default())
                .map_err(|e| format!("{name}: {e}"))?;
            l = setwise_stabilizer(&l, &w.subset).map_err(|e| e.to_string())?;
            rounds += 1;
            ensure!(rounds <= bound, "{name}: more than {bound} rounds");
        }
    }
    Ok(format!(
        "{} simple-image instances shrink; {} groups become solvable within floor(log2 |G|) rounds",
        instances.len(),
        groups.len()
    ))
}

fn pipeline_postcondition() -> Outcome {
    let fixtures = common::pipeline_fixtures();
    ensure!(fixtures.len() >= 10, "only {} fixtures", fixtures.len());
    ensure!(fixtures.iter().any(|f| f.name.contains("spider")), "no tree truncation");
    for f in &fixtures {
        let trace = run_pipeline(&f.seq, &PipelineOptions::default()).map_err(|e| format!("{}: {e}", f.name))?;
        let bottom = f.seq.domain(0);
        ensure!(trace.subset.iter().all(|x| !bottom.contains(x)), "{}: level 0 is colored", f.name);
        let mut colors = vec![0; f.seq.combined_degree()];
        for &x in &trace.subset {
            colors[x] = 1;
        }
        let l = coloring_stabilizer_in_limit(&f.seq, &colors).map_err(|e| e.to_string())?;
        ensure!(f.seq.projections()[0].image_of(&l).is_trivial(), "{}: level 0 image is not trivial", f.name);
        if let Some((g, k)) = &f.diagonal {
            let gamma = decode_diagonal_coloring(g.degree(), *k, &trace.subset).map_err(|e| e.to_string())?;
            ensure!(gamma.used_colors() <= 1 << k, "{}: {} colors", f.name, gamma.used_colors());
            let stab = brute_color_stabilizer(&elements_of(g), gamma.colors());
            ensure!(stab.len() == 1, "{}: decoded coloring is not asymmetric", f.name);
        }
    }
    Ok(format!("{} fixtures: level 0 untouched and fixed pointwise; decoded colorings asymmetric", fixtures.len()))
}

fn upcc_fixtures() -> Vec<(String, CoherentConfig)> {
    let mut out = Vec::new();
    for q in (5..=97).filter(|q| q % 4 == 1 && motionforge::gf::prime_power(*q).is_some()) {
        out.push((format!("P({q})"), paley(q).unwrap()));
    }
    for r in 5..=14 {
        out.push((format!("T({r})"), triangular(r)));
    }
    for r in 3..=10 {
        out.push((format!("L2({r})"), lattice(r)));
    }
    for f in corpus() {
        let x = schurian_cc(&f.group);
        if x.is_upcc() {
            out.push((format!("orbitals of {}", f.name), x));
        }
    }
    out
}

fn cc_constants() -> Outcome {
    let cap = 1 << 24;
    for r in 5..=7usize {
        let m = motion(&triangular(r), 1 << 22, cap).map_err(|e| e.to_string())?;
        ensure!(m.motion == MinDegree::Finite(2 * r - 4), "T({r}) motion {}", m.motion);
    }
    for r in 3..=5usize {
        let m = motion(&lattice(r), 1 << 22, cap).map_err(|e| e.to_string())?;
        let fact: u128 = (1..=r as u128).product();
        ensure!(m.motion == MinDegree::Finite(2 * r), "L2({r}) motion {}", m.motion);
        ensure!(m.automorphisms == 2 * fact * fact, "L2({r}) has {} automorphisms", m.automorphisms);
    }
    let fixtures = upcc_fixtures();
    for (name, x) in &fixtures {
        ensure!(x.is_upcc(), "{name} is not a UPCC");
        let n = x.order();
        ensure!(n <= 100, "{name} has {n} points");
        let d = x.min_distinguishing();
        ensure!(d as f64 >= ((n as f64).sqrt() - 1.0) / 2.0, "{name}: min |D| = {d}");
    }
    Ok(format!("T(5..7) and L2(3..5) constants hold; {} UPCC fixtures meet the bound", fixtures.len()))
}

fn property_suites() -> Outcome {
    let runner = || TestRunner::new_with_rng(Config { cases: 256, failure_persistence: None, ..Config::default() }, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    let fail = |e: String| TestCaseError::fail(e);
    let lattices = props::lattices();
    let mut applicable = 0;
    for lat in lattices {
        let n = lat.normals.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    applicable += usize::from(lat.check(a, b, c)?);
                }
            }
        }
    }
    runner()
        .run(&(0..lattices.len(), 0usize..64, 0usize..64, 0usize..64), |(l, a, b, c)| {
            let lat = &lattices[l];
            let n = lat.normals.len();
            lat.check(a % n, b % n, c % n).map(|_| ()).map_err(fail)
        })
        .map_err(|e| e.to_string())?;
    runner()
        .run(&(0..props::base_epimorphisms().len(), proptest::num::u64::ANY), |(base, seed)| {
            let (name, phi) = props::sample_epimorphism(base, seed);
            props::check_core(&name, &phi).map_err(fail)
        })
        .map_err(|e| e.to_string())?;
    runner()
        .run(&(0..props::sequences().len(), proptest::num::u64::ANY), |(i, seed)| {
            props::check_sublimit(i, seed).map_err(fail)
        })
        .map_err(|e| e.to_string())?;
    Ok(format!(
        "three-normal: {applicable} applicable triples, no counterexample; core images and sublimits hold on 256 samples each"
    ))
}

#[test]
fn acceptance() {
    let criteria: [(&str, Duration, fn() -> Outcome); 10] = [
        ("stabilizer oracle", Duration::from_secs(120), stabilizer_oracle),
        ("minimal degrees", Duration::MAX, minimal_degrees),
        ("solvable coloring numbers", Duration::from_secs(300), solvable_coloring_numbers),
        ("exception fixtures", Duration::MAX, exception_fixtures),
        ("construction postconditions", Duration::from_secs(600), construction_postconditions),
        ("M24", Duration::from_secs(120), mathieu_24),
        ("reduction engine", Duration::MAX, reduction_engine),
        ("pipeline postcondition", Duration::MAX, pipeline_postcondition),
        ("coherent configurations", Duration::from_secs(300), cc_constants),
        ("property suites", Duration::MAX, property_suites),
    ];
    let mut failed = Vec::new();
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let result = match result {
            Ok(_) if elapsed > limit => Err(format!("took {elapsed:.1?}, limit {limit:?}")),
            r => r,
        };
        let n = i + 1;
        match result {
            Ok(detail) => println!("criterion {n:>2} PASS  {name} ({elapsed:.1?}): {detail}"),
            Err(why) => {
                println!("criterion {n:>2} FAIL  {name} ({elapsed:.1?}): {why}");
                failed.push(n);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
