//! `motionforge`: batch front end for the library.
//!
//! Exit codes: 0 on success, 1 on errors, 2 when a search cap ran out.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use motionforge::cc::{self, CoherentConfig};
use motionforge::coloring::{self, Coloring, MotionOutcome, SearchOptions};
use motionforge::constructions;
use motionforge::error::Error;
use motionforge::geometry::{AffineContext, ProjectiveContext};
use motionforge::graph::RootedTruncation;
use motionforge::group::{construct, GroupHom, MinDegree, PermGroup};
use motionforge::io;
use motionforge::pipeline::{self, InverseSequence, PipelineOptions, PipelineTrace, SequenceIssue};
use motionforge::reduce::{self, ReduceOptions, ReductionWitness};

#[derive(Parser)]
#[command(name = "motionforge", version, about = "Symmetry breaking for finite permutation groups")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Largest group enumerated element by element.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    cap_elements: u128,
    /// Largest number of subsets or colorings examined by a search.
    #[arg(long, global = true, default_value_t = 1 << 24)]
    cap_subsets: u128,
    /// Seed for randomized searches.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Worker threads for exhaustive searches.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Write the main artifact (subset, coloring, sequence, configuration) here.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

impl Global {
    fn search(&self) -> SearchOptions {
        SearchOptions {
            subset_cap: self.cap_subsets,
            coloring_cap: self.cap_subsets,
            threads: self.threads,
        }
    }

    fn reduce(&self) -> ReduceOptions {
        ReduceOptions {
            search: self.search(),
            group_cap: self.cap_elements,
            ..ReduceOptions::default()
        }
    }

    fn emit(&self, artifact: &str) -> Result<()> {
        match &self.out {
            Some(path) => fs::write(path, artifact).with_context(|| format!("writing {}", path.display())),
            None => Ok(()),
        }
    }
}

/// `println!` that reports write errors, so a closed pipe ends the run quietly.
macro_rules! out {
    ($($t:tt)*) => {
        {
            use std::io::Write as _;
            writeln!(std::io::stdout(), $($t)*)?
        }
    };
}

#[derive(Subcommand)]
enum Command {
    /// Facts about a group given as a generator file or a name like S5.
    Group {
        #[arg(value_enum)]
        op: GroupOp,
        group: String,
    },
    /// Distinguishing and asymmetric colorings.
    #[command(subcommand)]
    Color(ColorCmd),
    /// Subsets with solvable stabilizers for affine, projective and Mathieu groups.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// One coloring round that shrinks a simple or nonsolvable image.
    #[command(subcommand)]
    Reduce(ReduceCmd),
    /// Inverse sequences and the limit coloring pipeline.
    #[command(subcommand)]
    Pipeline(PipelineCmd),
    /// Sphere sequences of rooted graphs.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Coherent configurations and their motion.
    #[command(subcommand)]
    Cc(CcCmd),
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum GroupOp {
    Order,
    Orbits,
    /// Minimal degree.
    Mu,
    /// Orders along the derived series.
    Derived,
}

#[derive(Subcommand)]
enum ColorCmd {
    /// Stabilizer of a subset or coloring file.
    Stabilizer {
        group: String,
        #[arg(long, conflicts_with = "coloring")]
        subset: Option<PathBuf>,
        #[arg(long)]
        coloring: Option<PathBuf>,
    },
    /// A subset with trivial setwise stabilizer.
    Asymmetric {
        group: String,
        #[arg(long)]
        size: Option<usize>,
    },
    /// A coloring with solvable stabilizer.
    Solvable {
        group: String,
        #[arg(short = 'k', long, default_value_t = 2)]
        colors: usize,
    },
    /// Least number of colors for an asymmetric coloring.
    Asy { group: String },
    /// Least number of colors for a solvable coloring.
    Solv { group: String },
    /// Random colorings until one is asymmetric.
    MotionLemma {
        group: String,
        #[arg(short = 'd', long, default_value_t = 2)]
        colors: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// Subset of AG(d, p) with solvable stabilizer in AGL(d, p).
    Affine { d: usize, p: usize },
    /// Subset of PG(d−1, q) with solvable stabilizer in PSL(d, q).
    Projective { d: usize, q: usize },
    /// Subset with solvable stabilizer in M11, M12, M22, M23 or M24.
    Mathieu { name: String },
    /// Subset lowering the derived length of a solvable group.
    Transversal { group: String },
    /// Asymmetric coloring with at most five colors of a solvable group.
    FiveColoring { group: String },
    /// Subset whose stabilizer has orbits of bounded length.
    BoundedOrbits { group: String },
}

#[derive(Args)]
struct MapArgs {
    group: String,
    /// Map table of `generator -> image` lines; the identity when omitted.
    #[arg(long, requires = "target")]
    map: Option<PathBuf>,
    #[arg(long)]
    target: Option<String>,
}

#[derive(Subcommand)]
enum ReduceCmd {
    /// Shrink the image of an epimorphism onto a nonabelian simple group.
    Simple(MapArgs),
    /// Shrink the image of a homomorphism with nonsolvable image.
    Nonsolvable(MapArgs),
}

#[derive(Args)]
struct TraceArgs {
    /// JSON-lines trace file.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Phase A scans orbits up to this size for the smallest image first.
    #[arg(long, default_value_t = 0)]
    greedy: usize,
}

#[derive(Subcommand)]
enum PipelineCmd {
    /// Check disjointness, homomorphisms and surjectivity.
    Validate { sequence: PathBuf },
    /// Replace every level by the image of the top group.
    Reduce { sequence: PathBuf },
    /// Zero-neutral zero-asymmetric 2-coloring of the limit.
    Run {
        sequence: PathBuf,
        #[command(flatten)]
        trace: TraceArgs,
    },
    /// Write the diagonal sequence of `k + 1` copies of a group.
    Diagonal { group: String, k: usize },
}

#[derive(Subcommand)]
enum GraphCmd {
    /// Sphere sizes, twins and restriction checks.
    Spheres { graph: PathBuf },
    /// Asymmetric special subset from the odd-sphere sequence.
    SpecialSubset {
        graph: PathBuf,
        #[arg(long)]
        radius: Option<usize>,
        #[command(flatten)]
        trace: TraceArgs,
    },
}

#[derive(Subcommand)]
enum CcCmd {
    /// The orbital configuration of a group.
    Build { group: String },
    /// Check the axioms of a color matrix file.
    Validate { file: PathBuf },
    /// Distinguishing-set bound and exact motion.
    Motion { file: PathBuf },
}

fn data_dir() -> PathBuf {
    std::env::var_os("MOTIONFORGE_DATA")
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data"))
}

/// A generator file, a file in the data directory, or a group name.
fn load_group(spec: &str) -> Result<PermGroup> {
    let direct = Path::new(spec);
    if direct.is_file() {
        return Ok(io::read_generators(direct)?);
    }
    let data = data_dir();
    for candidate in [data.join(spec), data.join(format!("{}.gens", spec.to_lowercase()))] {
        if candidate.is_file() {
            return Ok(io::read_generators(&candidate)?);
        }
    }
    construct::by_name(spec).with_context(|| format!("{spec:?} is neither a generator file nor a group name"))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Keeps JSON numbers exact: orders beyond `u64` become strings.
fn big(x: u128) -> Value {
    u64::try_from(x).map_or_else(|_| json!(x.to_string()), |v| json!(v))
}

fn one_based(points: &[usize]) -> Vec<usize> {
    points.iter().map(|p| p + 1).collect()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.chain().any(|c| c.downcast_ref::<std::io::Error>().is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)) => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let cap = e.chain().any(|c| c.downcast_ref::<Error>().is_some_and(Error::is_cap));
            ExitCode::from(if cap { 2 } else { 1 })
        }
    }
}

fn run(cli: &Cli) -> Result<()> {
    let g = &cli.global;
    match &cli.command {
        Command::Group { op, group } => group_cmd(g, *op, &load_group(group)?),
        Command::Color(cmd) => color_cmd(g, cmd),
        Command::Construct(cmd) => construct_cmd(g, cmd),
        Command::Reduce(cmd) => reduce_cmd(g, cmd),
        Command::Pipeline(cmd) => pipeline_cmd(g, cmd),
        Command::Graph(cmd) => graph_cmd(g, cmd),
        Command::Cc(cmd) => cc_cmd(g, cmd),
    }
}

fn group_cmd(g: &Global, op: GroupOp, group: &PermGroup) -> Result<()> {
    match op {
        GroupOp::Order => out!("{}", group.order()),
        GroupOp::Orbits => {
            for orbit in group.orbits() {
                out!("{}", io::format_subset(&orbit));
            }
        }
        GroupOp::Mu => out!("{}", group.minimal_degree(g.cap_elements)?),
        GroupOp::Derived => {
            let orders: Vec<String> = group.derived_series().iter().map(|h| h.order().to_string()).collect();
            out!("{}", orders.join(" > "));
            match group.derived_length() {
                Some(d) => out!("solvable, derived length {d}"),
                None => out!("not solvable"),
            }
        }
    }
    Ok(())
}

fn color_cmd(g: &Global, cmd: &ColorCmd) -> Result<()> {
    let opts = g.search();
    match cmd {
        ColorCmd::Stabilizer { group, subset, coloring } => {
            let group = load_group(group)?;
            let gamma = match (subset, coloring) {
                (Some(path), None) => {
                    Coloring::from_subset(group.degree(), &io::parse_subset(&read(path)?, group.degree())?)
                }
                (None, Some(path)) => Coloring::from_colors(io::parse_coloring(&read(path)?, group.degree())?),
                _ => bail!("give exactly one of --subset and --coloring"),
            };
            let report = coloring::classify_coloring(&group, &gamma)?;
            out!("stabilizer order {}", report.stabilizer.order());
            out!("asymmetric {}", report.asymmetric);
            out!("solvable {}", report.solvable);
            out!("longest orbit {}", report.orbit_bound);
            g.emit(&io::format_generators(&report.stabilizer))?;
        }
        ColorCmd::Asymmetric { group, size } => {
            let group = load_group(group)?;
            let found = match size {
                Some(k) => coloring::find_asymmetric_subset_of_size(&group, *k, &opts)?,
                None => coloring::find_asymmetric_subset(&group, &opts)?,
            };
            match found {
                Some(s) => {
                    out!("{}", io::format_subset(&s));
                    g.emit(&format!("{}\n", io::format_subset(&s)))?;
                }
                None => out!("NONE (every subset was checked)"),
            }
        }
        ColorCmd::Solvable { group, colors } => {
            let group = load_group(group)?;
            match coloring::find_coloring(&group, *colors, &opts, &|h| h.is_solvable())? {
                Some(c) => {
                    print!("{}", io::format_coloring(c.colors()));
                    g.emit(&io::format_coloring(c.colors()))?;
                }
                None => out!("NONE (every canonical {colors}-coloring was checked)"),
            }
        }
        ColorCmd::Asy { group } => out!("{}", coloring::asy_number(&load_group(group)?, &opts)?),
        ColorCmd::Solv { group } => out!("{}", coloring::solv_number(&load_group(group)?, &opts)?),
        ColorCmd::MotionLemma { group, colors, trials } => {
            let group = load_group(group)?;
            let report = coloring::motion_lemma_coloring(&group, *colors, g.seed, *trials)?;
            out!("minimal degree {}", report.minimal_degree);
            out!("bound d^(mu/2) >= |G| holds: {}", report.bound_holds);
            match report.outcome {
                MotionOutcome::Found { coloring, trials } => {
                    out!("asymmetric coloring found after {trials} trials");
                    print!("{}", io::format_coloring(coloring.colors()));
                    g.emit(&io::format_coloring(coloring.colors()))?;
                }
                MotionOutcome::Exhausted { trials } => out!("no asymmetric coloring in {trials} trials"),
            }
        }
    }
    Ok(())
}

fn report_subset(g: &Global, group: &PermGroup, subset: &[usize]) -> Result<()> {
    let stab = coloring::setwise_stabilizer(group, subset)?;
    out!("subset {}", io::format_subset(subset));
    out!("stabilizer order {}", stab.order());
    match stab.derived_length() {
        Some(d) => out!("stabilizer solvable, derived length {d}"),
        None => out!("stabilizer not solvable"),
    }
    g.emit(&format!("{}\n", io::format_subset(subset)))
}

fn construct_cmd(g: &Global, cmd: &ConstructCmd) -> Result<()> {
    let opts = g.search();
    match cmd {
        ConstructCmd::Affine { d, p } => {
            let ctx = AffineContext::new(*d, *p)?;
            report_subset(g, &construct::agl(*d, *p)?, &constructions::affine_solvable_subset(&ctx))
        }
        ConstructCmd::Projective { d, q } => {
            let ctx = ProjectiveContext::new(*d, *q)?;
            report_subset(g, &construct::psl(*d, *q)?, &constructions::projective_solvable_subset(&ctx))
        }
        ConstructCmd::Mathieu { name } => {
            let (group, subset) = constructions::mathieu_with_subset(name)?;
            report_subset(g, &group, &subset)
        }
        ConstructCmd::Transversal { group } => {
            let group = load_group(group)?;
            let subset = constructions::derived_length_reduction(&group)?;
            out!("derived length before {}", group.derived_length().unwrap_or(0));
            report_subset(g, &group, &subset)
        }
        ConstructCmd::FiveColoring { group } => {
            let c = constructions::solvable_asymmetric_5coloring(&load_group(group)?, &opts)?;
            print!("{}", io::format_coloring(c.colors()));
            g.emit(&io::format_coloring(c.colors()))
        }
        ConstructCmd::BoundedOrbits { group } => {
            let group = load_group(group)?;
            let b = constructions::bounded_orbit_subset(&group, &opts)?;
            out!("orbit bound {}", b.bound);
            out!("derived length {}", b.derived_length);
            for case in &b.cases {
                out!("orbit case {case:?}");
            }
            report_subset(g, &group, &b.subset)
        }
    }
}

fn load_map(args: &MapArgs) -> Result<GroupHom> {
    let source = load_group(&args.group)?;
    match (&args.map, &args.target) {
        (Some(map), Some(target)) => {
            let target = load_group(target)?;
            let table = io::parse_map_table(&read(map)?, source.degree(), target.degree())?;
            let images = io::images_from_table(&source, &table)?;
            Ok(GroupHom::new(&source, &target, images)?)
        }
        _ => Ok(GroupHom::identity(&source)),
    }
}

fn print_witness(g: &Global, w: &ReductionWitness) -> Result<()> {
    let path: Vec<String> = w.path.iter().map(ToString::to_string).collect();
    out!("subset {}", io::format_subset(&w.subset));
    out!("image order {} -> {}", w.image_before, w.image_after);
    out!("path {}", path.join(" > "));
    g.emit(&format!("{}\n", io::format_subset(&w.subset)))
}

fn reduce_cmd(g: &Global, cmd: &ReduceCmd) -> Result<()> {
    let opts = g.reduce();
    match cmd {
        ReduceCmd::Simple(args) => {
            let phi = load_map(args)?;
            print_witness(g, &reduce::reduce_simple_image(&phi, &opts)?)
        }
        ReduceCmd::Nonsolvable(args) => {
            let phi = load_map(args)?;
            print_witness(g, &reduce::reduce_nonsolvable_image(&phi, &opts)?)
        }
    }
}

fn print_issues(issues: &[SequenceIssue]) -> Result<()> {
    for issue in issues {
        match issue {
            SequenceIssue::Overlap { first, second } => out!("levels {first} and {second} overlap"),
            SequenceIssue::NotHomomorphism { level, reason } => out!("map {level}: {reason}"),
            SequenceIssue::NotSurjective { level, image, target } => {
                out!("map {level}: image of order {image} in a group of order {target}")
            }
        }
    }
    Ok(())
}

fn write_trace(path: &Path, header: Value, trace: &PipelineTrace, extra: &[Value]) -> Result<()> {
    let mut lines = vec![header];
    for e in &trace.entries {
        lines.push(json!({
            "record": "step",
            "phase": format!("{:?}", e.phase),
            "watched_level": e.watched,
            "colored_level": e.colored,
            "subset": one_based(&e.subset),
            "image_order_before": big(e.order_before),
            "image_order": big(e.order_after),
            "derived_length": e.derived_length_after,
        }));
    }
    lines.push(json!({
        "record": "result",
        "pivot": trace.pivot,
        "abandoned_pivots": trace.abandoned_pivots,
        "subset": one_based(&trace.subset),
        "limit_stabilizer_order": big(trace.limit_stabilizer_order),
    }));
    lines.extend(extra.iter().cloned());
    let text: String = lines.iter().map(|v| format!("{v}\n")).collect();
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn print_trace(trace: &PipelineTrace) -> Result<()> {
    let [a, b, c] = trace.phase_counts();
    out!("pivot {} (abandoned {:?})", trace.pivot, trace.abandoned_pivots);
    out!("levels colored: phase A {a}, phase B {b}, phase C {c}");
    for e in &trace.entries {
        out!(
            "  {:?}: level {} colored, image at level {}: {} -> {}",
            e.phase, e.colored, e.watched, e.order_before, e.order_after
        );
    }
    out!("limit stabilizer order {}", trace.limit_stabilizer_order);
    out!("subset {}", io::format_subset(&trace.subset));
    Ok(())
}

fn sequence_summary(seq: &InverseSequence) -> String {
    let orders: Vec<String> = seq.levels().iter().map(|l| l.group.order().to_string()).collect();
    orders.join(" <- ")
}

fn pipeline_options(g: &Global, t: &TraceArgs) -> PipelineOptions {
    PipelineOptions {
        reduce: g.reduce(),
        greedy_orbit_max: t.greedy,
    }
}

fn pipeline_cmd(g: &Global, cmd: &PipelineCmd) -> Result<()> {
    match cmd {
        PipelineCmd::Validate { sequence } => {
            let seq = pipeline::read_sequence(sequence)?;
            let issues = seq.validate();
            if issues.is_empty() {
                out!("valid epimorphic sequence with {} levels", seq.len());
                out!("orders {}", sequence_summary(&seq));
            } else {
                print_issues(&issues)?;
                bail!("{} problem(s) found", issues.len());
            }
        }
        PipelineCmd::Reduce { sequence } => {
            let seq = pipeline::read_sequence(sequence)?.epimorphic_reduction();
            for (i, level) in seq.levels().iter().enumerate() {
                out!("level {i}: order {}", level.group.order());
            }
        }
        PipelineCmd::Run { sequence, trace } => {
            let seq = pipeline::read_sequence(sequence)?;
            let result = pipeline::run_pipeline(&seq, &pipeline_options(g, trace))?;
            print_trace(&result)?;
            g.emit(&format!("{}\n", io::format_subset(&result.subset)))?;
            if let Some(path) = &trace.trace {
                let header = json!({
                    "record": "header",
                    "command": "pipeline run",
                    "input": sequence.display().to_string(),
                    "levels": seq.len(),
                });
                write_trace(path, header, &result, &[])?;
            }
        }
        PipelineCmd::Diagonal { group, k } => {
            if *k == 0 {
                bail!("k must be at least 1");
            }
            let grp = load_group(group)?;
            let reference = if Path::new(group).is_file() {
                format!("file {}", fs::canonicalize(group)?.display())
            } else {
                format!("group {group}")
            };
            let seq = pipeline::diagonal_sequence(&grp, *k);
            let mut text = format!("levels {}\n", seq.len());
            for i in 0..seq.len() {
                text.push_str(&format!("level {i} offset {} {reference}\n", seq.level(i).offset));
            }
            let table: Vec<_> = grp.generators().iter().map(|x| (x.clone(), x.clone())).collect();
            for i in 1..seq.len() {
                text.push_str(&format!("map {i}\n{}", io::format_map_table(&table)));
            }
            if g.out.is_none() {
                print!("{text}");
            }
            g.emit(&text)?;
        }
    }
    Ok(())
}

fn graph_cmd(g: &Global, cmd: &GraphCmd) -> Result<()> {
    match cmd {
        GraphCmd::Spheres { graph } => {
            let x = RootedTruncation::parse(&read(graph)?)?;
            for (d, s) in x.spheres().iter().enumerate() {
                let names: Vec<&str> = s.clone().map(|v| x.name(v)).collect();
                out!("S{d} ({}): {}", names.len(), names.join(" "));
            }
            out!("twin-free {}", x.twin_free());
            for r in 1..=x.radius() {
                let check = x.sphere_restriction_check(r)?;
                match check.witness {
                    None => out!("radius {r}: restriction to S{r} is injective"),
                    Some(w) => {
                        let moved: Vec<&str> = w.support().into_iter().map(|v| x.name(v)).collect();
                        out!("radius {r}: an automorphism fixing S{r} moves {}", moved.join(" "));
                    }
                }
            }
        }
        GraphCmd::SpecialSubset { graph, radius, trace } => {
            let x = RootedTruncation::parse(&read(graph)?)?;
            let r = radius.unwrap_or(x.radius());
            let result = x.special_subset(r, &pipeline_options(g, trace))?;
            let names: Vec<&str> = result.subset.iter().map(|&v| x.name(v)).collect();
            print_trace(&result.trace)?;
            out!("special subset {}", names.join(" "));
            out!("root fixed by the stabilizer: {}", result.root_fixed);
            out!("stabilizer order on the truncation: {}", result.stabilizer_order);
            out!("note: a finite truncation cannot certify infinite motion");
            g.emit(&format!("{}\n", names.join(" ")))?;
            if let Some(path) = &trace.trace {
                let header = json!({
                    "record": "header",
                    "command": "graph special-subset",
                    "input": graph.display().to_string(),
                    "radius": r,
                });
                let check = json!({
                    "record": "check",
                    "root_fixed": result.root_fixed,
                    "spheres_fixed": result.spheres_fixed,
                    "stabilizer_order": big(result.stabilizer_order),
                    "special_subset": names,
                });
                write_trace(path, header, &result.trace, &[check])?;
            }
            if !result.root_fixed {
                bail!("the stabilizer of the special subset moves the root on this truncation");
            }
        }
    }
    Ok(())
}

fn cc_cmd(g: &Global, cmd: &CcCmd) -> Result<()> {
    match cmd {
        CcCmd::Build { group } => {
            let x = cc::schurian_cc(&load_group(group)?);
            out!("rank {}, homogeneous {}, primitive {}", x.rank(), x.is_homogeneous(), x.is_primitive());
            if g.out.is_none() {
                print!("{}", x.format());
            }
            g.emit(&x.format())?;
        }
        CcCmd::Validate { file } => {
            let text = read(file)?;
            let x = CoherentConfig::parse(&text)?;
            out!(
                "valid, n = {}, rank {}, primitive {}, uniprimitive {}",
                x.order(),
                x.rank(),
                x.is_primitive(),
                x.is_upcc()
            );
        }
        CcCmd::Motion { file } => {
            let x = CoherentConfig::parse(&read(file)?)?;
            let m = cc::motion(&x, 1 << 22, g.cap_elements)?;
            out!("min |D(x,y)| {}", m.lower_bound);
            out!("motion {}", m.motion);
            out!("automorphisms {}", m.automorphisms);
            if x.is_upcc() {
                let bound = ((x.order() as f64).sqrt() - 1.0) / 2.0;
                out!("uniprimitive bound (sqrt(n)-1)/2 = {bound:.3}: {}", m.lower_bound as f64 >= bound);
            }
            if m.motion == MinDegree::Infinity {
                out!("the automorphism group is trivial");
            }
        }
    }
    Ok(())
}
