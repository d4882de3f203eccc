use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use battleship::eval::{
    classify, evaluate, explore_small_convex_complexity, reports_to_csv, reports_to_json, verify_inequalities,
    EvalConfig, EvalReport, InequalityReport,
};
use battleship::game::run_game;
use battleship::gen::{generate, GenSpec, Rng, ShapeClass};
use battleship::io::{content_hash, read_shape, to_ascii, to_json, Manifest, ParseError};
use battleship::solver::{Solver, SolverConfig, TreeStrategy, DEFAULT_MAX_N, DEFAULT_MAX_STATES};
use battleship::strategy::StrategyKind;
use battleship::{LatticePoint, Shape};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

/// Battleship on the integer lattice: classify ships, simulate sinking
/// strategies, and compute exact worst-case miss counts.
#[derive(Debug, Parser, Serialize)]
#[command(name = "battleship", version)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed for every random choice of the run.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
enum Command {
    /// Class flags, lattice diameter and width of a shape file.
    Classify { shape: PathBuf },
    /// Play a strategy against hidden positions.
    Simulate(SimulateArgs),
    /// Exact Battleship complexity by minimax.
    Optimal(OptimalArgs),
    /// Generate seeded shapes.
    Gen(GenArgs),
    /// Evaluate strategies over a corpus and audit the miss bounds.
    Bench(BenchArgs),
    /// Check the width/diameter inequalities on digital convex shapes.
    Verify(VerifyArgs),
    /// Exact complexities of all small digital convex shapes.
    Explore(ExploreArgs),
}

#[derive(Debug, Args, Serialize)]
struct SolverArgs {
    /// Largest shape the solver accepts.
    #[arg(long, default_value_t = DEFAULT_MAX_N)]
    solver_max_n: usize,
    /// Memo table capacity.
    #[arg(long, env = "BATTLESHIP_MAX_STATES", default_value_t = DEFAULT_MAX_STATES)]
    max_states: usize,
    /// Disable memoization.
    #[arg(long)]
    no_memo: bool,
}

impl SolverArgs {
    fn config(&self) -> SolverConfig {
        SolverConfig {
            max_n: self.solver_max_n,
            memo: !self.no_memo,
            max_states: self.max_states,
        }
    }
}

#[derive(Debug, Args, Serialize)]
struct SimulateArgs {
    shape: PathBuf,
    #[arg(long, value_parser = parse_kind)]
    strategy: StrategyKind,
    /// Every position of the shape (the default when no position is given).
    #[arg(long, conflicts_with = "position")]
    all: bool,
    /// Hidden position as `x,y`.
    #[arg(long, value_parser = parse_point)]
    position: Option<LatticePoint>,
    /// Write the shot log of a single game as JSON lines.
    #[arg(long, requires = "position")]
    trace: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum TreeFormat {
    Dot,
    Json,
}

#[derive(Debug, Args, Serialize)]
struct OptimalArgs {
    shape: PathBuf,
    /// Write one optimal decision tree.
    #[arg(long)]
    export_tree: Option<PathBuf>,
    /// Tree format (default from the file extension, else DOT).
    #[arg(long, value_enum)]
    format: Option<TreeFormat>,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum ClassArg {
    Segment,
    Rectangle,
    HvConvex,
    DigitalConvex,
    ParallelogramFree,
    RandomPolyomino,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum ShapeFormat {
    Json,
    Ascii,
}

#[derive(Debug, Args, Serialize)]
struct GenArgs {
    #[arg(long, value_enum)]
    class: ClassArg,
    /// Point count (segment length, rectangle width).
    #[arg(long)]
    n: usize,
    /// Rectangle height.
    #[arg(long, default_value_t = 1)]
    height: usize,
    /// Number of shapes; seeds are drawn from `--seed`.
    #[arg(long, default_value_t = 1)]
    count: usize,
    /// Write `<id>.json` files and `manifest.json` here instead of stdout.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ShapeFormat::Json)]
    format: ShapeFormat,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum ReportFormat {
    Csv,
    Json,
}

#[derive(Debug, Args, Serialize)]
struct CorpusArgs {
    /// Shape files or directories of them.
    paths: Vec<PathBuf>,
    /// Regenerate the corpus listed in a manifest.
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
struct BenchArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    /// Comma-separated strategy names; inapplicable ones are skipped per
    /// shape (default: all).
    #[arg(long, value_delimiter = ',', value_parser = parse_kind)]
    strategies: Vec<StrategyKind>,
    /// Also compute the exact complexity.
    #[arg(long)]
    optimal: bool,
    #[arg(long, value_enum, default_value_t = ReportFormat::Csv)]
    format: ReportFormat,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Simulate every position up to this size, else sample.
    #[arg(long, default_value_t = 5000)]
    subsample_threshold: usize,
    #[arg(long, default_value_t = 512)]
    sample_size: usize,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Inequality {
    #[value(name = "3")]
    WidthVsDiameter,
    #[value(name = "4")]
    CountVsWidth,
    #[value(name = "5")]
    CountVsWidthSquared,
    #[value(name = "bla")]
    Area,
    All,
}

#[derive(Debug, Args, Serialize)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Inequality::All)]
    lemma: Inequality,
    #[command(flatten)]
    corpus: CorpusArgs,
}

#[derive(Debug, Args, Serialize)]
struct ExploreArgs {
    #[arg(long, default_value_t = 8)]
    max_n: usize,
    #[command(flatten)]
    solver: SolverArgs,
}

fn parse_kind(s: &str) -> Result<StrategyKind, String> {
    s.parse().map_err(|e: battleship::strategy::StrategyError| e.to_string())
}

fn parse_point(s: &str) -> Result<LatticePoint, String> {
    let (x, y) = s.split_once(',').ok_or("expected x,y")?;
    let x = x.trim().parse().map_err(|_| format!("bad x in {:?}", s))?;
    let y = y.trim().parse().map_err(|_| format!("bad y in {:?}", s))?;
    Ok(LatticePoint::new(x, y))
}

#[derive(Debug)]
enum Failure {
    /// Usage or I/O problem: exit 1.
    Usage(String),
    /// An audited bound or claim failed: exit 2.
    Audit(String),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Usage(format!("{} ({})", e, e.code()))
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn load(path: &Path) -> Result<Shape, Failure> {
    read_shape(path).map_err(|e| Failure::Usage(format!("{}: {} ({})", path.display(), e, e.code())))
}

fn to_json_string<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable output")
}

fn write_or_print(output: Option<&Path>, text: &str) -> Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("{}: {}", p.display(), e))),
        None => {
            print!("{}", text);
            Ok(())
        }
    }
}

fn classify_cmd(path: &Path) -> Result<(), Failure> {
    let shape = load(path)?;
    println!("{}", to_json_string(&classify(&shape)));
    Ok(())
}

fn simulate_cmd(args: &SimulateArgs) -> Result<(), Failure> {
    let shape = load(&args.shape)?;
    args.strategy.check(&shape).map_err(usage)?;
    let positions: Vec<LatticePoint> = match args.position {
        Some(p) => vec![p],
        None => shape.points().to_vec(),
    };
    println!("x,y,misses,shots,declared_x,declared_y");
    let mut worst = 0;
    let mut violations = Vec::new();
    for &p in &positions {
        let mut strategy = args.strategy.fresh();
        let trace = run_game(&shape, strategy.as_mut(), p).map_err(|e| Failure::Audit(format!("position {}: {}", p, e)))?;
        let declared = trace.declared_position.expect("games end with one position");
        println!("{},{},{},{},{},{}", p.x, p.y, trace.miss_count, trace.shots.len(), declared.x, declared.y);
        worst = worst.max(trace.miss_count);
        violations.extend(strategy.audit().violations.iter().map(|v| format!("{}: {:?} {}", p, v.check, v.detail)));
        if let Some(out) = &args.trace {
            fs::write(out, trace.to_json_lines())?;
        }
    }
    eprintln!("strategy {}: max misses {} over {} positions", args.strategy, worst, positions.len());
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Failure::Audit(violations.join("\n")))
    }
}

#[derive(Serialize)]
struct OptimalOutput {
    n: usize,
    complexity: u32,
    nodes: u64,
    memo_entries: usize,
}

fn optimal_cmd(args: &OptimalArgs) -> Result<(), Failure> {
    let shape = load(&args.shape)?;
    let mut solver = Solver::new(&shape, args.solver.config()).map_err(usage)?;
    let c = solver.solve().map_err(usage)?;
    let stats = solver.stats();
    println!(
        "{}",
        to_json_string(&OptimalOutput {
            n: shape.len(),
            complexity: c,
            nodes: stats.nodes,
            memo_entries: stats.exact_entries + stats.bound_entries,
        })
    );
    if let Some(path) = &args.export_tree {
        let tree = solver.extract_tree().map_err(usage)?;
        let worst = shape
            .points()
            .iter()
            .map(|&p| run_game(&shape, &mut TreeStrategy::new(&tree), p).map(|t| t.miss_count))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| Failure::Audit(e.to_string()))?
            .into_iter()
            .max()
            .unwrap_or(0);
        if worst != c {
            return Err(Failure::Audit(format!("tree replay gives {} misses, solver {}", worst, c)));
        }
        let format = args.format.unwrap_or(match path.extension().and_then(|e| e.to_str()) {
            Some("json") => TreeFormat::Json,
            _ => TreeFormat::Dot,
        });
        let text = match format {
            TreeFormat::Dot => tree.to_dot(),
            TreeFormat::Json => tree.to_json(),
        };
        fs::write(path, text)?;
    }
    Ok(())
}

fn class_of(args: &GenArgs) -> ShapeClass {
    let n = args.n;
    match args.class {
        ClassArg::Segment => ShapeClass::Segment { len: n },
        ClassArg::Rectangle => ShapeClass::Rectangle {
            width: n,
            height: args.height,
        },
        ClassArg::HvConvex => ShapeClass::HvConvex { n },
        ClassArg::DigitalConvex => ShapeClass::DigitalConvex { n },
        ClassArg::ParallelogramFree => ShapeClass::ParallelogramFree { n },
        ClassArg::RandomPolyomino => ShapeClass::RandomPolyomino { n },
    }
}

fn render(shape: &Shape, format: ShapeFormat) -> String {
    match format {
        ShapeFormat::Json => to_json(shape) + "\n",
        ShapeFormat::Ascii => to_ascii(shape),
    }
}

fn gen_cmd(args: &GenArgs, seed: u64) -> Result<(), Failure> {
    let class = class_of(args);
    let mut seeds = Rng::new(seed);
    let specs: Vec<GenSpec> = (0..args.count)
        .map(|i| GenSpec::new(class, if i == 0 && args.count == 1 { seed } else { seeds.next_u64() }))
        .collect();
    let Some(dir) = &args.out_dir else {
        for spec in &specs {
            print!("{}", render(&generate(spec).map_err(usage)?, args.format));
        }
        return Ok(());
    };
    fs::create_dir_all(dir)?;
    let mut manifest = Manifest::new();
    let ext = match args.format {
        ShapeFormat::Json => "json",
        ShapeFormat::Ascii => "txt",
    };
    for (i, spec) in specs.iter().enumerate() {
        let shape = generate(spec).map_err(usage)?;
        let id = format!("{}_{:04}", class.name(), i);
        fs::write(dir.join(format!("{}.{}", id, ext)), render(&shape, args.format))?;
        manifest.push(id, *spec, &shape);
    }
    fs::write(dir.join("manifest.json"), to_json_string(&manifest) + "\n")?;
    Ok(())
}

fn collect_corpus(args: &CorpusArgs) -> Result<Vec<(String, Shape)>, Failure> {
    let mut out = Vec::new();
    if let Some(path) = &args.manifest {
        let manifest: Manifest = serde_json::from_str(&fs::read_to_string(path)?).map_err(usage)?;
        for e in manifest.entries {
            let shape = generate(&e.spec).map_err(usage)?;
            if content_hash(&shape) != e.sha256 {
                return Err(usage(format!("{}: regenerated shape does not match its hash", e.id)));
            }
            out.push((e.id, shape));
        }
    }
    for path in &args.paths {
        if path.is_dir() {
            let mut files: Vec<PathBuf> = fs::read_dir(path)?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| {
                    p.is_file()
                        && p.file_name().and_then(|n| n.to_str()) != Some("manifest.json")
                        && matches!(p.extension().and_then(|e| e.to_str()), Some("json") | Some("txt"))
                })
                .collect();
            files.sort();
            for f in files {
                out.push((f.display().to_string(), load(&f)?));
            }
        } else {
            out.push((path.display().to_string(), load(path)?));
        }
    }
    if out.is_empty() {
        return Err(usage("empty corpus: pass shape files, directories or --manifest"));
    }
    Ok(out)
}

#[derive(Serialize)]
struct BenchConfig<'a> {
    run_config: &'a Cli,
    eval: EvalConfig,
}

fn bench_cmd(cli: &Cli, args: &BenchArgs) -> Result<(), Failure> {
    let corpus = collect_corpus(&args.corpus)?;
    let kinds: Vec<StrategyKind> = if args.strategies.is_empty() {
        StrategyKind::ALL.to_vec()
    } else {
        args.strategies.clone()
    };
    let config = EvalConfig {
        subsample_threshold: args.subsample_threshold,
        sample_size: args.sample_size,
        seed: cli.seed,
        compute_optimal: args.optimal,
        solver: args.solver.config(),
    };
    let mut reports: Vec<EvalReport> = Vec::with_capacity(corpus.len());
    for (id, shape) in &corpus {
        let applicable: Vec<StrategyKind> = kinds.iter().copied().filter(|k| k.applicable(shape)).collect();
        let report = evaluate(id, shape, &applicable, &config).map_err(|e| Failure::Audit(format!("{}: {}", id, e)))?;
        reports.push(report);
    }
    let text = match args.format {
        ReportFormat::Csv => reports_to_csv(&reports),
        ReportFormat::Json => reports_to_json(&BenchConfig { run_config: cli, eval: config }, &reports) + "\n",
    };
    write_or_print(args.output.as_deref(), &text)?;
    let failed: Vec<String> = reports
        .iter()
        .flat_map(|r| r.checks.iter().filter(|c| !c.pass).map(move |c| format!("{}: {} = {} > {}", r.id, c.name, c.observed, c.bound)))
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Audit(failed.join("\n")))
    }
}

fn verify_cmd(args: &VerifyArgs) -> Result<(), Failure> {
    let corpus = collect_corpus(&args.corpus)?;
    let reports = verify_inequalities(&corpus).map_err(usage)?;
    let pass = |r: &InequalityReport| match args.lemma {
        Inequality::WidthVsDiameter => r.width_vs_diameter,
        Inequality::CountVsWidth => r.count_vs_width != Some(false),
        Inequality::CountVsWidthSquared => r.count_vs_width_squared,
        Inequality::Area => r.witness.as_ref().map_or(true, |w| w.area_ok),
        Inequality::All => r.passed(),
    };
    let mut failures = 0;
    for r in &reports {
        let ok = pass(r);
        if !ok {
            failures += 1;
        }
        println!("{}\t{}\tn={} d={} w={}", if ok { "pass" } else { "FAIL" }, r.id, r.n, r.diameter, r.width);
        if !ok {
            println!("{}", serde_json::to_string(r).expect("plain report"));
        }
    }
    if failures == 0 {
        Ok(())
    } else {
        Err(Failure::Audit(format!("{} of {} shapes violate the checked inequalities", failures, reports.len())))
    }
}

fn explore_cmd(args: &ExploreArgs) -> Result<(), Failure> {
    let table = explore_small_convex_complexity(args.max_n, args.solver.config()).map_err(usage)?;
    println!("{}", to_json_string(&table));
    Ok(())
}

fn run(cli: &Cli) -> Result<(), Failure> {
    if let Some(j) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global().map_err(usage)?;
    }
    eprintln!("run_config {}", serde_json::to_string(cli).expect("plain config"));
    match &cli.command {
        Command::Classify { shape } => classify_cmd(shape),
        Command::Simulate(a) => simulate_cmd(a),
        Command::Optimal(a) => optimal_cmd(a),
        Command::Gen(a) => gen_cmd(a, cli.seed),
        Command::Bench(a) => bench_cmd(cli, a),
        Command::Verify(a) => verify_cmd(a),
        Command::Explore(a) => explore_cmd(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(1)
        }
        Err(Failure::Audit(msg)) => {
            eprintln!("audit failure: {}", msg);
            ExitCode::from(2)
        }
    }
}
