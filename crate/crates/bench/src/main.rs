use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;
use spanner_bench::{
    corpus_files, multi_run, on_one_thread, quality_table, read_csv, render, run_matrix, run_one, solved_table, write_csv,
    write_json, CorpusSpec, CsvSink, Instance, MatrixConfig, Outcome, RunRecord, OUT_DIR_ENV,
};
use spanner_core::instances::{load, write_native};
use spanner_core::{measure, validate_spanner, AlgoConfig, Algorithm, Deadline, Graph64, Spanner64};

#[derive(Parser)]
#[command(name = "spanner-bench", version, about = "Build, verify and benchmark graph spanners")]
struct Cli {
    /// Directory for generated corpora and result files.
    #[arg(long, global = true, env = OUT_DIR_ENV, default_value = "bench-out")]
    out: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random corpus from a TOML spec into <out>/corpus.
    Gen {
        /// Corpus spec in TOML.
        spec: PathBuf,
    },
    /// Run one algorithm on one graph and print its record as CSV.
    Run(RunArgs),
    /// Run the full matrix over a corpus and write results.csv and results.json.
    Bench(BenchArgs),
    /// Repeat a randomized construction and report size statistics.
    Multirun(MultiArgs),
    /// Check that a spanner file is a valid spanner of a graph.
    Verify(VerifyArgs),
    /// Summarize result CSVs.
    Report {
        /// Result files written by `bench`.
        csv: Vec<PathBuf>,
    },
}

#[derive(Args)]
struct Tuning {
    /// Failure probability parameter of the broadcasting construction.
    #[arg(long, default_value_t = spanner_core::probabilistic::DEFAULT_EPSILON)]
    epsilon: f64,
    /// Attempt budget of the broadcasting construction.
    #[arg(long, default_value_t = spanner_core::probabilistic::DEFAULT_MAX_ATTEMPTS)]
    max_attempts: u32,
    /// Cutting-plane iteration cap of the LP rounding construction.
    #[arg(long, default_value_t = spanner_core::bbmry::DEFAULT_MAX_ITERATIONS)]
    lp_iterations: u32,
    /// Wall-clock seconds for the cutting-plane loop; leftover arcs are then completed with shortest paths.
    #[arg(long)]
    lp_budget: Option<f64>,
}

impl Tuning {
    fn config(&self, alpha: f64, seed: u64) -> Result<AlgoConfig> {
        Ok(AlgoConfig {
            epsilon: self.epsilon,
            max_attempts: self.max_attempts,
            bbmry_iterations: self.lp_iterations,
            bbmry_budget: self.lp_budget.map(secs).transpose()?,
            ..AlgoConfig::new(alpha, seed)
        })
    }
}

#[derive(Args)]
struct RunArgs {
    /// Graph file in native, STP or TSPLIB format.
    graph: PathBuf,
    /// One of addjs, kp, bbmry, bs, en.
    #[arg(long, short)]
    algorithm: Algorithm,
    /// Stretch factor.
    #[arg(long)]
    alpha: f64,
    /// Random seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Ignore edge weights.
    #[arg(long)]
    unweighted: bool,
    /// Time limit in seconds.
    #[arg(long, default_value_t = 60.0)]
    timelimit: f64,
    /// Leave the wall time empty.
    #[arg(long)]
    no_timing: bool,
    /// Write the spanner in native format.
    #[arg(long)]
    spanner_out: Option<PathBuf>,
    #[command(flatten)]
    tuning: Tuning,
}

#[derive(Clone, Copy, ValueEnum)]
enum Weighting {
    Both,
    Weighted,
    Unweighted,
}

#[derive(Args)]
struct BenchArgs {
    /// Graph files or directories.
    #[arg(required = true)]
    corpus: Vec<PathBuf>,
    /// Comma-separated algorithms.
    #[arg(long, value_delimiter = ',', default_value = "addjs,kp,bbmry,bs,en")]
    algorithms: Vec<Algorithm>,
    /// Comma-separated stretch factors.
    #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,7")]
    stretches: Vec<f64>,
    /// Which weightings of each graph to run.
    #[arg(long, value_enum, default_value = "both")]
    weights: Weighting,
    /// Comma-separated seeds for the randomized algorithms; deterministic ones use the first.
    #[arg(long, value_delimiter = ',', default_value = "0")]
    seeds: Vec<u64>,
    /// Time limit per cell in seconds.
    #[arg(long, default_value_t = 60.0)]
    timelimit: f64,
    /// Worker threads, defaults to the available parallelism.
    #[arg(long)]
    threads: Option<usize>,
    /// Leave wall times empty so repeated runs give identical files.
    #[arg(long)]
    no_timing: bool,
    #[command(flatten)]
    tuning: Tuning,
}

#[derive(Args)]
struct MultiArgs {
    /// Graph file in native, STP or TSPLIB format.
    graph: PathBuf,
    /// One of addjs, kp, bbmry, bs, en.
    #[arg(long, short)]
    algorithm: Algorithm,
    /// Stretch factor.
    #[arg(long)]
    alpha: f64,
    /// Number of runs; defaults to 1000 for bs and 200 otherwise.
    #[arg(long)]
    iterations: Option<usize>,
    /// Seed of the first run; run i uses seed + i.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Ignore edge weights.
    #[arg(long)]
    unweighted: bool,
    /// Write the smallest spanner in native format.
    #[arg(long)]
    best_out: Option<PathBuf>,
    #[command(flatten)]
    tuning: Tuning,
}

#[derive(Args)]
struct VerifyArgs {
    /// Original graph.
    graph: PathBuf,
    /// Spanner in native format; its edges must belong to the graph.
    spanner: PathBuf,
    /// Stretch factor.
    #[arg(long)]
    alpha: f64,
    /// Ignore edge weights.
    #[arg(long)]
    unweighted: bool,
}

fn load_graph(path: &Path, unweighted: bool) -> Result<Graph64> {
    let g: Graph64 = load(path).with_context(|| format!("loading {}", path.display()))?;
    Ok(if unweighted { g.without_weights() } else { g })
}

fn secs(s: f64) -> Result<Duration> {
    Duration::try_from_secs_f64(s).context("time limits must be a finite nonnegative number of seconds")
}

fn write_spanner(path: &Path, h: &Spanner64<'_>) -> Result<()> {
    std::fs::write(path, write_native(&h.to_graph())).with_context(|| format!("writing {}", path.display()))
}

fn gen(out: &Path, spec: &Path) -> Result<bool> {
    let text = std::fs::read_to_string(spec).with_context(|| format!("reading {}", spec.display()))?;
    let dir = out.join("corpus");
    let paths = CorpusSpec::parse(&text)?.write_to(&dir)?;
    println!("wrote {} graphs to {}", paths.len(), dir.display());
    Ok(true)
}

fn run(args: &RunArgs) -> Result<bool> {
    let inst = Instance::load(&args.graph)?;
    let graph = if args.unweighted { inst.graph.without_weights() } else { inst.graph.clone() };
    let cfg = args.tuning.config(args.alpha, args.seed)?;
    let limit = secs(args.timelimit)?;
    let out = on_one_thread(|| run_one(&inst.id, &graph, args.algorithm, &cfg, limit))?;
    let record = if args.no_timing { out.record.without_timing() } else { out.record };
    if let (Some(path), Some(h)) = (&args.spanner_out, &out.spanner) {
        write_spanner(path, h)?;
    }
    write_csv(io::stdout().lock(), [&record])?.flush()?;
    Ok(record.outcome != Outcome::Failed)
}

fn bench(out: &Path, args: &BenchArgs) -> Result<bool> {
    let mut files = Vec::new();
    for p in &args.corpus {
        files.extend(corpus_files(p).with_context(|| format!("listing {}", p.display()))?);
    }
    if files.is_empty() {
        bail!("no graph files found");
    }
    let instances = files.iter().map(|f| Instance::load(f).with_context(|| format!("loading {}", f.display()))).collect::<Result<Vec<_>>>()?;
    let mut cfg = MatrixConfig::new(args.algorithms.clone());
    cfg.stretches = args.stretches.clone();
    cfg.weightings = match args.weights {
        Weighting::Both => vec![true, false],
        Weighting::Weighted => vec![true],
        Weighting::Unweighted => vec![false],
    };
    cfg.seeds = args.seeds.clone();
    cfg.timelimit = secs(args.timelimit)?;
    if let Some(t) = args.threads {
        cfg.threads = t;
    }
    cfg.timing = !args.no_timing;
    cfg.base = args.tuning.config(1.0, 0)?;

    std::fs::create_dir_all(out)?;
    let csv_path = out.join("results.csv");
    let mut sink = CsvSink::new(BufWriter::new(File::create(&csv_path)?))?;
    let mut records = Vec::new();
    let skipped = run_matrix(&instances, &cfg, |r: RunRecord| {
        info!("{} {} alpha={} weighted={} seed={}: {}", r.instance, r.algorithm, r.alpha, r.weighted, r.seed, r.outcome);
        sink.push(&r)?;
        records.push(r);
        Ok::<_, spanner_bench::RecordError>(())
    })?;
    sink.finish()?.flush()?;
    let mut json = write_json(BufWriter::new(File::create(out.join("results.json"))?), &records)?;
    json.flush()?;
    print!("{}", render(&solved_table(&records), &quality_table(&records)));
    println!("{} records, {} skipped cells, written to {}", records.len(), skipped.len(), csv_path.display());
    Ok(records.iter().all(|r| r.outcome != Outcome::Failed))
}

fn multirun(out: &Path, args: &MultiArgs) -> Result<bool> {
    let graph = load_graph(&args.graph, args.unweighted)?;
    let iterations = args.iterations.unwrap_or(if args.algorithm == Algorithm::Bs { 1000 } else { 200 });
    let cfg = args.tuning.config(args.alpha, args.seed)?;
    let run = multi_run(&graph, args.algorithm, &cfg, iterations, &Deadline::never())?;
    if let Some(path) = &args.best_out {
        write_spanner(path, &run.best)?;
    }
    std::fs::create_dir_all(out)?;
    let stats_path = out.join("multirun.json");
    std::fs::write(&stats_path, serde_json::to_string_pretty(&run.stats)? + "\n")?;
    let s = &run.stats;
    println!("samples {} failures {} best seed {}", s.samples.len(), s.failures, run.best_seed);
    println!("min {} mean {:.4} std {:.4} skewness {:.4} excess kurtosis {:.4}", s.min, s.mean, s.std, s.skewness, s.excess_kurtosis);
    println!("m1 {} (< {:.3})  m2 {} (< {:.3})", s.m1_count, s.m1_threshold(), s.m2_count, s.m2_threshold());
    Ok(true)
}

fn verify(args: &VerifyArgs) -> Result<bool> {
    let g = load_graph(&args.graph, args.unweighted)?;
    let sub = load_graph(&args.spanner, args.unweighted)?;
    if sub.n() != g.n() {
        bail!("spanner has {} vertices, graph has {}", sub.n(), g.n());
    }
    let mut mask = vec![false; g.m()];
    for e in 0..sub.m() {
        let edge = sub.edge(e);
        let Some(id) = g.find_edge(edge.u, edge.v) else {
            bail!("spanner edge {{{}, {}}} is not in the graph", edge.u, edge.v);
        };
        if sub.is_weighted() && sub.weight(e) != g.weight(id) {
            bail!("spanner edge {{{}, {}}} has weight {} but {} in the graph", edge.u, edge.v, sub.weight(e), g.weight(id));
        }
        mask[id] = true;
    }
    let h = Spanner64::from_mask(&g, mask, args.alpha)?;
    let check = validate_spanner(&h);
    let r = measure(&h);
    println!("valid {}", check.valid);
    if let Some((u, v, ratio)) = check.worst {
        println!("worst pair {u} {v} stretch {ratio}");
    }
    println!("size {} sparseness {:.4} lightness {:.4} stretch mean {:.4} max {:.4}", r.size, r.sparseness, r.lightness, r.stretch_mean, r.stretch_max);
    Ok(check.valid)
}

fn report(paths: &[PathBuf]) -> Result<bool> {
    if paths.is_empty() {
        bail!("no CSV files given");
    }
    let mut records = Vec::new();
    for p in paths {
        let file = File::open(p).with_context(|| format!("opening {}", p.display()))?;
        records.extend(read_csv(file).with_context(|| format!("reading {}", p.display()))?);
    }
    print!("{}", render(&solved_table(&records), &quality_table(&records)));
    Ok(true)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Gen { spec } => gen(&cli.out, spec),
        Command::Run(args) => run(args),
        Command::Bench(args) => bench(&cli.out, args),
        Command::Multirun(args) => multirun(&cli.out, args),
        Command::Verify(args) => verify(args),
        Command::Report { csv } => report(csv),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
