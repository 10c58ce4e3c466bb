use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use precsched::branch::{EpsilonConfig, REPORT_CSV_HEADER};
use precsched::exchange::{
    enumerate_non_exchangeable, fingerprint_domain, non_exchangeable_bound, ExchangeMode,
};
use precsched::gen::{generate_file, GenParams, Model};
use precsched::structure::{count_order_ideals, ideal_bound, matching};
use precsched::{
    run, Algorithm, Error, Instance, JobSet, Ordering, Quarter, SolveReport, SolverConfig,
};

/// Header of the `bench` CSV.
const BENCH_HEADER: [&str; 8] = [
    "instance",
    "n",
    "matching_size",
    "algo",
    "cost",
    "states_expanded",
    "wall_ms",
    "chosen_path",
];

#[derive(Parser)]
#[command(
    name = "precsched",
    version,
    about = "Exact solvers for 1|prec|sum C_j"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and print its optimal cost and ordering.
    Solve(SolveArgs),
    /// Check an ordering and print its cost.
    Verify(VerifyArgs),
    /// Write a random instance.
    Gen(GenArgs),
    /// Count order ideals or non-exchangeable subsets next to their bound.
    Count(CountArgs),
    /// Run several algorithms over a directory of instances and write CSV.
    Bench(BenchArgs),
}

#[derive(Args, Clone)]
struct SolverFlags {
    #[arg(long)]
    eps1: Option<String>,
    #[arg(long)]
    eps2: Option<String>,
    #[arg(long)]
    eps3: Option<String>,
    #[arg(long)]
    eps4: Option<String>,
    /// Accept thresholds that break the running-time premises.
    #[arg(long)]
    unchecked_eps: bool,
    /// Largest guessed set in the independent-quarters strategy.
    #[arg(long, default_value_t = precsched::branch::DEFAULT_WQUARTER_CAP)]
    wquarter_cap: usize,
    /// Largest instance the brute-force algorithm accepts.
    #[arg(long, default_value_t = precsched::oracle::DEFAULT_ORACLE_CAP)]
    oracle_cap: usize,
    /// Send every quarter-stage branch to one quarter's strategy.
    #[arg(long, value_enum)]
    force_quarter: Option<QuarterArg>,
    /// Evaluate branches on one thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum QuarterArg {
    A,
    B,
    C,
    D,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Brute,
    Dp,
    Dcdp,
    Full,
}

impl From<AlgoArg> for Algorithm {
    fn from(a: AlgoArg) -> Self {
        match a {
            AlgoArg::Brute => Algorithm::Brute,
            AlgoArg::Dp => Algorithm::Dp,
            AlgoArg::Dcdp => Algorithm::Dcdp,
            AlgoArg::Full => Algorithm::Full,
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "full")]
    algo: AlgoArg,
    /// Write the solve report here: JSON if the name ends in `.json`, CSV otherwise.
    #[arg(long)]
    stats: Option<PathBuf>,
    /// Accepted for uniformity with other commands; solving is deterministic.
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    solver: SolverFlags,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    input: PathBuf,
    /// Job sequence, first job first, e.g. "2,0,1".
    #[arg(long)]
    order: String,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    model: String,
    #[arg(long, default_value_t = 0.3)]
    density: f64,
    #[arg(long, default_value_t = 100)]
    tmax: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; standard output if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CountWhat {
    Ideals,
    NonExchSucc,
    NonExchPred,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    what: CountWhat,
    /// The antichain `K` for non-exchangeable counts, e.g. "0,1".
    #[arg(long = "K", alias = "k")]
    k: Option<String>,
}

#[derive(Args)]
struct BenchArgs {
    /// Directory of `*.json` instances.
    #[arg(long)]
    dir: PathBuf,
    /// Comma-separated algorithms.
    #[arg(long, default_value = "dcdp,full")]
    algos: String,
    /// Output CSV; standard output if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Leave `wall_ms` empty so that repeated runs are byte-identical.
    #[arg(long)]
    omit_timing: bool,
    #[command(flatten)]
    solver: SolverFlags,
}

/// A failure with its exit code.
#[derive(Debug)]
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl Failure {
    fn new(code: u8, error: impl Into<anyhow::Error>) -> Self {
        Failure {
            code,
            error: error.into(),
        }
    }
}

/// Cyclic or infeasible inputs exit with 2, everything else is malformed input.
fn core_failure(e: Error) -> Failure {
    let code = match e {
        Error::CyclicPrecedence { .. } | Error::Infeasible => 2,
        _ => 1,
    };
    Failure::new(code, e)
}

fn io_failure(e: anyhow::Error) -> Failure {
    Failure::new(1, e)
}

type CmdResult = Result<(), Failure>;

fn load(path: &Path) -> Result<Instance, Failure> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(io_failure)?;
    precsched::parse_instance(&text).map_err(core_failure)
}

fn parse_list(text: &str) -> Result<Vec<usize>, Failure> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Failure::new(1, anyhow::anyhow!("not a job index: {s:?}")))
        })
        .collect()
}

fn solver_config(flags: &SolverFlags) -> Result<SolverConfig, Failure> {
    let defaults = SolverConfig::default();
    let eps = if [&flags.eps1, &flags.eps2, &flags.eps3, &flags.eps4]
        .iter()
        .all(|e| e.is_none())
    {
        defaults.eps.clone()
    } else {
        let d = |k: usize| defaults.eps.eps(k).to_string();
        let vals = [
            flags.eps1.clone().unwrap_or_else(|| d(1)),
            flags.eps2.clone().unwrap_or_else(|| d(2)),
            flags.eps3.clone().unwrap_or_else(|| d(3)),
            flags.eps4.clone().unwrap_or_else(|| d(4)),
        ];
        let refs = [
            vals[0].as_str(),
            vals[1].as_str(),
            vals[2].as_str(),
            vals[3].as_str(),
        ];
        if flags.unchecked_eps {
            EpsilonConfig::parse_unchecked(refs)
        } else {
            EpsilonConfig::parse(refs)
        }
        .map_err(|e| Failure::new(1, e))?
    };
    Ok(SolverConfig {
        eps,
        wquarter_cap: flags.wquarter_cap,
        oracle_cap: flags.oracle_cap,
        force_quarter: flags.force_quarter.map(|q| match q {
            QuarterArg::A => Quarter::A,
            QuarterArg::B => Quarter::B,
            QuarterArg::C => Quarter::C,
            QuarterArg::D => Quarter::D,
        }),
        parallel: !flags.sequential,
    })
}

fn write_output(out: Option<&Path>, text: &str) -> CmdResult {
    match out {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(io_failure),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn report_csv(report: &SolveReport) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(REPORT_CSV_HEADER)?;
    for row in report.csv_rows() {
        w.write_record(&row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn cmd_solve(args: SolveArgs) -> CmdResult {
    let inst = load(&args.input)?;
    let cfg = solver_config(&args.solver)?;
    let out = run(&inst, args.algo.into(), &cfg).map_err(core_failure)?;
    println!("cost={} order={}", out.cost, out.ordering);
    if let Some(path) = args.stats {
        let text = if path.extension().is_some_and(|e| e == "json") {
            out.report.to_json()
        } else {
            report_csv(&out.report).map_err(io_failure)?
        };
        write_output(Some(&path), &text)?;
    }
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> CmdResult {
    let inst = load(&args.input)?;
    let seq = parse_list(&args.order)?;
    if seq.len() != inst.n() {
        return Err(Failure::new(
            1,
            anyhow::anyhow!(
                "ordering has {} jobs but the instance has {}",
                seq.len(),
                inst.n()
            ),
        ));
    }
    let ordering = Ordering::from_sequence(seq).map_err(|e| Failure::new(1, e))?;
    let cost = inst.ordering_cost(&ordering).map_err(core_failure)?;
    let valid = inst.validate_ordering(&ordering);
    println!("valid={valid} cost={cost}");
    if valid {
        Ok(())
    } else {
        Err(Failure::new(
            3,
            anyhow::anyhow!("ordering violates a precedence constraint"),
        ))
    }
}

fn cmd_gen(args: GenArgs) -> CmdResult {
    let model: Model = args.model.parse().map_err(|e: Error| Failure::new(1, e))?;
    let file = generate_file(&GenParams {
        n: args.n,
        model,
        density: args.density,
        tmax: args.tmax,
        seed: args.seed,
    })
    .map_err(|e| Failure::new(1, e))?;
    write_output(args.out.as_deref(), &format!("{}\n", file.to_json()))
}

fn cmd_count(args: CountArgs) -> CmdResult {
    let inst = load(&args.input)?;
    let (count, bound) = match args.what {
        CountWhat::Ideals => {
            let pairs = matching(&inst).pairs.len();
            let count = count_order_ideals(&inst).map_err(core_failure)?;
            (count, ideal_bound(inst.n(), pairs))
        }
        CountWhat::NonExchSucc | CountWhat::NonExchPred => {
            let mode = match args.what {
                CountWhat::NonExchSucc => ExchangeMode::Succ,
                _ => ExchangeMode::Pred,
            };
            let text = args.k.ok_or_else(|| {
                Failure::new(
                    1,
                    anyhow::anyhow!("--K is required for non-exchangeable counts"),
                )
            })?;
            let mut k = JobSet::EMPTY;
            for v in parse_list(&text)? {
                if v >= inst.n() {
                    return Err(core_failure(Error::IndexOutOfRange {
                        index: v,
                        n: inst.n(),
                    }));
                }
                k.insert(v);
            }
            if !inst.is_antichain(k) {
                return Err(Failure::new(
                    1,
                    anyhow::anyhow!("K = {k} is not an antichain"),
                ));
            }
            let sets = enumerate_non_exchangeable(&inst, k, mode).map_err(core_failure)?;
            let bound = non_exchangeable_bound(k.len(), fingerprint_domain(&inst, k, mode));
            (sets.len().into(), bound)
        }
    };
    println!("count={count} bound={bound}");
    if count > bound {
        return Err(Failure::new(4, anyhow::anyhow!("count exceeds its bound")));
    }
    Ok(())
}

struct BenchRow {
    instance: String,
    n: usize,
    matching_size: usize,
    algo: Algorithm,
    cost: String,
    states_expanded: u64,
    wall_ms: f64,
    chosen_path: String,
}

fn cmd_bench(args: BenchArgs) -> CmdResult {
    let cfg = solver_config(&args.solver)?;
    let algos = args
        .algos
        .split(',')
        .map(|s| s.trim().parse::<Algorithm>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::new(1, e))?;
    let mut files: Vec<PathBuf> = fs::read_dir(&args.dir)
        .with_context(|| format!("listing {}", args.dir.display()))
        .map_err(io_failure)?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()
        .context("listing instances")
        .map_err(io_failure)?;
    files.retain(|p| p.extension().is_some_and(|e| e == "json"));
    files.sort();

    let per_instance: Vec<Result<Vec<BenchRow>, Failure>> = files
        .par_iter()
        .map(|path| {
            let inst = load(path)?;
            let name = path
                .file_stem()
                .unwrap_or_default()
                .to_string_lossy()
                .into_owned();
            let matching_size = matching(&inst).matched.len();
            algos
                .iter()
                .map(|&algo| {
                    let start = Instant::now();
                    let out = run(&inst, algo, &cfg)
                        .map_err(|e| Failure::new(1, anyhow::anyhow!("{name} with {algo}: {e}")))?;
                    Ok(BenchRow {
                        instance: name.clone(),
                        n: inst.n(),
                        matching_size,
                        algo,
                        cost: out.cost.to_string(),
                        states_expanded: out.report.total.states_expanded,
                        wall_ms: start.elapsed().as_secs_f64() * 1e3,
                        chosen_path: out.report.chosen_path.to_string(),
                    })
                })
                .collect()
        })
        .collect();
    let mut rows = Vec::new();
    for r in per_instance {
        rows.extend(r?);
    }
    rows.sort_by(|a, b| (&a.instance, a.algo).cmp(&(&b.instance, b.algo)));

    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| io_failure(e.into());
    w.write_record(BENCH_HEADER).map_err(csv_err)?;
    for r in &rows {
        let wall = if args.omit_timing {
            String::new()
        } else {
            format!("{:.3}", r.wall_ms)
        };
        w.write_record([
            r.instance.clone(),
            r.n.to_string(),
            r.matching_size.to_string(),
            r.algo.to_string(),
            r.cost.clone(),
            r.states_expanded.to_string(),
            wall,
            r.chosen_path.clone(),
        ])
        .map_err(csv_err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| io_failure(anyhow::anyhow!("{e}")))?;
    write_output(args.out.as_deref(), &String::from_utf8_lossy(&bytes))?;

    let mismatched: Vec<&str> = rows
        .chunk_by(|a, b| a.instance == b.instance)
        .filter(|group| group.iter().any(|r| r.cost != group[0].cost))
        .map(|group| group[0].instance.as_str())
        .collect();
    if !mismatched.is_empty() {
        return Err(Failure::new(
            5,
            anyhow::anyhow!("algorithms disagree on {}", mismatched.join(", ")),
        ));
    }
    Ok(())
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
    let result = match cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Gen(a) => cmd_gen(a),
        Command::Count(a) => cmd_count(a),
        Command::Bench(a) => cmd_bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
