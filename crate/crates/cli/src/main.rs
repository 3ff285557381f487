use std::io::Write;
use std::path::{Path, PathBuf};
use std::process;
use std::time::Duration;

use bcfea_cli::bench::{run_bench, write_csv, Axis, BenchSpec};
use bcfea_cli::cross_check::{default_solvers, generator_fixtures, oracle_reference, random_corpus, run_cross_check};
use bcfea_cli::{load_instance, parse_ratio, run_solve, CliError, ExitCode, SolveRequest, SolverChoice};
use bcfea_core::generators::GeneratorSpec;
use bcfea_core::model::{compute_stats, verify_allocation, Allocation, RawAllocation};
use bcfea_core::SolverId;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "bcfea", version, about = "Conflict-free budgeted allocation solvers")]
struct Cli {
    /// `json` writes the report to stdout and a summary to stderr;
    /// `summary` writes only the summary, to stdout.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Summary,
}

#[derive(Subcommand)]
enum Command {
    /// Decide an instance.
    Solve(SolveArgs),
    /// Check an allocation against an instance.
    Verify { instance: PathBuf, allocation: PathBuf },
    /// Emit an instance built from a source-problem payload.
    Gen(GenArgs),
    /// Compare every applicable solver with the oracle on a corpus.
    CrossCheck(CrossCheckArgs),
    /// Time one solver along a scaling axis; CSV output.
    Bench(BenchArgs),
    /// Print instance statistics.
    Stats { instance: PathBuf },
}

#[derive(Args)]
struct SolveArgs {
    instance: PathBuf,
    /// `auto` or a solver name.
    #[arg(long, default_value = "auto")]
    solver: SolverChoice,
    /// Tree decomposition in PACE `.td` format.
    #[arg(long)]
    decomposition: Option<PathBuf>,
    #[arg(long, default_value = "1/4", value_parser = parse_ratio)]
    epsilon: Ratio<u64>,
    #[arg(long, default_value = "1/4", value_parser = parse_ratio)]
    omega: Ratio<u64>,
    /// Bundle-size cap for bounded_bundles (default: n).
    #[arg(long)]
    bundle_size: Option<usize>,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    time_limit: Option<f64>,
    /// Limit on live DP table entries.
    #[arg(long)]
    memory_limit: Option<usize>,
}

#[derive(Args)]
struct GenArgs {
    /// JSON payload file with a `kind` field.
    #[arg(long, conflicts_with = "inline", required_unless_present = "inline")]
    payload: Option<PathBuf>,
    /// The payload given directly as JSON text.
    #[arg(long)]
    inline: Option<String>,
    /// Overrides the seed of a `random` payload.
    #[arg(long)]
    seed: Option<u64>,
    /// Write the instance here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CrossCheckArgs {
    #[arg(long, default_value_t = 500)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Skip the generator fixtures.
    #[arg(long)]
    no_fixtures: bool,
    /// Directory for minimised reproducers of disagreements.
    #[arg(long)]
    reproducers: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    solver: SolverId,
    /// One of n, pb, tw, lambda, r.
    #[arg(long)]
    axis: Axis,
    /// Comma-separated axis values.
    #[arg(long, value_delimiter = ',', required = true)]
    values: Vec<u64>,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 1)]
    repeats: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Per-cell limit in seconds; exceeded cells are recorded as timeouts.
    #[arg(long)]
    time_limit: Option<f64>,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn seconds(s: Option<f64>) -> Result<Option<Duration>, CliError> {
    s.map(|s| Duration::try_from_secs_f64(s).map_err(|e| CliError::Input(format!("--time-limit: {e}"))))
        .transpose()
}

fn emit<T: Serialize>(format: Format, value: &T, summary: &str) {
    match format {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
            eprintln!("{summary}");
        }
        Format::Summary => println!("{summary}"),
    }
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn solve(format: Format, a: SolveArgs) -> Result<ExitCode, CliError> {
    let inst = load_instance(&a.instance)?;
    let req = SolveRequest {
        solver: a.solver,
        decomposition: a.decomposition,
        epsilon: a.epsilon,
        omega: a.omega,
        bundle_size: a.bundle_size,
        time_limit: seconds(a.time_limit)?,
        memory_limit: a.memory_limit,
    };
    let report = run_solve(&inst, &req)?;
    emit(format, &report, &report.summary());
    Ok(if report.is_yes() { ExitCode::Yes } else { ExitCode::No })
}

fn verify(format: Format, instance: &Path, allocation: &Path) -> Result<ExitCode, CliError> {
    let inst = load_instance(instance)?;
    let text =
        std::fs::read_to_string(allocation).map_err(|e| CliError::Input(format!("{}: {e}", allocation.display())))?;
    let raw = RawAllocation::from_json(&text).map_err(|e| CliError::Input(format!("{}: {e}", allocation.display())))?;
    let alloc = Allocation::from_raw(&inst, &raw).map_err(|e| CliError::Input(e.to_string()))?;
    let report = verify_allocation(&inst, &alloc).map_err(|e| CliError::Input(e.to_string()))?;
    let mut summary = (if report.feasible { "FEASIBLE" } else { "INFEASIBLE" }).to_string();
    for (i, b) in report.bundles.iter().enumerate() {
        summary.push_str(&format!(
            "\n  agent {}: profit {}{} cost {}{}{}",
            i + 1,
            b.profit,
            if b.profit_ok { "" } else { " (below P)" },
            b.cost,
            if b.cost_ok { "" } else { " (over B)" },
            if b.independent { "" } else { ", not independent" },
        ));
    }
    emit(format, &report, &summary);
    Ok(if report.feasible { ExitCode::Yes } else { ExitCode::No })
}

fn generate(a: GenArgs) -> Result<ExitCode, CliError> {
    let text = match (&a.payload, &a.inline) {
        (Some(p), _) => std::fs::read_to_string(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?,
        (None, Some(t)) => t.clone(),
        (None, None) => return Err(CliError::Input("one of --payload or --inline is required".into())),
    };
    let mut spec: GeneratorSpec = serde_json::from_str(&text).map_err(|e| CliError::Input(format!("payload: {e}")))?;
    if let (GeneratorSpec::Random(r), Some(seed)) = (&mut spec, a.seed) {
        r.seed = seed;
    }
    let inst = spec.build().map_err(|e| CliError::Input(e.to_string()))?;
    write_out(a.output.as_deref(), &inst.to_json())?;
    Ok(ExitCode::Yes)
}

fn cross_check(format: Format, a: CrossCheckArgs) -> Result<ExitCode, CliError> {
    let mut corpus = random_corpus(a.count, a.seed);
    if !a.no_fixtures {
        corpus.extend(generator_fixtures());
    }
    if let Some(dir) = &a.reproducers {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
    }
    let summary = run_cross_check(&corpus, &oracle_reference(), &default_solvers(), a.reproducers.as_deref());
    let mut text = format!(
        "{}: {} instances, {} comparisons, {} disagreements, {} verification failures, {} errors",
        if summary.passed() { "PASS" } else { "FAIL" },
        summary.instances,
        summary.comparisons,
        summary.disagreements.len(),
        summary.verification_failures.len(),
        summary.errors.len()
    );
    for d in &summary.disagreements {
        text.push_str(&format!(
            "\n  {}: {} says {}, {} says {}",
            d.instance, d.solver, d.found, d.reference, d.expected
        ));
        if let Some(p) = &d.reproducer {
            text.push_str(&format!(" (reproducer {})", p.display()));
        }
    }
    emit(format, &summary, &text);
    Ok(if summary.passed() { ExitCode::Yes } else { ExitCode::No })
}

fn bench(a: BenchArgs) -> Result<ExitCode, CliError> {
    let spec = BenchSpec {
        solver: a.solver,
        axis: a.axis,
        values: a.values,
        k: a.k,
        repeats: a.repeats,
        seed: a.seed,
        time_limit: seconds(a.time_limit)?,
    };
    if spec.k == 0 {
        return Err(CliError::Input("--k must be positive".into()));
    }
    let rows = run_bench(&spec);
    let result = match &a.output {
        Some(p) => {
            let file = std::fs::File::create(p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
            write_csv(&rows, file)
        }
        None => write_csv(&rows, std::io::stdout().lock()),
    };
    result.map_err(|e| CliError::Internal(format!("writing CSV: {e}")))?;
    Ok(ExitCode::Yes)
}

fn stats(format: Format, instance: &Path) -> Result<ExitCode, CliError> {
    let inst = load_instance(instance)?;
    let s = compute_stats(&inst);
    let summary = format!(
        "n = {}, k = {}, alpha = {:?}, gamma = {:?}, lambda = {}",
        s.n,
        inst.k(),
        s.alpha,
        s.gamma,
        s.lambda
    );
    emit(format, &s, &summary);
    Ok(ExitCode::Yes)
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(a) => solve(cli.format, a),
        Command::Verify { instance, allocation } => verify(cli.format, &instance, &allocation),
        Command::Gen(a) => generate(a),
        Command::CrossCheck(a) => cross_check(cli.format, a),
        Command::Bench(a) => bench(a),
        Command::Stats { instance } => stats(cli.format, &instance),
    };
    let code = result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        e.exit_code()
    });
    let _ = std::io::stdout().flush();
    process::exit(code as i32);
}
