use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use firstroot::bench::{self, BenchConfig, MethodKind, ReportFormat};
use firstroot::problems::{self, Problem};
use firstroot::{grid_search, solve, write_trace_jsonl, Accuracy, EstimationParams, Outcome, SolverConfig};

const EXIT_USAGE: u8 = 1;
const EXIT_PRECISION: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "firstroot", version, about = "Locate the first root from the left of a smooth function")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    A1,
    A2,
    Grid,
}

impl From<MethodArg> for MethodKind {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::A1 => MethodKind::A1,
            MethodArg::A2 => MethodKind::A2,
            MethodArg::Grid => MethodKind::Grid,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Markdown,
}

impl From<FormatArg> for ReportFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => ReportFormat::Csv,
            FormatArg::Markdown => ReportFormat::Markdown,
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    problem: String,
    #[arg(long, value_enum, default_value = "a2")]
    method: MethodArg,
    /// Accuracy as a fraction of the domain width.
    #[arg(long, default_value_t = 1e-4)]
    sigma_frac: f64,
    /// Reliability multiplier of the adaptive method.
    #[arg(long, default_value_t = 1.2)]
    r: f64,
    /// Floor of the adaptive bounds.
    #[arg(long, default_value_t = 1e-6)]
    xi: f64,
    /// Lipschitz constant of f' for a1. Defaults to the oracle value.
    #[arg(long)]
    lipschitz: Option<f64>,
    #[arg(long)]
    max_trials: Option<usize>,
    /// Write the trial log as JSON lines.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Key = value configuration file. Flags given here override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated problem ids, or `all`.
    #[arg(long)]
    problems: Option<String>,
    /// Comma-separated methods among grid, a1, a2.
    #[arg(long)]
    methods: Option<String>,
    #[arg(long)]
    sigma_frac: Option<f64>,
    #[arg(long)]
    r: Option<f64>,
    #[arg(long)]
    xi: Option<f64>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one registered problem.
    Solve(SolveArgs),
    /// Run the problem by method matrix and write a report.
    Bench(BenchArgs),
    /// Tabulate x, f(x), f'(x) on a uniform grid.
    Sample {
        #[arg(long)]
        problem: String,
        #[arg(long, default_value_t = 1001)]
        points: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// List the registered problems.
    List,
}

/// Usage and runtime errors both exit with status 1.
#[derive(Debug)]
struct Failure(String);

impl From<firstroot::Error> for Failure {
    fn from(e: firstroot::Error) -> Self {
        Failure(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure(e.to_string())
    }
}

fn open_output(path: Option<&PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run_solve(args: SolveArgs) -> Result<u8, Failure> {
    let SolveArgs {
        problem: id,
        method,
        sigma_frac,
        r,
        xi,
        lipschitz,
        max_trials,
        trace,
    } = args;
    if lipschitz.is_some() && method != MethodArg::A1 {
        return Err(Failure("--lipschitz is only valid with --method a1".into()));
    }
    if !(sigma_frac > 0.0) {
        return Err(Failure(format!("--sigma-frac {sigma_frac} must be positive")));
    }
    let problem = problems::lookup(&id)?;
    let accuracy = Accuracy::Relative(sigma_frac);
    let solution = match method {
        MethodArg::Grid => grid_search(&problem, sigma_frac * problem.width(), max_trials)?,
        MethodArg::A1 => {
            let k = match lipschitz {
                Some(k) => k,
                None => {
                    let k = problem
                        .lipschitz_k
                        .ok_or_else(|| Failure(format!("{id} has no Lipschitz constant")))?;
                    println!("note: using oracle Lipschitz constant K = {k}");
                    k
                }
            };
            let mut config = SolverConfig::fixed(k).with_accuracy(accuracy);
            if let Some(n) = max_trials {
                config = config.with_max_trials(n);
            }
            config.validate()?;
            solve(&problem, &config)?
        }
        MethodArg::A2 => {
            let mut config = SolverConfig::adaptive(EstimationParams::new(r, xi)?).with_accuracy(accuracy);
            if let Some(n) = max_trials {
                config = config.with_max_trials(n);
            }
            config.validate()?;
            solve(&problem, &config)?
        }
    };
    if let Some(path) = trace {
        let mut out = BufWriter::new(File::create(&path)?);
        write_trace_jsonl(&solution.trace, &mut out)?;
        out.flush()?;
    }
    print_outcome(&problem, MethodKind::from(method), &solution.outcome);
    Ok(match solution.outcome {
        Outcome::FirstRootFound { .. } | Outcome::NoRootGlobalMin { .. } => 0,
        Outcome::PrecisionExhausted { .. } => EXIT_PRECISION,
        Outcome::BudgetExhausted { .. } => EXIT_BUDGET,
    })
}

fn print_outcome(problem: &Problem, method: MethodKind, outcome: &Outcome) {
    let x = outcome.x();
    println!("problem: {}", problem.id);
    println!("method: {}", method.as_str());
    println!("outcome: {}", outcome.tag());
    println!("x: {x}");
    println!("f(x): {}", problem.value(x));
    if let Outcome::PrecisionExhausted { interval, .. } = outcome {
        println!("interval: [{}, {}]", interval.0, interval.1);
    }
    println!("trials: {}", outcome.trials_used());
}

fn run_bench(args: BenchArgs) -> Result<u8, Failure> {
    let BenchArgs {
        config: config_path,
        problems: problem_ids,
        methods,
        sigma_frac,
        r,
        xi,
        output,
        format,
    } = args;
    let mut config = match &config_path {
        Some(path) => BenchConfig::from_file(path)?,
        None => BenchConfig::default(),
    };
    if let Some(p) = problem_ids {
        config.problem_ids = bench::parse_problem_ids(&p);
    }
    if let Some(m) = methods {
        config.methods = bench::parse_methods(&m)?;
    }
    if let Some(s) = sigma_frac {
        config.sigma_fraction = s;
    }
    if let Some(v) = r {
        config.r = v;
    }
    if let Some(v) = xi {
        config.xi = v;
    }
    if let Some(o) = output {
        config.output_path = Some(o);
    }
    if let Some(f) = format {
        config.format = f.into();
    }
    config.validate()?;

    let rows = bench::run_matrix(&config)?;
    let summary = bench::summarize(&rows);
    match &config.output_path {
        Some(path) => {
            bench::emit_report(&rows, Some(&summary), config.format, path)?;
            println!("wrote {} rows to {}", rows.len(), path.display());
        }
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bench::render(&rows, Some(&summary), config.format).as_bytes())?;
        }
    }
    Ok(0)
}

fn run_sample(id: &str, points: usize, output: Option<PathBuf>) -> Result<u8, Failure> {
    if points < 2 {
        return Err(Failure(format!("--points {points} must be at least 2")));
    }
    let problem = problems::lookup(id)?;
    let mut out = open_output(output.as_ref())?;
    writeln!(out, "x,f,df")?;
    let n = points - 1;
    for j in 0..=n {
        let x = if j == n {
            problem.b
        } else {
            problem.a + problem.width() * j as f64 / n as f64
        };
        writeln!(out, "{x},{},{}", problem.value(x), problem.derivative(x))?;
    }
    out.flush()?;
    Ok(0)
}

fn run_list() -> Result<u8, Failure> {
    let mut out = io::stdout().lock();
    for id in problems::ids() {
        writeln!(out, "{}", problems::listing_line(&problems::lookup(&id)?))?;
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Solve(args) => run_solve(args),
        Command::Bench(args) => run_bench(args),
        Command::Sample { problem, points, output } => run_sample(&problem, points, output),
        Command::List => run_list(),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
