//! `ldpc-coset`: coset-weight distributions, rate–distance bound tables,
//! verification suites, extremal-code search and comparison-plot data.
//!
//! Exit status: 0 success, 1 verification failure, 2 usage or parse error,
//! 3 resource limit or I/O error.

mod suites;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ldpc_coset::bounds::{bound_table, delta_range, figure1_csv, figure1_rows, BoundCurve, FIGURE1_POINTS};
use ldpc_coset::cwgf::coset_weight_distribution;
use ldpc_coset::search::{conjecture_check, SearchConfig, SearchMode};
use ldpc_coset::{Error, Execution, LambdaGrid, LinearCode};

use suites::{SuiteParams, SuiteReport};

const THREADS_ENV: &str = "LDPC_COSET_THREADS";

#[derive(Parser)]
#[command(name = "ldpc-coset", version, about = "Coset-weight generating functions and LDPC rate-distance bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Coset-weight distribution and Q curve of a code file.
    Cwgf(CwgfArgs),
    /// Table of rate-distance bound curves.
    Bounds(BoundsArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Compare codes spanned by low-weight words against disjoint blocks.
    Search(SearchArgs),
    /// Data for the w = 3 comparison plot.
    Figure1(Figure1Args),
}

#[derive(Args)]
struct CwgfArgs {
    /// Code file: header `n k`, then k rows of n bits.
    #[arg(long)]
    code: PathBuf,
    /// λ grid as `a:b:step`.
    #[arg(long, default_value = "0.05:1:0.05")]
    lambda_grid: String,
    /// Output directory for `distribution.csv` and `q_curve.csv`; stdout when
    /// absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long, default_value_t = 3)]
    w: usize,
    /// Comma-separated curve names.
    #[arg(long, value_delimiter = ',', default_value = "gv,lp1,lp2,bklm,is_general,is_w3,is_w4,new_general,new_w3,new_w4")]
    curves: Vec<String>,
    #[arg(long, default_value_t = 0.05, allow_negative_numbers = true)]
    delta_min: f64,
    #[arg(long, default_value_t = 0.45, allow_negative_numbers = true)]
    delta_max: f64,
    #[arg(long, default_value_t = 0.05, allow_negative_numbers = true)]
    delta_step: f64,
    /// Wrap every curve in the shortening recursion.
    #[arg(long)]
    shortened: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Lemmas,
    Localfactor,
    Theorem,
    Identities,
    Ball,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Random,
}

impl From<Mode> for SearchMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Exhaustive => SearchMode::Exhaustive,
            Mode::Random => SearchMode::Random,
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    #[arg(long, default_value_t = 3)]
    w: usize,
    #[arg(long, default_value_t = 9)]
    n: usize,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "exhaustive")]
    mode: Mode,
    #[arg(long, default_value = "0.05:1:0.05")]
    lambda_grid: String,
    /// Lift the default exhaustive limits.
    #[arg(long)]
    override_limits: bool,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    w: usize,
    #[arg(long, value_enum, default_value = "exhaustive")]
    mode: Mode,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "0.05:1:0.05")]
    lambda_grid: String,
    #[arg(long)]
    override_limits: bool,
    /// Output directory for `summary.txt` and witness files.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Figure1Args {
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = FIGURE1_POINTS)]
    points: usize,
}

/// A failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ResourceLimit { .. } | Error::Io(_) => 3,
            Error::Certificate(_) => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &Path, e: io::Error) -> Failure {
    Failure {
        code: 3,
        message: format!("{}: {e}", path.display()),
    }
}

type Outcome = std::result::Result<u8, Failure>;

fn write_output(path: Option<&Path>, text: &str) -> std::result::Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| io_failure(p, e)),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| io_failure(Path::new("<stdout>"), e)),
    }
}

fn ensure_dir(dir: &Path) -> std::result::Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| io_failure(dir, e))
}

fn cmd_cwgf(args: &CwgfArgs) -> Outcome {
    let text = fs::read_to_string(&args.code).map_err(|e| io_failure(&args.code, e))?;
    let code = LinearCode::parse_code_file(&text).map_err(|e| Failure {
        code: 2,
        message: format!("{}: {e}", args.code.display()),
    })?;
    let grid = LambdaGrid::parse(&args.lambda_grid)?;
    let dist = coset_weight_distribution(&code)?;
    let distribution = dist.to_csv();
    let curve = dist.q_curve_csv(&grid)?;
    match &args.out {
        Some(dir) => {
            ensure_dir(dir)?;
            write_output(Some(&dir.join("distribution.csv")), &distribution)?;
            write_output(Some(&dir.join("q_curve.csv")), &curve)?;
        }
        None => write_output(None, &format!("{distribution}\n{curve}"))?,
    }
    Ok(0)
}

fn cmd_bounds(args: &BoundsArgs) -> Outcome {
    let curves = args
        .curves
        .iter()
        .map(|name| BoundCurve::parse(name, args.w))
        .collect::<ldpc_coset::Result<Vec<_>>>()?;
    let deltas = delta_range(args.delta_min, args.delta_max, args.delta_step)?;
    let table = bound_table(&curves, &deltas, args.shortened, Execution::default())?;
    write_output(args.out.as_deref(), &table.to_csv())?;
    Ok(0)
}

fn cmd_verify(args: &VerifyArgs) -> Outcome {
    let params = SuiteParams {
        w: args.w,
        n: args.n,
        samples: args.samples,
        seed: args.seed,
        mode: args.mode.into(),
        grid: LambdaGrid::parse(&args.lambda_grid)?,
        override_limits: args.override_limits,
    };
    params.grid.require_positive()?;
    let report: SuiteReport = match args.suite {
        Suite::Lemmas => suites::lemmas(&params)?,
        Suite::Localfactor => suites::localfactor(&params)?,
        Suite::Theorem => suites::theorem(&params)?,
        Suite::Identities => suites::identities()?,
        Suite::Ball => suites::ball(&params)?,
    };
    write_output(None, &report.render())?;
    Ok(if report.passed() { 0 } else { 1 })
}

fn cmd_search(args: &SearchArgs) -> Outcome {
    let mut config = SearchConfig::new(args.n, args.w, args.mode.into());
    config.sample_count = args.samples;
    config.seed = args.seed;
    config.lambda_grid = LambdaGrid::parse(&args.lambda_grid)?;
    config.override_limits = args.override_limits;
    let result = conjecture_check(&config)?;
    let summary = result.summary();
    match &args.out {
        Some(dir) => {
            ensure_dir(dir)?;
            write_output(Some(&dir.join("summary.txt")), &summary)?;
            write_output(Some(&dir.join("witness.txt")), &result.witness.file_contents())?;
            for (i, e) in result.exceedances.iter().enumerate() {
                write_output(Some(&dir.join(format!("candidate_{i}.txt"))), &e.file_contents())?;
            }
        }
        None => write_output(None, &summary)?,
    }
    for e in &result.exceedances {
        eprintln!("counterexample candidate:\n{}", e.file_contents());
    }
    Ok(if result.verified_counterexamples.is_empty() { 0 } else { 1 })
}

fn cmd_figure1(args: &Figure1Args) -> Outcome {
    if args.points == 0 {
        return Err(Error::Domain("--points must be positive".into()).into());
    }
    let rows = figure1_rows(args.points, Execution::default())?;
    write_output(args.out.as_deref(), &figure1_csv(&rows))?;
    Ok(0)
}

fn configure_threads() -> std::result::Result<(), Failure> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = value.trim().parse().map_err(|_| Failure {
        code: 2,
        message: format!("{THREADS_ENV} must be a non-negative integer, got `{value}`"),
    })?;
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure {
            code: 3,
            message: format!("thread pool: {e}"),
        })?;
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = configure_threads().and_then(|()| match &cli.command {
        Command::Cwgf(a) => cmd_cwgf(a),
        Command::Bounds(a) => cmd_bounds(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Search(a) => cmd_search(a),
        Command::Figure1(a) => cmd_figure1(a),
    });
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
