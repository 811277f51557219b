//! The `majority` command line.
//!
//! Exit status: 0 success, 1 verification failed or step cap exceeded,
//! 2 input or usage error, 3 oracle budget exceeded.

use std::fmt::Display;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use majority_core::generators::{
    gen_lists, gen_random_digraph, gen_random_strongly_connected, gen_regular_tournament,
    ListMode, Probability,
};
use majority_core::stationary::WeightValues;
use majority_core::{
    oracle_min_max_f, solve, stationary_vector, verify, walk_matrix, Arithmetic, Digraph,
    InitPolicy, ListAssignment, OracleError, SolveError, SolvePolicy, DEFAULT_BUDGET,
};

use crate::bench::{ensemble, run_suite, DEFAULT_SUITE_SIZE};
use crate::formats::{
    parse_colouring, parse_graph, parse_lists, write_colouring, write_graph, write_lists,
};
use crate::report::{fmt_ratio, parse_ratio, to_line, OracleJson, SolveJson, VerifyJson};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    Failed = 1,
    InputError = 2,
    BudgetExceeded = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Parser)]
#[command(name = "majority", version, about = "2/k-majority list colourings of digraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Colour a digraph from its lists with at most 2/k same-coloured out-neighbours per vertex.
    Solve(SolveArgs),
    /// Check that a colouring is an eta-majority (list) colouring.
    Verify(VerifyArgs),
    /// Exhaustively minimise the largest same-colour fraction.
    Oracle(OracleArgs),
    /// Print the stationary vector of a strongly connected digraph.
    Stationary(StationaryArgs),
    /// Generate graphs and lists.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Run the seeded soundness suite.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Rational,
    Float,
}

impl From<Mode> for Arithmetic {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Rational => Arithmetic::Rational,
            Mode::Float => Arithmetic::Float,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Init {
    First,
    Random,
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    lists: PathBuf,
    #[arg(long, value_enum, default_value = "rational")]
    mode: Mode,
    #[arg(long, value_enum, default_value = "first")]
    init: Init,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    max_steps: Option<usize>,
    /// Colouring output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the JSON report on stdout (requires --out).
    #[arg(long)]
    report: bool,
    /// Include per-component potential traces in the report.
    #[arg(long)]
    trace: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    colouring: PathBuf,
    /// Exact rational p/q.
    #[arg(long)]
    eta: String,
    #[arg(long)]
    lists: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    lists: PathBuf,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    /// Witness output file, in colouring format.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct StationaryArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum, default_value = "rational")]
    mode: Mode,
}

#[derive(Debug, Subcommand)]
enum GenCommand {
    /// Rotational regular tournament on an odd number of vertices.
    Tournament {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Each ordered pair is an edge with probability p.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: String,
        #[arg(long)]
        seed: u64,
        /// Add a random Hamiltonian cycle.
        #[arg(long)]
        strongly_connected: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Colour lists of size k.
    Lists {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "identical")]
        mode: ListsMode,
        /// Palette size for random lists; defaults to k.
        #[arg(long)]
        palette: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ListsMode {
    Identical,
    Random,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long, default_value = "default")]
    suite: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "rational")]
    mode: Mode,
}

/// A failure that ends the command with a one-line diagnostic.
struct Failure {
    status: ExitStatus,
    message: String,
}

fn input_error(e: impl Display) -> Failure {
    Failure {
        status: ExitStatus::InputError,
        message: e.to_string(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Digraph, Failure> {
    parse_graph(&read(path)?).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn read_lists(path: &Path, n: usize) -> Result<ListAssignment, Failure> {
    parse_lists(&read(path)?, n).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| input_error(format!("{}: {e}", path.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| input_error(format!("stdout: {e}"))),
    }
}

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return ExitStatus::Success;
            }
            let rendered = e.to_string();
            let line = rendered.lines().next().unwrap_or("usage error");
            let _ = writeln!(stderr, "{line}");
            return ExitStatus::InputError;
        }
    };
    let result = match cli.command {
        Command::Solve(args) => run_solve(args, stdout),
        Command::Verify(args) => run_verify(args, stdout),
        Command::Oracle(args) => run_oracle(args, stdout),
        Command::Stationary(args) => run_stationary(args, stdout),
        Command::Gen(cmd) => run_gen(cmd, stdout),
        Command::Bench(args) => run_bench(args, stdout),
    };
    match result {
        Ok(status) => status,
        Err(failure) => {
            let _ = writeln!(stderr, "error: {}", failure.message);
            failure.status
        }
    }
}

fn run_solve(args: SolveArgs, stdout: &mut dyn Write) -> Result<ExitStatus, Failure> {
    if args.report && args.out.is_none() {
        return Err(input_error("--report needs --out for the colouring"));
    }
    let init = match args.init {
        Init::First => InitPolicy::FirstEntry,
        Init::Random if args.seed.is_none() => {
            return Err(input_error("--init random requires --seed"))
        }
        Init::Random => InitPolicy::SeededRandom,
    };
    let g = read_graph(&args.graph)?;
    let lists = read_lists(&args.lists, g.vertex_count())?;
    let policy = SolvePolicy {
        init,
        seed: args.seed.unwrap_or(0),
        arithmetic: args.mode.into(),
        max_steps: args.max_steps,
        trace: args.trace,
    };
    let (colouring, report) = match solve(&g, &lists, &policy) {
        Ok(r) => r,
        Err(e @ SolveError::StepCapExceeded { .. }) => {
            return Err(Failure {
                status: ExitStatus::Failed,
                message: e.to_string(),
            })
        }
        Err(e) => return Err(input_error(e)),
    };
    emit(args.out.as_deref(), &write_colouring(&colouring), stdout)?;
    if args.report {
        emit(None, &to_line(&SolveJson::new(&report, args.trace)), stdout)?;
    }
    Ok(ExitStatus::Success)
}

fn run_verify(args: VerifyArgs, stdout: &mut dyn Write) -> Result<ExitStatus, Failure> {
    let eta = parse_ratio(&args.eta).map_err(input_error)?;
    let g = read_graph(&args.graph)?;
    let n = g.vertex_count();
    let colouring = parse_colouring(&read(&args.colouring)?, n)
        .map_err(|e| input_error(format!("{}: {e}", args.colouring.display())))?;
    let lists = args
        .lists
        .as_deref()
        .map(|p| read_lists(p, n))
        .transpose()?;
    let report = verify(&g, &colouring, &eta, lists.as_ref()).map_err(input_error)?;
    emit(None, &to_line(&VerifyJson::new(&report, &eta)), stdout)?;
    Ok(if report.ok {
        ExitStatus::Success
    } else {
        ExitStatus::Failed
    })
}

fn run_oracle(args: OracleArgs, stdout: &mut dyn Write) -> Result<ExitStatus, Failure> {
    let g = read_graph(&args.graph)?;
    let lists = read_lists(&args.lists, g.vertex_count())?;
    let result = match oracle_min_max_f(&g, &lists, args.budget) {
        Ok(r) => r,
        Err(e @ OracleError::BudgetExceeded(_)) => {
            return Err(Failure {
                status: ExitStatus::BudgetExceeded,
                message: e.to_string(),
            })
        }
        Err(e) => return Err(input_error(e)),
    };
    if let Some(path) = args.out.as_deref() {
        emit(Some(path), &write_colouring(&result.witness), stdout)?;
    }
    emit(None, &to_line(&OracleJson::new(&result)), stdout)?;
    Ok(ExitStatus::Success)
}

fn run_stationary(args: StationaryArgs, stdout: &mut dyn Write) -> Result<ExitStatus, Failure> {
    let g = read_graph(&args.graph)?;
    let all: Vec<usize> = g.vertices().collect();
    let matrix = walk_matrix(&g, &all).map_err(input_error)?;
    let x = stationary_vector(&matrix, args.mode.into()).map_err(|e| Failure {
        status: ExitStatus::Failed,
        message: e.to_string(),
    })?;
    let mut text = String::new();
    match x.values() {
        WeightValues::Exact(values) => {
            for (v, p) in x.vertices().iter().zip(values) {
                text.push_str(&format!("{v} {}\n", fmt_ratio(p)));
            }
        }
        WeightValues::Float(values) => {
            for (v, p) in x.vertices().iter().zip(values) {
                text.push_str(&format!("{v} {p}\n"));
            }
        }
    }
    emit(None, &text, stdout)?;
    Ok(ExitStatus::Success)
}

fn run_gen(cmd: GenCommand, stdout: &mut dyn Write) -> Result<ExitStatus, Failure> {
    match cmd {
        GenCommand::Tournament { n, out } => {
            let g = gen_regular_tournament(n).map_err(input_error)?;
            emit(out.as_deref(), &write_graph(&g), stdout)?;
        }
        GenCommand::Random {
            n,
            p,
            seed,
            strongly_connected,
            out,
        } => {
            let p = parse_ratio(&p).map_err(input_error)?;
            let numer = u32::try_from(p.numer()).map_err(|_| input_error("p too large"))?;
            let denom = u32::try_from(p.denom()).map_err(|_| input_error("p too large"))?;
            let p = Probability::new(numer, denom).map_err(input_error)?;
            let g = if strongly_connected {
                gen_random_strongly_connected(n, p, seed)
            } else {
                gen_random_digraph(n, p, seed)
            };
            emit(out.as_deref(), &write_graph(&g), stdout)?;
        }
        GenCommand::Lists {
            n,
            k,
            mode,
            palette,
            seed,
            out,
        } => {
            let mode = match mode {
                ListsMode::Identical => ListMode::Identical,
                ListsMode::Random => ListMode::Random,
            };
            if mode == ListMode::Random && seed.is_none() {
                return Err(input_error("--mode random requires --seed"));
            }
            let lists = gen_lists(n, k, palette.unwrap_or(k), mode, seed.unwrap_or(0))
                .map_err(input_error)?;
            emit(out.as_deref(), &write_lists(&lists), stdout)?;
        }
    }
    Ok(ExitStatus::Success)
}

fn run_bench(args: BenchArgs, stdout: &mut dyn Write) -> Result<ExitStatus, Failure> {
    if args.suite != "default" {
        return Err(input_error(format!("unknown suite {:?}", args.suite)));
    }
    let policy = SolvePolicy {
        arithmetic: args.mode.into(),
        ..SolvePolicy::default()
    };
    let summary = run_suite(&ensemble(DEFAULT_SUITE_SIZE, args.seed), &policy);
    emit(None, &summary.table(), stdout)?;
    Ok(if summary.passed == summary.instances {
        ExitStatus::Success
    } else {
        ExitStatus::Failed
    })
}
