//! The `nsc` command line: problem and solution files, the four commands
//! and exit-code plumbing. `run` is the whole program given its arguments
//! and output streams.

mod files;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::combinatorics::{build_tournament, tournament_to_dot, tournament_to_text};
use crate::error::{Error, Result};
use crate::solver::{solve, SolveOptions, VerificationReport, RESIDUAL_TOL};

pub use files::{matrix_to_rows, rows_to_matrix, ConditionEntry, MatrixRows, ProblemFile, SolutionFile, DEFAULT_SEED};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_DEFICIT: i32 = 3;
pub const EXIT_VERIFICATION: i32 = 4;

/// Process exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidBracket { .. } | Error::InvalidProblem(_) | Error::Json(_) => EXIT_INVALID,
        Error::Deficit(_) | Error::NonGeneric(_) | Error::Singular(_) | Error::Transfer(_) => EXIT_DEFICIT,
        Error::IllegalBoard(_) => EXIT_INVALID,
        Error::Verification(_) => EXIT_VERIFICATION,
        Error::Io(_) => EXIT_FAILURE,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "nsc", version, about = "Count and solve Schubert problems on Grassmannians")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct ProblemArg {
    /// Problem file (JSON), `-` for stdin, or inline such as "Gr(2,4) [2,4]^4".
    problem: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Number of solutions and tournament statistics.
    Count {
        #[command(flatten)]
        problem: ProblemArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Solve with seeded random flags where none are given.
    Solve {
        #[command(flatten)]
        problem: ProblemArg,
        /// Overrides the file's seed.
        #[arg(long, env = "NSC_SEED")]
        seed: Option<u64>,
        /// Worker threads; 1 makes runs bitwise reproducible.
        #[arg(long)]
        threads: Option<usize>,
        /// Residual bound for accepted solutions.
        #[arg(long, default_value_t = RESIDUAL_TOL)]
        tol: f64,
        /// Where to write the solution file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Re-check a solution file.
    Verify {
        solution: String,
        /// Residual bound; the file's own bound when absent.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the tournament as text, or as Graphviz with `--dot`.
    Game {
        #[command(flatten)]
        problem: ProblemArg,
        #[arg(long)]
        dot: bool,
    },
}

fn read_source(source: &str) -> Result<String> {
    if source == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        return Ok(text);
    }
    Ok(std::fs::read_to_string(Path::new(source))?)
}

/// Loads a problem from a file, stdin or inline shorthand.
pub fn load_problem(source: &str) -> Result<ProblemFile> {
    if source.trim_start().starts_with("Gr(") {
        return ProblemFile::parse_shorthand(source);
    }
    ProblemFile::from_json(&read_source(source)?)
}

#[derive(Debug, Serialize)]
pub struct CountSummary {
    pub k: usize,
    pub n: usize,
    pub count: String,
    pub conditions: usize,
    pub levels: usize,
    pub level_sizes: Vec<usize>,
    pub nodes: usize,
    pub edges: usize,
}

pub fn cmd_count(problem: &ProblemFile) -> Result<CountSummary> {
    let brackets = problem.brackets()?;
    if brackets.is_empty() {
        return Err(Error::InvalidProblem("no conditions".into()));
    }
    let t = build_tournament(&brackets)?;
    Ok(CountSummary {
        k: problem.k,
        n: problem.n,
        count: t.count().to_string(),
        conditions: brackets.len(),
        levels: t.levels(),
        level_sizes: t.level_sizes(),
        nodes: t.nodes.len(),
        edges: t.nodes.iter().map(|node| node.children.len()).sum(),
    })
}

pub fn cmd_game(problem: &ProblemFile, dot: bool) -> Result<String> {
    let t = build_tournament(&problem.brackets()?)?;
    Ok(if dot {
        tournament_to_dot(&t)
    } else {
        tournament_to_text(&t)
    })
}

/// Seed precedence: explicit value, then the file, then the default.
pub fn resolve_seed(explicit: Option<u64>, problem: &ProblemFile) -> u64 {
    explicit.or(problem.seed).unwrap_or(DEFAULT_SEED)
}

/// Solves a problem file and packages the result. Errors when no attempt
/// produced the expected number of solutions.
pub fn cmd_solve(
    problem: &ProblemFile,
    seed: u64,
    threads: Option<usize>,
    tol: f64,
) -> Result<(SolutionFile, Duration)> {
    let instance = problem.instance(seed)?;
    let settings = problem.tracker.clone().unwrap_or_default();
    let options = SolveOptions {
        settings: settings.clone(),
        residual_tol: tol,
        threads,
        ..SolveOptions::default()
    };
    let start = Instant::now();
    let outcome = solve(&instance, &options)?;
    let elapsed = start.elapsed();
    Ok((SolutionFile::new(problem, &instance, &outcome, &settings, tol), elapsed))
}

pub fn cmd_verify(file: &SolutionFile, tol: Option<f64>) -> Result<VerificationReport> {
    file.reverify(tol.unwrap_or(file.residual_tol))
}

fn report_text(r: &VerificationReport) -> String {
    let mut out = format!(
        "{}: {} of {} solutions, max residual {:.3e}, min distance {}\n",
        if r.pass { "pass" } else { "FAIL" },
        r.found,
        r.expected,
        r.max_residual,
        r.min_distance.map_or("n/a".into(), |d| format!("{d:.3e}"))
    );
    for f in &r.failures {
        out.push_str(&format!("  {f}\n"));
    }
    out
}

fn json_line<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Count { problem, format } => {
            let s = cmd_count(&load_problem(&problem.problem)?)?;
            let text = match format {
                Format::Json => json_line(&s)?,
                Format::Text => format!(
                    "Gr({},{}): {} solutions\n{} conditions, {} levels, {} nodes, {} edges\nlevel sizes {:?}\n",
                    s.k, s.n, s.count, s.conditions, s.levels, s.nodes, s.edges, s.level_sizes
                ),
            };
            out.write_all(text.as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Game { problem, dot } => {
            out.write_all(cmd_game(&load_problem(&problem.problem)?, dot)?.as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Solve {
            problem,
            seed,
            threads,
            tol,
            out: path,
            format,
        } => {
            let problem = load_problem(&problem.problem)?;
            let seed = resolve_seed(seed, &problem);
            let settings = problem.tracker.clone().unwrap_or_default();
            writeln!(
                err,
                "nsc {} seed {seed} threads {} settings {}",
                env!("CARGO_PKG_VERSION"),
                threads.map_or("all".into(), |t| t.to_string()),
                serde_json::to_string(&settings)?
            )?;
            let (file, elapsed) = match cmd_solve(&problem, seed, threads, tol) {
                Ok(v) => v,
                Err(e @ Error::Deficit(_)) => {
                    writeln!(err, "{e}")?;
                    return Ok(EXIT_DEFICIT);
                }
                Err(e) => return Err(e),
            };
            let json = file.to_json()?;
            let summary = match format {
                Format::Json => json_line(&serde_json::json!({
                    "expected": file.report.expected,
                    "found": file.report.found,
                    "pass": file.report.pass,
                    "max_residual": file.report.max_residual,
                    "min_distance": file.report.min_distance,
                    "attempts": file.accounting.attempts.len(),
                    "path_failures": file.accounting.total_failures(),
                    "seconds": elapsed.as_secs_f64(),
                }))?,
                Format::Text => format!(
                    "{}{}\nwall time {:.2} s\n",
                    report_text(&file.report),
                    file.accounting.summary(),
                    elapsed.as_secs_f64()
                ),
            };
            match path {
                Some(p) => {
                    std::fs::write(p, json)?;
                    out.write_all(summary.as_bytes())?;
                }
                None => {
                    out.write_all(json.as_bytes())?;
                    err.write_all(summary.as_bytes())?;
                }
            }
            Ok(if file.report.pass { EXIT_OK } else { EXIT_VERIFICATION })
        }
        Command::Verify { solution, tol, format } => {
            let file = SolutionFile::from_json(&read_source(&solution)?)?;
            let report = cmd_verify(&file, tol)?;
            let text = match format {
                Format::Json => json_line(&report)?,
                Format::Text => report_text(&report),
            };
            out.write_all(text.as_bytes())?;
            Ok(if report.pass { EXIT_OK } else { EXIT_VERIFICATION })
        }
    }
}

/// Runs `nsc` with `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
