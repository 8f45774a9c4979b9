use std::fs;
use std::io::{self, IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use symmax_cli::report::{input_digest, ReportFile};
use symmax_cli::schema::{ProblemFile, ResolvedProblem};
use symmax_cli::CliError;
use symmax_core::basis::{basis_for, BasisKind};
use symmax_core::symmetry::{
    compile_finite_group_constraints, compile_lie_constraints, ConstraintSet, SymmetrySpec,
};
use symmax_core::{classical, quantum, SolverOptions, Status};

/// Maximum-entropy states and distributions under symmetry constraints.
#[derive(Parser)]
#[command(name = "symmax")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve problem files and write JSON reports.
    Solve(SolveArgs),
    /// Validate a problem file and print the compiled constraint summary.
    Check {
        path: PathBuf,
    },
    /// Print an operator basis (gell_mann or two_qubit_paper).
    Basis {
        kind: String,
        dim: usize,
    },
    /// Print the tool version.
    Version,
}

#[derive(Args)]
struct SolveArgs {
    /// Problem files (JSON).
    #[arg(required = true)]
    paths: Vec<PathBuf>,
    /// Report destination: a file for one input, a directory for several.
    /// Reports go to standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Multiplier-finding strategy.
    #[arg(long, value_enum, default_value_t = SolverChoice::Dual)]
    solver: SolverChoice,
    /// Convergence threshold on the dual gradient.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Iteration cap per solve.
    #[arg(long = "max-iter", default_value_t = 10_000)]
    max_iter: usize,
    /// Infinity-norm cap on the multipliers.
    #[arg(long, default_value_t = 1e3)]
    cap: f64,
    /// Base seed for the delta solver's restarts.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of delta-solver restarts.
    #[arg(long, default_value_t = 8)]
    restarts: usize,
    /// Concurrent solves in batch mode.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SolverChoice {
    Dual,
    Delta,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Usage problems are input errors (exit 1); --help lands here too
            // and keeps its conventional success exit.
            let code = u8::from(e.use_stderr());
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let code = match cli.command {
        Command::Solve(args) => cmd_solve(&args),
        Command::Check { path } => cmd_check(&path),
        Command::Basis { kind, dim } => cmd_basis(&kind, dim),
        Command::Version => {
            println!("symmax {}", env!("CARGO_PKG_VERSION"));
            0
        }
    };
    ExitCode::from(code)
}

fn status_code(status: Status) -> u8 {
    match status {
        Status::Converged => 0,
        Status::Boundary | Status::MaxIterations => 2,
        Status::Infeasible => 3,
    }
}

/// Styles a status word for human-facing lines; reports are never styled.
fn paint(status: Status, to_terminal: bool) -> String {
    let text = status.as_str();
    if !to_terminal || std::env::var_os("NO_COLOR").is_some() {
        return text.to_string();
    }
    let color = match status {
        Status::Converged => "32",
        Status::Boundary | Status::MaxIterations => "33",
        Status::Infeasible => "31",
    };
    format!("\x1b[{color}m{text}\x1b[0m")
}

struct Outcome {
    bytes: Vec<u8>,
    status: Status,
    entropy: f64,
    iterations: usize,
}

fn solve_one(path: &Path, args: &SolveArgs) -> Result<Outcome, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let file: ProblemFile = serde_json::from_slice(&bytes)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let digest = input_digest(&bytes);
    let labels = file.observable_labels();
    let opts = SolverOptions {
        tol: args.tol,
        max_iter: args.max_iter,
        multiplier_cap: args.cap,
        seed: args.seed,
        restarts: args.restarts,
        ..SolverOptions::default()
    };
    match file.resolve()? {
        ResolvedProblem::Classical(p) => {
            if args.solver == SolverChoice::Delta {
                return Err(CliError::Input(format!(
                    "{}: the delta solver applies to quantum problems",
                    path.display()
                )));
            }
            let s = classical::solve_classical(&p, &opts)?;
            let report = ReportFile::from_classical(&p, &s, &labels, digest);
            Ok(Outcome {
                bytes: report.to_json_bytes(),
                status: s.status,
                entropy: s.entropy,
                iterations: s.iterations,
            })
        }
        ResolvedProblem::Quantum(p) => {
            let (r, solver) = match args.solver {
                SolverChoice::Dual => (quantum::solve_dual(&p, &opts)?, "dual"),
                SolverChoice::Delta => (quantum::solve_delta(&p, &opts)?, "delta"),
            };
            let report = ReportFile::from_quantum(&r, &labels, solver, digest);
            Ok(Outcome {
                bytes: report.to_json_bytes(),
                status: r.status,
                entropy: r.entropy,
                iterations: r.iterations,
            })
        }
    }
}

fn report_name(input: &Path) -> PathBuf {
    let stem = input
        .file_stem()
        .map_or_else(|| "report".into(), |s| s.to_string_lossy().into_owned());
    PathBuf::from(format!("{stem}.report.json"))
}

fn cmd_solve(args: &SolveArgs) -> u8 {
    if args.jobs == 0 {
        eprintln!("symmax: --jobs must be at least 1");
        return 1;
    }
    let multi = args.paths.len() > 1;
    if multi {
        if let Some(out) = &args.out {
            if let Err(e) = fs::create_dir_all(out) {
                eprintln!("symmax: {}: {e}", out.display());
                return 1;
            }
        }
    }

    let results: Vec<Result<Outcome, CliError>> = if args.jobs > 1 && multi {
        // A local pool keeps --jobs independent of the solver-internal
        // parallelism; results are collected back in input order.
        match rayon::ThreadPoolBuilder::new().num_threads(args.jobs).build() {
            Ok(pool) => {
                pool.install(|| args.paths.par_iter().map(|p| solve_one(p, args)).collect())
            }
            Err(_) => args.paths.iter().map(|p| solve_one(p, args)).collect(),
        }
    } else {
        args.paths.iter().map(|p| solve_one(p, args)).collect()
    };

    let stdout_tty = io::stdout().is_terminal();
    let stderr_tty = io::stderr().is_terminal();
    let mut worst = 0u8;
    for (path, result) in args.paths.iter().zip(results) {
        let outcome = match result {
            Ok(o) => o,
            Err(e) => {
                eprintln!("symmax: {e}");
                worst = worst.max(e.exit_code());
                continue;
            }
        };
        worst = worst.max(status_code(outcome.status));
        match &args.out {
            Some(out) => {
                let dest = if multi || out.is_dir() {
                    out.join(report_name(path))
                } else {
                    out.clone()
                };
                if let Err(e) = fs::write(&dest, &outcome.bytes) {
                    eprintln!("symmax: {}: {e}", dest.display());
                    worst = worst.max(1);
                    continue;
                }
                println!(
                    "{}: {} after {} iterations, entropy {}, report {}",
                    path.display(),
                    paint(outcome.status, stdout_tty),
                    outcome.iterations,
                    outcome.entropy,
                    dest.display()
                );
            }
            None => {
                // The report owns standard output; the summary goes to stderr.
                if io::stdout().write_all(&outcome.bytes).is_err() {
                    return 1;
                }
                eprintln!(
                    "{}: {} after {} iterations, entropy {}",
                    path.display(),
                    paint(outcome.status, stderr_tty),
                    outcome.iterations,
                    outcome.entropy
                );
            }
        }
    }
    worst
}

fn compiled_set(p: &quantum::QuantumProblem) -> Result<Option<ConstraintSet>, CliError> {
    match p.symmetry() {
        None => Ok(None),
        Some(SymmetrySpec::LieGenerators(gens)) => {
            Ok(Some(compile_lie_constraints(gens, p.basis())?))
        }
        Some(SymmetrySpec::FiniteGroupGenerators(us)) => {
            Ok(Some(compile_finite_group_constraints(us, p.basis())?))
        }
        Some(SymmetrySpec::ClassicalPermutations(_)) => Err(CliError::Input(
            "permutation symmetry applies to classical problems".into(),
        )),
    }
}

fn plural(n: usize) -> &'static str {
    if n == 1 {
        ""
    } else {
        "s"
    }
}

fn feasibility_line(feasible: Option<bool>) -> (String, u8) {
    match feasible {
        None => (
            "feasibility: infeasible — a target lies outside the accessible range".into(),
            3,
        ),
        Some(true) => (
            "feasibility: boundary — a target sits on the edge of the accessible range".into(),
            0,
        ),
        Some(false) => ("feasibility: ok".into(), 0),
    }
}

fn cmd_check(path: &Path) -> u8 {
    match check_inner(path) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("symmax: {}: {e}", path.display());
            e.exit_code()
        }
    }
}

fn check_inner(path: &Path) -> Result<u8, CliError> {
    let bytes = fs::read(path)?;
    let file: ProblemFile = serde_json::from_slice(&bytes)?;
    let labels = file.observable_labels();
    match file.resolve()? {
        ResolvedProblem::Classical(p) => {
            println!("{}: classical, {} outcomes", path.display(), p.outcome_count());
            if labels.is_empty() {
                println!("no observable constraints");
            } else {
                println!(
                    "{} observable constraint{}: {}",
                    labels.len(),
                    plural(labels.len()),
                    labels.join(", ")
                );
            }
            let reduced = classical::reduce_problem(&p)?;
            let sizes: Vec<String> = reduced
                .partition()
                .degeneracies()
                .iter()
                .map(usize::to_string)
                .collect();
            println!(
                "{} orbit{}: sizes {}",
                reduced.partition().len(),
                plural(reduced.partition().len()),
                sizes.join(", ")
            );
            let (line, code) = feasibility_line(classical::check_feasible(&p)?);
            println!("{line}");
            Ok(code)
        }
        ResolvedProblem::Quantum(p) => {
            println!("{}: quantum, dim {}", path.display(), p.dim());
            if labels.is_empty() {
                println!("no observable constraints");
            } else {
                println!(
                    "{} observable constraint{}: {}",
                    labels.len(),
                    plural(labels.len()),
                    labels.join(", ")
                );
            }
            match compiled_set(&p)? {
                None => println!("no symmetry declared"),
                Some(set) => println!(
                    "{} symmetry constraint{}: {}",
                    set.len(),
                    plural(set.len()),
                    set.labels().join(", ")
                ),
            }
            let (line, code) = feasibility_line(quantum::check_feasible(&p)?);
            println!("{line}");
            Ok(code)
        }
    }
}

fn cmd_basis(kind: &str, dim: usize) -> u8 {
    let kind = match kind {
        "gell_mann" => BasisKind::GellMann,
        "two_qubit_paper" => BasisKind::TwoQubitPaper,
        other => {
            eprintln!(
                "symmax: unknown basis kind `{other}` (expected \"gell_mann\" or \"two_qubit_paper\")"
            );
            return 1;
        }
    };
    let basis = match basis_for(kind, dim) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("symmax: {e}");
            return 1;
        }
    };
    for (label, op) in basis.labels().iter().zip(basis.elements()) {
        println!("{label}");
        for r in 0..basis.dim() {
            let row: Vec<[f64; 2]> = (0..basis.dim())
                .map(|c| {
                    let z = op.matrix().get(r, c);
                    [z.re, z.im]
                })
                .collect();
            println!("{}", serde_json::to_string(&row).expect("finite entries"));
        }
        println!();
    }
    0
}
