use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use transynth_cli::commands::{
    cmd_check, cmd_diff, cmd_finitize, cmd_repair, cmd_run, cmd_synth, DiffDomain, RepairMethod, RepairOptions,
    SolverFlags, SynthOptions,
};
use transynth_cli::{exit, exit_code};

#[derive(Parser)]
#[command(name = "transynth", version, about = "Synthesize and repair finite-state transducers with an SMT solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct SolverArgs {
    /// Solver executable (defaults to $TRANSYNTH_SOLVER, then `z3`).
    #[arg(long)]
    solver: Option<PathBuf>,
    /// Per-query timeout in seconds.
    #[arg(long)]
    timeout: Option<f64>,
}

impl SolverArgs {
    fn flags(&self) -> SolverFlags {
        SolverFlags { solver: self.solver.clone(), timeout_sec: self.timeout }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Template,
    Input,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize a transducer from a specification file.
    Synth {
        spec: PathBuf,
        /// Try k = 1, 2, ... up to this many states.
        #[arg(long)]
        k_max: Option<usize>,
        /// Number of lookahead states (the upper bound when deepening).
        #[arg(long)]
        lookahead: Option<usize>,
        /// Try all sizes up to the bounds and keep the smallest solution.
        #[arg(long)]
        portfolio: bool,
        /// Write the transducer here instead of printing it.
        #[arg(long, short)]
        out: Option<PathBuf>,
        /// Also write the SMT-LIB query next to the output.
        #[arg(long)]
        emit_smt: bool,
        /// Print constraint counts and solver time.
        #[arg(long)]
        stats: bool,
        /// Print a machine-readable report.
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Check a transducer against the examples, types and distance of a spec.
    Check { transducer: PathBuf, spec: PathBuf },
    /// Run a transducer on words, or on the lines of stdin.
    Run { transducer: PathBuf, words: Vec<String> },
    /// Look for an input on which two transducers differ.
    Diff {
        left: PathBuf,
        right: PathBuf,
        /// Restrict inputs to this regex.
        #[arg(long, conflicts_with = "spec")]
        input_type: Option<String>,
        /// Restrict inputs to the input type of this spec.
        #[arg(long)]
        spec: Option<PathBuf>,
    },
    /// Repair a transducer that violates a specification.
    Repair {
        transducer: PathBuf,
        spec: PathBuf,
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
        #[arg(long, short)]
        out: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Finitize a symbolic automaton or transducer over its minterms.
    Finitize {
        path: PathBuf,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> anyhow::Result<u8> {
    match cmd {
        Command::Synth { spec, k_max, lookahead, portfolio, out: out_path, emit_smt, stats, json, solver } => {
            let opts = SynthOptions {
                spec,
                k_max,
                lookahead,
                portfolio,
                out: out_path,
                emit_smt,
                stats,
                json,
                solver: solver.flags(),
            };
            cmd_synth(&opts, out)
        }
        Command::Check { transducer, spec } => cmd_check(&transducer, &spec, out),
        Command::Run { transducer, words } => cmd_run(&transducer, &words, &mut io::stdin().lock(), out),
        Command::Diff { left, right, input_type, spec } => {
            let domain = match (input_type, spec) {
                (Some(r), _) => DiffDomain::Regex(r),
                (None, Some(p)) => DiffDomain::Spec(p),
                (None, None) => DiffDomain::Everything,
            };
            cmd_diff(&left, &right, &domain, out)
        }
        Command::Repair { transducer, spec, method, out: out_path, solver } => {
            let method = method.map(|m| match m {
                MethodArg::Template => RepairMethod::Template,
                MethodArg::Input => RepairMethod::Input,
            });
            cmd_repair(&RepairOptions { transducer, spec, method, out: out_path, solver: solver.flags() }, out)
        }
        Command::Finitize { path, out: out_path } => cmd_finitize(&path, out_path.as_deref(), out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = match dispatch(cli.command, &mut out) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_code(&e)
        }
    };
    let _ = out.flush();
    ExitCode::from(code)
}
