use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use carnot_cli::commands::{self, exit_code, exit_code_for, Target};
use carnot_cli::report::Report;

/// Exact-arithmetic toolkit for Carnot groups: jet groups, Lie algebra
/// cohomology, and filling-exponent certificates.
#[derive(Parser)]
#[command(name = "carnot", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit wall-clock timing in the report (off by default so identical
    /// inputs produce byte-identical output).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Args)]
struct TargetArgs {
    /// Built-in jet group, as "M,K".
    #[arg(long, value_name = "M,K", conflicts_with = "file")]
    jet: Option<String>,
    /// Algebra definition file (JSON).
    #[arg(long, value_name = "PATH")]
    file: Option<String>,
}

impl TargetArgs {
    fn target(&self) -> Result<Target, String> {
        match (&self.jet, &self.file) {
            (Some(spec), None) => {
                let (m, k) = parse_jet_spec(spec)?;
                Ok(Target::Jet { m, k })
            }
            (None, Some(path)) => Ok(Target::File { path: path.clone() }),
            _ => Err("exactly one of --jet or --file is required".to_owned()),
        }
    }
}

fn parse_jet_spec(spec: &str) -> Result<(usize, usize), String> {
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(format!("--jet expects \"M,K\", got {spec:?}"));
    }
    let m = parts[0].parse().map_err(|_| format!("bad jet order {:?}", parts[0]))?;
    let k = parts[1].parse().map_err(|_| format!("bad base dimension {:?}", parts[1]))?;
    Ok((m, k))
}

#[derive(Subcommand)]
enum Command {
    /// Operations on algebra definition files.
    Algebra {
        #[command(subcommand)]
        command: AlgebraCommand,
    },
    /// Built-in jet group queries.
    Jet {
        #[command(subcommand)]
        command: JetCommand,
    },
    /// Certify filling-function exponents.
    Certify {
        #[command(flatten)]
        target: TargetArgs,
        /// Restrict the report to one filling dimension.
        #[arg(long)]
        dim: Option<usize>,
        /// Output format.
        #[arg(long, value_parser = ["json", "md"], default_value = "json")]
        format: String,
        /// Write the report here instead of stdout.
        #[arg(long, value_name = "PATH")]
        out: Option<String>,
    },
    /// Betti number and homogeneous representatives in one degree.
    Cohomology {
        #[command(flatten)]
        target: TargetArgs,
        #[arg(long)]
        degree: usize,
    },
    /// Volume-scaling exponents of the plane spanned by given vectors.
    #[command(name = "plane-exponents")]
    PlaneExponents {
        #[command(flatten)]
        target: TargetArgs,
        /// Inline JSON: an array of vectors, each either a dense array of
        /// rationals or a {"name": "p/q"} map.
        #[arg(long, value_name = "JSON")]
        vectors: String,
    },
}

#[derive(Subcommand)]
enum AlgebraCommand {
    /// Parse a definition file and run the structural checks.
    Validate { file: String },
}

#[derive(Subcommand)]
enum JetCommand {
    /// Dimension, class, grading and lattice data of J^m(R^k).
    Info {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
    },
}

fn main() {
    let cli = Cli::parse();
    let started = Instant::now();
    let outcome = run(&cli);
    match outcome {
        Ok((mut report, format, out, code)) => {
            if cli.timings {
                report.timing_ms = Some(started.elapsed().as_millis());
            }
            let rendered = match format.as_str() {
                "md" => report.to_markdown(),
                _ => report.to_json(),
            };
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, rendered) {
                        eprintln!("error: cannot write {path}: {e}");
                        std::process::exit(exit_code::USAGE);
                    }
                }
                None => print!("{rendered}"),
            }
            std::process::exit(code);
        }
        Err(RunError::Usage(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(exit_code::USAGE);
        }
        Err(RunError::Core(e)) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code_for(&e));
        }
    }
}

enum RunError {
    Usage(String),
    Core(carnot_core::Error),
}

impl From<carnot_core::Error> for RunError {
    fn from(e: carnot_core::Error) -> Self {
        RunError::Core(e)
    }
}

type RunOutcome = (Report, String, Option<String>, i32);

fn run(cli: &Cli) -> Result<RunOutcome, RunError> {
    match &cli.command {
        Command::Algebra { command: AlgebraCommand::Validate { file } } => {
            let (report, code) = commands::cmd_algebra_validate(file)?;
            Ok((report, "json".into(), None, code))
        }
        Command::Jet { command: JetCommand::Info { m, k } } => {
            let (report, code) = commands::cmd_jet_info(*m, *k)?;
            Ok((report, "json".into(), None, code))
        }
        Command::Certify { target, dim, format, out } => {
            let target = target.target().map_err(RunError::Usage)?;
            let (report, code) = commands::cmd_certify(&target, *dim)?;
            Ok((report, format.clone(), out.clone(), code))
        }
        Command::Cohomology { target, degree } => {
            let target = target.target().map_err(RunError::Usage)?;
            let (report, code) = commands::cmd_cohomology(&target, *degree)?;
            Ok((report, "json".into(), None, code))
        }
        Command::PlaneExponents { target, vectors } => {
            let target = target.target().map_err(RunError::Usage)?;
            let (report, code) = commands::cmd_plane_exponents(&target, vectors)?;
            Ok((report, "json".into(), None, code))
        }
    }
}
