use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use predomain_cli::{commands, format, load, CliError, EXIT_CHECK_FAILED, EXIT_PASS, EXIT_USAGE};

/// Check and explore finite predomains, preCuntz semigroups and finite
/// commutative C*-models.
///
/// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or parse
/// error, 3 enumeration bound exceeded.
#[derive(Parser)]
#[command(name = "predomain", version)]
struct Cli {
    /// Append wall-clock times to report lines.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the axioms for the file's kind.
    Check { file: PathBuf },
    /// Round ideal completion: ideals, generators and the way-below table.
    Complete { file: PathBuf },
    /// Emit the stratified structure in the same format.
    Stratify {
        file: PathBuf,
        /// Write the structure here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Opens and specialization order of the associated c-space.
    Topology {
        file: PathBuf,
        /// Print a DOT graph of ≺≺ and of way-below on the completion.
        #[arg(long)]
        dot: bool,
    },
    /// Sweep homomorphisms (precuntz) or traces (model).
    Dual { file: PathBuf },
    /// Separate f ≰ h by subbasic upper/lower neighbourhoods.
    Separate {
        file: PathBuf,
        /// Declared function name or comma-separated values.
        #[arg(long)]
        f: String,
        #[arg(long)]
        h: String,
    },
    /// δ-witnesses of the cutdown inequalities on a model.
    Deltas {
        file: PathBuf,
        /// Declared function name or comma-separated values.
        #[arg(long, requires = "b")]
        a: Option<String>,
        #[arg(long, requires = "a")]
        b: Option<String>,
        #[arg(long, default_value = "1/2")]
        eps: String,
    },
    /// Re-emit the file in canonical form.
    Fmt { file: PathBuf },
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    let report = match &cli.command {
        Command::Check { file } => commands::check(&load(file)?)?,
        Command::Complete { file } => commands::complete(&load(file)?)?,
        Command::Stratify { file, output } => {
            let (report, out) = commands::stratify(&load(file)?)?;
            let text = format::emit(&out);
            match output {
                Some(path) => {
                    std::fs::write(path, text).map_err(|source| CliError::Io {
                        path: path.clone(),
                        source,
                    })?;
                    report
                }
                None => {
                    print!("{text}");
                    return Ok(EXIT_PASS);
                }
            }
        }
        Command::Topology { file, dot: true } => {
            print!("{}", commands::dot(&load(file)?)?);
            return Ok(EXIT_PASS);
        }
        Command::Topology { file, dot: false } => commands::topology(&load(file)?)?,
        Command::Dual { file } => commands::dual(&load(file)?)?,
        Command::Separate { file, f, h } => commands::separate(&load(file)?, f, h)?,
        Command::Deltas { file, a, b, eps } => commands::deltas(&load(file)?, a.as_deref(), b.as_deref(), eps)?,
        Command::Fmt { file } => {
            print!("{}", format::emit(&load(file)?));
            return Ok(EXIT_PASS);
        }
    };
    print!("{}", report.render(cli.timings));
    Ok(if report.failed() { EXIT_CHECK_FAILED } else { EXIT_PASS })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS });
        }
    };
    let code = match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    let _ = std::io::stdout().flush();
    ExitCode::from(code)
}
