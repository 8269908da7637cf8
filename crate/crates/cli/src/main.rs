//! `transversal`: decide flat transversals and well-separation, build
//! reduction instances, and re-check certificates.
//!
//! Exit status: 0 when the command ran (whatever the answer), 1 on a failed
//! verification or `--expect` mismatch, 2 on usage or input errors.

mod commands;
mod doc;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

/// Bad input or usage; maps to exit status 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct InputError(pub String);

impl From<transversal::Error> for InputError {
    fn from(e: transversal::Error) -> Self {
        InputError(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "transversal",
    version,
    about = "Exact flat-transversal and well-separation decisions"
)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the document here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Exit with status 1 unless the answer matches.
    #[arg(long, global = true, value_enum)]
    expect: Option<Expect>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Expect {
    Yes,
    No,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MaxhypMode {
    Exact,
    Approx,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Reduction {
    /// SubsetSum -> two-point hyperplane transversal.
    Subsetsum,
    /// BinPacking (padded to equal fill) -> flat transversal.
    Binpacking,
    /// Equal-fill BinPacking -> flat transversal, no padding.
    Equalbin,
    /// Flat transversal with a trailing {0} set -> hyperplane transversal.
    FlattransLift,
    /// Two-point family with {0} -> segment family.
    Segments,
    /// Graph + k -> flat transversal.
    Clique,
}

impl Reduction {
    pub fn as_str(self) -> &'static str {
        match self {
            Reduction::Subsetsum => "subsetsum",
            Reduction::Binpacking => "binpacking",
            Reduction::Equalbin => "equalbin",
            Reduction::FlattransLift => "flattrans-lift",
            Reduction::Segments => "segments",
            Reduction::Clique => "clique",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Is there a flat of dimension --target meeting every set?
    Transversal {
        file: PathBuf,
        #[arg(long, conflicts_with = "hyperplane")]
        target: Option<usize>,
        /// Target dimension D-1 (the only choice for segment files).
        #[arg(long)]
        hyperplane: bool,
    },
    /// Are the sets well-separated?
    Wellsep { file: PathBuf },
    /// Hyperplane through the most points.
    Maxhyp {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "exact")]
        mode: MaxhypMode,
    },
    /// Build a reduction instance.
    Reduce {
        #[arg(value_enum)]
        reduction: Reduction,
        file: PathBuf,
        /// flattrans-lift: repaired|paper; segments: planar|paper.
        #[arg(long)]
        mode: Option<String>,
        /// Clique size for graph inputs.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Re-check a certificate or result document against an instance.
    Verify {
        instance: PathBuf,
        certificate: PathBuf,
    },
    /// Brute-force answer for subsetsum, binpacking and graph files.
    Oracle {
        file: PathBuf,
        /// binpacking: packing|equal.
        #[arg(long)]
        mode: Option<String>,
        #[arg(long)]
        k: Option<usize>,
    },
}

enum Failure {
    Input(String),
    Check(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e.0)
    }
}

fn emit(doc: &Value, output: &Option<PathBuf>) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(doc).map_err(|e| Failure::Input(e.to_string()))?;
    text.push('\n');
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Input(e.to_string())),
    }
}

fn expect(doc: &Value, want: Option<Expect>) -> Result<(), Failure> {
    let Some(want) = want else {
        return Ok(());
    };
    let want = match want {
        Expect::Yes => "yes",
        Expect::No => "no",
    };
    match doc.get("answer").and_then(Value::as_str) {
        Some(a) if a == want => Ok(()),
        Some(a) => Err(Failure::Check(format!("expected answer {want}, got {a}"))),
        None => Err(Failure::Input(
            "--expect needs a command with a yes/no answer".into(),
        )),
    }
}

fn configure_threads(threads: Option<usize>) -> Result<(), Failure> {
    let Some(n) = threads else {
        return Ok(());
    };
    if n == 0 {
        return Err(Failure::Input("--threads must be at least 1".into()));
    }
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Input(e.to_string()))?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    configure_threads(cli.threads)?;
    let doc = match &cli.command {
        Command::Transversal {
            file,
            target,
            hyperplane,
        } => commands::transversal(&doc::load(file)?, *target, *hyperplane)?,
        Command::Wellsep { file } => commands::wellsep(&doc::load(file)?)?,
        Command::Maxhyp { file, mode } => commands::maxhyp(&doc::load(file)?, *mode)?,
        Command::Reduce {
            reduction,
            file,
            mode,
            k,
        } => {
            let (doc, summary) =
                commands::reduce(&doc::load(file)?, *reduction, mode.as_deref(), *k)?;
            eprintln!("{summary}");
            if let Some(w) = doc.pointer("/origin/warning").and_then(Value::as_str) {
                eprintln!("warning: {w}");
            }
            doc
        }
        Command::Verify {
            instance,
            certificate,
        } => {
            let clauses = verify::verify(&doc::load(instance)?, &doc::load_value(certificate)?)?;
            if clauses.is_empty() {
                println!("nothing to verify: the certificate carries no checkable claim");
            }
            let mut failed = 0;
            for (name, r) in &clauses {
                match r {
                    Ok(()) => println!("verified: {name}"),
                    Err(why) => {
                        failed += 1;
                        println!("failed: {name}: {why}");
                    }
                }
            }
            return if failed == 0 {
                Ok(())
            } else {
                Err(Failure::Check(format!("{failed} clause(s) failed")))
            };
        }
        Command::Oracle { file, mode, k } => {
            commands::oracle(&doc::load(file)?, mode.as_deref(), *k)?
        }
    };
    emit(&doc, &cli.output)?;
    expect(&doc, cli.expect)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let status = match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    };
    eprintln!("wall-time: {:.3}s", start.elapsed().as_secs_f64());
    status
}
