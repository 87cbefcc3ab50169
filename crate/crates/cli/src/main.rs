//! `nilclean`: classify finite rings, sweep families, and run the instance
//! verifiers from the command line.
//!
//! Exit codes: 0 success / no violation, 1 a mathematical violation or
//! oracle disagreement was found, 2 usage or input error.

mod commands;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use nilclean_core::axioms::DEFAULT_SEED;
use nilclean_core::DEFAULT_ORDER_CAP;

#[derive(Debug, Parser)]
#[command(name = "nilclean", version, about = "Nil-clean structure of small finite rings")]
struct Cli {
    /// Largest ring order that may be constructed.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER_CAP)]
    max_order: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    format: Format,

    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Write 0 in timing fields so repeated runs are byte-identical.
    #[arg(long, global = true)]
    no_timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Zn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyKind {
    Prop1,
    Lemma2,
    Theorem,
    Remark,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignsArg {
    Plus,
    Both,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Oracle and structural classification of one ring.
    Classify { spec: String },
    /// Classify every ring of a family up to a bound.
    Census {
        #[arg(long, value_enum, default_value_t = Family::Zn)]
        family: Family,
        /// Largest modulus (inclusive); the sweep starts at 2.
        #[arg(long = "max", value_name = "N")]
        max_n: u64,
    },
    /// Run one of the instance verifiers.
    Verify {
        #[arg(value_enum)]
        kind: VerifyKind,
        spec: String,
        /// Bound on |alpha|, |beta|, |gamma| for the quadratic scan.
        #[arg(long, default_value_t = 2)]
        scalar_bound: i64,
    },
    /// Upper nilradical and quotient order.
    Radical { spec: String },
    /// All idempotent/nilpotent decompositions of one element.
    Decompose {
        spec: String,
        index: usize,
        #[arg(long, value_enum, default_value_t = SignsArg::Plus)]
        signs: SignsArg,
    },
}

pub struct Settings {
    pub max_order: u64,
    pub format: Format,
    pub seed: u64,
    pub timing: bool,
}

/// What a command produced: text for the output sink and an exit code.
pub struct Outcome {
    pub text: String,
    pub code: u8,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let settings = Settings {
        max_order: cli.max_order,
        format: cli.format,
        seed: cli.seed,
        timing: !cli.no_timing,
    };
    let result = std::panic::catch_unwind(|| dispatch(&cli.command, &settings));
    let outcome = match result {
        Ok(Ok(outcome)) => outcome,
        Ok(Err(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(_) => return ExitCode::from(2),
    };
    if let Err(e) = emit(cli.out.as_ref(), &outcome.text) {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(outcome.code)
}

fn dispatch(command: &Command, settings: &Settings) -> Result<Outcome, String> {
    match command {
        Command::Classify { spec } => commands::classify(spec, settings),
        Command::Census { family, max_n } => commands::census(*family, *max_n, settings),
        Command::Verify {
            kind,
            spec,
            scalar_bound,
        } => commands::verify(*kind, spec, *scalar_bound, settings),
        Command::Radical { spec } => commands::radical(spec, settings),
        Command::Decompose {
            spec,
            index,
            signs,
        } => commands::decompose(spec, *index, *signs, settings),
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> io::Result<()> {
    match out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            w.write_all(text.as_bytes())?;
            w.flush()
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(text.as_bytes())?;
            lock.flush()
        }
    }
}
