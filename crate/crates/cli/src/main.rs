//! `stablerank`: command-line front end.
//!
//! Results go to stdout. Failures go to stderr as one JSON line
//! `{code, message, detail}` with exit status 1 for invalid input and 2 for
//! budget refusals.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use stablerank::Error;

#[derive(Parser, Debug)]
#[command(name = "stablerank", version, about = "Tits buildings, common basis complexes and rank filtration data over small finite fields")]
struct Cli {
    /// Worker threads (0 lets the runtime decide). Output does not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Allow stretch targets such as D'(F_2^4).
    #[arg(long, global = true)]
    big: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct FieldRank {
    /// Field order, a prime power up to 16.
    #[arg(long)]
    q: usize,
    /// Ambient rank.
    #[arg(long)]
    r: usize,
}

#[derive(Args, Debug, Clone, Copy)]
struct CubeArgs {
    /// Field order.
    #[arg(long = "q-field")]
    q_field: usize,
    #[arg(long)]
    r: usize,
    /// Cube dimension.
    #[arg(long)]
    n: usize,
    /// Cube degree: coordinates run over 0..=deg.
    #[arg(long)]
    deg: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Addition and multiplication tables of F_{p^k}.
    FieldTable {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Subspaces of F_q^r as RREF basis matrices.
    Subspaces {
        #[command(flatten)]
        fr: FieldRank,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Order of GL_r(F_q).
    GlOrder {
        #[command(flatten)]
        fr: FieldRank,
    },
    /// The Tits building B(F_q^r).
    Building {
        #[command(flatten)]
        fr: FieldRank,
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Homology report for the building: Steinberg rank and concentration.
    Steinberg {
        #[command(flatten)]
        fr: FieldRank,
    },
    /// The common basis complex D'(F_q^r).
    Cbc {
        #[command(flatten)]
        fr: FieldRank,
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Δ_r(F_q) as top reduced homology of D'(F_q^r).
    Delta {
        #[command(flatten)]
        fr: FieldRank,
    },
    /// Full reduced homology of D'(F_q^r) and the concentration check.
    Connectivity {
        #[command(flatten)]
        fr: FieldRank,
    },
    /// Rank jumps and components of a cubical diagram read from JSON.
    Rankjump {
        #[command(flatten)]
        cube: CubeArgs,
        #[arg(long)]
        diagram: PathBuf,
    },
    /// Histogram of component counts over all lattice diagrams.
    FiltrationCensus {
        #[command(flatten)]
        cube: CubeArgs,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Milnor K-group K^M_j(F_q).
    Milnor {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        j: usize,
    },
    /// GL_r-coinvariants of Δ_r(F_q).
    Coinvariants {
        #[command(flatten)]
        fr: FieldRank,
    },
    /// Known entries of the rank complex up to weight wmax.
    Ranktable {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        wmax: usize,
    },
    /// Homology of a complex stored as .scx.
    Homology {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        reduced: bool,
    },
}

fn error_line(code: &str, message: &str, detail: Value) -> String {
    json!({"code": code, "message": message, "detail": detail}).to_string()
}

fn report(err: &Error) -> ExitCode {
    let (code, detail) = match err {
        Error::InvalidParameter(_) => ("invalid_parameter", Value::Null),
        Error::AmbientMismatch(_) => ("ambient_mismatch", Value::Null),
        Error::Budget { what, count, limit } => ("budget", json!({"what": what, "count": count, "limit": limit})),
        Error::LatticeViolation(v) => ("lattice_violation", json!(v)),
        Error::Torsion { degree, factors } => ("torsion", json!({"degree": degree, "factors": factors})),
        Error::Parse(_) => ("parse", Value::Null),
    };
    eprintln!("{}", error_line(code, &err.to_string(), detail));
    ExitCode::from(if err.is_budget() { 2 } else { 1 })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let message = e.kind().to_string();
            eprintln!("{}", error_line("usage", &message, json!(e.render().to_string())));
            return ExitCode::from(1);
        }
    };
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
        eprintln!("{}", error_line("internal", "thread pool setup failed", json!(e.to_string())));
        return ExitCode::from(1);
    }
    match commands::run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => report(&e),
    }
}
