//! `machh`: double cohomology of moment-angle complexes from the command line.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use machh_core::double::DEFAULT_MAX_M;
use machh_core::mask::MAX_VERTICES;
use machh_core::PrimeField;

use crate::commands::Failure;

#[derive(Parser, Debug)]
#[command(name = "machh", version, about = "Double cohomology of moment-angle complexes")]
struct Cli {
    /// Coefficient field: `q` or `gf:<p>` for an odd prime p.
    #[arg(long, global = true, default_value = "q")]
    field: String,

    /// Worker threads, or `auto`. Defaults to $MACHH_THREADS, then `auto`.
    #[arg(long, global = true)]
    threads: Option<String>,

    /// Largest ground set accepted.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_M)]
    max_m: usize,

    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Recompute over the rationals and report the exact result.
    #[arg(long, global = true)]
    verify_exact: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Double cohomology HH*(Z_K).
    Hh { input: PathBuf },
    /// Ordinary cohomology H*(Z_K).
    H { input: PathBuf },
    /// Build a complex file.
    #[command(subcommand)]
    Construct(Construct),
    /// Check the gluing hypotheses for a simplex and verify the rank change.
    CheckThm1 {
        input: PathBuf,
        /// Vertices of the simplex to glue, e.g. `1,3`.
        #[arg(long)]
        sigma: String,
    },
    /// Total ranks of the K_{2r} family for r = 1..=r_max.
    Ladder {
        #[arg(long)]
        r_max: usize,
    },
    /// Dense reference computation (small inputs only).
    #[command(hide = true)]
    Oracle { input: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum Construct {
    /// The K_{2r} family member with total rank 2r.
    K2r {
        #[arg(long)]
        r: usize,
    },
    /// Join of two complexes; the second one's vertices are shifted.
    Join { a: PathBuf, b: PathBuf },
    /// One-point union identifying vertex `i` of `a` with vertex `j` of `b`.
    Wedge {
        a: PathBuf,
        b: PathBuf,
        /// `i,j`
        #[arg(long, default_value = "1,1")]
        at: String,
    },
    /// Add a simplex whose boundary is already present.
    Glue {
        input: PathBuf,
        #[arg(long)]
        face: String,
    },
}

#[derive(Clone, Debug)]
pub enum FieldChoice {
    Rationals,
    Prime(PrimeField),
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub field: FieldChoice,
    pub max_m: usize,
    pub format: Format,
    pub verify_exact: bool,
}

fn parse_field(text: &str) -> Result<FieldChoice, Failure> {
    let lower = text.to_ascii_lowercase();
    if lower == "q" {
        return Ok(FieldChoice::Rationals);
    }
    let p = lower
        .strip_prefix("gf:")
        .and_then(|p| p.parse::<u64>().ok())
        .ok_or_else(|| Failure::usage(format!("unknown field {text:?}; expected q or gf:<p>")))?;
    Ok(FieldChoice::Prime(PrimeField::new(p)?))
}

fn setup_threads(flag: Option<String>) -> Result<(), Failure> {
    let value = flag.or_else(|| std::env::var("MACHH_THREADS").ok());
    let threads = match value.as_deref().map(str::trim) {
        None | Some("") | Some("auto") => return Ok(()),
        Some(n) => n
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Failure::usage(format!("bad thread count {n:?}")))?,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::usage(e.to_string()))
}

fn run(cli: Cli) -> Result<i32, Failure> {
    if cli.max_m == 0 || cli.max_m > MAX_VERTICES {
        return Err(Failure::usage(format!("--max-m must be in 1..={MAX_VERTICES}")));
    }
    setup_threads(cli.threads)?;
    let config = RunConfig {
        field: parse_field(&cli.field)?,
        max_m: cli.max_m,
        format: cli.format,
        verify_exact: cli.verify_exact,
    };
    let (text, code) = match cli.command {
        Command::Hh { input } => commands::hh(&input, &config)?,
        Command::H { input } => commands::h(&input, &config)?,
        Command::Construct(kind) => commands::construct(kind)?,
        Command::CheckThm1 { input, sigma } => commands::check_thm1(&input, &sigma, &config)?,
        Command::Ladder { r_max } => commands::ladder(r_max, &config)?,
        Command::Oracle { input } => commands::oracle(&input)?,
    };
    output::emit(cli.out.as_deref(), &text)?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let message = e.to_string();
            let first = message.lines().next().unwrap_or("").trim_start_matches("error: ");
            Failure::usage(first.to_string()).report();
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(failure) => {
            failure.report();
            ExitCode::from(failure.code)
        }
    }
}
