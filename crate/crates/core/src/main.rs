use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use equising::cli::{self, parse_rational, FamilyArgs, Failure, InvariantsArgs, Outcome};
use equising::invariants::default_precision;
use equising::Rat;

#[derive(Parser)]
#[command(name = "equising", version, about = "Singularity invariants of plane polynomials and equisingularity of families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariant record of a polynomial in x, y.
    Invariants(Single),
    /// Generic invariants, exceptional parameters, constancy table and verdict for a family in t.
    Family(Family),
    /// Braid of critical values of a family, optionally drawn as SVG.
    Braid(Family),
    /// Singular locus at infinity with the generic Milnor numbers nu.
    Sigma(Single),
}

#[derive(Args)]
struct Common {
    /// Polynomial expression, e.g. "x*(x^2*y + t*x + 1)".
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
    /// Isolation precision, a rational such as 1/1000000.
    #[arg(long, allow_hyphen_values = true)]
    precision: Option<String>,
    /// Write the JSON report to this file instead of printing a summary.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Include a timestamp in the report.
    #[arg(long)]
    timestamp: bool,
}

#[derive(Args)]
struct Single {
    #[command(flatten)]
    common: Common,
    /// Value substituted for t.
    #[arg(long, allow_hyphen_values = true)]
    at: Option<String>,
}

#[derive(Args)]
struct Family {
    #[command(flatten)]
    common: Common,
    /// Parameter interval.
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true)]
    interval: Option<Vec<String>>,
    /// Number of grid intervals for the braid.
    #[arg(long, default_value_t = cli::DEFAULT_GRID)]
    grid: usize,
    /// Write the braid picture to this file.
    #[arg(long)]
    svg: Option<PathBuf>,
}

fn rational(text: &str, what: &str) -> Result<Rat, Failure> {
    parse_rational(text).map_err(|e| Failure { code: cli::EXIT_INPUT, message: format!("{}: {}", what, e) })
}

fn precision(c: &Common) -> Result<Rat, Failure> {
    match &c.precision {
        Some(p) => {
            let r = rational(p, "--precision")?;
            if r <= Rat::from_integer(0.into()) {
                return Err(Failure { code: cli::EXIT_INPUT, message: "--precision must be positive".into() });
            }
            Ok(r)
        }
        None => Ok(default_precision()),
    }
}

fn emit(outcome: Outcome, json: &Option<PathBuf>, svg: Option<&PathBuf>) -> Result<i32, Failure> {
    let io = |e: std::io::Error| Failure { code: cli::EXIT_INPUT, message: e.to_string() };
    match json {
        Some(path) => std::fs::write(path, &outcome.json).map_err(io)?,
        None => print!("{}", outcome.summary),
    }
    if let (Some(path), Some(picture)) = (svg, &outcome.svg) {
        std::fs::write(path, picture).map_err(io)?;
    }
    Ok(outcome.code)
}

fn run(cli: Cli) -> Result<i32, Failure> {
    match cli.command {
        Command::Invariants(s) => {
            let args = single_args(&s)?;
            emit(cli::cmd_invariants(&args)?, &s.common.json, None)
        }
        Command::Sigma(s) => {
            let args = single_args(&s)?;
            emit(cli::cmd_sigma(&args)?, &s.common.json, None)
        }
        Command::Family(f) => {
            let args = family_args(&f)?;
            emit(cli::cmd_family(&args)?, &f.common.json, f.svg.as_ref())
        }
        Command::Braid(f) => {
            let args = family_args(&f)?;
            emit(cli::cmd_braid(&args)?, &f.common.json, f.svg.as_ref())
        }
    }
}

fn single_args(s: &Single) -> Result<InvariantsArgs<'_>, Failure> {
    Ok(InvariantsArgs {
        poly: &s.common.poly,
        at: s.at.as_deref().map(|a| rational(a, "--at")).transpose()?,
        precision: precision(&s.common)?,
        timestamp: s.common.timestamp,
    })
}

fn family_args(f: &Family) -> Result<FamilyArgs<'_>, Failure> {
    let interval = match &f.interval {
        Some(v) => (rational(&v[0], "--interval")?, rational(&v[1], "--interval")?),
        None => (Rat::from_integer(0.into()), Rat::from_integer(1.into())),
    };
    Ok(FamilyArgs {
        poly: &f.common.poly,
        interval,
        grid: f.grid,
        precision: precision(&f.common)?,
        timestamp: f.common.timestamp,
        svg: f.svg.is_some(),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            // usage errors are input errors; help and version are not errors
            return ExitCode::from(if e.use_stderr() { cli::EXIT_INPUT as u8 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code as u8)
        }
    }
}
