//! `velcomp`: compose relativistic velocities and check the algebraic laws of
//! Einstein and reciprocal-symmetric addition.
//!
//! Exit codes: 0 success or expected outcome, 1 negative check outcome,
//! 2 usage error, 3 domain error.

mod commands;
mod record;
mod vector;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use velcomp_core::lawlab::{LawId, Op, Regime};
use velcomp_core::CVec3;

#[derive(Parser, Debug)]
#[command(
    name = "velcomp",
    version,
    about = "Relativistic velocity composition and law checking"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compose two velocities, `a ∘ b`
    Add(AddArgs),
    /// Relative velocity in both orientations and their reciprocity defect
    Relative(RelativeArgs),
    /// Check one law over a sampled population
    Check(CheckArgs),
    /// Search for a counterexample to a law and shrink it
    Hunt(HuntArgs),
    /// Run the full battery of claims about both operations
    Suite(SuiteArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TextOrJson {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum JsonOrCsv {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OnOff {
    On,
    Off,
}

fn parse_vector_arg(s: &str) -> Result<CVec3, String> {
    vector::parse_vector(s)
}

fn parse_light_speed(s: &str) -> Result<f64, String> {
    let c: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if c.is_finite() && c > 0.0 {
        Ok(c)
    } else {
        Err(format!("light speed must be positive and finite, got {s}"))
    }
}

fn parse_positive(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if t.is_finite() && t > 0.0 {
        Ok(t)
    } else {
        Err(format!("expected a positive finite number, got {s}"))
    }
}

fn parse_beta(s: &str) -> Result<f64, String> {
    let b: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if b > 0.0 && b < 1.0 {
        Ok(b)
    } else {
        Err(format!("max beta must lie in (0, 1), got {s}"))
    }
}

#[derive(Args, Debug)]
struct AddArgs {
    #[arg(long, value_parser = Op::from_str_arg)]
    law: Op,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_vector_arg)]
    a: CVec3,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_vector_arg)]
    b: CVec3,
    #[arg(long, default_value_t = 1.0, value_parser = parse_light_speed)]
    c: f64,
    #[arg(long, value_enum, default_value_t = TextOrJson::Text)]
    format: TextOrJson,
}

#[derive(Args, Debug)]
struct RelativeArgs {
    #[arg(long, value_parser = Op::from_str_arg)]
    law: Op,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_vector_arg)]
    observer: CVec3,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_vector_arg)]
    object: CVec3,
    #[arg(long, default_value_t = 1.0, value_parser = parse_light_speed)]
    c: f64,
    #[arg(long, value_enum, default_value_t = TextOrJson::Text)]
    format: TextOrJson,
}

#[derive(Args, Debug)]
struct SamplingArgs {
    #[arg(long = "law-id", value_parser = LawId::from_str_arg)]
    law_id: LawId,
    #[arg(long, value_parser = Op::from_str_arg)]
    op: Op,
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Defaults to 1e-10 for associativity and 1e-12 otherwise
    #[arg(long, value_parser = parse_positive)]
    tol: Option<f64>,
    #[arg(long, default_value = "uniform_ball", value_parser = Regime::from_str_arg)]
    regime: Regime,
    #[arg(long, default_value_t = 1.0, value_parser = parse_light_speed)]
    c: f64,
    #[arg(long = "max-beta", default_value_t = 0.999, value_parser = parse_beta)]
    max_beta: f64,
    #[arg(long, value_enum, default_value_t = JsonOrCsv::Json)]
    format: JsonOrCsv,
    /// Worker threads; output does not depend on this
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[command(flatten)]
    sampling: SamplingArgs,
}

#[derive(Args, Debug)]
struct HuntArgs {
    #[command(flatten)]
    sampling: SamplingArgs,
    #[arg(long, value_enum, default_value_t = OnOff::On)]
    shrink: OnOff,
}

#[derive(Args, Debug)]
struct SuiteArgs {
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,
    #[arg(long, value_enum, default_value_t = JsonOrCsv::Json)]
    format: JsonOrCsv,
    /// Worker threads; output does not depend on this
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,
}

trait FromStrArg: Sized {
    fn from_str_arg(s: &str) -> Result<Self, String>;
}

impl<T: std::str::FromStr<Err = String>> FromStrArg for T {
    fn from_str_arg(s: &str) -> Result<Self, String> {
        s.parse()
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version go to stdout with status 0, usage errors exit 2
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(cli.command) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("{}: {}", e.name(), e);
            ExitCode::from(e.exit_code())
        }
    }
}
